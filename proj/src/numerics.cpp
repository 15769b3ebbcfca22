#include "rml/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace rml {

namespace {

bool same_sign(double a, double b) noexcept { return (a > 0.0) == (b > 0.0); }

} // namespace

QuadratureResult integrate_halfline_detailed(const ScalarFn& f, const QuadratureSpec& spec) {
    if (!(spec.abs_tol > 0.0)) throw ArgumentError("quadrature tolerance must be > 0");
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    double error = 0.0;
    double l1 = 0.0;
    const double value = GK::integrate(f, 0.0, std::numeric_limits<double>::infinity(), spec.max_depth,
                                       spec.abs_tol, &error, &l1);
    return {value, error, l1};
}

double integrate_halfline(const ScalarFn& f, const QuadratureSpec& spec) {
    const QuadratureResult r = integrate_halfline_detailed(f, spec);
    if (!std::isfinite(r.value) || r.error_bound > spec.abs_tol * std::max(1.0, r.l1_norm)) {
        throw NumericalError("half-line quadrature did not converge (estimate " + std::to_string(r.value) +
                                 ", error bound " + std::to_string(r.error_bound) + ")",
                             r.value, r.error_bound);
    }
    return r.value;
}

double expect(const Model& model, const ScalarFn& h, const QuadratureSpec& spec) {
    return integrate_halfline(
        [&](double x) {
            if (!(x > 0.0)) return 0.0;
            const double w = density(model, x);
            return w == 0.0 ? 0.0 : h(x) * w;
        },
        spec);
}

double variance(const Model& model, const ScalarFn& h, const QuadratureSpec& spec) {
    const double m = expect(model, h, spec);
    const double m2 = expect(model, [&](double x) { const double v = h(x); return v * v; }, spec);
    return m2 - m * m;
}

double covariance(const Model& model, const ScalarFn& g, const ScalarFn& h, const QuadratureSpec& spec) {
    const double eg = expect(model, g, spec);
    const double eh = expect(model, h, spec);
    const double egh = expect(model, [&](double x) { return g(x) * h(x); }, spec);
    return egh - eg * eh;
}

RootResult find_root_detailed(const ScalarFn& f, double lo, double hi, const RootOptions& opts) {
    if (lo > hi) std::swap(lo, hi);
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return {a, 0.0, b - a, 0};
    if (fb == 0.0) return {b, 0.0, b - a, 0};
    if (!std::isfinite(fa) || !std::isfinite(fb) || same_sign(fa, fb)) {
        throw BracketError("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]", lo, hi);
    }

    // fa_w/fb_w are the Illinois-weighted values used for interpolation only.
    double fa_w = fa, fb_w = fb;
    int last_side = 0;
    bool bisect_next = false;
    for (std::size_t it = 1; it <= opts.max_iter; ++it) {
        const double width = b - a;
        double x = (a * fb_w - b * fa_w) / (fb_w - fa_w);
        if (bisect_next || !(x > a && x < b)) x = a + 0.5 * width;
        const double fx = f(x);
        if (fx == 0.0) return {x, 0.0, 0.0, it};

        if (same_sign(fx, fa)) {
            a = x;
            fa = fa_w = fx;
            if (last_side == -1) fb_w *= 0.5;
            last_side = -1;
        } else {
            b = x;
            fb = fb_w = fx;
            if (last_side == 1) fa_w *= 0.5;
            last_side = 1;
        }
        bisect_next = (b - a) > 0.5 * width;

        const bool a_best = std::abs(fa) <= std::abs(fb);
        const double xb = a_best ? a : b;
        const double fxb = a_best ? fa : fb;
        const double w = b - a;
        const double scale = std::max(1.0, std::abs(xb));
        const bool at_resolution = w <= 4.0 * std::numeric_limits<double>::epsilon() * scale;
        if ((std::abs(fxb) <= opts.f_tol && w <= opts.x_tol * scale) || at_resolution) {
            return {xb, fxb, w, it};
        }
    }
    const double xm = 0.5 * (a + b);
    throw NumericalError("root finder exceeded " + std::to_string(opts.max_iter) + " iterations", xm, b - a);
}

double find_root(const ScalarFn& f, double lo, double hi, double tol) {
    return find_root_detailed(f, lo, hi, {tol, tol, 300}).x;
}

Bracket expand_bracket(const ScalarFn& f, double lo, double hi, bool shrink_lo, double factor,
                       std::size_t max_steps) {
    if (!(factor > 1.0)) throw ArgumentError("bracket growth factor must be > 1");
    double flo = f(lo), fhi = f(hi);
    for (std::size_t step = 0; step <= max_steps; ++step) {
        if (std::isfinite(flo) && std::isfinite(fhi) && (flo == 0.0 || fhi == 0.0 || !same_sign(flo, fhi))) {
            return {lo, hi};
        }
        if (step == max_steps) break;
        hi *= factor;
        fhi = f(hi);
        if (shrink_lo) {
            lo /= factor;
            flo = f(lo);
        }
    }
    throw BracketError("bracket expansion found no sign change", lo, hi);
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("normal quantile requires 0 < p < 1");
    return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

double chi_square_sf(double x, double df) {
    if (!(df >= 1.0) || !std::isfinite(df)) throw DomainError("chi-square df must be >= 1");
    if (!(x >= 0.0)) throw DomainError("chi-square statistic must be >= 0");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

double kolmogorov_sf(std::size_t n, double d) {
    if (n == 0) throw DomainError("Kolmogorov distribution requires n >= 1");
    if (n < exact_kolmogorov_limit) return kolmogorov_sf_exact(n, d);
    return kolmogorov_sf_asymptotic(std::sqrt(static_cast<double>(n)) * d);
}

double kolmogorov_sf_asymptotic(double t) {
    if (std::isnan(t)) throw DomainError("Kolmogorov statistic is NaN");
    if (t <= 0.0) return 1.0;
    constexpr double pi = 3.14159265358979323846;
    if (t < 1.0) {
        // Jacobi-transformed series converges fast for small t.
        const double c = pi * pi / (8.0 * t * t);
        double s = 0.0;
        for (int k = 1; k < 50; ++k) {
            const double term = std::exp(-(2.0 * k - 1) * (2.0 * k - 1) * c);
            s += term;
            if (term < 1e-18 * s) break;
        }
        return std::clamp(1.0 - std::sqrt(2.0 * pi) / t * s, 0.0, 1.0);
    }
    double s = 0.0;
    double sign = 1.0;
    for (int k = 1; k < 100; ++k) {
        const double term = std::exp(-2.0 * k * k * t * t);
        s += sign * term;
        sign = -sign;
        if (term < 1e-18) break;
    }
    return std::clamp(2.0 * s, 0.0, 1.0);
}

double tail_probability(TailKind kind, double arg, double aux) {
    switch (kind) {
    case TailKind::StdNormalCdf: return normal_cdf(arg);
    case TailKind::StdNormalQuantile: return normal_quantile(arg);
    case TailKind::ChiSquareSf: return chi_square_sf(arg, aux);
    case TailKind::KolmogorovSf:
        if (!(aux >= 1.0)) throw DomainError("Kolmogorov distribution requires n >= 1");
        return kolmogorov_sf(static_cast<std::size_t>(aux), arg);
    case TailKind::KolmogorovSfAsymptotic: return kolmogorov_sf_asymptotic(arg);
    }
    throw ArgumentError("unknown tail kind");
}

} // namespace rml
