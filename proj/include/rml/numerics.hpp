#pragma once

#include <cstddef>
#include <functional>

#include "rml/distributions.hpp"

namespace rml {

using ScalarFn = std::function<double(double)>;

// ---------------------------------------------------------------------------
// Quadrature on (0, inf)

struct QuadratureSpec {
    double abs_tol = 1e-10;
    unsigned max_depth = 18;
};

struct QuadratureResult {
    double value;
    double error_bound;
    double l1_norm;
};

/// Adaptive Gauss-Kronrod (7/15) after the map x = t/(1-t). Returns the
/// estimate together with its error bound; never throws on slow convergence.
QuadratureResult integrate_halfline_detailed(const ScalarFn& f, const QuadratureSpec& spec = {});

/// As above, but throws NumericalError when the error bound exceeds
/// spec.abs_tol * max(1, ||f||_1).
double integrate_halfline(const ScalarFn& f, const QuadratureSpec& spec = {});

/// E[h(X)] for X ~ model.
double expect(const Model& model, const ScalarFn& h, const QuadratureSpec& spec = {});

/// Var[h(X)] = E[h^2] - E[h]^2.
double variance(const Model& model, const ScalarFn& h, const QuadratureSpec& spec = {});

/// Cov[g(X), h(X)] = E[gh] - E[g]E[h].
double covariance(const Model& model, const ScalarFn& g, const ScalarFn& h,
                  const QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------
// Bracketed scalar roots

struct RootOptions {
    double x_tol = 1e-10;   // relative to max(1, |x|)
    double f_tol = 1e-10;
    std::size_t max_iter = 300;
};

struct RootResult {
    double x;
    double residual;        // f(x)
    double bracket_width;
    std::size_t iterations;
};

/// Illinois false position safeguarded by bisection. Requires a sign change
/// on [lo, hi]; throws BracketError otherwise.
RootResult find_root_detailed(const ScalarFn& f, double lo, double hi, const RootOptions& opts = {});

double find_root(const ScalarFn& f, double lo, double hi, double tol = 1e-10);

struct Bracket {
    double lo;
    double hi;
};

/// Grows `hi` geometrically (and, when `shrink_lo` is set, divides `lo` by the
/// same factor, which keeps a positive bracket positive) until f changes sign.
/// Throws BracketError after `max_steps` unsuccessful expansions.
Bracket expand_bracket(const ScalarFn& f, double lo, double hi, bool shrink_lo = false,
                       double factor = 2.0, std::size_t max_steps = 60);

// ---------------------------------------------------------------------------
// Distribution functions

double normal_cdf(double x) noexcept;
/// z with normal_cdf(z) = p, 0 < p < 1.
double normal_quantile(double p);

/// Upper tail of chi-square with `df` degrees of freedom.
double chi_square_sf(double x, double df);

/// P(D_n >= d) for the one-sample Kolmogorov statistic. Exact
/// (Marsaglia-Tsang-Wang) for n < exact_kolmogorov_limit, limiting series otherwise.
double kolmogorov_sf(std::size_t n, double d);
double kolmogorov_sf_exact(std::size_t n, double d);
/// Limiting upper tail 2 sum (-1)^{k-1} exp(-2 k^2 t^2), t = sqrt(n) d.
double kolmogorov_sf_asymptotic(double t);

inline constexpr std::size_t exact_kolmogorov_limit = 100;

enum class TailKind { StdNormalCdf, StdNormalQuantile, ChiSquareSf, KolmogorovSf, KolmogorovSfAsymptotic };

/// Dispatcher over the functions above. `aux` is df for ChiSquareSf and n for
/// KolmogorovSf; ignored otherwise.
double tail_probability(TailKind kind, double arg, double aux = 0.0);

} // namespace rml
