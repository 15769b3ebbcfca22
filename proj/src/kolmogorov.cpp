// Exact distribution of the one-sample Kolmogorov statistic D_n, after
// Marsaglia, Tsang & Wang, "Evaluating Kolmogorov's distribution",
// J. Stat. Software 8(18), 2003.

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "rml/numerics.hpp"

namespace rml {

namespace {

constexpr double kScale = 1e140;
constexpr int kScaleExp = 140;

// V = A^n, with a base-10 exponent carried separately to avoid overflow.
void scaled_power(const Eigen::MatrixXd& a, std::size_t n, Eigen::Index probe, Eigen::MatrixXd& v, int& ev) {
    if (n == 1) {
        v = a;
        ev = 0;
        return;
    }
    scaled_power(a, n / 2, probe, v, ev);
    Eigen::MatrixXd b = v * v;
    int eb = 2 * ev;
    if (n % 2 == 1) b = a * b;
    if (b(probe, probe) > kScale) {
        b /= kScale;
        eb += kScaleExp;
    }
    v = std::move(b);
    ev = eb;
}

// P(D_n < d)
double kolmogorov_cdf_exact(std::size_t n, double d) {
    const double nd = static_cast<double>(n) * d;
    if (nd <= 0.5) return 0.0;
    if (d >= 1.0) return 1.0;

    const auto k = static_cast<Eigen::Index>(std::floor(nd)) + 1;
    const Eigen::Index m = 2 * k - 1;
    const double h = static_cast<double>(k) - nd;

    Eigen::MatrixXd H(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) H(i, j) = (i - j + 1 >= 0) ? 1.0 : 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        H(i, 0) -= std::pow(h, static_cast<double>(i + 1));
        H(m - 1, i) -= std::pow(h, static_cast<double>(m - i));
    }
    if (2.0 * h - 1.0 > 0.0) H(m - 1, 0) += std::pow(2.0 * h - 1.0, static_cast<double>(m));
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            for (Eigen::Index g = 1; g <= i - j + 1; ++g) H(i, j) /= static_cast<double>(g);

    Eigen::MatrixXd q;
    int eq = 0;
    scaled_power(H, n, k - 1, q, eq);
    double s = q(k - 1, k - 1);
    const double dn = static_cast<double>(n);
    for (std::size_t i = 1; i <= n; ++i) {
        s = s * static_cast<double>(i) / dn;
        if (s < 1.0 / kScale) {
            s *= kScale;
            eq -= kScaleExp;
        }
    }
    return s * std::pow(10.0, eq);
}

} // namespace

double kolmogorov_sf_exact(std::size_t n, double d) {
    if (n == 0) throw DomainError("Kolmogorov distribution requires n >= 1");
    if (std::isnan(d)) throw DomainError("Kolmogorov statistic is NaN");
    if (d <= 0.0) return 1.0;
    if (d >= 1.0) return 0.0;
    const double cdf = kolmogorov_cdf_exact(n, d);
    return std::clamp(1.0 - cdf, 0.0, 1.0);
}

} // namespace rml
