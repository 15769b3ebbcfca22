#include "rml/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace rml {

namespace {

double lindley_mean(double lambda) { return (2.0 + lambda) / (lambda * (1.0 + lambda)); }
double xgamma_mean(double theta) { return (3.0 + theta) / (theta * (1.0 + theta)); }

} // namespace

double lindley_to_xgamma_objective(double lambda, double theta, const QuadratureSpec& spec) {
    const Model truth = Model::lindley(lambda);
    const double e = expect(truth, [theta](double x) { return std::log1p(0.5 * theta * x * x); }, spec);
    return log_norm_const(theta) + e - theta * lindley_mean(lambda);
}

double lindley_to_xgamma_score(double lambda, double theta, const QuadratureSpec& spec) {
    const Model truth = Model::lindley(lambda);
    const double e = expect(
        truth, [theta](double x) { const double x2 = x * x; return x2 / (2.0 + theta * x2); }, spec);
    return 2.0 / theta - 1.0 / (1.0 + theta) + e - lindley_mean(lambda);
}

double xgamma_to_lindley_objective(double theta, double lambda, const QuadratureSpec& spec) {
    const Model truth = Model::xgamma(theta);
    const double e = expect(truth, [](double x) { return std::log1p(x); }, spec);
    return log_norm_const(lambda) + e - lambda * xgamma_mean(theta);
}

double xgamma_to_lindley_score(double theta, double lambda) noexcept {
    return 2.0 / lambda - 1.0 / (1.0 + lambda) - xgamma_mean(theta);
}

double pseudo_true_theta(double lambda, const QuadratureSpec& spec) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be finite and > 0");
    const auto score = [&](double t) { return lindley_to_xgamma_score(lambda, t, spec); };
    const Bracket br = expand_bracket(score, std::max(1e-6, lambda / 4.0), 8.0 * lambda + 2.0, true);
    const RootResult r = find_root_detailed(score, br.lo, br.hi, {1e-12, 1e-11, 300});

    // g is concave; confirm the stationary point is a maximum.
    const double step = 1e-4 * r.x;
    const double curvature = (score(r.x + step) - score(r.x - step)) / (2.0 * step);
    if (!(curvature < 0.0)) {
        throw NumericalError("pseudo-true theta is not a maximum of g", r.x, curvature);
    }
    return r.x;
}

double pseudo_true_lambda(double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("theta must be finite and > 0");
    const double c = xgamma_mean(theta);
    const double b = c - 1.0;
    return (-b + std::sqrt(b * b + 8.0 * c)) / (2.0 * c);
}

Model pseudo_true(const Model& truth, const QuadratureSpec& spec) {
    if (truth.family() == Family::Lindley) return Model::xgamma(pseudo_true_theta(truth.param(), spec));
    return Model::lindley(pseudo_true_lambda(truth.param()));
}

AsymptoticSummary asymptotic_summary(const Model& truth, const QuadratureSpec& spec) {
    const Model counterpart = pseudo_true(truth, spec);
    const bool ld_truth = truth.family() == Family::Lindley;
    const double lam = ld_truth ? truth.param() : counterpart.param();
    const double th = ld_truth ? counterpart.param() : truth.param();

    const double mean_x = moments(truth).mean;
    const double e_log1p = expect(truth, [](double x) { return std::log1p(x); }, spec);
    const double e_logxg = expect(truth, [th](double x) { return std::log1p(0.5 * th * x * x); }, spec);
    const double am = 2.0 * std::log(lam / th) + std::log((1.0 + th) / (1.0 + lam)) + (th - lam) * mean_x +
                      e_log1p - e_logxg;

    const Model ld = Model::lindley(lam);
    const Model xg = Model::xgamma(th);
    const auto d = [&](double x) { return log_density(ld, x) - log_density(xg, x); };
    const double av = variance(truth, d, spec);
    if (!(av > 0.0)) throw NumericalError("asymptotic variance is not positive", av, spec.abs_tol);

    return {truth, counterpart.param(), am, av};
}

double asymptotic_variance_expansion(const Model& truth, double pseudo_true_param, const QuadratureSpec& spec) {
    const bool ld_truth = truth.family() == Family::Lindley;
    const double lam = ld_truth ? truth.param() : pseudo_true_param;
    const double th = ld_truth ? pseudo_true_param : truth.param();
    const double a = th - lam;

    const ScalarFn id = [](double x) { return x; };
    const ScalarFn l1 = [](double x) { return std::log1p(x); };
    const ScalarFn l2 = [th](double x) { return std::log1p(0.5 * th * x * x); };

    return a * a * moments(truth).variance + variance(truth, l1, spec) + variance(truth, l2, spec) +
           2.0 * a * covariance(truth, id, l1, spec) - 2.0 * a * covariance(truth, id, l2, spec) -
           2.0 * covariance(truth, l1, l2, spec);
}

double pcs_asymptotic(Family truth, double am, double av, std::size_t n) {
    if (n == 0) throw ArgumentError("sample size must be >= 1");
    if (!(av > 0.0)) throw DomainError("asymptotic variance must be > 0");
    const double z = std::sqrt(static_cast<double>(n)) * am / std::sqrt(av);
    return normal_cdf(truth == Family::Lindley ? z : -z);
}

double pcs_asymptotic(const AsymptoticSummary& summary, std::size_t n) {
    return pcs_asymptotic(summary.truth.family(), summary.am, summary.av, n);
}

double pcs_asymptotic(const Model& truth, std::size_t n, const QuadratureSpec& spec) {
    return pcs_asymptotic(asymptotic_summary(truth, spec), n);
}

} // namespace rml
