#include "rml/estimation.hpp"

#include <cmath>

#include "rml/numerics.hpp"

namespace rml {

double log_likelihood(const Sample& sample, const Model& model) {
    return log_density(model, sample.values()).sum();
}

double lindley_mle_from_mean(double mean) {
    if (!(mean > 0.0) || !std::isfinite(mean)) throw DomainError("sample mean must be finite and > 0");
    const double b = mean - 1.0;
    return (-b + std::sqrt(b * b + 8.0 * mean)) / (2.0 * mean);
}

double xgamma_moment_estimate(double mean) {
    if (!(mean > 0.0) || !std::isfinite(mean)) throw DomainError("sample mean must be finite and > 0");
    // mean t^2 + (mean - 1) t - 3 = 0
    const double b = mean - 1.0;
    return (-b + std::sqrt(b * b + 12.0 * mean)) / (2.0 * mean);
}

double xgamma_score(const Sample& sample, double theta) {
    const Eigen::ArrayXd& x = sample.values();
    const Eigen::ArrayXd x2 = x.square();
    const double tail = (x2 / (2.0 + theta * x2)).mean();
    return (2.0 + theta) / (theta * (1.0 + theta)) + tail - sample.mean();
}

FitResult fit_lindley(const Sample& sample) {
    const double lambda = lindley_mle_from_mean(sample.mean());
    const Model model = Model::lindley(lambda);
    const double residual = (2.0 + lambda) / (lambda * (1.0 + lambda)) - sample.mean();
    return {model, log_likelihood(sample, model), 0, residual};
}

FitResult fit_xgamma(const Sample& sample) {
    // x^2/(2(1+t x^2/2)) == x^2/(2 + t x^2)
    const Eigen::ArrayXd x2 = sample.values().square();
    const double mean = sample.mean();
    const auto score = [&](double t) {
        return (2.0 + t) / (t * (1.0 + t)) + (x2 / (2.0 + t * x2)).mean() - mean;
    };

    const double guess = xgamma_moment_estimate(mean);
    Bracket br{guess / 10.0, guess * 10.0};
    try {
        br = expand_bracket(score, br.lo, br.hi, true);
    } catch (const BracketError&) {
        br = expand_bracket(score, 1e-8, 1.0, true);
    }
    const RootResult root = find_root_detailed(score, br.lo, br.hi, {1e-12, 1e-11, 400});
    const Model model = Model::xgamma(root.x);
    return {model, log_likelihood(sample, model), root.iterations, root.residual};
}

} // namespace rml
