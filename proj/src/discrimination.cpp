#include "rml/discrimination.hpp"

#include <cmath>

namespace rml {

std::string_view to_string(Selection s) noexcept {
    switch (s) {
    case Selection::Lindley: return "lindley";
    case Selection::Xgamma: return "xgamma";
    case Selection::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Selection select(double T) noexcept {
    if (T > 0.0) return Selection::Lindley;
    if (T < 0.0) return Selection::Xgamma;
    return Selection::Inconclusive;
}

bool is_correct(Selection selection, Family truth) noexcept {
    return (truth == Family::Lindley && selection == Selection::Lindley) ||
           (truth == Family::Xgamma && selection == Selection::Xgamma);
}

DiscriminationResult discriminate(const Sample& sample) {
    FitResult ld = fit_lindley(sample);
    FitResult xg = fit_xgamma(sample);
    const double T = ld.log_likelihood - xg.log_likelihood;
    return {T, T / static_cast<double>(sample.size()), std::move(ld), std::move(xg), select(T)};
}

double log_rml_expanded(const Sample& sample, double lambda_hat, double theta_hat) {
    const double n = static_cast<double>(sample.size());
    const Eigen::ArrayXd& x = sample.values();
    const double per_obs = 2.0 * std::log(lambda_hat / theta_hat) + std::log((1.0 + theta_hat) / (1.0 + lambda_hat)) +
                           (theta_hat - lambda_hat) * sample.mean();
    return n * per_obs + x.log1p().sum() - (0.5 * theta_hat * x.square()).log1p().sum();
}

} // namespace rml
