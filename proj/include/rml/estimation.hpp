#pragma once

#include <cstddef>

#include "rml/distributions.hpp"

namespace rml {

struct FitResult {
    Model model;             // fitted family member
    double log_likelihood;
    std::size_t iterations;  // 0 for closed-form fits
    double residual;         // score-equation residual at the estimate
};

/// Sum of log densities.
double log_likelihood(const Sample& sample, const Model& model);

/// Closed-form MLE  l = [-(m-1) + sqrt((m-1)^2 + 8m)] / (2m),  m = sample mean.
FitResult fit_lindley(const Sample& sample);

/// Root of the xgamma score equation
///   (2+t)/(t(1+t)) + (1/n) sum x_i^2 / (2 (1 + t x_i^2/2)) - mean = 0,
/// which is strictly decreasing in t.
FitResult fit_xgamma(const Sample& sample);

/// Lindley MLE as a function of the sample mean alone.
double lindley_mle_from_mean(double mean);

/// Solve (3+t)/(t(1+t)) = mean for t > 0 (method of moments for xgamma).
double xgamma_moment_estimate(double mean);

/// Left-minus-right of the xgamma score equation at theta.
double xgamma_score(const Sample& sample, double theta);

} // namespace rml
