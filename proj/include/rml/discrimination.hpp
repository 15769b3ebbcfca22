#pragma once

#include <string_view>

#include "rml/estimation.hpp"

namespace rml {

enum class Selection { Lindley, Xgamma, Inconclusive };

std::string_view to_string(Selection s) noexcept;

/// Log ratio of maximised likelihoods, Lindley over xgamma.
struct DiscriminationResult {
    double T;             // lindley_fit.log_likelihood - xgamma_fit.log_likelihood
    double T_normalized;  // T / n
    FitResult lindley_fit;
    FitResult xgamma_fit;
    Selection selected;
};

/// Lindley when T > 0, xgamma when T < 0, Inconclusive at exactly 0.
Selection select(double T) noexcept;

/// Does `selection` name the family of `truth`?
bool is_correct(Selection selection, Family truth) noexcept;

DiscriminationResult discriminate(const Sample& sample);

/// T recomputed from the expanded form
///   n [2 ln(l/t) + ln((1+t)/(1+l)) + (t-l) mean] + sum ln(1+x) - sum ln(1 + t x^2/2)
/// for given estimates. Used to cross-check `discriminate`.
double log_rml_expanded(const Sample& sample, double lambda_hat, double theta_hat);

} // namespace rml
