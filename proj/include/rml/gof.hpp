#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rml/distributions.hpp"

namespace rml {

struct KsTestResult {
    double statistic;
    double p_value;
};

/// One-sample Kolmogorov-Smirnov test of `sample` against `model`.
KsTestResult ks_test(const Sample& sample, const Model& model);

struct Bin {
    double lower;  // exclusive
    double upper;  // inclusive; +inf for the last bin
    std::size_t observed;
    double expected;
};

struct GofReport {
    double ks_statistic;
    double ks_p_value;
    double chi_square;
    std::size_t chi_df;
    double chi_p_value;
    std::vector<Bin> bins;
};

/// Binned chi-square on (0, e1], (e1, e2], ..., (ek, inf) together with the
/// K-S test. df = bins - 1 - fitted_params.
GofReport chi_square_test(const Sample& sample, const Model& model, std::span<const double> edges,
                          std::size_t fitted_params);

} // namespace rml
