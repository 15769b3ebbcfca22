#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rml/asymptotics.hpp"

namespace rml {

/// sup_x |F_a(x) - F_b(x)|. The supremum sits where the densities cross, so
/// the crossings are located on a log-spaced grid and refined by root finding.
double ks_distance(const Model& a, const Model& b);

/// Smallest n with asymptotic PCS >= p_star: ceil(z_{p*}^2 AV / AM^2), at least 1.
/// Requires 0.5 < p_star < 1.
std::size_t min_n(const AsymptoticSummary& summary, double p_star);
std::size_t min_n(const Model& truth, double p_star, const QuadratureSpec& spec = {});

struct SampleSizeRow {
    Model truth;
    double pseudo_true_param;
    double ks_distance;      // truth vs its pseudo-true counterpart
    std::size_t n_required;  // min_n at the plan's p*
};

/// One row per grid parameter for the given truth family.
std::vector<SampleSizeRow> tabulate_sample_sizes(Family truth, std::span<const double> grid, double p_star,
                                                 const QuadratureSpec& spec = {});

/// How the rows whose K-S distance exceeds D* are reduced to one n.
enum class CaseAggregation {
    MaxOverRestricted,    // max n over every qualifying row
    RestrictedEndpoints,  // max n over the smallest and largest qualifying parameter only
};

struct CasePlan {
    Family truth;
    std::vector<SampleSizeRow> rows;
    std::vector<std::size_t> qualifying;  // indices into rows with ks_distance > d_star
    std::optional<std::size_t> n;         // empty: no discrimination needed
};

struct SampleSizePlan {
    double p_star;
    double d_star;
    CaseAggregation aggregation;
    CasePlan lindley;
    CasePlan xgamma;
    std::optional<std::size_t> combined_n;  // max over the cases that need discrimination
};

/// Selection logic only; rows may come from tabulate_sample_sizes or be injected.
SampleSizePlan combine_plan(double p_star, double d_star, std::vector<SampleSizeRow> lindley_rows,
                            std::vector<SampleSizeRow> xgamma_rows,
                            CaseAggregation aggregation = CaseAggregation::MaxOverRestricted);

SampleSizePlan plan_min_sample_size(double p_star, double d_star, std::span<const double> lambda_grid,
                                    std::span<const double> theta_grid,
                                    CaseAggregation aggregation = CaseAggregation::MaxOverRestricted,
                                    const QuadratureSpec& spec = {});

/// Parameter grids used by the published tables.
std::span<const double> default_lambda_grid() noexcept;
std::span<const double> default_theta_grid() noexcept;

} // namespace rml
