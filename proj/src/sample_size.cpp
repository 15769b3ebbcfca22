#include "rml/sample_size.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace rml {

namespace {

constexpr std::array<double, 12> kLambdaGrid{0.45, 0.55, 0.65, 0.70, 0.75, 0.78, 0.89, 0.90, 1.15, 1.16, 1.37, 1.38};
constexpr std::array<double, 12> kThetaGrid{0.85, 0.90, 1.05, 1.10, 1.25, 1.26, 1.40, 1.50, 1.65, 1.80, 2.00, 2.05};

constexpr std::size_t kGridPoints = 10000;

void check_p_star(double p_star) {
    if (!(p_star > 0.5 && p_star < 1.0)) throw ArgumentError("protection level p* must lie in (0.5, 1)");
}

CasePlan reduce_case(Family truth, std::vector<SampleSizeRow> rows, double d_star, CaseAggregation aggregation) {
    CasePlan plan{truth, std::move(rows), {}, std::nullopt};
    for (std::size_t i = 0; i < plan.rows.size(); ++i) {
        if (plan.rows[i].ks_distance > d_star) plan.qualifying.push_back(i);
    }
    if (plan.qualifying.empty()) return plan;

    std::vector<std::size_t> considered;
    if (aggregation == CaseAggregation::MaxOverRestricted) {
        considered = plan.qualifying;
    } else {
        const auto by_param = [&](std::size_t a, std::size_t b) {
            return plan.rows[a].truth.param() < plan.rows[b].truth.param();
        };
        const auto [lo, hi] = std::minmax_element(plan.qualifying.begin(), plan.qualifying.end(), by_param);
        considered = {*lo, *hi};
    }
    std::size_t n = 0;
    for (std::size_t i : considered) n = std::max(n, plan.rows[i].n_required);
    plan.n = n;
    return plan;
}

} // namespace

double ks_distance(const Model& a, const Model& b) {
    if (a == b) return 0.0;
    const double lo = 1e-6;
    const double hi = 100.0 / std::min(a.param(), b.param());
    const auto gap = [&](double x) { return density(a, x) - density(b, x); };
    const auto cdf_gap = [&](double x) { return std::abs(cdf(a, x) - cdf(b, x)); };

    double best = std::max(cdf_gap(lo), cdf_gap(hi));
    const double log_lo = std::log(lo);
    const double step = (std::log(hi) - log_lo) / static_cast<double>(kGridPoints - 1);
    double x_prev = lo;
    double g_prev = gap(lo);
    for (std::size_t i = 1; i < kGridPoints; ++i) {
        const double x = std::exp(log_lo + step * static_cast<double>(i));
        const double g = gap(x);
        if (g == 0.0) {
            best = std::max(best, cdf_gap(x));
        } else if (g_prev != 0.0 && (g > 0.0) != (g_prev > 0.0)) {
            const double root = find_root(gap, x_prev, x, 1e-13);
            best = std::max(best, cdf_gap(root));
        }
        x_prev = x;
        g_prev = g;
    }
    return best;
}

std::size_t min_n(const AsymptoticSummary& summary, double p_star) {
    check_p_star(p_star);
    if (summary.am == 0.0) throw NumericalError("AM is zero; no finite sample size discriminates", 0.0, 0.0);
    const double z = normal_quantile(p_star);
    const double n = std::ceil(z * z * summary.av / (summary.am * summary.am));
    if (!std::isfinite(n) || n > static_cast<double>(std::numeric_limits<std::size_t>::max() / 2)) {
        throw NumericalError("required sample size overflows", n, 0.0);
    }
    return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

std::size_t min_n(const Model& truth, double p_star, const QuadratureSpec& spec) {
    check_p_star(p_star);
    return min_n(asymptotic_summary(truth, spec), p_star);
}

std::vector<SampleSizeRow> tabulate_sample_sizes(Family truth, std::span<const double> grid, double p_star,
                                                 const QuadratureSpec& spec) {
    check_p_star(p_star);
    std::vector<SampleSizeRow> rows;
    rows.reserve(grid.size());
    for (double param : grid) {
        const Model model(truth, param);
        const AsymptoticSummary s = asymptotic_summary(model, spec);
        rows.push_back({model, s.pseudo_true_param, ks_distance(model, s.pseudo_true()), min_n(s, p_star)});
    }
    return rows;
}

SampleSizePlan combine_plan(double p_star, double d_star, std::vector<SampleSizeRow> lindley_rows,
                            std::vector<SampleSizeRow> xgamma_rows, CaseAggregation aggregation) {
    check_p_star(p_star);
    if (!(d_star >= 0.0)) throw ArgumentError("tolerance D* must be >= 0");
    if (lindley_rows.empty() || xgamma_rows.empty()) throw ArgumentError("parameter grids must be nonempty");

    SampleSizePlan plan{p_star,
                        d_star,
                        aggregation,
                        reduce_case(Family::Lindley, std::move(lindley_rows), d_star, aggregation),
                        reduce_case(Family::Xgamma, std::move(xgamma_rows), d_star, aggregation),
                        std::nullopt};
    for (const CasePlan* c : {&plan.lindley, &plan.xgamma}) {
        if (c->n) plan.combined_n = std::max(plan.combined_n.value_or(0), *c->n);
    }
    return plan;
}

SampleSizePlan plan_min_sample_size(double p_star, double d_star, std::span<const double> lambda_grid,
                                    std::span<const double> theta_grid, CaseAggregation aggregation,
                                    const QuadratureSpec& spec) {
    check_p_star(p_star);
    if (lambda_grid.empty() || theta_grid.empty()) throw ArgumentError("parameter grids must be nonempty");
    return combine_plan(p_star, d_star, tabulate_sample_sizes(Family::Lindley, lambda_grid, p_star, spec),
                        tabulate_sample_sizes(Family::Xgamma, theta_grid, p_star, spec), aggregation);
}

std::span<const double> default_lambda_grid() noexcept { return kLambdaGrid; }
std::span<const double> default_theta_grid() noexcept { return kThetaGrid; }

} // namespace rml
