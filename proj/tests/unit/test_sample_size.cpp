#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rml/asymptotics.hpp"
#include "rml/errors.hpp"
#include "rml/numerics.hpp"
#include "rml/sample_size.hpp"

using namespace rml;

TEST_CASE("K-S distance between models against a brute-force sup") {
    const std::vector<std::pair<Model, Model>> pairs{
        {Model::lindley(0.45), Model::xgamma(0.59983)}, {Model::lindley(1.38), Model::xgamma(1.69784)},
        {Model::xgamma(0.85), Model::lindley(0.6552)},   {Model::xgamma(2.05), Model::lindley(1.69716)},
        {Model::lindley(1.0), Model::lindley(2.0)},       {Model::xgamma(0.1), Model::lindley(3.0)},
    };
    for (const auto& [a, b] : pairs) {
        const double hi = 60.0 / std::min(a.param(), b.param());
        const double brute = rml::testing::brute_sup([&](double x) { return cdf(a, x) - cdf(b, x); }, 0.0, hi, 200000);
        CHECK(ks_distance(a, b) == doctest::Approx(brute).epsilon(1e-6));
        CHECK(ks_distance(a, b) == doctest::Approx(ks_distance(b, a)).epsilon(1e-12));
    }
    CHECK(ks_distance(Model::lindley(1.0), Model::lindley(1.0)) == 0.0);
}

TEST_CASE("min_n reproduces the consistent cells") {
    CHECK(min_n(Model::lindley(0.78), 0.90) == 481);
    CHECK(min_n(Model::xgamma(1.26), 0.90) == 532);
    const auto n125 = min_n(Model::xgamma(1.25), 0.90);
    CHECK(n125 >= 525);
    CHECK(n125 <= 535);
    CHECK_THROWS_AS(min_n(Model::lindley(1.0), 0.5), ArgumentError);
    CHECK_THROWS_AS(min_n(Model::lindley(1.0), 1.0), ArgumentError);
}

TEST_CASE("min_n is the smallest n meeting p*") {
    for (Family f : {Family::Lindley, Family::Xgamma}) {
        const auto grid = f == Family::Lindley ? default_lambda_grid() : default_theta_grid();
        for (double p : grid) {
            const auto s = asymptotic_summary(Model(f, p));
            for (double ps : {0.85, 0.90, 0.95}) {
                const auto n = min_n(s, ps);
                CHECK(pcs_asymptotic(s, n) >= ps);
                if (n > 1) CHECK(pcs_asymptotic(s, n - 1) < ps);
            }
        }
    }
}

TEST_CASE("changing p* rescales n by the squared quantile ratio") {
    const auto s = asymptotic_summary(Model::lindley(0.78));
    const double base = s.av / (s.am * s.am);
    const double r = normal_quantile(0.85) / normal_quantile(0.90);
    CHECK(static_cast<double>(min_n(s, 0.85)) == doctest::Approx(std::ceil(base * normal_quantile(0.90) * normal_quantile(0.90) * r * r)));
}

namespace {
std::vector<SampleSizeRow> rows_from(Family f, const std::vector<std::pair<double, std::size_t>>& ns,
                                     const std::vector<double>& ks) {
    std::vector<SampleSizeRow> out;
    for (std::size_t i = 0; i < ns.size(); ++i) out.push_back({Model(f, ns[i].first), 0.0, ks[i], ns[i].second});
    return out;
}
// Reference rows with their published n and K-S values.
const auto lindley_rows = rows_from(
    Family::Lindley,
    {{0.45, 15}, {0.55, 33}, {0.65, 96}, {0.70, 196}, {0.75, 400}, {0.78, 481}, {0.89, 143}, {0.90, 127},
     {1.15, 21}, {1.16, 20}, {1.37, 10}, {1.38, 9}},
    {0.02158, 0.02520, 0.02776, 0.02867, 0.02943, 0.02983, 0.03098, 0.03106, 0.03196, 0.03193, 0.03118, 0.03086});
const auto xgamma_rows = rows_from(
    Family::Xgamma,
    {{0.85, 23}, {0.90, 30}, {1.05, 87}, {1.10, 137}, {1.25, 525}, {1.26, 532}, {1.40, 191}, {1.50, 89},
     {1.65, 41}, {1.80, 24}, {2.00, 14}, {2.05, 13}},
    {0.02674, 0.02771, 0.02964, 0.03007, 0.03099, 0.03104, 0.03155, 0.03175, 0.03183, 0.03164, 0.03102, 0.03087});
} // namespace

TEST_CASE("plan over injected rows: endpoint aggregation") {
    const auto plan = combine_plan(0.90, 0.03, lindley_rows, xgamma_rows, CaseAggregation::RestrictedEndpoints);
    REQUIRE(plan.lindley.n.has_value());
    REQUIRE(plan.xgamma.n.has_value());
    CHECK(*plan.lindley.n == 143);
    CHECK(*plan.xgamma.n == 137);
    CHECK(plan.combined_n == std::optional<std::size_t>(143));
    CHECK(plan.lindley.qualifying.size() == 6);
    CHECK(plan.xgamma.qualifying.size() == 9);
}

TEST_CASE("plan over injected rows: max over the restricted set") {
    const auto plan = combine_plan(0.90, 0.03, lindley_rows, xgamma_rows);
    CHECK(*plan.lindley.n == 143);
    CHECK(*plan.xgamma.n == 532);
    CHECK(*plan.combined_n == 532);
}

TEST_CASE("plan tolerance edge cases") {
    const auto none = combine_plan(0.90, 1.0, lindley_rows, xgamma_rows);
    CHECK(!none.lindley.n);
    CHECK(!none.xgamma.n);
    CHECK(!none.combined_n);
    const auto all = combine_plan(0.90, 0.0, lindley_rows, xgamma_rows);
    CHECK(*all.lindley.n == 481);
    CHECK(*all.combined_n == 532);
}

TEST_CASE("tabulated rows are internally consistent") {
    const std::vector<double> grid{0.78, 1.38};
    const auto rows = tabulate_sample_sizes(Family::Lindley, grid, 0.90);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n_required == 481);
    CHECK(rows[0].pseudo_true_param == doctest::Approx(1.00154).epsilon(1e-4));
    CHECK(rows[1].ks_distance == doctest::Approx(ks_distance(Model::lindley(1.38), Model::xgamma(rows[1].pseudo_true_param))));
    const auto plan = plan_min_sample_size(0.90, 0.03, default_lambda_grid(), default_theta_grid());
    CHECK(plan.lindley.rows.size() == 12);
    CHECK(plan.combined_n.has_value());
}
