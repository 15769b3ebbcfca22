#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "rml/distributions.hpp"
#include "rml/errors.hpp"
#include "rml/numerics.hpp"

using namespace rml;

TEST_CASE("half-line quadrature: closed-form integrals inside the reported bound") {
    struct Case { ScalarFn f; double exact; };
    const std::vector<Case> cases{
        {[](double x) { return std::exp(-x); }, 1.0},
        {[](double x) { return x * x * std::exp(-0.3 * x); }, 2.0 / (0.3 * 0.3 * 0.3)},
        {[](double x) { return 1.0 / (1.0 + x * x); }, std::numbers::pi / 2},
        {[](double x) { return std::exp(-x * x); }, std::sqrt(std::numbers::pi) / 2},
        {[](double x) { return std::log1p(x) * std::exp(-x); }, 0.5963473623231940743},  // e E1(1)
        {[](double x) { return std::pow(x, 4.5) * std::exp(-2 * x); }, std::tgamma(5.5) / std::pow(2.0, 5.5)},
    };
    for (const auto& c : cases) {
        const auto r = integrate_halfline_detailed(c.f);
        CHECK(std::abs(r.value - c.exact) <= std::max(r.error_bound, 1e-14) * 10);
        CHECK(std::abs(r.value - c.exact) <= 1e-9 * std::max(1.0, std::abs(c.exact)));
        CHECK(integrate_halfline(c.f) == doctest::Approx(c.exact).epsilon(1e-9));
    }
}

TEST_CASE("half-line quadrature refuses a divergent integral") {
    CHECK_THROWS_AS(integrate_halfline([](double x) { return 1.0 / (1.0 + x); }), NumericalError);
    CHECK_THROWS_AS(integrate_halfline([](double x) { return std::exp(-x); }, QuadratureSpec{-1.0, 10}), ArgumentError);
}

TEST_CASE("expectations against Simpson") {
    for (double p : {0.45, 1.26, 3.0}) {
        const auto h = [](double x) { return std::log1p(0.5 * x * x); };
        CHECK(expect(Model::lindley(p), h) == doctest::Approx(rml::testing::simpson_expect(true, p, h)).epsilon(1e-9));
        CHECK(expect(Model::xgamma(p), h) == doctest::Approx(rml::testing::simpson_expect(false, p, h)).epsilon(1e-9));
    }
    // Frozen value: E[ln(1+X)] under Lindley(0.45).
    CHECK(expect(Model::lindley(0.45), [](double x) { return std::log1p(x); }) ==
          doctest::Approx(1.3660101540402694).epsilon(1e-10));
    const auto m = Model::lindley(0.8);
    const auto id = [](double x) { return x; };
    CHECK(variance(m, id) == doctest::Approx(moments(m).variance).epsilon(1e-9));
    CHECK(covariance(m, id, id) == doctest::Approx(moments(m).variance).epsilon(1e-9));
}

TEST_CASE("root finder") {
    CHECK(find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(find_root([](double x) { return std::cos(x) - x; }, 0.0, 1.0) ==
          doctest::Approx(0.7390851332151607).epsilon(1e-12));
    // Flat near the root and lopsided: forced bisection keeps this bounded.
    const auto r = find_root_detailed([](double x) { return std::pow(x - 1.0, 3); }, 0.0, 10.0);
    CHECK(std::abs(r.x - 1.0) < 1e-3);
    CHECK(r.iterations < 300);
    const auto s = find_root_detailed([](double x) { return std::exp(x) - 1e6; }, 0.0, 50.0);
    CHECK(s.x == doctest::Approx(std::log(1e6)).epsilon(1e-12));
    CHECK(find_root([](double x) { return x; }, 0.0, 1.0) == 0.0);
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1; }, -1.0, 1.0), BracketError);
}

TEST_CASE("bracket expansion") {
    const auto f = [](double x) { return 50.0 - x; };
    const auto b = expand_bracket(f, 1.0, 2.0);
    CHECK(b.lo <= 50.0);
    CHECK(b.hi >= 50.0);
    const auto g = [](double x) { return 1e-3 - x; };
    const auto c = expand_bracket(g, 1.0, 2.0, true);
    CHECK(c.lo <= 1e-3);
    CHECK_THROWS_AS(expand_bracket([](double) { return 1.0; }, 1.0, 2.0), BracketError);
}

TEST_CASE("normal distribution identities") {
    CHECK(normal_cdf(0.0) == 0.5);
    for (double x : {-6.0, -1.3, 0.2, 2.5}) CHECK(normal_cdf(x) + normal_cdf(-x) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(normal_quantile(0.9) == doctest::Approx(1.2815515655446004).epsilon(1e-14));
    CHECK(normal_quantile(0.85) == doctest::Approx(1.0364333894937898).epsilon(1e-14));
    CHECK(normal_quantile(0.001) == doctest::Approx(-3.090232306167813).epsilon(1e-14));
    for (double p : {1e-10, 0.01, 0.3, 0.5, 0.77, 0.999}) CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    CHECK_THROWS_AS(normal_quantile(1.0), DomainError);
}

TEST_CASE("chi-square upper tail") {
    CHECK(chi_square_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(chi_square_sf(3.0419, 3) == doctest::Approx(0.38521002777648605).epsilon(1e-12));
    CHECK(chi_square_sf(11.0705, 5) == doctest::Approx(0.0499999554280436).epsilon(1e-12));
    CHECK(chi_square_sf(0.1833, 3) == doctest::Approx(0.980239130176323).epsilon(1e-12));
    CHECK(chi_square_sf(2.0, 10) == doctest::Approx(0.9963401531726563).epsilon(1e-12));
    CHECK(chi_square_sf(0.0, 4) == 1.0);
    // df = 2 has a closed form.
    CHECK(chi_square_sf(3.3, 2) == doctest::Approx(std::exp(-1.65)).epsilon(1e-14));
    CHECK_THROWS_AS(chi_square_sf(-1.0, 2), DomainError);
}

TEST_CASE("exact Kolmogorov distribution against frozen values") {
    CHECK(kolmogorov_sf_exact(23, 0.19283) == doctest::Approx(0.3173749426313357).epsilon(1e-9));
    CHECK(kolmogorov_sf_exact(23, 0.13228) == doctest::Approx(0.7679577489589967).epsilon(1e-9));
    CHECK(kolmogorov_sf_exact(10, 0.3) == doctest::Approx(0.27053557479999946).epsilon(1e-9));
    CHECK(kolmogorov_sf_exact(50, 0.1) == doctest::Approx(0.6623112704658186).epsilon(1e-9));
    CHECK(kolmogorov_sf_exact(99, 0.12) == doctest::Approx(0.10633092267538617).epsilon(1e-9));
    CHECK(kolmogorov_sf_exact(5, 0.6) == doctest::Approx(0.03008).epsilon(1e-9));
    CHECK(kolmogorov_sf_exact(100, 0.06768) == doctest::Approx(0.7234695577874632).epsilon(1e-9));
    // Edge cases: D <= 1/(2n) is certain, D >= 1 impossible.
    CHECK(kolmogorov_sf_exact(10, 0.04) == 1.0);
    CHECK(kolmogorov_sf_exact(10, 1.0) == 0.0);
    // n = 1: P(D > d) = 2(1 - d) for d in [1/2, 1].
    CHECK(kolmogorov_sf_exact(1, 0.7) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("asymptotic Kolmogorov distribution") {
    CHECK(kolmogorov_sf_asymptotic(0.5) == doctest::Approx(0.9639452436648751).epsilon(1e-12));
    CHECK(kolmogorov_sf_asymptotic(1.0) == doctest::Approx(0.26999967167735456).epsilon(1e-12));
    CHECK(kolmogorov_sf_asymptotic(1.5) == doctest::Approx(0.022217962616525127).epsilon(1e-12));
    CHECK(kolmogorov_sf_asymptotic(0.0) == 1.0);
    // Both series forms meet near t = 1.
    CHECK(kolmogorov_sf_asymptotic(1.0 - 1e-12) == doctest::Approx(kolmogorov_sf_asymptotic(1.0 + 1e-12)).epsilon(1e-10));
}

TEST_CASE("kolmogorov_sf switches to the limit law at n = 100") {
    CHECK(kolmogorov_sf(99, 0.12) == kolmogorov_sf_exact(99, 0.12));
    CHECK(kolmogorov_sf(100, 0.06768) == kolmogorov_sf_asymptotic(10 * 0.06768));
    CHECK(kolmogorov_sf(100, 0.0676782552748362) == doctest::Approx(0.7494563).epsilon(1e-6));
}

TEST_CASE("exact and limiting Kolmogorov laws converge at rate 1/sqrt(n)") {
    auto max_gap = [](std::size_t n) {
        double gap = 0;
        const double rn = std::sqrt(static_cast<double>(n));
        for (double t = 0.5; t <= 2.0; t += 0.01) gap = std::max(gap, std::abs(kolmogorov_sf_exact(n, t / rn) - kolmogorov_sf_asymptotic(t)));
        return gap;
    };
    const double g100 = max_gap(100), g400 = max_gap(400), g1000 = max_gap(1000);
    CHECK(g400 < g100);
    CHECK(g1000 < g400);
    CHECK(g1000 < 1e-2);
    for (auto [n, g] : {std::pair{100.0, g100}, {400.0, g400}, {1000.0, g1000}}) CHECK(g * std::sqrt(n) < 0.3);
}

TEST_CASE("tail_probability dispatch") {
    CHECK(tail_probability(TailKind::StdNormalCdf, 1.0) == normal_cdf(1.0));
    CHECK(tail_probability(TailKind::StdNormalQuantile, 0.9) == normal_quantile(0.9));
    CHECK(tail_probability(TailKind::ChiSquareSf, 2.0, 3) == chi_square_sf(2.0, 3));
    CHECK(tail_probability(TailKind::KolmogorovSf, 0.2, 23) == kolmogorov_sf(23, 0.2));
    CHECK(tail_probability(TailKind::KolmogorovSfAsymptotic, 1.1) == kolmogorov_sf_asymptotic(1.1));
    CHECK_THROWS_AS(tail_probability(TailKind::KolmogorovSf, 0.2, 0), DomainError);
}
