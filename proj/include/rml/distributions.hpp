#pragma once

// Lindley and xgamma lifetime families.
//
//   Lindley(l):  f(x) = l^2/(1+l) (1+x) e^{-l x}
//   xgamma(t):   f(x) = t^2/(1+t) (1 + t x^2/2) e^{-t x}
//
// Both are finite mixtures of an exponential and an Erlang law with the same
// rate, which is what the sampler uses.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "rml/errors.hpp"

namespace rml {

enum class Family { Lindley, Xgamma };

std::string_view to_string(Family family) noexcept;
/// Case-insensitive; accepts "lindley"/"ld" and "xgamma"/"xg".
Family parse_family(std::string_view name);

/// The other family of the pair.
constexpr Family other(Family family) noexcept {
    return family == Family::Lindley ? Family::Xgamma : Family::Lindley;
}

/// One member of either family. The parameter is the rate-like lambda
/// (Lindley) or theta (xgamma); always strictly positive.
class Model {
public:
    Model(Family family, double param);

    static Model lindley(double lambda) { return {Family::Lindley, lambda}; }
    static Model xgamma(double theta) { return {Family::Xgamma, theta}; }

    Family family() const noexcept { return family_; }
    double param() const noexcept { return param_; }

    friend bool operator==(const Model&, const Model&) = default;

private:
    Family family_;
    double param_;
};

/// Observed lifetimes. Every value finite and > 0, at least one value.
class Sample {
public:
    explicit Sample(Eigen::ArrayXd values);
    explicit Sample(std::span<const double> values);
    Sample(std::initializer_list<double> values);

    const Eigen::ArrayXd& values() const noexcept { return values_; }
    std::span<const double> view() const noexcept {
        return {values_.data(), static_cast<std::size_t>(values_.size())};
    }
    std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
    double sum() const noexcept { return sum_; }
    double mean() const noexcept { return sum_ / static_cast<double>(values_.size()); }

    /// Copy with values in ascending order.
    Sample sorted() const;

private:
    Eigen::ArrayXd values_;
    double sum_ = 0.0;
};

struct Moments {
    double mean;
    double variance;
};

// log of the normalising constant, 2 ln p - ln(1+p)
inline double log_norm_const(double param) noexcept {
    return 2.0 * std::log(param) - std::log1p(param);
}

/// ln f(x). Requires x >= 0.
double log_density(const Model& model, double x);

/// f(x) for x >= 0; x = 0 gives the right limit p^2/(1+p).
double density(const Model& model, double x);

/// Elementwise ln f over an array of positive values. No validation: the
/// caller guarantees positivity (a Sample always does).
template <typename Derived>
Eigen::ArrayXd log_density(const Model& model, const Eigen::ArrayBase<Derived>& x) {
    const double p = model.param();
    const double c = log_norm_const(p);
    if (model.family() == Family::Lindley) {
        return c + x.derived().log1p() - p * x.derived();
    }
    return c + (0.5 * p * x.derived().square()).log1p() - p * x.derived();
}

/// F(x) for x >= 0, closed form.
double cdf(const Model& model, double x);

/// 1 - F(x), computed without cancellation in the upper tail.
double survival(const Model& model, double x);

Moments moments(const Model& model) noexcept;

// ---------------------------------------------------------------------------
// Random variates

using Rng = std::mt19937_64;

/// Engine for stream `stream` of master seed `seed`. Streams are decorrelated
/// through a splitmix64 finaliser, so (seed, stream) fully determines output.
Rng make_stream(std::uint64_t seed, std::uint64_t stream = 0);

/// Uniform on the open interval (0, 1), 53 random bits. Portable across
/// standard libraries, unlike std::uniform_real_distribution.
double uniform_open(Rng& rng) noexcept;

/// One variate by mixture composition.
double draw(const Model& model, Rng& rng) noexcept;

/// Overwrite `out` with i.i.d. variates.
void draw_into(const Model& model, Rng& rng, Eigen::Ref<Eigen::ArrayXd> out) noexcept;

/// n i.i.d. variates from stream 0 of `seed`. n >= 1.
Sample sample(const Model& model, std::size_t n, std::uint64_t seed);

} // namespace rml
