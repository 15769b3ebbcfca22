#include "rml/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

namespace rml {

namespace {

void require_positive_finite(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(what) + " must be finite and > 0, got " + std::to_string(x));
    }
}

std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double exp_unit(Rng& rng) noexcept { return -std::log(uniform_open(rng)); }

} // namespace

std::string_view to_string(Family family) noexcept {
    return family == Family::Lindley ? "lindley" : "xgamma";
}

Family parse_family(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "lindley" || s == "ld") return Family::Lindley;
    if (s == "xgamma" || s == "xg") return Family::Xgamma;
    throw ArgumentError("unknown family '" + std::string(name) + "' (expected lindley or xgamma)");
}

Model::Model(Family family, double param) : family_(family), param_(param) {
    require_positive_finite(param, "model parameter");
}

Sample::Sample(Eigen::ArrayXd values) : values_(std::move(values)) {
    if (values_.size() == 0) throw ArgumentError("sample must contain at least one value");
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
        const double v = values_[i];
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw DomainError("sample value #" + std::to_string(i + 1) + " is not a finite positive real");
        }
    }
    sum_ = values_.sum();
}

Sample::Sample(std::span<const double> values)
    : Sample(Eigen::ArrayXd(Eigen::Map<const Eigen::ArrayXd>(values.data(),
                                                             static_cast<Eigen::Index>(values.size())))) {}

Sample::Sample(std::initializer_list<double> values)
    : Sample(std::span<const double>(values.begin(), values.size())) {}

Sample Sample::sorted() const {
    Eigen::ArrayXd v = values_;
    std::sort(v.data(), v.data() + v.size());
    return Sample(std::move(v));
}

double log_density(const Model& model, double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("log density requires finite x >= 0");
    const double p = model.param();
    const double tail = model.family() == Family::Lindley ? std::log1p(x) : std::log1p(0.5 * p * x * x);
    return log_norm_const(p) + tail - p * x;
}

double density(const Model& model, double x) {
    if (!(x >= 0.0)) throw DomainError("density requires x >= 0");
    if (std::isinf(x)) return 0.0;
    const double p = model.param();
    const double poly = model.family() == Family::Lindley ? 1.0 + x : 1.0 + 0.5 * p * x * x;
    return p * p / (1.0 + p) * poly * std::exp(-p * x);
}

double survival(const Model& model, double x) {
    if (!(x >= 0.0)) throw DomainError("cdf requires x >= 0");
    if (std::isinf(x)) return 0.0;
    const double p = model.param();
    const double px = p * x;
    const double poly = model.family() == Family::Lindley ? 1.0 + p + px : 1.0 + p + px + 0.5 * px * px;
    return poly / (1.0 + p) * std::exp(-px);
}

double cdf(const Model& model, double x) {
    const double s = survival(model, x);
    // 1 - s cancels near x = 0; expand around the origin instead.
    if (s > 0.5) {
        const double p = model.param();
        const double px = p * x;
        const double q = model.family() == Family::Lindley ? px : px + 0.5 * px * px;
        return -std::expm1(-px) - q / (1.0 + p) * std::exp(-px);
    }
    return 1.0 - s;
}

Moments moments(const Model& model) noexcept {
    const double p = model.param();
    const double p1 = 1.0 + p;
    if (model.family() == Family::Lindley) {
        return {(2.0 + p) / (p * p1), (p * p + 4.0 * p + 2.0) / (p * p * p1 * p1)};
    }
    return {(3.0 + p) / (p * p1), (p * p + 8.0 * p + 3.0) / (p * p * p1 * p1)};
}

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    const std::uint64_t a = splitmix64(seed);
    const std::uint64_t b = splitmix64(a ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return Rng(seq);
}

double uniform_open(Rng& rng) noexcept {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double draw(const Model& model, Rng& rng) noexcept {
    const double p = model.param();
    const int shape = model.family() == Family::Lindley ? 2 : 3;
    double e = exp_unit(rng);
    if (uniform_open(rng) >= p / (1.0 + p)) {
        for (int k = 1; k < shape; ++k) e += exp_unit(rng);
    }
    return e / p;
}

void draw_into(const Model& model, Rng& rng, Eigen::Ref<Eigen::ArrayXd> out) noexcept {
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = draw(model, rng);
}

Sample sample(const Model& model, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw ArgumentError("sample size must be >= 1");
    Rng rng = make_stream(seed, 0);
    Eigen::ArrayXd v(static_cast<Eigen::Index>(n));
    draw_into(model, rng, v);
    return Sample(std::move(v));
}

} // namespace rml
