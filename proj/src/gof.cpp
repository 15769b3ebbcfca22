#include "rml/gof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rml/numerics.hpp"

namespace rml {

KsTestResult ks_test(const Sample& sample, const Model& model) {
    const Sample s = sample.sorted();
    const auto& x = s.values();
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double f = cdf(model, x[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return {d, kolmogorov_sf(s.size(), d)};
}

GofReport chi_square_test(const Sample& sample, const Model& model, std::span<const double> edges,
                          std::size_t fitted_params) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!(edges[i] > 0.0) || !std::isfinite(edges[i])) throw ArgumentError("bin edges must be finite and > 0");
        if (i > 0 && !(edges[i] > edges[i - 1])) throw ArgumentError("bin edges must be strictly increasing");
    }
    const std::size_t nbins = edges.size() + 1;
    if (nbins < fitted_params + 2) {
        throw ArgumentError("need at least " + std::to_string(fitted_params + 2) + " bins for a positive df");
    }

    const double n = static_cast<double>(sample.size());
    std::vector<Bin> bins(nbins);
    double prev_cdf = 0.0;
    for (std::size_t b = 0; b < nbins; ++b) {
        const double lo = b == 0 ? 0.0 : edges[b - 1];
        const double hi = b + 1 == nbins ? std::numeric_limits<double>::infinity() : edges[b];
        const double next_cdf = b + 1 == nbins ? 1.0 : cdf(model, hi);
        bins[b] = {lo, hi, 0, n * (next_cdf - prev_cdf)};
        prev_cdf = next_cdf;
        if (!(bins[b].expected > 0.0)) {
            throw ArgumentError("bin " + std::to_string(b + 1) + " has zero expected count; merge it with a neighbour");
        }
    }
    for (double v : sample.view()) {
        // first edge >= v gives the right-closed bin
        const auto it = std::lower_bound(edges.begin(), edges.end(), v);
        ++bins[static_cast<std::size_t>(it - edges.begin())].observed;
    }

    double chi = 0.0;
    for (const Bin& b : bins) {
        const double diff = static_cast<double>(b.observed) - b.expected;
        chi += diff * diff / b.expected;
    }
    const std::size_t df = nbins - 1 - fitted_params;
    const KsTestResult ks = ks_test(sample, model);
    return {ks.statistic, ks.p_value, chi, df, chi_square_sf(chi, static_cast<double>(df)), std::move(bins)};
}

} // namespace rml
