#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rml/distributions.hpp"

namespace rml {

struct PcsEstimate {
    Model truth;
    std::size_t n;
    std::size_t reps;
    std::uint64_t seed;
    double pcs_mc;          // fraction of replications selecting the true family
    double std_error;       // sqrt(p (1-p) / reps)
    double pcs_asymptotic;  // normal approximation at the same (truth, n)
    std::size_t failed_fits;
};

struct SimulationOptions {
    unsigned threads = 0;                  // 0: std::thread::hardware_concurrency()
    double max_failure_fraction = 1e-3;    // above this the run is an error
};

/// Replication r draws from make_stream(seed, r), so the estimate does not
/// depend on the thread count or scheduling. A replication whose fit fails
/// counts as an incorrect selection.
PcsEstimate simulate_pcs(const Model& truth, std::size_t n, std::size_t reps, std::uint64_t seed,
                         const SimulationOptions& opts = {});

struct PcsTable {
    std::vector<Model> truths;    // rows
    std::vector<std::size_t> ns;  // columns
    std::vector<PcsEstimate> cells;  // row-major

    const PcsEstimate& at(std::size_t row, std::size_t col) const { return cells.at(row * ns.size() + col); }
};

/// Every (truth, n) cell with the same seed (common random numbers across cells).
PcsTable pcs_table(std::span<const Model> truths, std::span<const std::size_t> ns, std::size_t reps,
                   std::uint64_t seed, const SimulationOptions& opts = {});

/// Sample sizes used by the published simulation tables.
std::span<const std::size_t> default_sample_sizes() noexcept;

inline constexpr std::size_t default_replications = 25000;

} // namespace rml
