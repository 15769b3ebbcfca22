#include "rml/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "rml/asymptotics.hpp"
#include "rml/discrimination.hpp"

namespace rml {

namespace {

constexpr std::array<std::size_t, 6> kSampleSizes{20, 40, 60, 80, 100, 400};

struct Tally {
    std::size_t correct = 0;
    std::size_t failed = 0;
};

Tally run_block(const Model& truth, std::size_t n, std::uint64_t seed, std::size_t first, std::size_t last) {
    Tally t;
    Eigen::ArrayXd buf(static_cast<Eigen::Index>(n));
    for (std::size_t r = first; r < last; ++r) {
        Rng rng = make_stream(seed, r);
        draw_into(truth, rng, buf);
        try {
            const Sample s(buf);
            if (is_correct(discriminate(s).selected, truth.family())) ++t.correct;
        } catch (const std::exception&) {
            ++t.failed;
        }
    }
    return t;
}

} // namespace

PcsEstimate simulate_pcs(const Model& truth, std::size_t n, std::size_t reps, std::uint64_t seed,
                         const SimulationOptions& opts) {
    if (n < 2) throw ArgumentError("simulation sample size must be >= 2");
    if (reps == 0) throw ArgumentError("replication count must be >= 1");

    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));

    std::vector<Tally> tallies(threads);
    if (threads == 1) {
        tallies[0] = run_block(truth, n, seed, 0, reps);
    } else {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            const std::size_t first = reps * w / threads;
            const std::size_t last = reps * (w + 1) / threads;
            workers.emplace_back([&, w, first, last] { tallies[w] = run_block(truth, n, seed, first, last); });
        }
    }

    Tally total;
    for (const Tally& t : tallies) {
        total.correct += t.correct;
        total.failed += t.failed;
    }
    if (static_cast<double>(total.failed) > opts.max_failure_fraction * static_cast<double>(reps)) {
        std::ostringstream msg;
        msg << total.failed << " of " << reps << " replications failed to fit";
        throw NumericalError(msg.str(), static_cast<double>(total.failed), static_cast<double>(reps));
    }

    const double p = static_cast<double>(total.correct) / static_cast<double>(reps);
    return {truth,
            n,
            reps,
            seed,
            p,
            std::sqrt(p * (1.0 - p) / static_cast<double>(reps)),
            pcs_asymptotic(truth, n),
            total.failed};
}

PcsTable pcs_table(std::span<const Model> truths, std::span<const std::size_t> ns, std::size_t reps,
                   std::uint64_t seed, const SimulationOptions& opts) {
    if (truths.empty() || ns.empty()) throw ArgumentError("pcs_table needs at least one truth and one n");
    PcsTable table{{truths.begin(), truths.end()}, {ns.begin(), ns.end()}, {}};
    table.cells.reserve(truths.size() * ns.size());
    for (const Model& truth : truths) {
        for (std::size_t n : ns) {
            try {
                table.cells.push_back(simulate_pcs(truth, n, reps, seed, opts));
            } catch (const NumericalError& e) {
                std::ostringstream msg;
                msg << "cell (" << to_string(truth.family()) << " " << truth.param() << ", n=" << n << "): " << e.what();
                throw NumericalError(msg.str(), e.estimate(), e.error_bound());
            }
        }
    }
    return table;
}

std::span<const std::size_t> default_sample_sizes() noexcept { return kSampleSizes; }

} // namespace rml
