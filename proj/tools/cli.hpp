#pragma once

// Command-line front end for rml: data ingestion, subcommand dispatch and
// report rendering. Kept separate from main() so the tests can drive it.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rml/distributions.hpp"
#include "rml/sample_size.hpp"

namespace rml::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Text };

inline constexpr std::uint64_t default_seed = 20190531;

struct RunConfig {
    std::string command;  // fit | discriminate | asymptotics | sample-size | simulate | gof
    std::string data_path;
    std::string out_path;
    Format format = Format::Json;
    std::uint64_t seed = default_seed;
    std::size_t reps = 25000;
    double p_star = 0.90;
    double d_star = 0.03;
    std::string grid;         // lo:hi[:step] or comma list; applies to --family
    std::string lambda_grid;  // sample-size: Lindley-truth grid
    std::string theta_grid;   // sample-size: xgamma-truth grid
    std::string edges;        // gof: e1,e2,...
    std::string sizes;        // simulate: n1,n2,...
    std::optional<Family> family;
    CaseAggregation aggregation = CaseAggregation::MaxOverRestricted;
    unsigned threads = 0;
    double tol = 1e-10;
};

/// One positive real per line; an optional non-numeric header on the first
/// nonblank line; blank lines ignored. Throws InputError naming the line.
Sample parse_sample(std::istream& in);
Sample read_sample(const std::string& path);

/// "lo:hi" keeps the points of `defaults` inside [lo, hi]; "lo:hi:step" is an
/// arithmetic progression; "a,b,c" is taken verbatim.
std::vector<double> parse_grid(const std::string& spec, std::span<const double> defaults);
std::vector<double> parse_list(const std::string& spec);

/// Run a subcommand and build the report object
/// { "command", "inputs", "results", "diagnostics" }.
Json build_report(const RunConfig& config);

/// Render a report. CSV and text print every table under results.tables.
std::string render(const Json& report, Format format);

/// Error object { "error": { "type", "message", ["line"] } }.
Json error_object(const std::string& type, const std::string& message, std::optional<std::size_t> line = {});

/// Parse argv into a config. Returns std::nullopt after printing help.
/// Throws CLI::ParseError subclasses on bad usage.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Full pipeline with error handling; returns the process exit status.
///  0 ok, 2 usage, 3 input, 4 numerical, 1 anything else.
int run(const RunConfig& config, std::ostream& out);
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace rml::cli
