#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rml/asymptotics.hpp"
#include "rml/discrimination.hpp"
#include "rml/estimation.hpp"
#include "rml/gof.hpp"
#include "rml/montecarlo.hpp"
#include "rml/numerics.hpp"

namespace rml::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::optional<double> to_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

double require_double(std::string_view s, const char* what) {
    const auto v = to_double(s);
    if (!v) throw ArgumentError(std::string("cannot parse ") + what + " '" + std::string(s) + "'");
    return *v;
}

std::string_view param_name(Family f) { return f == Family::Lindley ? "lambda" : "theta"; }

std::vector<Family> selected_families(const RunConfig& c) {
    if (c.family) return {*c.family};
    return {Family::Lindley, Family::Xgamma};
}

std::span<const double> default_grid(Family f) {
    return f == Family::Lindley ? default_lambda_grid() : default_theta_grid();
}

std::vector<double> grid_for(const RunConfig& c, Family f, const std::string& specific = {}) {
    if (!specific.empty()) return parse_grid(specific, default_grid(f));
    if (!c.grid.empty()) return parse_grid(c.grid, default_grid(f));
    const auto d = default_grid(f);
    return {d.begin(), d.end()};
}

QuadratureSpec quadrature(const RunConfig& c) {
    if (!(c.tol > 0.0) || c.tol > 1e-3) throw ArgumentError("--tol must lie in (0, 1e-3]");
    return {c.tol, 18};
}

Json fit_json(const FitResult& fit) {
    Json j;
    j["family"] = to_string(fit.model.family());
    j["parameter"] = param_name(fit.model.family());
    j["estimate"] = fit.model.param();
    j["log_likelihood"] = fit.log_likelihood;
    return j;
}

Json fit_diagnostics(const FitResult& fit) {
    return Json{{"iterations", fit.iterations}, {"score_residual", fit.residual}};
}

Json sample_inputs(const RunConfig& c, const Sample& s) {
    return Json{{"data", c.data_path}, {"n", s.size()}, {"mean", s.mean()}};
}

Sample load(const RunConfig& c) {
    if (c.data_path.empty()) throw ArgumentError("--data is required for '" + c.command + "'");
    return read_sample(c.data_path);
}

struct Sections {
    Json inputs = Json::object();
    Json results = Json::object();
    Json diagnostics = Json::object();
};

Sections do_fit(const RunConfig& c) {
    const Sample s = load(c);
    const FitResult ld = fit_lindley(s);
    const FitResult xg = fit_xgamma(s);
    Sections out;
    out.inputs = sample_inputs(c, s);
    out.results["lindley"] = fit_json(ld);
    out.results["xgamma"] = fit_json(xg);
    out.results["tables"]["fits"] = Json::array({fit_json(ld), fit_json(xg)});
    out.diagnostics["lindley"] = fit_diagnostics(ld);
    out.diagnostics["xgamma"] = fit_diagnostics(xg);
    return out;
}

Sections do_discriminate(const RunConfig& c) {
    const Sample s = load(c);
    const DiscriminationResult r = discriminate(s);
    Sections out;
    out.inputs = sample_inputs(c, s);
    out.results["T"] = r.T;
    out.results["T_normalized"] = r.T_normalized;
    out.results["selected"] = to_string(r.selected);
    out.results["lindley"] = fit_json(r.lindley_fit);
    out.results["xgamma"] = fit_json(r.xgamma_fit);
    out.results["tables"]["discrimination"] =
        Json::array({Json{{"T", r.T}, {"T_normalized", r.T_normalized}, {"selected", to_string(r.selected)},
                          {"lambda_hat", r.lindley_fit.model.param()}, {"theta_hat", r.xgamma_fit.model.param()},
                          {"loglik_lindley", r.lindley_fit.log_likelihood},
                          {"loglik_xgamma", r.xgamma_fit.log_likelihood}}});
    out.diagnostics["T_expanded"] = log_rml_expanded(s, r.lindley_fit.model.param(), r.xgamma_fit.model.param());
    out.diagnostics["lindley"] = fit_diagnostics(r.lindley_fit);
    out.diagnostics["xgamma"] = fit_diagnostics(r.xgamma_fit);
    return out;
}

Sections do_asymptotics(const RunConfig& c) {
    const QuadratureSpec spec = quadrature(c);
    Sections out;
    out.inputs["tol"] = c.tol;
    for (Family f : selected_families(c)) {
        const auto grid = grid_for(c, f);
        out.inputs[std::string(param_name(f)) + "_grid"] = grid;
        const bool ld = f == Family::Lindley;
        Json rows = Json::array();
        for (double p : grid) {
            const AsymptoticSummary s = asymptotic_summary(Model(f, p), spec);
            Json row;
            row[ld ? "lambda" : "theta"] = p;
            row[ld ? "AM_LD" : "AM_XG"] = s.am;
            row[ld ? "AV_LD" : "AV_XG"] = s.av;
            row[ld ? "theta_tilde" : "lambda_tilde"] = s.pseudo_true_param;
            rows.push_back(std::move(row));
        }
        out.results["tables"][ld ? "lindley_truth" : "xgamma_truth"] = std::move(rows);
    }
    return out;
}

Json case_json(const CasePlan& c) {
    Json j;
    Json params = Json::array();
    for (std::size_t i : c.qualifying) params.push_back(c.rows[i].truth.param());
    j["qualifying_params"] = std::move(params);
    j["n"] = c.n ? Json(*c.n) : Json(nullptr);
    j["status"] = c.n ? "discriminate" : "no discrimination needed";
    return j;
}

Sections do_sample_size(const RunConfig& c) {
    const QuadratureSpec spec = quadrature(c);
    const auto lg = grid_for(c, Family::Lindley, c.lambda_grid);
    const auto tg = grid_for(c, Family::Xgamma, c.theta_grid);
    const SampleSizePlan plan = plan_min_sample_size(c.p_star, c.d_star, lg, tg, c.aggregation, spec);

    Sections out;
    out.inputs = Json{{"pstar", c.p_star},
                      {"dstar", c.d_star},
                      {"lambda_grid", lg},
                      {"theta_grid", tg},
                      {"aggregation", c.aggregation == CaseAggregation::MaxOverRestricted ? "max" : "endpoints"},
                      {"tol", c.tol}};
    for (const CasePlan* cp : {&plan.lindley, &plan.xgamma}) {
        const bool ld = cp->truth == Family::Lindley;
        Json rows = Json::array();
        for (const SampleSizeRow& r : cp->rows) {
            Json row;
            row[ld ? "lambda" : "theta"] = r.truth.param();
            row[ld ? "theta_tilde" : "lambda_tilde"] = r.pseudo_true_param;
            row["n"] = r.n_required;
            row["K-S"] = r.ks_distance;
            rows.push_back(std::move(row));
        }
        out.results["tables"][ld ? "lindley_truth" : "xgamma_truth"] = std::move(rows);
    }
    out.results["plan"] = Json{{"lindley_truth", case_json(plan.lindley)},
                               {"xgamma_truth", case_json(plan.xgamma)},
                               {"combined_n", plan.combined_n ? Json(*plan.combined_n) : Json(nullptr)}};
    out.diagnostics["note"] =
        "n = ceil(z_{p*}^2 * AV / AM^2) from the asymptotic moments; some published n tables for this "
        "design disagree with that formula away from lambda~0.78 / theta~1.26";
    return out;
}

Sections do_simulate(const RunConfig& c) {
    std::vector<std::size_t> ns;
    if (c.sizes.empty()) {
        const auto d = default_sample_sizes();
        ns.assign(d.begin(), d.end());
    } else {
        for (double v : parse_list(c.sizes)) {
            if (!(v >= 2.0) || v != std::floor(v)) throw ArgumentError("--sizes entries must be integers >= 2");
            ns.push_back(static_cast<std::size_t>(v));
        }
    }
    Sections out;
    out.inputs = Json{{"seed", c.seed}, {"reps", c.reps}, {"sizes", ns}};
    const SimulationOptions opts{c.threads, 1e-3};
    Json cells = Json::array();
    std::size_t failed = 0;
    for (Family f : selected_families(c)) {
        const auto grid = grid_for(c, f);
        out.inputs[std::string(param_name(f)) + "_grid"] = grid;
        std::vector<Model> truths;
        for (double p : grid) truths.emplace_back(f, p);
        const PcsTable table = pcs_table(truths, ns, c.reps, c.seed, opts);
        Json rows = Json::array();
        for (std::size_t i = 0; i < truths.size(); ++i) {
            Json row;
            row[std::string(param_name(f))] = truths[i].param();
            for (std::size_t j = 0; j < ns.size(); ++j) {
                const PcsEstimate& e = table.at(i, j);
                row[std::to_string(ns[j])] = e.pcs_mc;
                row["(" + std::to_string(ns[j]) + ")"] = e.pcs_asymptotic;
                cells.push_back(Json{{"family", to_string(f)},
                                     {"param", e.truth.param()},
                                     {"n", e.n},
                                     {"reps", e.reps},
                                     {"seed", e.seed},
                                     {"pcs_mc", e.pcs_mc},
                                     {"std_error", e.std_error},
                                     {"pcs_asymptotic", e.pcs_asymptotic}});
                failed += e.failed_fits;
            }
            rows.push_back(std::move(row));
        }
        out.results["tables"][f == Family::Lindley ? "lindley_truth" : "xgamma_truth"] = std::move(rows);
    }
    out.results["cells"] = std::move(cells);
    out.diagnostics["failed_fits"] = failed;
    return out;
}

Json gof_json(const FitResult& fit, const GofReport& g) {
    Json j = fit_json(fit);
    j["ks_statistic"] = g.ks_statistic;
    j["ks_p_value"] = g.ks_p_value;
    j["chi_square"] = g.chi_square;
    j["chi_df"] = g.chi_df;
    j["chi_p_value"] = g.chi_p_value;
    return j;
}

std::string interval_label(const Bin& b) {
    std::ostringstream os;
    if (std::isinf(b.upper)) {
        os << "above " << b.lower;
    } else {
        os << b.lower << "-" << b.upper;
    }
    return os.str();
}

Sections do_gof(const RunConfig& c) {
    const Sample s = load(c);
    if (c.edges.empty()) throw ArgumentError("--edges is required for 'gof'");
    const auto edges = parse_list(c.edges);

    Sections out;
    out.inputs = sample_inputs(c, s);
    out.inputs["edges"] = edges;

    Json bins = Json::array();
    std::vector<std::pair<Family, GofReport>> reports;
    for (Family f : selected_families(c)) {
        const FitResult fit = f == Family::Lindley ? fit_lindley(s) : fit_xgamma(s);
        GofReport g = chi_square_test(s, fit.model, edges, 1);
        out.results[std::string(to_string(f))] = gof_json(fit, g);
        reports.emplace_back(f, std::move(g));
    }
    const auto& first = reports.front().second.bins;
    for (std::size_t b = 0; b < first.size(); ++b) {
        Json row{{"interval", interval_label(first[b])}, {"observed", first[b].observed}};
        for (const auto& [f, g] : reports) row["expected_" + std::string(to_string(f))] = g.bins[b].expected;
        bins.push_back(std::move(row));
    }
    out.results["tables"]["frequencies"] = std::move(bins);
    return out;
}

std::string cell_text(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it.key() == "tables" || it.key() == "cells") continue;
        if (it->is_object()) {
            flatten(*it, key, out);
        } else {
            out.emplace_back(key, cell_text(*it));
        }
    }
}

} // namespace

Sample parse_sample(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view t = trim(line);
        if (t.empty()) continue;
        const auto v = to_double(t);
        if (!v) {
            if (!seen_content) {
                seen_content = true;  // header
                continue;
            }
            throw InputError("line " + std::to_string(lineno) + ": not a number: '" + std::string(t) + "'", lineno);
        }
        seen_content = true;
        if (!(*v > 0.0) || !std::isfinite(*v)) {
            throw InputError("line " + std::to_string(lineno) + ": value must be a finite positive real", lineno);
        }
        values.push_back(*v);
    }
    if (values.empty()) throw InputError("input contains no data values");
    return Sample(std::span<const double>(values));
}

Sample read_sample(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open data file '" + path + "'");
    return parse_sample(in);
}

std::vector<double> parse_list(const std::string& spec) {
    std::vector<double> out;
    std::string_view rest = spec;
    while (true) {
        const auto comma = rest.find(',');
        out.push_back(require_double(rest.substr(0, comma), "list entry"));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

std::vector<double> parse_grid(const std::string& spec, std::span<const double> defaults) {
    if (spec.find(':') == std::string::npos) return parse_list(spec);

    std::vector<std::string_view> parts;
    std::string_view rest = spec;
    while (true) {
        const auto colon = rest.find(':');
        parts.push_back(rest.substr(0, colon));
        if (colon == std::string_view::npos) break;
        rest.remove_prefix(colon + 1);
    }
    if (parts.size() < 2 || parts.size() > 3) throw ArgumentError("grid must be lo:hi or lo:hi:step");
    const double lo = require_double(parts[0], "grid lower bound");
    const double hi = require_double(parts[1], "grid upper bound");
    if (!(lo > 0.0) || !(hi >= lo)) throw ArgumentError("grid needs 0 < lo <= hi");

    std::vector<double> out;
    const double slack = 1e-9 * std::max(1.0, hi);
    if (parts.size() == 2) {
        for (double d : defaults)
            if (d >= lo - slack && d <= hi + slack) out.push_back(d);
    } else {
        const double step = require_double(parts[2], "grid step");
        if (!(step > 0.0)) throw ArgumentError("grid step must be > 0");
        const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
        if (count > 100000) throw ArgumentError("grid has too many points");
        for (std::size_t i = 0; i < count; ++i) {
            // strip accumulated binary noise so 0.05-style steps print cleanly
            out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
        }
    }
    if (out.empty()) throw ArgumentError("grid '" + spec + "' selects no parameters");
    return out;
}

Json build_report(const RunConfig& config) {
    Sections s;
    if (config.command == "fit") {
        s = do_fit(config);
    } else if (config.command == "discriminate") {
        s = do_discriminate(config);
    } else if (config.command == "asymptotics") {
        s = do_asymptotics(config);
    } else if (config.command == "sample-size") {
        s = do_sample_size(config);
    } else if (config.command == "simulate") {
        s = do_simulate(config);
    } else if (config.command == "gof") {
        s = do_gof(config);
    } else {
        throw ArgumentError("unknown command '" + config.command + "'");
    }
    Json report;
    report["command"] = config.command;
    report["inputs"] = std::move(s.inputs);
    report["results"] = std::move(s.results);
    report["diagnostics"] = std::move(s.diagnostics);
    return report;
}

std::string render(const Json& report, Format format) {
    if (format == Format::Json) return report.dump(2) + "\n";

    std::ostringstream os;
    const Json& results = report.at("results");
    const Json empty_tables = Json::object();
    const Json& tables = results.contains("tables") ? results.at("tables") : empty_tables;
    const bool many = tables.size() > 1;

    if (format == Format::Csv) {
        if (tables.empty()) {
            std::vector<std::pair<std::string, std::string>> kv;
            flatten(results, "", kv);
            os << "key,value\n";
            for (const auto& [k, v] : kv) os << csv_escape(k) << "," << csv_escape(v) << "\n";
            return os.str();
        }
        for (auto t = tables.begin(); t != tables.end(); ++t) {
            if (many) os << "# " << t.key() << "\n";
            if (t->empty()) continue;
            bool first_col = true;
            for (auto c = t->front().begin(); c != t->front().end(); ++c) {
                os << (first_col ? "" : ",") << csv_escape(c.key());
                first_col = false;
            }
            os << "\n";
            for (const Json& row : *t) {
                first_col = true;
                for (auto c = row.begin(); c != row.end(); ++c) {
                    os << (first_col ? "" : ",") << csv_escape(cell_text(*c));
                    first_col = false;
                }
                os << "\n";
            }
        }
        return os.str();
    }

    os << "command: " << report.at("command").get<std::string>() << "\n";
    std::vector<std::pair<std::string, std::string>> kv;
    flatten(results, "", kv);
    for (const auto& [k, v] : kv) os << k << ": " << v << "\n";
    for (auto t = tables.begin(); t != tables.end(); ++t) {
        if (t->empty()) continue;
        os << "\n[" << t.key() << "]\n";
        std::vector<std::string> keys;
        for (auto c = t->front().begin(); c != t->front().end(); ++c) keys.push_back(c.key());
        std::vector<std::size_t> width(keys.size());
        for (std::size_t i = 0; i < keys.size(); ++i) width[i] = keys[i].size();
        for (const Json& row : *t) {
            std::size_t i = 0;
            for (auto c = row.begin(); c != row.end() && i < keys.size(); ++c, ++i)
                width[i] = std::max(width[i], cell_text(*c).size());
        }
        for (std::size_t i = 0; i < keys.size(); ++i) os << std::setw(static_cast<int>(width[i]) + 2) << keys[i];
        os << "\n";
        for (const Json& row : *t) {
            std::size_t i = 0;
            for (auto c = row.begin(); c != row.end() && i < keys.size(); ++c, ++i)
                os << std::setw(static_cast<int>(width[i]) + 2) << cell_text(*c);
            os << "\n";
        }
    }
    return os.str();
}

Json error_object(const std::string& type, const std::string& message, std::optional<std::size_t> line) {
    Json e{{"type", type}, {"message", message}};
    if (line && *line > 0) e["line"] = *line;
    return Json{{"error", std::move(e)}};
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
    RunConfig cfg;
    CLI::App app{"Choose between Lindley and xgamma lifetime models by the ratio of maximised likelihoods", "rmlsel"};
    app.require_subcommand(1);

    std::string format = "json";
    std::string family;
    std::string aggregation = "max";

    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_path, "Write the report here instead of stdout");
        sub->add_option("--format", format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
    };
    const auto add_data = [&](CLI::App* sub) {
        sub->add_option("--data", cfg.data_path, "One positive real per line, optional header")->required();
    };
    const auto add_tol = [&](CLI::App* sub) {
        sub->add_option("--tol", cfg.tol, "Absolute quadrature tolerance")->capture_default_str();
    };

    auto* fit = app.add_subcommand("fit", "Maximum-likelihood fits of both families");
    add_data(fit);
    add_format(fit);

    auto* disc = app.add_subcommand("discriminate", "Log-RML statistic T and the selected family");
    add_data(disc);
    add_format(disc);

    auto* asym = app.add_subcommand("asymptotics", "Pseudo-true parameters, AM and AV over a grid");
    asym->add_option("--family", family, "lindley | xgamma (default both)");
    asym->add_option("--grid", cfg.grid, "lo:hi[:step] or a comma list");
    add_tol(asym);
    add_format(asym);

    auto* ss = app.add_subcommand("sample-size", "K-S distances, minimum n and the (p*, D*) plan");
    ss->add_option("--pstar", cfg.p_star, "Protection level in (0.5, 1)")->capture_default_str();
    ss->add_option("--dstar", cfg.d_star, "K-S tolerance >= 0")->capture_default_str();
    ss->add_option("--lambda-grid", cfg.lambda_grid, "Lindley-truth grid");
    ss->add_option("--theta-grid", cfg.theta_grid, "xgamma-truth grid");
    ss->add_option("--grid", cfg.grid, "Grid applied to both cases");
    ss->add_option("--aggregation", aggregation, "max | endpoints")->check(CLI::IsMember({"max", "endpoints"}));
    add_tol(ss);
    add_format(ss);

    auto* sim = app.add_subcommand("simulate", "Monte Carlo probability of correct selection");
    sim->add_option("--family", family, "lindley | xgamma (default both)");
    sim->add_option("--grid", cfg.grid, "lo:hi[:step] or a comma list");
    sim->add_option("--sizes", cfg.sizes, "Comma list of sample sizes (default 20,40,60,80,100,400)");
    sim->add_option("--reps", cfg.reps, "Replications per cell")->capture_default_str()->check(CLI::PositiveNumber);
    sim->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
    sim->add_option("--threads", cfg.threads, "Worker threads (0: all cores)");
    add_format(sim);

    auto* gof = app.add_subcommand("gof", "K-S and binned chi-square goodness of fit");
    add_data(gof);
    gof->add_option("--edges", cfg.edges, "Interior bin edges e1,e2,...")->required();
    gof->add_option("--family", family, "lindley | xgamma (default both)");
    add_format(gof);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    cfg.format = format == "csv" ? Format::Csv : format == "text" ? Format::Text : Format::Json;
    if (!family.empty()) cfg.family = parse_family(family);
    cfg.aggregation = aggregation == "endpoints" ? CaseAggregation::RestrictedEndpoints : CaseAggregation::MaxOverRestricted;
    return cfg;
}

int run(const RunConfig& config, std::ostream& out) {
    try {
        const std::string text = render(build_report(config), config.format);
        if (config.out_path.empty()) {
            out << text;
        } else {
            std::ofstream file(config.out_path, std::ios::binary);
            if (!file) throw InputError("cannot open output file '" + config.out_path + "'");
            file << text;
            if (!file) throw InputError("failed writing '" + config.out_path + "'");
        }
        return 0;
    } catch (const InputError& e) {
        out << error_object("input_error", e.what(), e.line()).dump(2) << "\n";
        return 3;
    } catch (const NumericalError& e) {
        out << error_object("numerical_error", e.what()).dump(2) << "\n";
        return 4;
    } catch (const ArgumentError& e) {
        out << error_object("usage_error", e.what()).dump(2) << "\n";
        return 2;
    } catch (const DomainError& e) {
        out << error_object("domain_error", e.what()).dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        out << error_object("internal_error", e.what()).dump(2) << "\n";
        return 1;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::optional<RunConfig> cfg;
    try {
        cfg = parse_args(argc, argv, out);
    } catch (const CLI::ParseError& e) {
        out << error_object("usage_error", e.what()).dump(2) << "\n";
        err << "run 'rmlsel --help' for usage\n";
        return 2;
    } catch (const std::exception& e) {
        out << error_object("usage_error", e.what()).dump(2) << "\n";
        return 2;
    }
    if (!cfg) return 0;
    return run(*cfg, out);
}

} // namespace rml::cli
