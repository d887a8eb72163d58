#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nnstat/exact_dist.hpp"
#include "nnstat/inference.hpp"
#include "nnstat/io.hpp"
#include "nnstat/monte_carlo.hpp"
#include "nnstat/nn_digraph.hpp"
#include "nnstat/perm_stats.hpp"
#include "nnstat/rational.hpp"

namespace {

using nnstat::Rational;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;       // bad flags, caps, unparsable input
constexpr int kExitDegenerate = 3;  // ties / duplicate points
constexpr int kExitOracleMismatch = 4;

enum class Format { Json, Csv, Table };

struct GlobalOpts {
    std::string format;  // empty = auto
    std::string output;  // empty = stdout
};

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Floats carry 12 significant digits in every output format.
double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

Format resolve_format(const GlobalOpts& g, Format fallback = Format::Json) {
    if (g.format == "json") return Format::Json;
    if (g.format == "csv") return Format::Csv;
    if (g.format == "table") return Format::Table;
    if (g.output.empty() && isatty(fileno(stdout))) return Format::Table;
    return fallback;
}

void print_table(std::ostream& out, const json& j, int indent = 0) {
    const std::string pad(indent, ' ');
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            out << pad << key << ":\n";
            print_table(out, value, indent + 2);
        } else if (value.is_array()) {
            out << pad << key << ":\n";
            for (const auto& row : value) {
                out << pad << "  ";
                bool first = true;
                for (const auto& [k2, v2] : row.items()) {
                    if (!first) out << "  ";
                    out << k2 << "=" << (v2.is_string() ? v2.get<std::string>() : v2.dump());
                    first = false;
                }
                out << "\n";
            }
        } else if (value.is_string()) {
            out << pad << key << ": " << value.get<std::string>() << "\n";
        } else {
            out << pad << key << ": " << value.dump() << "\n";
        }
    }
}

void print_csv(std::ostream& out, const json& j) {
    if (j.contains("trace")) {
        out << "n,r_ratio,q_ratio\n";
        for (const auto& row : j["trace"])
            out << row["n"].get<std::int64_t>() << "," << fmt12(row["r_ratio"].get<double>())
                << "," << fmt12(row["q_ratio"].get<double>()) << "\n";
        return;
    }
    if (j.contains("pmf")) {
        const bool with_oracle = j.contains("oracle_pmf");
        out << (with_oracle ? "k,probability,oracle_probability\n" : "k,probability\n");
        for (const auto& [k, p] : j["pmf"].items()) {
            out << k << "," << p.get<std::string>();
            if (with_oracle) {
                const auto& op = j["oracle_pmf"];
                out << "," << (op.contains(k) ? op[k].get<std::string>() : "0");
            }
            out << "\n";
        }
        return;
    }
    out << "key,value\n";
    for (const auto& [key, value] : j.items()) {
        if (value.is_object() || value.is_array()) continue;
        out << key << ",";
        if (value.is_string())
            out << value.get<std::string>();
        else
            out << value.dump();
        out << "\n";
    }
}

void emit(const GlobalOpts& g, const json& record, Format fallback = Format::Json) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!g.output.empty()) {
        file.open(g.output);
        if (!file) {
            std::cerr << "error: cannot open output file '" << g.output << "'\n";
            std::exit(kExitUsage);
        }
        out = &file;
    }
    switch (resolve_format(g, fallback)) {
        case Format::Json: *out << record.dump(2) << "\n"; break;
        case Format::Csv: print_csv(*out, record); break;
        case Format::Table: print_table(*out, record); break;
    }
}

int env_threads() {
    const char* v = std::getenv("NNSTAT_THREADS");
    if (!v || !*v) return 0;
    const long t = std::strtol(v, nullptr, 10);
    return t > 0 ? static_cast<int>(t) : 0;
}

nnstat::Distribution parse_dist(const std::string& s) {
    if (s == "uniform" || s == "uniform-cube") return nnstat::Distribution::UniformCube;
    if (s == "normal" || s == "standard-normal") return nnstat::Distribution::StandardNormal;
    throw CLI::ValidationError("--dist", "expected uniform|normal");
}

// ---------------------------------------------------------------------------

int cmd_pmf(const GlobalOpts& g, int n, const std::string& oracle) {
    nnstat::ExactPmf pmf = nnstat::pmf_reflexive(n);
    json record = nnstat::pmf_to_json(pmf);

    bool mismatch = false;
    if (!oracle.empty()) {
        nnstat::ExactPmf check = (oracle == "brute") ? nnstat::brute_force_pmf_reflexive(n)
                                                     : nnstat::enns_recurrence_pmf(n);
        record["oracle"] = oracle;
        json op = json::object();
        for (const auto& [k, p] : check.probs) op[std::to_string(k)] = nnstat::to_string(p);
        record["oracle_pmf"] = std::move(op);
        mismatch = !(pmf.probs == check.probs);
        record["exact-match"] = !mismatch;
    }
    emit(g, record);
    return mismatch ? kExitOracleMismatch : kExitOk;
}

int cmd_moments(const GlobalOpts& g, int n, const std::string& stat) {
    json record;
    record["n"] = n;
    record["stat"] = stat;
    if (stat == "reflexive") {
        record["mean"] = nnstat::to_string(nnstat::mean_reflexive(n));
        record["mean_source"] = nnstat::mean_reflexive_is_closed_form(n) ? "closed-form" : "enumeration";
        record["variance"] = nnstat::to_string(nnstat::var_reflexive(n));
        record["variance_source"] =
            nnstat::var_reflexive_is_closed_form(n) ? "closed-form" : "enumeration";
    } else {
        record["mean"] = nnstat::to_string(nnstat::mean_shared(n));
        record["mean_source"] = nnstat::mean_shared_is_closed_form(n) ? "closed-form" : "enumeration";
        record["variance"] = nnstat::to_string(nnstat::var_shared(n));
        record["variance_source"] =
            nnstat::var_shared_is_closed_form(n) ? "closed-form" : "enumeration";
    }
    emit(g, record);
    return kExitOk;
}

int cmd_simulate(const GlobalOpts& g, const nnstat::McConfig& cfg, const std::string& dist_name,
                 const std::string& check, const std::string& stat, bool constants, bool timing,
                 const std::string& dump_reps) {
    if (check == "slln") {
        auto trace = nnstat::slln_trace(cfg.n, cfg.seed);
        json record;
        record["command"] = "simulate-slln";
        record["n_max"] = cfg.n;
        record["seed"] = cfg.seed;
        json rows = json::array();
        for (const auto& p : trace)
            rows.push_back({{"n", p.n},
                            {"r_ratio", round12(p.r_ratio)},
                            {"q_ratio", round12(p.q_ratio)}});
        record["trace"] = std::move(rows);
        emit(g, record, Format::Csv);
        return kExitOk;
    }

    if (constants) {
        auto est = nnstat::estimate_dimension_constants(cfg.dim, cfg.n, cfg.reps, cfg.seed,
                                                        cfg.threads);
        json record;
        record["command"] = "simulate-constants";
        record["dim"] = cfg.dim;
        record["n"] = cfg.n;
        record["reps"] = cfg.reps;
        record["seed"] = cfg.seed;
        record["r_hat"] = round12(est.r_hat);
        record["r_se"] = round12(est.r_se);
        record["q_hat"] = round12(est.q_hat);
        record["q_se"] = round12(est.q_se);
        record["r_reference"] = round12(nnstat::reflexive_constant(cfg.dim));
        record["r_reference_source"] = "closed-form";
        auto q = nnstat::shared_constant(cfg.dim);
        record["q_reference"] = round12(q.value);
        record["q_reference_source"] = q.exact ? "exact" : "empirical";
        emit(g, record);
        return kExitOk;
    }

    if (check == "clt") {
        const auto statistic =
            (stat == "shared") ? nnstat::Statistic::Shared : nnstat::Statistic::Reflexive;
        auto report = nnstat::clt_check(cfg, statistic);
        double sum = 0, sum2 = 0;
        for (double v : report.standardized_values) sum += v, sum2 += v * v;
        const double nvals = static_cast<double>(report.standardized_values.size());
        const double mean = sum / nvals;
        json record;
        record["command"] = "simulate-clt";
        record["n"] = cfg.n;
        record["reps"] = cfg.reps;
        record["seed"] = cfg.seed;
        record["dim"] = cfg.dim;
        record["dist"] = dist_name;
        record["stat"] = stat;
        record["ks_statistic"] = round12(report.ks_statistic);
        record["ks_pvalue_bound"] = round12(report.ks_pvalue_bound);
        record["standardized_mean"] = round12(mean);
        record["standardized_sd"] = round12(std::sqrt(std::max(0.0, sum2 / nvals - mean * mean)));
        if (!dump_reps.empty()) {
            std::ofstream f(dump_reps);
            f << "rep,standardized\n";
            for (std::size_t i = 0; i < report.standardized_values.size(); ++i)
                f << i << "," << fmt12(report.standardized_values[i]) << "\n";
        }
        emit(g, record);
        return kExitOk;
    }

    std::vector<std::pair<std::int64_t, std::int64_t>> per_rep;
    auto summary = nnstat::run_simulation(cfg, dump_reps.empty() ? nullptr : &per_rep);
    json record;
    record["command"] = "simulate";
    record["n"] = cfg.n;
    record["reps"] = cfg.reps;
    record["seed"] = cfg.seed;
    record["dim"] = cfg.dim;
    record["dist"] = dist_name;
    record["mean_R"] = round12(summary.mean_R);
    record["se_mean_R"] = round12(summary.se_mean_R);
    record["var_R"] = round12(summary.var_R);
    record["se_var_R"] = round12(summary.se_var_R);
    record["mean_Q"] = round12(summary.mean_Q);
    record["se_mean_Q"] = round12(summary.se_mean_Q);
    record["var_Q"] = round12(summary.var_Q);
    record["se_var_Q"] = round12(summary.se_var_Q);
    if (timing) record["elapsed_seconds"] = round12(summary.elapsed_seconds);  // not reproducible
    if (!dump_reps.empty()) {
        std::ofstream f(dump_reps);
        f << "rep,reflexive,shared\n";
        for (std::size_t i = 0; i < per_rep.size(); ++i)
            f << i << "," << per_rep[i].first << "," << per_rep[i].second << "\n";
    }
    emit(g, record);
    return kExitOk;
}

int cmd_analyze(const GlobalOpts& g, const std::string& input, const std::string& alternative,
                const std::string& method) {
    nnstat::PointSample sample = nnstat::read_points_file(input);
    if (sample.dim() != 1) {
        std::cerr << "error: analyze needs 1-D points, got dimension " << sample.dim() << "\n";
        return kExitUsage;
    }

    const nnstat::NnDigraph digraph = nnstat::build_nn_digraph(sample);
    const nnstat::PairCounts counts = nnstat::count_pairs(digraph);

    json record;
    record["command"] = "analyze";
    record["input"] = input;
    record["n"] = sample.size();
    record["reflexive"] = counts.reflexive;
    record["shared"] = counts.shared;
    json classes = json::object();
    for (const auto& [j, c] : counts.indegree_classes) classes[std::to_string(j)] = c;
    record["indegree_classes"] = std::move(classes);
    record["tie_flag"] = digraph.tie_flag;

    if (digraph.tie_flag) {
        try {
            nnstat::rank_permutation(nnstat::spacings(sample));
            throw nnstat::DegenerateDataError("tied nearest-neighbour distances");
        } catch (const nnstat::DegenerateDataError& e) {
            emit(g, record);
            std::cerr << "error: " << e.what()
                      << "; the exact null distribution assumes continuous data with no exact "
                         "ties, so no test was run\n";
            return kExitDegenerate;
        }
    }
    if (sample.size() < 3) {
        emit(g, record);
        std::cerr << "error: exact test needs n >= 3 (two points are always mutual)\n";
        return kExitDegenerate;
    }

    const auto alt = nnstat::alternative_from_string(alternative);
    nnstat::TestResult test =
        (method == "normal")
            ? nnstat::normal_approx_test_reflexive(static_cast<int>(sample.size()),
                                                   counts.reflexive, alt)
            : nnstat::exact_test_reflexive(static_cast<int>(sample.size()), counts.reflexive, alt);
    json tj = nnstat::test_result_to_json(test);
    tj["p_value"] = round12(test.p_value);
    for (auto& [key, value] : tj.items())
        if (!record.contains(key)) record[key] = value;
    emit(g, record);
    return kExitOk;
}

int cmd_constants(const GlobalOpts& g, int dim) {
    json record;
    record["command"] = "constants";
    record["dim"] = dim;
    record["r"] = round12(nnstat::reflexive_constant(dim));
    record["r_source"] = "closed-form";
    if (dim <= 5) {
        auto q = nnstat::shared_constant(dim);
        record["q"] = round12(q.value);
        record["q_source"] = q.exact ? "exact" : "empirical";
    } else {
        record["q"] = nullptr;
        record["q_source"] = "no published value";
    }
    emit(g, record);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nearest-neighbour digraph statistics: exact distributions, simulation and "
                 "inference for reflexive and shared NN pair counts"};
    app.require_subcommand(1);
    app.fallthrough();  // global --format/--output may follow the subcommand

    GlobalOpts g;
    app.add_option("--format", g.format, "Output format (default: table on a terminal, json otherwise)")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--output", g.output, "Write output to a file instead of stdout");

    // pmf
    int pmf_n = 0;
    std::string pmf_oracle;
    auto* pmf = app.add_subcommand("pmf", "Exact pmf of the reflexive pair count");
    pmf->add_option("--n", pmf_n, "Sample size")->required()->check(CLI::PositiveNumber);
    pmf->add_option("--oracle", pmf_oracle, "Cross-check against an independent recurrence")
        ->check(CLI::IsMember({"brute", "enns"}));

    // moments
    int mom_n = 0;
    std::string mom_stat = "reflexive";
    auto* mom = app.add_subcommand("moments", "Exact mean and variance of a pair count");
    mom->add_option("--n", mom_n, "Sample size")->required()->check(CLI::PositiveNumber);
    mom->add_option("--stat", mom_stat, "Statistic")->required()
        ->check(CLI::IsMember({"reflexive", "shared"}));

    // simulate
    nnstat::McConfig cfg;
    cfg.n = 1000;
    cfg.reps = 10000;
    std::string sim_dist = "uniform", sim_check, sim_stat = "reflexive", sim_dump;
    bool sim_constants = false, sim_timing = false;
    auto* sim = app.add_subcommand("simulate", "Seeded Monte Carlo over pair counts");
    sim->add_option("--n", cfg.n, "Sample size per replication (prefix length for --check slln)")
        ->check(CLI::PositiveNumber);
    sim->add_option("--reps", cfg.reps, "Replications")->check(CLI::PositiveNumber);
    sim->add_option("--seed", cfg.seed, "RNG seed (default 0)");
    sim->add_option("--dim", cfg.dim, "Dimension")->check(CLI::PositiveNumber);
    sim->add_option("--dist", sim_dist, "Sampling distribution")
        ->check(CLI::IsMember({"uniform", "normal", "uniform-cube", "standard-normal"}));
    auto* check_opt = sim->add_option("--check", sim_check, "Run a limit-law diagnostic")
                          ->check(CLI::IsMember({"clt", "slln"}));
    sim->add_option("--stat", sim_stat, "Statistic for --check clt")
        ->check(CLI::IsMember({"reflexive", "shared"}));
    sim->add_flag("--constants", sim_constants,
                  "Estimate the dimension constants instead of raw moments")
        ->excludes(check_opt);
    sim->add_flag("--timing", sim_timing, "Include wall time in the output (not reproducible)");
    sim->add_option("--dump-reps", sim_dump, "Write per-replication counts to a CSV file");

    // analyze
    std::string an_input, an_alt = "two-sided", an_method = "exact";
    auto* an = app.add_subcommand("analyze", "Exact clustering/regularity test on a 1-D point file");
    an->add_option("--input", an_input, "CSV or JSON point file")->required();
    an->add_option("--alternative", an_alt, "Alternative hypothesis")
        ->check(CLI::IsMember({"greater", "less", "two-sided"}));
    an->add_option("--method", an_method, "Test method")->check(CLI::IsMember({"exact", "normal"}));

    // constants
    int const_dim = 1;
    auto* cons = app.add_subcommand("constants", "Dimension constants r(d) and q(d)");
    cons->add_option("--dim", const_dim, "Dimension")->required()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (pmf->parsed()) return cmd_pmf(g, pmf_n, pmf_oracle);
        if (mom->parsed()) return cmd_moments(g, mom_n, mom_stat);
        if (sim->parsed()) {
            cfg.dist = parse_dist(sim_dist);
            cfg.threads = env_threads();
            return cmd_simulate(g, cfg, sim_dist, sim_check, sim_stat, sim_constants, sim_timing,
                                sim_dump);
        }
        if (an->parsed()) return cmd_analyze(g, an_input, an_alt, an_method);
        if (cons->parsed()) return cmd_constants(g, const_dim);
    } catch (const nnstat::DegenerateDataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const nnstat::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
