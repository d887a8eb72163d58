#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nnstat/exact_dist.hpp"
#include "nnstat/inference.hpp"
#include "nnstat/io.hpp"
#include "nnstat/monte_carlo.hpp"
#include "nnstat/nn_digraph.hpp"
#include "nnstat/perm_stats.hpp"
#include "nnstat/rational.hpp"

namespace py = pybind11;
using namespace nnstat;

namespace {

py::object to_fraction(const Rational& r) {
    return py::module_::import("fractions").attr("Fraction")(to_string(r));
}

py::dict pmf_dict(const ExactPmf& pmf) {
    py::dict d;
    for (const auto& [k, p] : pmf.probs) d[py::int_(k)] = to_fraction(p);
    return d;
}

PointSample sample_from_nested(const std::vector<std::vector<double>>& points) {
    if (points.empty()) throw std::invalid_argument("empty point list");
    const int dim = static_cast<int>(points.front().size());
    std::vector<double> coords;
    coords.reserve(points.size() * dim);
    for (const auto& p : points) {
        if (static_cast<int>(p.size()) != dim)
            throw std::invalid_argument("points have inconsistent dimensions");
        coords.insert(coords.end(), p.begin(), p.end());
    }
    return PointSample(dim, std::move(coords));
}

Distribution dist_from_string(const std::string& s) {
    if (s == "uniform" || s == "uniform-cube") return Distribution::UniformCube;
    if (s == "normal" || s == "standard-normal") return Distribution::StandardNormal;
    throw std::invalid_argument("unknown distribution '" + s + "' (uniform|normal)");
}

Statistic stat_from_string(const std::string& s) {
    if (s == "reflexive") return Statistic::Reflexive;
    if (s == "shared") return Statistic::Shared;
    throw std::invalid_argument("unknown statistic '" + s + "' (reflexive|shared)");
}

McConfig make_config(int n, std::int64_t reps, std::uint64_t seed, int dim,
                     const std::string& dist, int threads) {
    McConfig cfg;
    cfg.n = n;
    cfg.reps = reps;
    cfg.seed = seed;
    cfg.dim = dim;
    cfg.dist = dist_from_string(dist);
    cfg.threads = threads;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(nnstat, m) {
    m.doc() = "Nearest-neighbour digraph statistics: exact distributions, simulation and "
              "inference for reflexive and shared NN pair counts";

    py::register_exception<DegenerateDataError>(m, "DegenerateDataError", PyExc_ValueError);

    py::class_<PairCounts>(m, "PairCounts")
        .def_readonly("reflexive", &PairCounts::reflexive)
        .def_readonly("shared", &PairCounts::shared)
        .def_readonly("indegree_classes", &PairCounts::indegree_classes)
        .def("__repr__", [](const PairCounts& c) {
            return "PairCounts(reflexive=" + std::to_string(c.reflexive) +
                   ", shared=" + std::to_string(c.shared) + ")";
        });

    py::class_<NnDigraph>(m, "NnDigraph")
        .def_readonly("dim", &NnDigraph::dim)
        .def_readonly("nn_index", &NnDigraph::nn_index)
        .def_readonly("nn_distance", &NnDigraph::nn_distance)
        .def_readonly("tie_flag", &NnDigraph::tie_flag);

    py::class_<McSummary>(m, "McSummary")
        .def_readonly("mean_R", &McSummary::mean_R)
        .def_readonly("se_mean_R", &McSummary::se_mean_R)
        .def_readonly("var_R", &McSummary::var_R)
        .def_readonly("se_var_R", &McSummary::se_var_R)
        .def_readonly("mean_Q", &McSummary::mean_Q)
        .def_readonly("se_mean_Q", &McSummary::se_mean_Q)
        .def_readonly("var_Q", &McSummary::var_Q)
        .def_readonly("se_var_Q", &McSummary::se_var_Q)
        .def_readonly("reps", &McSummary::reps)
        .def_readonly("elapsed_seconds", &McSummary::elapsed_seconds);

    py::class_<CltReport>(m, "CltReport")
        .def_readonly("standardized_values", &CltReport::standardized_values)
        .def_readonly("ks_statistic", &CltReport::ks_statistic)
        .def_readonly("ks_pvalue_bound", &CltReport::ks_pvalue_bound);

    py::class_<DimensionEstimate>(m, "DimensionEstimate")
        .def_readonly("r_hat", &DimensionEstimate::r_hat)
        .def_readonly("r_se", &DimensionEstimate::r_se)
        .def_readonly("q_hat", &DimensionEstimate::q_hat)
        .def_readonly("q_se", &DimensionEstimate::q_se);

    py::class_<TestResult>(m, "TestResult")
        .def_readonly("n", &TestResult::n)
        .def_readonly("observed", &TestResult::observed)
        .def_readonly("p_value", &TestResult::p_value)
        .def_property_readonly("p_value_exact",
                               [](const TestResult& r) -> py::object {
                                   if (r.method != TestMethod::Exact) return py::none();
                                   return to_fraction(r.p_value_exact);
                               })
        .def_property_readonly("expected",
                               [](const TestResult& r) { return to_fraction(r.expected); })
        .def_property_readonly("alternative",
                               [](const TestResult& r) { return std::string(to_string(r.alternative)); })
        .def_property_readonly("method",
                               [](const TestResult& r) { return std::string(to_string(r.method)); })
        .def_readonly("warning", &TestResult::warning);

    // --- digraph counts ------------------------------------------------

    m.def("pair_counts",
          [](const std::vector<double>& xs) {
              return count_pairs(build_nn_digraph(PointSample::from_values(xs)));
          },
          py::arg("points"), "Reflexive/shared pair counts of a 1-D sample.");
    m.def("pair_counts",
          [](const std::vector<std::vector<double>>& pts) {
              return count_pairs(build_nn_digraph(sample_from_nested(pts)));
          },
          py::arg("points"), "Reflexive/shared pair counts of a d-dimensional sample.");
    m.def("build_nn_digraph",
          [](const std::vector<double>& xs) {
              return build_nn_digraph(PointSample::from_values(xs));
          },
          py::arg("points"));
    m.def("build_nn_digraph",
          [](const std::vector<std::vector<double>>& pts) {
              return build_nn_digraph(sample_from_nested(pts));
          },
          py::arg("points"));

    // --- spacing ranks and permutation statistics ----------------------

    m.def("spacings",
          [](const std::vector<double>& xs) { return spacings(PointSample::from_values(xs)); },
          py::arg("points"));
    m.def("rank_permutation",
          [](const std::vector<double>& gaps) {
              return rank_permutation(std::span<const double>(gaps)).sigma;
          },
          py::arg("spacings"));
    m.def("reflexive_indicator_count",
          [](const std::vector<int>& sigma) {
              return reflexive_indicator_count(std::span<const int>(sigma));
          },
          py::arg("sigma"));
    m.def("shared_indicator_count",
          [](const std::vector<int>& sigma) {
              return shared_indicator_count(std::span<const int>(sigma));
          },
          py::arg("sigma"));
    m.def("longest_alternating_subsequence",
          [](const std::vector<double>& xs) {
              return longest_alternating_subsequence(std::span<const double>(xs));
          },
          py::arg("values"));
    m.def("local_extrema_counts",
          [](const std::vector<double>& xs) {
              auto e = local_extrema_counts(std::span<const double>(xs));
              return py::make_tuple(e.minima, e.maxima);
          },
          py::arg("values"), "Interior (minima, maxima) counts.");

    // --- exact distributions --------------------------------------------

    m.def("pmf_reflexive", [](int n) { return pmf_dict(pmf_reflexive(n)); }, py::arg("n"),
          "Exact pmf of the reflexive pair count as {k: Fraction}.");
    m.def("brute_force_pmf_reflexive",
          [](int n) { return pmf_dict(brute_force_pmf_reflexive(n)); }, py::arg("n"));
    m.def("enns_recurrence_pmf", [](int n) { return pmf_dict(enns_recurrence_pmf(n)); },
          py::arg("n"));
    m.def("mean_reflexive", [](int n) { return to_fraction(mean_reflexive(n)); }, py::arg("n"));
    m.def("var_reflexive", [](int n) { return to_fraction(var_reflexive(n)); }, py::arg("n"));
    m.def("mean_shared", [](int n) { return to_fraction(mean_shared(n)); }, py::arg("n"));
    m.def("var_shared", [](int n) { return to_fraction(var_shared(n)); }, py::arg("n"));
    m.def("brute_force_moments_shared",
          [](int n) {
              auto mm = brute_force_moments_shared(n);
              return py::make_tuple(to_fraction(mm.mean), to_fraction(mm.variance));
          },
          py::arg("n"), "(mean, variance) of the shared count by enumeration.");
    m.def("covariance_reflexive_indicators",
          [](int i, int j, int m_) { return to_fraction(covariance_reflexive_indicators(i, j, m_)); },
          py::arg("i"), py::arg("j"), py::arg("m"));
    m.def("covariance_shared_indicators",
          [](int i, int j, int m_) { return to_fraction(covariance_shared_indicators(i, j, m_)); },
          py::arg("i"), py::arg("j"), py::arg("m"));
    m.def("reflexive_constant", &reflexive_constant, py::arg("d"),
          "Limit of E(reflexive)/n in dimension d (closed form).");
    m.def("shared_constant",
          [](int d) {
              auto q = shared_constant(d);
              return py::make_tuple(q.value, q.exact);
          },
          py::arg("d"), "(value, exact) for the shared-count limit.");

    // --- simulation -------------------------------------------------------

    m.def("run_simulation",
          [](int n, std::int64_t reps, std::uint64_t seed, int dim, const std::string& dist,
             int threads) {
              McConfig cfg = make_config(n, reps, seed, dim, dist, threads);
              py::gil_scoped_release release;
              return run_simulation(cfg);
          },
          py::arg("n"), py::arg("reps"), py::arg("seed") = 0, py::arg("dim") = 1,
          py::arg("dist") = "uniform", py::arg("threads") = 0);
    m.def("clt_check",
          [](int n, std::int64_t reps, const std::string& statistic, std::uint64_t seed, int dim,
             const std::string& dist, int threads) {
              McConfig cfg = make_config(n, reps, seed, dim, dist, threads);
              Statistic stat = stat_from_string(statistic);
              py::gil_scoped_release release;
              return clt_check(cfg, stat);
          },
          py::arg("n"), py::arg("reps"), py::arg("statistic") = "reflexive", py::arg("seed") = 0,
          py::arg("dim") = 1, py::arg("dist") = "uniform", py::arg("threads") = 0);
    m.def("slln_trace",
          [](std::int64_t n_max, std::uint64_t seed) {
              py::gil_scoped_release release;
              auto trace = slln_trace(n_max, seed);
              std::vector<std::tuple<std::int64_t, double, double>> rows;
              rows.reserve(trace.size());
              for (const auto& p : trace) rows.emplace_back(p.n, p.r_ratio, p.q_ratio);
              return rows;
          },
          py::arg("n_max"), py::arg("seed") = 0,
          "Running (n, R/n, Q/n) along one growing sample path.");
    m.def("estimate_dimension_constants",
          [](int d, int n, std::int64_t reps, std::uint64_t seed, int threads) {
              py::gil_scoped_release release;
              return estimate_dimension_constants(d, n, reps, seed, threads);
          },
          py::arg("d"), py::arg("n"), py::arg("reps"), py::arg("seed") = 0, py::arg("threads") = 0);

    // --- inference ----------------------------------------------------------

    m.def("exact_test_reflexive",
          [](int n, std::int64_t observed, const std::string& alternative) {
              return exact_test_reflexive(n, observed, alternative_from_string(alternative));
          },
          py::arg("n"), py::arg("observed"), py::arg("alternative") = "two-sided");
    m.def("normal_approx_test_reflexive",
          [](int n, std::int64_t observed, const std::string& alternative) {
              return normal_approx_test_reflexive(n, observed, alternative_from_string(alternative));
          },
          py::arg("n"), py::arg("observed"), py::arg("alternative") = "two-sided");
    m.def("analyze",
          [](const std::vector<double>& xs, const std::string& alternative) {
              auto res = analyze_sample(PointSample::from_values(xs),
                                        alternative_from_string(alternative));
              return py::make_tuple(res.test, res.counts);
          },
          py::arg("points"), py::arg("alternative") = "two-sided",
          "(TestResult, PairCounts) for a 1-D sample.");
    m.def("analyze_file",
          [](const std::string& path, const std::string& alternative) {
              auto res = analyze_sample(read_points_file(path),
                                        alternative_from_string(alternative));
              return py::make_tuple(res.test, res.counts);
          },
          py::arg("path"), py::arg("alternative") = "two-sided");
}
