#include "nnstat/inference.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nnstat/exact_dist.hpp"
#include "nnstat/monte_carlo.hpp"
#include "nnstat/perm_stats.hpp"

namespace nnstat {

namespace {

constexpr const char* kNormalApproxWarning =
    "normal approximation: the limiting distribution of the reflexive count is the same for "
    "every continuous distribution, so a test built on it cannot separate clustered from "
    "uniform data as n grows; prefer the exact test";

}  // namespace

TestResult exact_test_reflexive(int n, std::int64_t observed, Alternative alternative) {
    if (n < 3) throw std::invalid_argument("exact test needs n >= 3");
    if (observed < 1 || observed > n / 2)
        throw std::invalid_argument("observed count outside the support 1..floor(n/2)");

    const ExactPmf pmf = pmf_reflexive(n);
    const Rational p_obs = pmf.probs.at(static_cast<int>(observed));

    Rational p;
    switch (alternative) {
        case Alternative::Greater:
            for (const auto& [k, pk] : pmf.probs)
                if (k >= observed) p += pk;
            break;
        case Alternative::Less:
            for (const auto& [k, pk] : pmf.probs)
                if (k <= observed) p += pk;
            break;
        case Alternative::TwoSided:
            // Minimum-likelihood convention: every outcome no more probable
            // than the observed one counts as at least as extreme.
            for (const auto& [k, pk] : pmf.probs)
                if (pk <= p_obs) p += pk;
            break;
    }

    TestResult result;
    result.n = n;
    result.observed = observed;
    result.alternative = alternative;
    result.method = TestMethod::Exact;
    result.p_value_exact = p;
    result.p_value = to_double(p);
    result.expected = Rational(n, 3);
    return result;
}

TestResult normal_approx_test_reflexive(int n, std::int64_t observed, Alternative alternative) {
    if (n < 30) throw std::invalid_argument("normal approximation needs n >= 30; use exact method");
    if (observed < 1 || observed > n / 2)
        throw std::invalid_argument("observed count outside the support 1..floor(n/2)");

    const double mean = n / 3.0;
    const double sd = std::sqrt(2.0 * n / 45.0);
    const double x = static_cast<double>(observed);

    // Continuity correction of +-1/2: the count is integer-valued.
    double p = 1.0;
    switch (alternative) {
        case Alternative::Greater:
            p = 1.0 - normal_cdf((x - 0.5 - mean) / sd);
            break;
        case Alternative::Less:
            p = normal_cdf((x + 0.5 - mean) / sd);
            break;
        case Alternative::TwoSided: {
            // Both lattice tails at least as far from the mean as the
            // observation, each continuity-corrected. Tracks the exact
            // minimum-likelihood convention far better than doubling.
            const double t = std::abs(x - mean);
            const double k_up = std::ceil(mean + t - 1e-9);
            const double k_lo = std::floor(mean - t + 1e-9);
            p = (1.0 - normal_cdf((k_up - 0.5 - mean) / sd)) +
                normal_cdf((k_lo + 0.5 - mean) / sd);
            break;
        }
    }
    p = std::min(1.0, std::max(0.0, p));

    TestResult result;
    result.n = n;
    result.observed = observed;
    result.alternative = alternative;
    result.method = TestMethod::NormalApprox;
    result.p_value = p;
    result.expected = Rational(n, 3);
    result.warning = kNormalApproxWarning;
    return result;
}

AnalysisResult analyze_sample(const PointSample& sample, Alternative alternative) {
    if (sample.dim() != 1) throw std::invalid_argument("analysis needs a 1-D sample");
    if (sample.size() < 3)
        throw std::invalid_argument("exact test needs n >= 3 (two points are always mutual)");

    const NnDigraph g = build_nn_digraph(sample);
    if (g.tie_flag) {
        // Surface the tie indices; the exact null distribution assumes ties
        // have probability zero.
        rank_permutation(spacings(sample));
        throw DegenerateDataError("tied nearest-neighbour distances");
    }

    AnalysisResult out;
    out.counts = count_pairs(g);
    out.test = exact_test_reflexive(static_cast<int>(sample.size()), out.counts.reflexive,
                                    alternative);
    return out;
}

const char* to_string(Alternative a) {
    switch (a) {
        case Alternative::Greater: return "greater";
        case Alternative::Less: return "less";
        case Alternative::TwoSided: return "two-sided";
    }
    return "two-sided";
}

const char* to_string(TestMethod m) {
    return m == TestMethod::Exact ? "exact" : "normal-approx";
}

Alternative alternative_from_string(const std::string& s) {
    if (s == "greater") return Alternative::Greater;
    if (s == "less") return Alternative::Less;
    if (s == "two-sided" || s == "twosided") return Alternative::TwoSided;
    throw std::invalid_argument("unknown alternative '" + s + "' (greater|less|two-sided)");
}

nlohmann::ordered_json test_result_to_json(const TestResult& result) {
    nlohmann::ordered_json j;
    j["n"] = result.n;
    j["observed"] = result.observed;
    j["expected"] = to_string(result.expected);
    j["alternative"] = to_string(result.alternative);
    j["method"] = to_string(result.method);
    j["p_value"] = result.p_value;
    if (result.method == TestMethod::Exact) j["p_value_exact"] = to_string(result.p_value_exact);
    j["warning"] = result.warning;
    return j;
}

}  // namespace nnstat
