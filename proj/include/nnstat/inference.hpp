#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "nnstat/nn_digraph.hpp"
#include "nnstat/point_sample.hpp"
#include "nnstat/rational.hpp"

namespace nnstat {

enum class Alternative { Greater, Less, TwoSided };
enum class TestMethod { Exact, NormalApprox };

/// One-sample test of the observed reflexive pair count against the uniform
/// null. Whether clustering should raise or lower the count is left to the
/// caller via `alternative`; the tool takes no position.
struct TestResult {
    int n = 0;
    std::int64_t observed = 0;
    Alternative alternative = Alternative::TwoSided;
    TestMethod method = TestMethod::Exact;
    double p_value = 1.0;
    Rational p_value_exact;  // meaningful for the exact method only
    Rational expected;       // n/3
    std::string warning;     // nonempty for the normal approximation
};

/// Exact p-value from the pmf. greater: P(X >= observed); less:
/// P(X <= observed); two-sided: sum of p(n,k) over k with
/// p(n,k) <= p(n,observed) (minimum-likelihood convention).
/// n >= 3, 1 <= observed <= floor(n/2).
TestResult exact_test_reflexive(int n, std::int64_t observed, Alternative alternative);

/// Normal approximation with continuity correction +-1/2. Requires n >= 30;
/// use the exact test below that. The result always carries a warning: the
/// limiting law is the same for every continuous distribution, so a test
/// built on it loses all power against continuous alternatives as n grows.
TestResult normal_approx_test_reflexive(int n, std::int64_t observed, Alternative alternative);

struct AnalysisResult {
    TestResult test;
    PairCounts counts;
};

/// Full pipeline on a 1-D sample: counts via the NN digraph, then the exact
/// test. Throws TiedSpacingsError on tied spacings (the exact null assumes
/// continuous data) and std::invalid_argument for n < 3.
AnalysisResult analyze_sample(const PointSample& sample, Alternative alternative);

const char* to_string(Alternative a);
const char* to_string(TestMethod m);
Alternative alternative_from_string(const std::string& s);

/// method, alternative and warning fields are always present.
nlohmann::ordered_json test_result_to_json(const TestResult& result);

}  // namespace nnstat
