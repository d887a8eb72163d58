#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nnstat/rational.hpp"

namespace nnstat {

/// Exact probability mass function of the reflexive pair count for a given
/// sample size. Only nonzero probabilities are stored; they sum to exactly 1.
/// Support is {1..floor(n/2)} for n >= 2 and {0} for n = 1.
struct ExactPmf {
    int n = 0;
    std::map<int, Rational> probs;

    Rational mean() const;
    Rational variance() const;
};

/// Exact pmf of the reflexive pair count via the insertion recurrence
///   m(j,k) = 2k m(j-1,k) + (j - 2(k-1)) m(j-1,k-1)
/// over permutations of the spacing ranks; p(n,k) = m(n-1,k) / (n-1)!.
ExactPmf pmf_reflexive(int n);

/// All pmfs for n = 1..n_max in one sweep of the recurrence. Index i holds
/// sample size i + 1.
std::vector<ExactPmf> pmf_reflexive_table(int n_max);

/// Independent oracle: enumerates all (n-1)! spacing-rank permutations and
/// tallies the indicator count. 2 <= n <= 10.
ExactPmf brute_force_pmf_reflexive(int n);

struct SharedMoments {
    Rational mean;
    Rational variance;
};

/// Independent oracle for the shared-NN count: exact mean and variance by
/// enumeration of all (n-1)! permutations. 3 <= n <= 10.
SharedMoments brute_force_moments_shared(int n);

/// Mean of the reflexive count: n/3 for n >= 3, from the exact pmf below
/// that. n >= 2.
Rational mean_reflexive(int n);

/// Variance of the reflexive count: 2n/45 for n >= 5, from the exact pmf
/// below that. n >= 2.
Rational var_reflexive(int n);

/// Mean of the shared count: n/4 for n >= 4, by enumeration for n = 3.
Rational mean_shared(int n);

/// Variance of the shared count: 19n/240 for n >= 7, by enumeration for
/// 3 <= n <= 6 (the closed form does not hold there; see README).
Rational var_shared(int n);

// Whether the corresponding value comes from the closed form rather than
// enumeration/pmf fallback.
inline bool mean_reflexive_is_closed_form(int n) { return n >= 3; }
inline bool var_reflexive_is_closed_form(int n) { return n >= 5; }
inline bool mean_shared_is_closed_form(int n) { return n >= 4; }
inline bool var_shared_is_closed_form(int n) { return n >= 7; }

/// Covariance of the i-th and j-th reflexive indicators over a uniform rank
/// permutation of length m. 1 <= i, j <= m, m >= 4. Zero for |i-j| > 2.
Rational covariance_reflexive_indicators(int i, int j, int m);

/// Covariance of the i-th and j-th shared indicators over a uniform rank
/// permutation of length m. 1 <= i, j <= m-1, m >= 6. Zero for |i-j| > 3.
Rational covariance_shared_indicators(int i, int j, int m);

/// Limit of E(reflexive)/n in dimension d for any continuous distribution.
/// Exact closed form; relative accuracy better than 1e-12.
double reflexive_constant(int d);

struct SharedConstant {
    double value = 0.0;
    bool exact = false;  // true only for d = 1
};

/// Limit of E(shared)/n in dimension d. Exact for d = 1 (1/4); published
/// empirical values for d = 2..5; no published value beyond that (throws).
SharedConstant shared_constant(int d);

/// Alternative convolution recurrence over the position of the largest
/// spacing (Enns-style); agrees exactly with pmf_reflexive. Kept as a
/// cross-check oracle; O(n^4) rational ops, so capped at n <= 64.
ExactPmf enns_recurrence_pmf(int n);

/// {"n": n, "pmf": {"k": "num/den", ...}} with rationals as strings.
nlohmann::ordered_json pmf_to_json(const ExactPmf& pmf);
ExactPmf pmf_from_json(const nlohmann::json& j);

}  // namespace nnstat
