#include "nnstat/exact_dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nnstat/perm_stats.hpp"

namespace nnstat {

namespace {

// rows[j][k] = number of permutations of {1..j} with exactly k local minima,
// ends counting against their single neighbour; rows[0] = {1} for the empty
// permutation. Inserting the smallest element next to an existing minimum
// keeps the count (2k slots), anywhere else raises it by one (no two minima
// are adjacent), which gives
//   rows[j][k] = 2k rows[j-1][k] + (j - 2(k-1)) rows[j-1][k-1].
std::vector<std::vector<BigInt>> minima_count_rows(int j_max) {
    std::vector<std::vector<BigInt>> rows(static_cast<std::size_t>(j_max) + 1);
    rows[0] = {BigInt(1)};
    for (int j = 1; j <= j_max; ++j) {
        const auto& prev = rows[j - 1];
        const int kmax = (j + 1) / 2;
        rows[j].assign(kmax + 1, BigInt(0));
        for (int k = 1; k <= kmax; ++k) {
            BigInt acc = 0;
            if (k < static_cast<int>(prev.size())) acc += 2 * k * prev[k];
            if (k - 1 < static_cast<int>(prev.size())) acc += (j - 2 * (k - 1)) * prev[k - 1];
            rows[j][k] = std::move(acc);
        }
    }
    return rows;
}

ExactPmf pmf_from_row(int n, const std::vector<BigInt>& row, const BigInt& fact) {
    ExactPmf pmf;
    pmf.n = n;
    for (int k = 0; k < static_cast<int>(row.size()); ++k)
        if (row[k] != 0) pmf.probs.emplace(k, Rational(row[k], fact));
    return pmf;
}

constexpr std::int64_t kBruteForceMaxN = 10;

std::int64_t int_factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

namespace {

// Running sum over a growing common denominator; one gcd per term instead of
// a full renormalization per addition.
struct RationalSum {
    BigInt num = 0, den = 1;

    void add(BigInt a_num, const BigInt& a_den) {
        const BigInt g = boost::multiprecision::gcd(den, a_den);
        const BigInt scale_mine = a_den / g;
        num = num * scale_mine + a_num * (den / g);
        den *= scale_mine;
    }
    Rational value() const { return Rational(num, den); }
};

}  // namespace

Rational ExactPmf::mean() const {
    RationalSum sum;
    for (const auto& [k, p] : probs) sum.add(k * numerator(p), denominator(p));
    return sum.value();
}

Rational ExactPmf::variance() const {
    RationalSum s1, s2;
    for (const auto& [k, p] : probs) {
        const BigInt weighted = k * numerator(p);
        s1.add(weighted, denominator(p));
        s2.add(k * weighted, denominator(p));
    }
    const Rational m = s1.value();
    return s2.value() - m * m;
}

ExactPmf pmf_reflexive(int n) {
    if (n < 1) throw std::invalid_argument("sample size must be >= 1");
    auto rows = minima_count_rows(n - 1);
    return pmf_from_row(n, rows[n - 1], factorial(n - 1));
}

std::vector<ExactPmf> pmf_reflexive_table(int n_max) {
    if (n_max < 1) throw std::invalid_argument("sample size must be >= 1");
    auto rows = minima_count_rows(n_max - 1);
    std::vector<ExactPmf> table;
    table.reserve(n_max);
    BigInt fact = 1;
    for (int n = 1; n <= n_max; ++n) {
        if (n >= 2) fact *= n - 1;
        table.push_back(pmf_from_row(n, rows[n - 1], fact));
    }
    return table;
}

ExactPmf brute_force_pmf_reflexive(int n) {
    if (n < 2 || n > kBruteForceMaxN)
        throw std::invalid_argument("brute-force pmf supports 2 <= n <= 10");
    ExactPmf pmf;
    pmf.n = n;
    if (n == 2) {  // two points are always mutual; the indicator sum needs m >= 2
        pmf.probs.emplace(1, Rational(1));
        return pmf;
    }
    const int m = n - 1;
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 1);
    std::map<std::int64_t, std::int64_t> counts;
    do {
        ++counts[reflexive_indicator_count(std::span<const int>(perm))];
    } while (std::next_permutation(perm.begin(), perm.end()));
    const std::int64_t fact = int_factorial(m);
    for (const auto& [k, c] : counts) pmf.probs.emplace(static_cast<int>(k), Rational(c, fact));
    return pmf;
}

SharedMoments brute_force_moments_shared(int n) {
    if (n < 3 || n > kBruteForceMaxN)
        throw std::invalid_argument("brute-force shared moments support 3 <= n <= 10");
    const int m = n - 1;
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 1);
    std::int64_t sum = 0, sum_sq = 0;
    do {
        // The indicator sum needs m >= 3; reconstructing the NN choices
        // covers n = 3 as well.
        std::int64_t q = (m >= 3) ? shared_indicator_count(std::span<const int>(perm))
                                  : pair_counts_from_spacing_ranks(std::span<const int>(perm)).shared;
        sum += q;
        sum_sq += q * q;
    } while (std::next_permutation(perm.begin(), perm.end()));
    const std::int64_t fact = int_factorial(m);
    Rational mean(sum, fact);
    return {mean, Rational(sum_sq, fact) - mean * mean};
}

Rational mean_reflexive(int n) {
    if (n < 2) throw std::invalid_argument("mean_reflexive needs n >= 2");
    if (n < 3) return pmf_reflexive(n).mean();
    return Rational(n, 3);
}

Rational var_reflexive(int n) {
    if (n < 2) throw std::invalid_argument("var_reflexive needs n >= 2");
    if (n < 5) return pmf_reflexive(n).variance();
    return Rational(2 * static_cast<std::int64_t>(n), 45);
}

Rational mean_shared(int n) {
    if (n < 3) throw std::invalid_argument("mean_shared needs n >= 3");
    if (n < 4) return brute_force_moments_shared(n).mean;
    return Rational(n, 4);
}

Rational var_shared(int n) {
    if (n < 3) throw std::invalid_argument("var_shared needs n >= 3");
    if (n < 7) return brute_force_moments_shared(n).variance;
    return Rational(19 * static_cast<std::int64_t>(n), 240);
}

Rational covariance_reflexive_indicators(int i, int j, int m) {
    if (m < 4) throw std::invalid_argument("covariance table needs m >= 4");
    if (i < 1 || j < 1 || i > m || j > m) throw std::invalid_argument("indicator index out of range");
    if (i > j) std::swap(i, j);
    const bool at_end = (i == 1 || j == m);
    switch (j - i) {
        case 0: return at_end ? Rational(1, 4) : Rational(2, 9);
        case 1: return at_end ? Rational(-1, 6) : Rational(-1, 9);
        case 2: return at_end ? Rational(1, 24) : Rational(1, 45);
        default: return Rational(0);  // disjoint windows are independent
    }
}

Rational covariance_shared_indicators(int i, int j, int m) {
    if (m < 6) throw std::invalid_argument("covariance table needs m >= 6");
    const int last = m - 1;  // the shared indicators are 1..m-1
    if (i < 1 || j < 1 || i > last || j > last)
        throw std::invalid_argument("indicator index out of range");
    if (i > j) std::swap(i, j);
    const bool at_end = (i == 1 || j == last);
    switch (j - i) {
        case 0: return at_end ? Rational(1, 4) : Rational(3, 16);
        case 1: return at_end ? Rational(0) : Rational(-1, 80);
        case 2: return at_end ? Rational(-1, 8) : Rational(-1, 16);
        case 3: return at_end ? Rational(1, 24) : Rational(1, 48);
        default: return Rational(0);
    }
}

double reflexive_constant(int d) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (d % 2 == 1) {
        const int m = (d - 1) / 2;
        double denom = 3.0, term = 1.0;
        for (int k = 1; k <= m; ++k) {
            term *= (2.0 * k - 1.0) / (2.0 * k) * 0.75;
            denom += term;
        }
        return 1.0 / denom;
    }
    const int m = d / 2;
    double inner = 1.0, term = 1.0;
    for (int k = 1; k <= m - 1; ++k) {
        term *= (2.0 * k) / (2.0 * k + 1.0) * 0.75;
        inner += term;
    }
    const double denom = 8.0 / 3.0 + std::numbers::sqrt3 / std::numbers::pi * inner;
    return 1.0 / denom;
}

SharedConstant shared_constant(int d) {
    switch (d) {
        case 1: return {0.25, true};
        case 2: return {0.315, false};
        case 3: return {0.355, false};
        case 4: return {0.38, false};
        case 5: return {0.4, false};
        default:
            if (d < 1) throw std::invalid_argument("dimension must be >= 1");
            throw std::domain_error("no published value for the shared constant beyond d = 5");
    }
}

ExactPmf enns_recurrence_pmf(int n) {
    if (n < 4) throw std::invalid_argument("the convolution recurrence starts at n = 4");
    if (n > 64) throw std::invalid_argument("convolution recurrence capped at n = 64");

    // p[t] is the pmf row for sample size t; rows 1..3 seed the recurrence,
    // row t splits on the position of the largest spacing:
    //   p(t,k) = 2/(t-1) p(t-1,k) + sum_{a=2}^{t-2} sum_j p(a,j) p(t-a,k-j) / (t-1).
    std::vector<std::map<int, Rational>> p(static_cast<std::size_t>(n) + 1);
    for (int t = 1; t <= 3; ++t) p[t] = pmf_reflexive(t).probs;
    for (int t = 4; t <= n; ++t) {
        std::map<int, Rational> acc;
        for (int a = 2; a <= t - 2; ++a)
            for (const auto& [j, pa] : p[a])
                for (const auto& [k2, pb] : p[t - a]) acc[j + k2] += pa * pb;
        std::map<int, Rational> row;
        const Rational inv(1, t - 1);
        for (const auto& [k, v] : p[t - 1]) row[k] += Rational(2) * inv * v;
        for (const auto& [k, v] : acc) row[k] += inv * v;
        std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
        p[t] = std::move(row);
    }

    ExactPmf pmf;
    pmf.n = n;
    pmf.probs = std::move(p[n]);
    return pmf;
}

nlohmann::ordered_json pmf_to_json(const ExactPmf& pmf) {
    nlohmann::ordered_json probs = nlohmann::ordered_json::object();
    for (const auto& [k, p] : pmf.probs) probs[std::to_string(k)] = to_string(p);
    return nlohmann::ordered_json{{"n", pmf.n}, {"pmf", std::move(probs)}};
}

ExactPmf pmf_from_json(const nlohmann::json& j) {
    ExactPmf pmf;
    pmf.n = j.at("n").get<int>();
    for (const auto& [key, value] : j.at("pmf").items())
        pmf.probs.emplace(std::stoi(key), rational_from_string(value.get<std::string>()));
    return pmf;
}

}  // namespace nnstat
