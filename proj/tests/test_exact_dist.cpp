#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include <nlohmann/json.hpp>

#include "nnstat/exact_dist.hpp"
#include "nnstat/perm_stats.hpp"

using namespace nnstat;

namespace {

// Test-local oracle, independent of the library: count permutations of P_m by
// number of local minima with ends counting against their single neighbour.
std::map<int, std::int64_t> enumerate_minima(int m) {
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 1);
    std::map<int, std::int64_t> hist;
    do {
        int c = 0;
        for (int i = 0; i < m; ++i) {
            bool left_ok = (i == 0) || perm[i] < perm[i - 1];
            bool right_ok = (i == m - 1) || perm[i] < perm[i + 1];
            if (left_ok && right_ok) ++c;
        }
        ++hist[c];
    } while (std::next_permutation(perm.begin(), perm.end()));
    return hist;
}

std::int64_t small_factorial(int m) {
    std::int64_t f = 1;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

}  // namespace

TEST_CASE("rational string round trip") {
    CHECK(to_string(Rational(2, 3)) == "2/3");
    CHECK(to_string(Rational(4, 2)) == "2");
    CHECK(to_string(Rational(-1, 6)) == "-1/6");
    CHECK(rational_from_string("2/3") == Rational(2, 3));
    CHECK(rational_from_string("-7") == Rational(-7));
    CHECK(rational_from_string("10/4") == Rational(5, 2));
    CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string(""), std::invalid_argument);
}

TEST_CASE("pmf base cases and worked examples") {
    CHECK(pmf_reflexive(1).probs == std::map<int, Rational>{{0, 1}});
    CHECK(pmf_reflexive(2).probs == std::map<int, Rational>{{1, 1}});
    CHECK(pmf_reflexive(3).probs == std::map<int, Rational>{{1, 1}});
    CHECK(pmf_reflexive(4).probs ==
          std::map<int, Rational>{{1, Rational(2, 3)}, {2, Rational(1, 3)}});
    CHECK(pmf_reflexive(5).probs ==
          std::map<int, Rational>{{1, Rational(1, 3)}, {2, Rational(2, 3)}});
    CHECK_THROWS_AS(pmf_reflexive(0), std::invalid_argument);
}

TEST_CASE("pmf equals the test-local enumeration") {
    for (int n = 4; n <= 8; ++n) {
        auto hist = enumerate_minima(n - 1);
        auto pmf = pmf_reflexive(n);
        const std::int64_t fact = small_factorial(n - 1);
        std::map<int, Rational> expected;
        for (auto [k, c] : hist)
            if (c > 0) expected.emplace(k, Rational(c, fact));
        CHECK(pmf.probs == expected);
    }
}

TEST_CASE("pmf invariants up to n = 120") {
    auto table = pmf_reflexive_table(120);
    REQUIRE(table.size() == 120);
    for (int n = 1; n <= 120; ++n) {
        const ExactPmf& pmf = table[n - 1];
        CHECK(pmf.n == n);
        Rational sum = 0;
        for (const auto& [k, p] : pmf.probs) {
            CHECK(p > 0);
            sum += p;
            if (n >= 2) {
                CHECK(k >= 1);
                CHECK(k <= n / 2);
            }
        }
        CHECK(sum == Rational(1));
        if (n >= 2) {
            CHECK(pmf.probs.count(1) == 1);
            CHECK(pmf.probs.count(n / 2) == 1);  // support is the full range
        }
        if (n >= 3) CHECK(pmf.mean() == Rational(n, 3));
        if (n >= 5) CHECK(pmf.variance() == Rational(2 * n, 45));
    }
}

TEST_CASE("brute-force pmf oracle") {
    CHECK(brute_force_pmf_reflexive(2).probs == std::map<int, Rational>{{1, 1}});
    CHECK(brute_force_pmf_reflexive(4).probs ==
          std::map<int, Rational>{{1, Rational(2, 3)}, {2, Rational(1, 3)}});
    for (int n = 2; n <= 9; ++n) CHECK(brute_force_pmf_reflexive(n).probs == pmf_reflexive(n).probs);
    CHECK_THROWS_AS(brute_force_pmf_reflexive(1), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_pmf_reflexive(11), std::invalid_argument);
}

TEST_CASE("convolution recurrence oracle") {
    CHECK(enns_recurrence_pmf(4).probs ==
          std::map<int, Rational>{{1, Rational(2, 3)}, {2, Rational(1, 3)}});
    CHECK(enns_recurrence_pmf(5).probs ==
          std::map<int, Rational>{{1, Rational(1, 3)}, {2, Rational(2, 3)}});
    for (int n = 4; n <= 24; ++n) CHECK(enns_recurrence_pmf(n).probs == pmf_reflexive(n).probs);
    CHECK_THROWS_AS(enns_recurrence_pmf(3), std::invalid_argument);
    CHECK_THROWS_AS(enns_recurrence_pmf(65), std::invalid_argument);
}

TEST_CASE("reflexive moments") {
    CHECK(mean_reflexive(300) == Rational(100));
    CHECK(mean_reflexive(2) == Rational(1));
    CHECK(var_reflexive(5) == Rational(2, 9));
    CHECK(var_reflexive(4) == Rational(2, 9));  // from the pmf, not the closed form
    CHECK(var_reflexive(3) == Rational(0));
    CHECK(var_reflexive(2) == Rational(0));
    CHECK_THROWS_AS(mean_reflexive(1), std::invalid_argument);
    CHECK_FALSE(var_reflexive_is_closed_form(4));
    CHECK(var_reflexive_is_closed_form(5));
}

TEST_CASE("shared moments") {
    CHECK(mean_shared(4) == Rational(1));
    CHECK(mean_shared(1000) == Rational(250));
    CHECK(mean_shared(3) == Rational(1));  // enumeration below the closed-form range
    CHECK(var_shared(240) == Rational(19));
    CHECK(var_shared(3) == Rational(0));
    CHECK(var_shared(5) == Rational(3, 16));
    CHECK_THROWS_AS(mean_shared(2), std::invalid_argument);

    auto m4 = brute_force_moments_shared(4);
    CHECK(m4.mean == Rational(1));
    auto m8 = brute_force_moments_shared(8);
    CHECK(m8.mean == Rational(2));
    CHECK(m8.variance == Rational(19 * 8, 240));
    auto m3 = brute_force_moments_shared(3);
    CHECK(m3.mean == Rational(1));
    CHECK(m3.variance == Rational(0));
    CHECK_THROWS_AS(brute_force_moments_shared(2), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_moments_shared(11), std::invalid_argument);
}

TEST_CASE("reflexive covariance table") {
    CHECK(covariance_reflexive_indicators(1, 2, 8) == Rational(-1, 6));
    CHECK(covariance_reflexive_indicators(2, 4, 8) == Rational(1, 45));
    CHECK(covariance_reflexive_indicators(1, 5, 8) == Rational(0));
    CHECK(covariance_reflexive_indicators(1, 1, 8) == Rational(1, 4));
    CHECK(covariance_reflexive_indicators(3, 3, 8) == Rational(2, 9));
    CHECK(covariance_reflexive_indicators(2, 4, 4) == Rational(1, 24));  // hits the far end
    CHECK(covariance_reflexive_indicators(4, 2, 8) == covariance_reflexive_indicators(2, 4, 8));
    CHECK_THROWS_AS(covariance_reflexive_indicators(0, 1, 8), std::invalid_argument);
    CHECK_THROWS_AS(covariance_reflexive_indicators(1, 9, 8), std::invalid_argument);
    CHECK_THROWS_AS(covariance_reflexive_indicators(1, 2, 3), std::invalid_argument);
}

TEST_CASE("shared covariance table") {
    CHECK(covariance_shared_indicators(1, 2, 8) == Rational(0));
    CHECK(covariance_shared_indicators(2, 4, 8) == Rational(-1, 16));
    CHECK(covariance_shared_indicators(2, 5, 8) == Rational(1, 48));
    CHECK(covariance_shared_indicators(1, 3, 8) == Rational(-1, 8));
    CHECK(covariance_shared_indicators(1, 4, 8) == Rational(1, 24));
    CHECK(covariance_shared_indicators(2, 2, 8) == Rational(3, 16));
    CHECK(covariance_shared_indicators(1, 1, 8) == Rational(1, 4));
    CHECK(covariance_shared_indicators(1, 5, 8) == Rational(0));
    CHECK_THROWS_AS(covariance_shared_indicators(1, 8, 8), std::invalid_argument);
    CHECK_THROWS_AS(covariance_shared_indicators(1, 2, 5), std::invalid_argument);
}

TEST_CASE("covariance tables match enumeration at length 6") {
    const int m = 6;
    const std::int64_t fact = small_factorial(m);
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 1);

    std::vector<std::vector<std::int64_t>> joint_a(m, std::vector<std::int64_t>(m, 0));
    std::vector<std::int64_t> single_a(m, 0);
    const int nb = m - 1;
    std::vector<std::vector<std::int64_t>> joint_b(nb, std::vector<std::int64_t>(nb, 0));
    std::vector<std::int64_t> single_b(nb, 0);

    do {
        std::vector<int> a(m), b(nb);
        for (int i = 1; i <= m; ++i) {
            if (i == 1)
                a[i - 1] = perm[0] < perm[1];
            else if (i == m)
                a[i - 1] = perm[m - 1] < perm[m - 2];
            else
                a[i - 1] = perm[i - 1] < perm[i - 2] && perm[i - 1] < perm[i];
        }
        for (int i = 1; i <= nb; ++i) {
            if (i == 1)
                b[i - 1] = perm[1] < perm[2];
            else if (i == nb)
                b[i - 1] = perm[nb - 1] < perm[nb - 2];
            else
                b[i - 1] = perm[i - 1] < perm[i - 2] && perm[i] < perm[i + 1];
        }
        for (int i = 0; i < m; ++i) {
            single_a[i] += a[i];
            for (int j = 0; j < m; ++j) joint_a[i][j] += a[i] * a[j];
        }
        for (int i = 0; i < nb; ++i) {
            single_b[i] += b[i];
            for (int j = 0; j < nb; ++j) joint_b[i][j] += b[i] * b[j];
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) {
            Rational cov = Rational(joint_a[i - 1][j - 1], fact) -
                           Rational(single_a[i - 1], fact) * Rational(single_a[j - 1], fact);
            CHECK(cov == covariance_reflexive_indicators(i, j, m));
        }
    for (int i = 1; i <= nb; ++i)
        for (int j = 1; j <= nb; ++j) {
            Rational cov = Rational(joint_b[i - 1][j - 1], fact) -
                           Rational(single_b[i - 1], fact) * Rational(single_b[j - 1], fact);
            CHECK(cov == covariance_shared_indicators(i, j, m));
        }
}

TEST_CASE("covariance row sums reproduce the variances") {
    for (int n = 5; n <= 100; ++n) {
        const int m = n - 1;
        Rational sum = 0;
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= m; ++j) sum += covariance_reflexive_indicators(i, j, m);
        CHECK(sum == Rational(2 * n, 45));
    }
    for (int n = 7; n <= 100; ++n) {
        const int m = n - 1;
        Rational sum = 0;
        for (int i = 1; i <= m - 1; ++i)
            for (int j = 1; j <= m - 1; ++j) sum += covariance_shared_indicators(i, j, m);
        CHECK(sum == Rational(19 * n, 240));
    }
}

TEST_CASE("alternating permutation counts behind the covariance entries") {
    // order 4, pattern up-down-up starting low
    std::vector<int> p4 = {1, 2, 3, 4};
    int count4 = 0;
    do {
        if (p4[0] < p4[1] && p4[1] > p4[2] && p4[2] < p4[3]) ++count4;
    } while (std::next_permutation(p4.begin(), p4.end()));
    CHECK(count4 == 5);

    std::vector<int> p5 = {1, 2, 3, 4, 5};
    int count5 = 0;
    do {
        if (p5[0] > p5[1] && p5[1] < p5[2] && p5[2] > p5[3] && p5[3] < p5[4]) ++count5;
    } while (std::next_permutation(p5.begin(), p5.end()));
    CHECK(count5 == 16);
}

TEST_CASE("reflexive dimension constant") {
    CHECK(reflexive_constant(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(reflexive_constant(3) == doctest::Approx(8.0 / 27.0).epsilon(1e-14));
    const double r2 = 3 * std::numbers::pi / (8 * std::numbers::pi + 3 * std::numbers::sqrt3);
    CHECK(reflexive_constant(2) == doctest::Approx(r2).epsilon(1e-14));
    CHECK(std::abs(reflexive_constant(2) - 0.3108) < 1e-4);
    CHECK(reflexive_constant(9) > 0);
    CHECK(reflexive_constant(9) < 1);
    CHECK_THROWS_AS(reflexive_constant(0), std::invalid_argument);
}

TEST_CASE("shared dimension constant") {
    auto q1 = shared_constant(1);
    CHECK(q1.value == 0.25);
    CHECK(q1.exact);
    auto q2 = shared_constant(2);
    CHECK(q2.value == doctest::Approx(0.315));
    CHECK_FALSE(q2.exact);
    CHECK(shared_constant(5).value == doctest::Approx(0.4));
    CHECK_THROWS_AS(shared_constant(6), std::domain_error);
    CHECK_THROWS_AS(shared_constant(0), std::invalid_argument);
}

TEST_CASE("pmf JSON round trip") {
    auto pmf = pmf_reflexive(12);
    auto j = pmf_to_json(pmf);
    CHECK(j["n"] == 12);
    auto back = pmf_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.n == pmf.n);
    CHECK(back.probs == pmf.probs);
    CHECK(back.mean() == Rational(4));

    auto j4 = pmf_to_json(pmf_reflexive(4));
    CHECK(j4["pmf"]["1"] == "2/3");
    CHECK(j4["pmf"]["2"] == "1/3");
}
