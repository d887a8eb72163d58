#include "nnstat/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <thread>

#include "nnstat/nn_digraph.hpp"
#include "nnstat/rng.hpp"

namespace nnstat {

namespace {

using Wide = __int128;  // exact power sums; reproducible across worker counts

struct PowerSums {
    Wide s1 = 0, s2 = 0, s3 = 0, s4 = 0;

    void add(std::int64_t x) {
        Wide w = x;
        s1 += w;
        s2 += w * w;
        s3 += w * w * w;
        s4 += w * w * w * w;
    }
    void merge(const PowerSums& o) {
        s1 += o.s1;
        s2 += o.s2;
        s3 += o.s3;
        s4 += o.s4;
    }
};

struct MomentStats {
    double mean = 0, se_mean = 0, var = 0, se_var = 0;
};

// All inputs are exact integers, so the result is a fixed function of the
// replication counts alone.
MomentStats finalize(const PowerSums& s, std::int64_t reps) {
    MomentStats out;
    const double N = static_cast<double>(reps);
    const double s1 = static_cast<double>(s.s1);
    const double s2 = static_cast<double>(s.s2);
    const double s3 = static_cast<double>(s.s3);
    const double s4 = static_cast<double>(s.s4);
    const double m = s1 / N;
    out.mean = m;
    if (reps < 2) return out;
    const double c2 = s2 / N - m * m;
    const double c4 = s4 / N - 4 * m * (s3 / N) + 6 * m * m * (s2 / N) - 3 * m * m * m * m;
    out.var = (s2 - s1 * s1 / N) / (N - 1);
    out.se_mean = std::sqrt(std::max(0.0, out.var / N));
    // Asymptotic standard error of the sample variance.
    const double var_of_var = (c4 - c2 * c2 * (N - 3) / (N - 1)) / N;
    out.se_var = std::sqrt(std::max(0.0, var_of_var));
    return out;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

void fill_sample(Xoshiro256pp& rng, Distribution dist, std::span<double> buf) {
    if (dist == Distribution::UniformCube) {
        for (double& v : buf) v = rng.next_unit();
    } else {
        for (double& v : buf) v = rng.next_normal();
    }
}

void validate(const McConfig& cfg) {
    if (cfg.n < 2) throw std::invalid_argument("sample size must be >= 2");
    if (cfg.reps < 1) throw std::invalid_argument("replication count must be >= 1");
    if (cfg.dim < 1) throw std::invalid_argument("dimension must be >= 1");
}

}  // namespace

McSummary run_simulation(const McConfig& config,
                         std::vector<std::pair<std::int64_t, std::int64_t>>* per_rep) {
    validate(config);
    const auto t0 = std::chrono::steady_clock::now();
    if (per_rep) per_rep->assign(config.reps, {0, 0});

    const int nthreads =
        static_cast<int>(std::min<std::int64_t>(resolve_threads(config.threads), config.reps));
    const std::int64_t chunk =
        std::max<std::int64_t>(1, config.reps / (static_cast<std::int64_t>(nthreads) * 16));

    std::vector<PowerSums> sums_r(nthreads), sums_q(nthreads);
    std::atomic<std::int64_t> cursor{0};

    auto worker = [&](int w) {
        std::vector<double> buf(static_cast<std::size_t>(config.n) * config.dim);
        PowerSums local_r, local_q;
        for (;;) {
            const std::int64_t start = cursor.fetch_add(chunk, std::memory_order_relaxed);
            if (start >= config.reps) break;
            const std::int64_t end = std::min(config.reps, start + chunk);
            for (std::int64_t rep = start; rep < end; ++rep) {
                Xoshiro256pp rng(config.seed, static_cast<std::uint64_t>(rep));
                fill_sample(rng, config.dist, buf);
                PairCounts counts;
                if (config.dim == 1) {
                    std::sort(buf.begin(), buf.end());
                    counts = pair_counts_1d_sorted(buf);
                } else {
                    counts = pair_counts_bruteforce(config.dim, buf);
                }
                local_r.add(counts.reflexive);
                local_q.add(counts.shared);
                if (per_rep) (*per_rep)[rep] = {counts.reflexive, counts.shared};
            }
        }
        sums_r[w] = local_r;
        sums_q[w] = local_q;
    };

    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int w = 0; w < nthreads; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }

    PowerSums total_r, total_q;
    for (int w = 0; w < nthreads; ++w) {
        total_r.merge(sums_r[w]);
        total_q.merge(sums_q[w]);
    }

    const MomentStats r = finalize(total_r, config.reps);
    const MomentStats q = finalize(total_q, config.reps);
    McSummary out;
    out.mean_R = r.mean;
    out.se_mean_R = r.se_mean;
    out.var_R = r.var;
    out.se_var_R = r.se_var;
    out.mean_Q = q.mean;
    out.se_mean_Q = q.se_mean;
    out.var_Q = q.var;
    out.se_var_Q = q.se_var;
    out.reps = config.reps;
    out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

CltReport clt_check(const McConfig& config, Statistic statistic) {
    validate(config);
    if (statistic == Statistic::Shared && config.n < 7)
        throw std::invalid_argument("shared-count variance formula needs n >= 7");
    if (statistic == Statistic::Reflexive && config.n < 5)
        throw std::invalid_argument("reflexive-count variance formula needs n >= 5");

    std::vector<std::pair<std::int64_t, std::int64_t>> counts;
    run_simulation(config, &counts);

    const double n = config.n;
    const double mean = statistic == Statistic::Reflexive ? n / 3.0 : n / 4.0;
    const double sd = statistic == Statistic::Reflexive ? std::sqrt(2.0 * n / 45.0)
                                                        : std::sqrt(19.0 * n / 240.0);

    CltReport report;
    report.standardized_values.resize(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const std::int64_t c =
            statistic == Statistic::Reflexive ? counts[i].first : counts[i].second;
        report.standardized_values[i] = (static_cast<double>(c) - mean) / sd;
    }

    std::vector<double> sorted = report.standardized_values;
    std::sort(sorted.begin(), sorted.end());
    const double N = static_cast<double>(sorted.size());
    double d = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = normal_cdf(sorted[i]);
        d = std::max(d, (static_cast<double>(i) + 1.0) / N - f);
        d = std::max(d, f - static_cast<double>(i) / N);
    }
    report.ks_statistic = d;
    report.ks_pvalue_bound = kolmogorov_pvalue(d, static_cast<std::int64_t>(sorted.size()));
    return report;
}

std::vector<TracePoint> slln_trace(std::int64_t n_max, std::uint64_t seed) {
    if (n_max < 10) throw std::invalid_argument("trace needs n_max >= 10");

    std::vector<std::int64_t> checkpoints;
    double v = 2;
    while (static_cast<std::int64_t>(v) < n_max) {
        checkpoints.push_back(static_cast<std::int64_t>(v));
        v = std::max(v + 1, v * 1.25);
    }
    checkpoints.push_back(n_max);

    Xoshiro256pp rng(seed, 0);
    std::vector<double> points;
    points.reserve(n_max);
    std::vector<double> sorted;
    sorted.reserve(n_max);

    std::vector<TracePoint> trace;
    trace.reserve(checkpoints.size());
    for (std::int64_t cp : checkpoints) {
        while (static_cast<std::int64_t>(points.size()) < cp) points.push_back(rng.next_unit());
        sorted.assign(points.begin(), points.end());
        std::sort(sorted.begin(), sorted.end());
        const PairCounts counts = pair_counts_1d_sorted(sorted);
        trace.push_back({cp, static_cast<double>(counts.reflexive) / static_cast<double>(cp),
                         static_cast<double>(counts.shared) / static_cast<double>(cp)});
    }
    return trace;
}

DimensionEstimate estimate_dimension_constants(int d, int n, std::int64_t reps,
                                               std::uint64_t seed, int threads) {
    if (d < 1 || d > 5) throw std::invalid_argument("dimension constants support 1 <= d <= 5");
    if (n < 1000) throw std::invalid_argument("estimates need n >= 1000");
    McConfig cfg;
    cfg.n = n;
    cfg.reps = reps;
    cfg.seed = seed;
    cfg.dim = d;
    cfg.dist = Distribution::UniformCube;
    cfg.threads = threads;
    const McSummary s = run_simulation(cfg);

    DimensionEstimate est;
    est.r_hat = s.mean_R / n;
    est.r_se = s.se_mean_R / n;
    est.q_hat = s.mean_Q / n;
    est.q_se = s.se_mean_Q / n;
    return est;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double kolmogorov_pvalue(double ks_statistic, std::int64_t sample_count) {
    if (ks_statistic <= 0) return 1.0;
    const double sqrt_n = std::sqrt(static_cast<double>(sample_count));
    const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * ks_statistic;
    // Alternating series for the Kolmogorov tail; it only converges usefully
    // for moderate lambda, and the tail is 1 to double precision below that.
    double p = 0, prev_term = 0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
        p += (k % 2 == 1) ? term : -term;
        if (term <= 1e-12 * p || (k > 1 && term <= 1e-3 * prev_term))
            return std::clamp(p, 0.0, 1.0);
        prev_term = term;
    }
    return 1.0;
}

}  // namespace nnstat
