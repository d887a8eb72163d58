#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace nnstat {

enum class Distribution { UniformCube, StandardNormal };
enum class Statistic { Reflexive, Shared };

struct McConfig {
    int n = 2;
    std::int64_t reps = 1;
    std::uint64_t seed = 0;
    int dim = 1;
    Distribution dist = Distribution::UniformCube;
    int threads = 0;  // 0 = hardware concurrency
};

/// Sample moments of the per-replication pair counts. All statistical fields
/// are derived from exact integer accumulators, so a given config produces
/// bit-identical values for any worker count. elapsed_seconds is wall time
/// and is the one field that is not reproducible.
struct McSummary {
    double mean_R = 0, se_mean_R = 0, var_R = 0, se_var_R = 0;
    double mean_Q = 0, se_mean_Q = 0, var_Q = 0, se_var_Q = 0;
    std::int64_t reps = 0;
    double elapsed_seconds = 0;
};

/// Draws config.reps independent samples of size config.n and aggregates the
/// reflexive/shared counts. When per_rep is non-null it receives (R, Q) per
/// replication, in replication order.
McSummary run_simulation(const McConfig& config,
                         std::vector<std::pair<std::int64_t, std::int64_t>>* per_rep = nullptr);

struct CltReport {
    std::vector<double> standardized_values;  // (count - mean) / sd, exact moments
    double ks_statistic = 0;                  // one-sample KS vs the standard normal
    double ks_pvalue_bound = 0;               // asymptotic Kolmogorov tail; diagnostic only,
                                              // the counts live on a lattice
};

/// Standardizes each replication with the exact moments (n/3, 2n/45) or
/// (n/4, 19n/240). statistic = Shared requires n >= 7.
CltReport clt_check(const McConfig& config, Statistic statistic);

struct TracePoint {
    std::int64_t n = 0;
    double r_ratio = 0;  // reflexive count / n
    double q_ratio = 0;  // shared count / n
};

/// One growing sample path: uniform points appended one at a time, ratios
/// emitted at logarithmically spaced prefix sizes (and at n_max itself).
/// n_max >= 10.
std::vector<TracePoint> slln_trace(std::int64_t n_max, std::uint64_t seed);

struct DimensionEstimate {
    double r_hat = 0, r_se = 0;
    double q_hat = 0, q_se = 0;
};

/// Monte Carlo estimates of E(reflexive)/n and E(shared)/n for uniform
/// samples on the d-cube. 1 <= d <= 5, n >= 1000.
DimensionEstimate estimate_dimension_constants(int d, int n, std::int64_t reps,
                                               std::uint64_t seed, int threads = 0);

/// Kolmogorov asymptotic tail probability, used for CltReport::ks_pvalue_bound.
double kolmogorov_pvalue(double ks_statistic, std::int64_t sample_count);

/// Standard normal distribution function via std::erfc (|error| well under
/// 1e-10 over the double range).
double normal_cdf(double x);

}  // namespace nnstat
