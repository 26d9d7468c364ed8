#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mpsfft {

struct EtaGamma {
  double eta = 0.0;    // fraction of runs with T == T_lower
  double gamma = 0.0;  // mean (T - T_lower) / T_lower over the rest; 0 if none
};

/// Exact optimality statistics over (T, T_lower) observations.
EtaGamma exact_eta_gamma(
    std::span<const std::pair<std::uint64_t, std::uint64_t>> results);

/// Regularized incomplete beta function I_x(a, b) for positive integer a, b,
/// evaluated as the binomial tail sum
///   I_x(a, b) = sum_{j=a}^{a+b-1} C(a+b-1, j) x^j (1-x)^{a+b-1-j}
/// in log space with compensated summation; the smaller of the two tails is
/// summed, so counts in the millions stay cheap and finite.
double regularized_incomplete_beta(double x, std::uint64_t a, std::uint64_t b);

/// Posterior lower bound eta_L solving
///   I_{eta_L}(xi1 + 1, xi0 - xi1 + 1) = 1 - alpha
/// by bisection to 1e-12 (flat prior on eta). When xi1 == xi0 the closed
/// form (1 - alpha)^(1 / (xi0 + 1)) is used.
double eta_lower_bound(std::uint64_t xi0, std::uint64_t xi1, double alpha);

/// Standard normal quantile, |error| <= 1e-9.
double normal_quantile(double p);

/// Two-sided critical z-score for confidence level alpha.
double critical_z(double alpha);

struct ConfidenceInterval {
  double low = 0.0;
  double high = 0.0;
  bool degenerate = false;  // fewer than 2 observations
};

/// CLT interval mu -/+ z * sigma / sqrt(count) over percentage-gap
/// observations, with sample mean and sample standard deviation.
ConfidenceInterval gamma_interval(std::span<const double> gaps, double alpha);

struct PerProcessorStats {
  std::uint32_t processors = 0;
  std::uint64_t runs = 0;
  std::uint64_t reached = 0;
  double eta = 0.0;
  double gamma = 0.0;
};

/// Aggregated optimality report for one n. eta/gamma are the per-M values
/// averaged over M. The Bayesian lower bound and the CLT interval are
/// meaningful for sampled sets only; complete sets report exact values.
struct StatsReport {
  int n = 0;
  double alpha = 0.95;
  bool sampled = false;
  std::vector<PerProcessorStats> per_m;
  double eta = 0.0;
  double gamma = 0.0;
  std::uint64_t xi0 = 0;  // total runs
  std::uint64_t xi1 = 0;  // bound-reaching runs
  double eta_lower = 0.0;            // sampled mode only
  ConfidenceInterval gamma_ci;       // sampled mode only
  double gap_mean = 0.0;             // pooled non-reaching gap moments
  double gap_variance = 0.0;
};

}  // namespace mpsfft
