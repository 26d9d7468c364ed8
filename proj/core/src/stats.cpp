#include "mpsfft/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace mpsfft {

EtaGamma exact_eta_gamma(
    std::span<const std::pair<std::uint64_t, std::uint64_t>> results) {
  if (results.empty()) {
    throw std::invalid_argument("exact_eta_gamma: no observations");
  }
  std::uint64_t reached = 0;
  double gap_sum = 0.0;
  std::uint64_t gap_count = 0;
  for (const auto& [t, lower] : results) {
    if (t == lower) {
      ++reached;
    } else {
      gap_sum += double(t - lower) / double(lower);
      ++gap_count;
    }
  }
  EtaGamma out;
  out.eta = double(reached) / double(results.size());
  out.gamma = gap_count ? gap_sum / double(gap_count) : 0.0;
  return out;
}

namespace {

// log C(n, k) via lgamma.
double log_choose(std::uint64_t n, std::uint64_t k) {
  return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
         std::lgamma(double(n - k) + 1.0);
}

// Binomial upper tail P[Bin(trials, x) >= from], summed in log space with
// Kahan compensation. Caller arranges from >= trials - from + 1 roughly,
// i.e. this always sums the shorter tail.
double binomial_upper_tail(std::uint64_t trials, std::uint64_t from,
                           double x) {
  const double lx = std::log(x);
  const double l1x = std::log1p(-x);
  double sum = 0.0, carry = 0.0;
  for (std::uint64_t j = trials; j + 1 > from; --j) {
    const double term = std::exp(log_choose(trials, j) + double(j) * lx +
                                 double(trials - j) * l1x);
    const double y = term - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return std::min(sum, 1.0);
}

}  // namespace

double regularized_incomplete_beta(double x, std::uint64_t a,
                                   std::uint64_t b) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(
        "regularized_incomplete_beta: x must be in [0, 1]");
  }
  if (a < 1 || b < 1) {
    throw std::invalid_argument(
        "regularized_incomplete_beta: a and b must be positive integers");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  // I_x(a, b) = P[Bin(a+b-1, x) >= a]; sum whichever tail is shorter via
  // I_x(a, b) = 1 - I_{1-x}(b, a).
  if (b > a) {
    return 1.0 - binomial_upper_tail(a + b - 1, b, 1.0 - x);
  }
  return binomial_upper_tail(a + b - 1, a, x);
}

double eta_lower_bound(std::uint64_t xi0, std::uint64_t xi1, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("eta_lower_bound: alpha must be in (0, 1)");
  }
  if (xi1 > xi0) {
    throw std::invalid_argument("eta_lower_bound: xi1 exceeds xi0");
  }
  if (xi1 == xi0) {
    return std::pow(1.0 - alpha, 1.0 / double(xi0 + 1));
  }
  const double target = 1.0 - alpha;
  double lo = 0.0, hi = 1.0;
  // Beyond the 1e-12 goal, keep halving until the interval collapses to
  // adjacent doubles: the posterior density can exceed 1e4, so stopping at a
  // fixed x-width would leave a visible residual in the re-substituted value.
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v =
        regularized_incomplete_beta(mid, xi1 + 1, xi0 - xi1 + 1);
    if (v == target) return mid;
    if (v < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("normal_quantile: p must be in (0, 1)");
  }
  // Acklam's rational approximation, then one Newton step on the exact CDF.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
          c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Newton refinement: F(x) = 0.5 erfc(-x / sqrt(2)).
  const double inv_sqrt2 = 0.7071067811865475244;
  const double inv_sqrt2pi = 0.3989422804014326779;
  const double err = 0.5 * std::erfc(-x * inv_sqrt2) - p;
  const double pdf = inv_sqrt2pi * std::exp(-0.5 * x * x);
  if (pdf > 0.0) x -= err / pdf;
  return x;
}

double critical_z(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("critical_z: alpha must be in (0, 1)");
  }
  return normal_quantile(0.5 * (1.0 + alpha));
}

ConfidenceInterval gamma_interval(std::span<const double> gaps,
                                  double alpha) {
  ConfidenceInterval out;
  if (gaps.size() < 2) {
    out.degenerate = true;
    if (gaps.size() == 1) {
      out.low = out.high = gaps[0];
    }
    return out;
  }
  double mean = 0.0;
  for (const double g : gaps) mean += g;
  mean /= double(gaps.size());
  double ss = 0.0;
  for (const double g : gaps) ss += (g - mean) * (g - mean);
  const double sd = std::sqrt(ss / double(gaps.size() - 1));
  const double half = critical_z(alpha) * sd / std::sqrt(double(gaps.size()));
  out.low = mean - half;
  out.high = mean + half;
  return out;
}

}  // namespace mpsfft
