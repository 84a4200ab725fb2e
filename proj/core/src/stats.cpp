#include "clvr/stats.hpp"

#include <algorithm>
#include <cmath>

#include "clvr/errors.hpp"

namespace clvr {

MeanVar mean_and_variance(std::span<const double> values) {
  if (values.empty()) {
    throw ContractViolation("mean_and_variance needs at least one value");
  }
  MeanVar mv;
  mv.n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  mv.mean = sum / static_cast<double>(mv.n);
  if (mv.n >= 2) {
    double ss = 0.0;
    for (double v : values) {
      const double d = v - mv.mean;
      ss += d * d;
    }
    mv.sample_variance = ss / static_cast<double>(mv.n - 1);
  }
  return mv;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) {
    throw ContractViolation("percentile of an empty collection is undefined");
  }
  if (!(q >= 0.0) || !(q <= 1.0)) {
    throw ContractViolation("percentile fraction must lie in [0, 1]");
  }
  std::sort(values.begin(), values.end());
  const double rank = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(rank);
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

double median(std::vector<double> values) {
  return percentile(std::move(values), 0.5);
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

namespace {

// Lentz evaluation of the continued fraction for the incomplete beta
// function. Converges quickly when x < (a + 1) / (a + b + 2).
double incomplete_beta_cf(double x, double a, double b) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-15;
  constexpr int kMaxIter = 300;

  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double f = d;

  for (int m = 1; m <= kMaxIter; ++m) {
    const double dm = static_cast<double>(m);
    // Even coefficient.
    double num = dm * (b - dm) * x / ((a + 2.0 * dm - 1.0) * (a + 2.0 * dm));
    d = 1.0 + num * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + num / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    f *= d * c;
    // Odd coefficient.
    num = -(a + dm) * (a + b + dm) * x /
          ((a + 2.0 * dm) * (a + 2.0 * dm + 1.0));
    d = 1.0 + num * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + num / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    f *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return f;
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw ContractViolation("incomplete beta parameters must be positive");
  }
  if (!(x >= 0.0) || !(x <= 1.0)) {
    throw ContractViolation("incomplete beta argument must lie in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * incomplete_beta_cf(x, a, b) / a;
  }
  return 1.0 - front * incomplete_beta_cf(1.0 - x, b, a) / b;
}

double student_t_cdf(double t, double dof) {
  if (!(dof > 0.0)) {
    throw ContractViolation("degrees of freedom must be positive");
  }
  if (t == 0.0) return 0.5;
  const double x = dof / (t * t + dof);
  const double tail = 0.5 * regularized_incomplete_beta(x, 0.5 * dof, 0.5);
  return t > 0.0 ? 1.0 - tail : tail;
}

double paired_t_test(std::span<const double> diffs, Alternative alternative) {
  if (diffs.size() < 2) {
    throw ContractViolation("paired t-test needs at least two differences");
  }
  const MeanVar mv = mean_and_variance(diffs);
  if (mv.sample_variance == 0.0) {
    const bool favors = alternative == Alternative::Less ? mv.mean < 0.0
                                                         : mv.mean > 0.0;
    return favors ? 0.0 : 1.0;
  }
  const double se =
      std::sqrt(mv.sample_variance / static_cast<double>(mv.n));
  const double t = mv.mean / se;
  const double dof = static_cast<double>(mv.n - 1);
  return alternative == Alternative::Less ? student_t_cdf(t, dof)
                                          : 1.0 - student_t_cdf(t, dof);
}

}  // namespace clvr
