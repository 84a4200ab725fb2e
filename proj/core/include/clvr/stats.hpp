#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace clvr {

struct MeanVar {
  double mean{0.0};
  double sample_variance{0.0};
  std::size_t n{0};
};

MeanVar mean_and_variance(std::span<const double> values);

// q is a fraction in [0, 1]; linear interpolation between closest ranks.
double percentile(std::vector<double> values, double q);
double median(std::vector<double> values);

double log_beta(double a, double b);

// Regularized incomplete beta function I_x(a, b) for a, b > 0 and
// x in [0, 1], evaluated with a Lentz continued fraction. Absolute
// accuracy is well below 1e-8 across the parameter ranges used here.
double regularized_incomplete_beta(double x, double a, double b);

// CDF of Student's t distribution with `dof` degrees of freedom.
double student_t_cdf(double t, double dof);

enum class Alternative { Less, Greater };

// One-sided paired t-test on a vector of per-trial differences.
// Alternative::Less tests mean(diff) < 0. Needs at least two samples.
// Zero-variance input degenerates to p = 0 when the mean strictly
// favors the alternative and p = 1 otherwise.
double paired_t_test(std::span<const double> diffs, Alternative alternative);

}  // namespace clvr
