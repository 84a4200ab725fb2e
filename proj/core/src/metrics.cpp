#include "clvr/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "clvr/errors.hpp"

namespace clvr {

double squared_log_deviation(double status_quo_price, double price) {
  // log1p of the exact price ratio minus one: the subtraction is exact
  // for nearby prices, so no precision is lost to cancellation the way
  // log(p0) - log(p) loses it.
  const double d = std::log1p((price - status_quo_price) / status_quo_price);
  return d * d;
}

VolatilityReport volatility(const ExecutionTrace& trace) {
  if (trace.steps.empty()) {
    throw UndefinedMetricError("volatility of an empty trace is undefined");
  }
  double sum = 0.0;
  for (const TraceStep& step : trace.steps) {
    sum += squared_log_deviation(trace.initial_price, step.price_after);
  }
  VolatilityReport report;
  report.volatility = sum / static_cast<double>(trace.steps.size());
  report.steps = trace.steps.size();
  report.status_quo_price = trace.initial_price;
  return report;
}

double volatility_value(const ExecutionTrace& trace) {
  return volatility(trace).volatility;
}

double gini(const ExecutionTrace& trace, const Block& block,
            double status_quo_price) {
  if (trace.steps.empty()) {
    throw UndefinedMetricError("gini of an empty trace is undefined");
  }
  std::vector<double> wealth;
  wealth.reserve(trace.steps.size());
  for (const TraceStep& step : trace.steps) {
    double w = step.failed ? 0.0 : step.amount_out;
    if (!step.failed && block[step.trade].direction == Direction::BuyY) {
      w *= status_quo_price;
    }
    wealth.push_back(w);
  }
  std::sort(wealth.begin(), wealth.end());

  const double n = static_cast<double>(wealth.size());
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < wealth.size(); ++i) {
    total += wealth[i];
    weighted += static_cast<double>(i + 1) * wealth[i];
  }
  if (!(total > 0.0)) {
    throw UndefinedMetricError("gini is undefined when all wealth is zero");
  }
  return 2.0 * weighted / (n * total) - (n + 1.0) / n;
}

RelativeScore relative_score(double raw, double global_min,
                             double global_max) {
  if (global_max < global_min) {
    throw ContractViolation("relative_score bounds are inverted");
  }
  RelativeScore score;
  score.global_min = global_min;
  score.global_max = global_max;
  if (global_max == global_min) {
    score.value_pct = 0.0;
    return score;
  }
  const double pct = 100.0 * (raw - global_min) / (global_max - global_min);
  score.value_pct = std::clamp(pct, 0.0, 100.0);
  return score;
}

RelativeScore relative_score(double raw, std::span<const double> values) {
  if (values.empty()) {
    throw ContractViolation("relative_score needs a non-empty collection");
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  const double slack = 1e-9 * std::max(1.0, std::abs(range));
  if (raw < *lo - slack || raw > *hi + slack) {
    throw ContractViolation("relative_score raw value outside the collection");
  }
  return relative_score(raw, *lo, *hi);
}

}  // namespace clvr
