#pragma once

#include <cstddef>
#include <span>

#include "clvr/amm.hpp"

namespace clvr {

struct VolatilityReport {
  double volatility{0.0};
  std::size_t steps{0};
  double status_quo_price{0.0};
};

// Mean squared log-deviation of the step prices from the status-quo
// (pre-block) price:
//   (1/n) * sum_i (ln p0 - ln P_i)^2
// Failed steps repeat the previous price, so they still contribute a
// term. Throws UndefinedMetricError on an empty trace.
VolatilityReport volatility(const ExecutionTrace& trace);

double volatility_value(const ExecutionTrace& trace);

// Squared log-deviation of a single price from p0; the quantity the
// greedy sequencer minimizes one step at a time.
double squared_log_deviation(double status_quo_price, double price);

// Gini coefficient of received amounts. Wealth of trade i is its
// amount_out, with BuyY outputs (token X) converted to Y units at the
// status-quo price; failed trades count as zero wealth. With ascending
// weights W_1 <= ... <= W_n:
//   G = 2 * sum_i i * W_i / (n * sum_i W_i) - (n + 1) / n
// Throws UndefinedMetricError if the trace is empty or all wealth is zero.
double gini(const ExecutionTrace& trace, const Block& block,
            double status_quo_price);

struct RelativeScore {
  double value_pct{0.0};
  double global_min{0.0};
  double global_max{0.0};
};

// Position of `raw` inside [global_min, global_max] as a percentage:
// 100 * (raw - min) / (max - min), clamped to [0, 100] against rounding.
// A degenerate range (min == max) scores 0.
RelativeScore relative_score(double raw, double global_min, double global_max);

// Same, with the bounds taken from a non-empty collection that must
// bracket `raw`.
RelativeScore relative_score(double raw, std::span<const double> values);

}  // namespace clvr
