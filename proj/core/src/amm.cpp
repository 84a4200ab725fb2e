#include "clvr/amm.hpp"

#include <cmath>
#include <numeric>

#include "clvr/errors.hpp"

namespace clvr {

double spot_price(const Pool& pool) { return pool.reserve_y / pool.reserve_x; }

void validate_pool(const Pool& pool) {
  if (!(pool.reserve_x > 0.0) || !std::isfinite(pool.reserve_x) ||
      !(pool.reserve_y > 0.0) || !std::isfinite(pool.reserve_y)) {
    throw ContractViolation("pool reserves must be positive and finite");
  }
  if (!(pool.fee_rate >= 0.0) || !(pool.fee_rate < 1.0)) {
    throw ContractViolation("fee_rate must lie in [0, 1)");
  }
}

Ordering identity_ordering(std::size_t n) {
  Ordering ordering(n);
  std::iota(ordering.begin(), ordering.end(), TradeId{0});
  return ordering;
}

bool is_permutation_ordering(const Ordering& ordering, std::size_t n) {
  if (ordering.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (TradeId id : ordering) {
    if (id >= n || seen[id]) return false;
    seen[id] = true;
  }
  return true;
}

void validate_block(const Block& block) {
  for (std::size_t i = 0; i < block.size(); ++i) {
    const Trade& t = block[i];
    if (t.id != i) {
      throw ContractViolation("block is not canonical: trade id " +
                              std::to_string(t.id) + " at position " +
                              std::to_string(i));
    }
    if (!(t.amount_in > 0.0) || !std::isfinite(t.amount_in)) {
      throw ContractViolation("trade " + std::to_string(t.id) +
                              " has non-positive or non-finite amount_in");
    }
    if (t.min_amount_out &&
        (!std::isfinite(*t.min_amount_out) || *t.min_amount_out < 0.0)) {
      throw ContractViolation("trade " + std::to_string(t.id) +
                              " has invalid min_amount_out");
    }
  }
}

Trade make_trade(TradeId id, Direction direction, double amount_in,
                 std::optional<double> min_amount_out) {
  Trade t;
  t.id = id;
  t.direction = direction;
  t.amount_in = amount_in;
  t.min_amount_out = min_amount_out;
  t.owner = id;
  return t;
}

Block make_block(std::initializer_list<std::pair<Direction, double>> trades) {
  Block block;
  block.reserve(trades.size());
  TradeId id = 0;
  for (const auto& [direction, amount] : trades) {
    block.push_back(make_trade(id++, direction, amount));
  }
  return block;
}

SwapResult execute_trade(const Pool& pool, const Trade& trade) {
  validate_pool(pool);
  if (!(trade.amount_in > 0.0) || !std::isfinite(trade.amount_in)) {
    throw ContractViolation("amount_in must be positive and finite");
  }

  const double in_eff = trade.amount_in * (1.0 - pool.fee_rate);
  SwapResult result;
  if (trade.direction == Direction::SellX) {
    result.amount_out =
        pool.reserve_y * in_eff / (pool.reserve_x + in_eff);
    result.pool.reserve_x = pool.reserve_x + trade.amount_in;
    result.pool.reserve_y = pool.reserve_y - result.amount_out;
  } else {
    result.amount_out =
        pool.reserve_x * in_eff / (pool.reserve_y + in_eff);
    result.pool.reserve_x = pool.reserve_x - result.amount_out;
    result.pool.reserve_y = pool.reserve_y + trade.amount_in;
  }
  result.pool.fee_rate = pool.fee_rate;

  if (!(result.amount_out > 0.0) || !std::isfinite(result.amount_out) ||
      !(result.pool.reserve_x > 0.0) || !(result.pool.reserve_y > 0.0) ||
      !std::isfinite(result.pool.reserve_x) ||
      !std::isfinite(result.pool.reserve_y)) {
    throw ExecutionError("swap of " + std::to_string(trade.amount_in) +
                         " produced a degenerate pool state");
  }
  return result;
}

ExecutionTrace execute_block(const Pool& pool, const Block& block,
                             const Ordering& ordering, bool enforce_slippage) {
  validate_pool(pool);
  validate_block(block);
  if (!is_permutation_ordering(ordering, block.size())) {
    throw ContractViolation("ordering is not a permutation of the block");
  }

  ExecutionTrace trace;
  trace.initial_price = spot_price(pool);
  trace.steps.reserve(ordering.size());
  trace.final_pool = pool;

  double last_price = trace.initial_price;
  for (TradeId id : ordering) {
    const Trade& trade = block[id];
    const SwapResult swapped = execute_trade(trace.final_pool, trade);
    const bool failed = enforce_slippage && trade.min_amount_out &&
                        swapped.amount_out < *trade.min_amount_out;
    TraceStep step;
    step.trade = id;
    step.failed = failed;
    if (failed) {
      step.price_after = last_price;
      step.amount_out = 0.0;
    } else {
      trace.final_pool = swapped.pool;
      step.price_after = spot_price(swapped.pool);
      step.amount_out = swapped.amount_out;
      last_price = step.price_after;
    }
    trace.steps.push_back(step);
  }
  return trace;
}

}  // namespace clvr
