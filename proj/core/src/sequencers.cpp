#include "clvr/sequencers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "clvr/errors.hpp"
#include "clvr/metrics.hpp"
#include "clvr/rng.hpp"

namespace clvr {

const char* sequencer_name(SequencerKind kind) {
  switch (kind) {
    case SequencerKind::Fcfs: return "fcfs";
    case SequencerKind::Random: return "random";
    case SequencerKind::Gsr: return "gsr";
    case SequencerKind::Vhgsr: return "vhgsr";
    case SequencerKind::Clvr: return "clvr";
    case SequencerKind::ClvrSlippageAware: return "clvr-slippage";
    case SequencerKind::VhgsrSlippageAware: return "vhgsr-slippage";
    case SequencerKind::BruteForceMin: return "bf-min";
    case SequencerKind::BruteForceMax: return "bf-max";
  }
  return "unknown";
}

std::optional<SequencerKind> parse_sequencer(std::string_view name) {
  if (name == "fcfs") return SequencerKind::Fcfs;
  if (name == "random") return SequencerKind::Random;
  if (name == "gsr") return SequencerKind::Gsr;
  if (name == "vhgsr") return SequencerKind::Vhgsr;
  if (name == "clvr") return SequencerKind::Clvr;
  if (name == "clvr-slippage") return SequencerKind::ClvrSlippageAware;
  if (name == "vhgsr-slippage") return SequencerKind::VhgsrSlippageAware;
  if (name == "bf-min") return SequencerKind::BruteForceMin;
  if (name == "bf-max") return SequencerKind::BruteForceMax;
  return std::nullopt;
}

Ordering fcfs_ordering(const Block& block) {
  validate_block(block);
  return identity_ordering(block.size());
}

Ordering random_ordering(const Block& block, std::uint64_t seed) {
  validate_block(block);
  Ordering ordering = identity_ordering(block.size());
  Rng rng(seed);
  rng.shuffle(ordering);
  return ordering;
}

namespace {

// Input size of a trade in X units at the status-quo price; the common
// numeraire the volume heuristic compares in.
double size_in_x_units(const Trade& trade, double p0) {
  return trade.direction == Direction::SellX ? trade.amount_in
                                             : trade.amount_in / p0;
}

// Shared skeleton of the greedy direction-alternation rules. `viable`
// flags which pending trades may be scheduled at all (slippage-aware
// callers shrink it); `by_volume` switches the within-side pick from
// smallest id to smallest size.
template <typename PickFilter>
TradeId pick_greedy_side(const Pool& current, double p0, const Block& block,
                         const std::vector<TradeId>& pending, bool by_volume,
                         const PickFilter& viable) {
  const double price = spot_price(current);
  bool want_sell = false;
  bool want_buy = false;
  if (price > p0) {
    want_sell = true;
  } else if (price < p0) {
    want_buy = true;
  } else {
    want_sell = want_buy = true;
  }

  auto better = [&](TradeId candidate, TradeId incumbent) {
    if (incumbent == std::numeric_limits<TradeId>::max()) return true;
    if (!by_volume) return candidate < incumbent;
    const double cs = size_in_x_units(block[candidate], p0);
    const double is = size_in_x_units(block[incumbent], p0);
    if (cs != is) return cs < is;
    return candidate < incumbent;
  };

  TradeId best = std::numeric_limits<TradeId>::max();
  for (TradeId id : pending) {
    if (!viable(id)) continue;
    const bool on_side = block[id].direction == Direction::SellX ? want_sell
                                                                 : want_buy;
    if (on_side && better(id, best)) best = id;
  }
  if (best != std::numeric_limits<TradeId>::max()) return best;

  // Required side exhausted: every pending (viable) trade is eligible.
  for (TradeId id : pending) {
    if (viable(id) && better(id, best)) best = id;
  }
  return best;
}

Ordering greedy_side_rule(const Pool& pool, const Block& block,
                          bool by_volume) {
  validate_pool(pool);
  validate_block(block);
  const double p0 = spot_price(pool);

  Ordering ordering;
  ordering.reserve(block.size());
  std::vector<TradeId> pending = identity_ordering(block.size());
  Pool current = pool;
  auto all_viable = [](TradeId) { return true; };

  while (!pending.empty()) {
    const TradeId chosen =
        pick_greedy_side(current, p0, block, pending, by_volume, all_viable);
    current = execute_trade(current, block[chosen]).pool;
    ordering.push_back(chosen);
    pending.erase(std::find(pending.begin(), pending.end(), chosen));
  }
  return ordering;
}

// Greedy local-volatility pick: the pending trade whose post-swap price
// lands closest to p0 in squared log terms, smallest id on ties.
TradeId pick_min_deviation(const Pool& current, double p0, const Block& block,
                           const std::vector<TradeId>& pending) {
  TradeId best = std::numeric_limits<TradeId>::max();
  double best_dev = std::numeric_limits<double>::infinity();
  for (TradeId id : pending) {
    const SwapResult swapped = execute_trade(current, block[id]);
    const double dev = squared_log_deviation(p0, spot_price(swapped.pool));
    if (dev < best_dev || (dev == best_dev && id < best)) {
      best_dev = dev;
      best = id;
    }
  }
  return best;
}

}  // namespace

Ordering gsr_ordering(const Pool& pool, const Block& block) {
  return greedy_side_rule(pool, block, /*by_volume=*/false);
}

Ordering vhgsr_ordering(const Pool& pool, const Block& block) {
  return greedy_side_rule(pool, block, /*by_volume=*/true);
}

Ordering clvr_ordering(const Pool& pool, const Block& block) {
  validate_pool(pool);
  validate_block(block);
  const double p0 = spot_price(pool);

  Ordering ordering;
  ordering.reserve(block.size());
  std::vector<TradeId> pending = identity_ordering(block.size());
  Pool current = pool;

  while (!pending.empty()) {
    const TradeId chosen = pick_min_deviation(current, p0, block, pending);
    current = execute_trade(current, block[chosen]).pool;
    ordering.push_back(chosen);
    pending.erase(std::find(pending.begin(), pending.end(), chosen));
  }
  return ordering;
}

namespace {

bool meets_floor(const Pool& current, const Trade& trade) {
  if (!trade.min_amount_out) return true;
  return execute_trade(current, trade).amount_out >= *trade.min_amount_out;
}

template <typename PickViable>
AnnotatedOrdering slippage_aware(const Pool& pool, const Block& block,
                                 const PickViable& pick) {
  validate_pool(pool);
  validate_block(block);

  AnnotatedOrdering result;
  result.ordering.reserve(block.size());
  result.predicted_failed.reserve(block.size());
  std::vector<TradeId> pending = identity_ordering(block.size());
  std::vector<bool> viable(block.size(), false);
  Pool current = pool;

  while (!pending.empty()) {
    bool any_viable = false;
    for (TradeId id : pending) {
      viable[id] = meets_floor(current, block[id]);
      any_viable = any_viable || viable[id];
    }
    if (!any_viable) {
      // Nothing can satisfy its floor from here: append the remainder in
      // arrival order, all failing. The pool freezes, so re-executing
      // with enforcement reproduces this prediction exactly.
      for (TradeId id : pending) {
        result.ordering.push_back(id);
        result.predicted_failed.push_back(true);
        ++result.predicted_failures;
      }
      pending.clear();
      break;
    }
    const TradeId chosen = pick(current, block, pending, viable);
    current = execute_trade(current, block[chosen]).pool;
    result.ordering.push_back(chosen);
    result.predicted_failed.push_back(false);
    pending.erase(std::find(pending.begin(), pending.end(), chosen));
  }
  return result;
}

}  // namespace

AnnotatedOrdering clvr_slippage_aware_ordering(const Pool& pool,
                                               const Block& block) {
  const double p0 = spot_price(pool);
  return slippage_aware(
      pool, block,
      [p0](const Pool& current, const Block& blk,
           const std::vector<TradeId>& pending,
           const std::vector<bool>& viable) {
        std::vector<TradeId> usable;
        usable.reserve(pending.size());
        for (TradeId id : pending) {
          if (viable[id]) usable.push_back(id);
        }
        return pick_min_deviation(current, p0, blk, usable);
      });
}

AnnotatedOrdering vhgsr_slippage_aware_ordering(const Pool& pool,
                                                const Block& block) {
  const double p0 = spot_price(pool);
  return slippage_aware(
      pool, block,
      [p0](const Pool& current, const Block& blk,
           const std::vector<TradeId>& pending,
           const std::vector<bool>& viable) {
        return pick_greedy_side(current, p0, blk, pending, /*by_volume=*/true,
                                [&viable](TradeId id) { return viable[id]; });
      });
}

namespace {

std::size_t factorial_or_throw(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw TractabilityError("exhaustive search over " + std::to_string(n) +
                            " trades exceeds the factorial cap of " +
                            std::to_string(cap));
  }
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

double evaluate_metric(const Pool& pool, const Block& block,
                       const Ordering& ordering, Metric metric, double p0,
                       std::vector<double>& wealth_scratch) {
  Pool current = pool;
  if (metric == Metric::Volatility) {
    double sum = 0.0;
    for (TradeId id : ordering) {
      current = execute_trade(current, block[id]).pool;
      sum += squared_log_deviation(p0, spot_price(current));
    }
    return sum / static_cast<double>(ordering.size());
  }

  wealth_scratch.clear();
  for (TradeId id : ordering) {
    const SwapResult swapped = execute_trade(current, block[id]);
    current = swapped.pool;
    double w = swapped.amount_out;
    if (block[id].direction == Direction::BuyY) w *= p0;
    wealth_scratch.push_back(w);
  }
  std::sort(wealth_scratch.begin(), wealth_scratch.end());
  const double n = static_cast<double>(wealth_scratch.size());
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < wealth_scratch.size(); ++i) {
    total += wealth_scratch[i];
    weighted += static_cast<double>(i + 1) * wealth_scratch[i];
  }
  return 2.0 * weighted / (n * total) - (n + 1.0) / n;
}

}  // namespace

BruteForceResult brute_force_search(const Pool& pool, const Block& block,
                                    Metric metric, bool maximize,
                                    std::size_t factorial_cap) {
  validate_pool(pool);
  validate_block(block);
  factorial_or_throw(block.size(), factorial_cap);

  BruteForceResult result;
  if (block.empty()) return result;

  const double p0 = spot_price(pool);
  std::vector<double> scratch;
  Ordering perm = identity_ordering(block.size());
  bool first = true;
  do {
    const double value =
        evaluate_metric(pool, block, perm, metric, p0, scratch);
    const bool improves = maximize ? value > result.value
                                   : value < result.value;
    // Strict improvement keeps the lexicographically smallest ordering
    // among ties, since next_permutation enumerates in lexicographic order.
    if (first || improves) {
      result.value = value;
      result.ordering = perm;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return result;
}

MetricEnvelope metric_envelope(const Pool& pool, const Block& block,
                               Metric metric, std::size_t factorial_cap) {
  validate_pool(pool);
  validate_block(block);
  factorial_or_throw(block.size(), factorial_cap);

  MetricEnvelope envelope;
  if (block.empty()) return envelope;

  const double p0 = spot_price(pool);
  std::vector<double> scratch;
  Ordering perm = identity_ordering(block.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  do {
    const double value =
        evaluate_metric(pool, block, perm, metric, p0, scratch);
    lo = std::min(lo, value);
    hi = std::max(hi, value);
  } while (std::next_permutation(perm.begin(), perm.end()));
  envelope.min_value = lo;
  envelope.max_value = hi;
  return envelope;
}

Ordering sequence(const Pool& pool, const Block& block,
                  const SequencerSpec& spec, std::size_t factorial_cap) {
  switch (spec.kind) {
    case SequencerKind::Fcfs:
      return fcfs_ordering(block);
    case SequencerKind::Random:
      return random_ordering(block, spec.seed);
    case SequencerKind::Gsr:
      return gsr_ordering(pool, block);
    case SequencerKind::Vhgsr:
      return vhgsr_ordering(pool, block);
    case SequencerKind::Clvr:
      return clvr_ordering(pool, block);
    case SequencerKind::ClvrSlippageAware:
      return clvr_slippage_aware_ordering(pool, block).ordering;
    case SequencerKind::VhgsrSlippageAware:
      return vhgsr_slippage_aware_ordering(pool, block).ordering;
    case SequencerKind::BruteForceMin:
      return brute_force_search(pool, block, spec.metric, false, factorial_cap)
          .ordering;
    case SequencerKind::BruteForceMax:
      return brute_force_search(pool, block, spec.metric, true, factorial_cap)
          .ordering;
  }
  throw ContractViolation("unknown sequencer kind");
}

}  // namespace clvr
