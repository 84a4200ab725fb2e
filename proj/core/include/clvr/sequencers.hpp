#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "clvr/amm.hpp"

namespace clvr {

enum class Metric : std::uint8_t { Volatility, Gini };

enum class SequencerKind : std::uint8_t {
  Fcfs,
  Random,
  Gsr,
  Vhgsr,
  Clvr,
  ClvrSlippageAware,
  VhgsrSlippageAware,
  BruteForceMin,
  BruteForceMax,
};

const char* sequencer_name(SequencerKind kind);
std::optional<SequencerKind> parse_sequencer(std::string_view name);

// Largest block size exhaustive search will enumerate (n! orderings).
inline constexpr std::size_t kDefaultFactorialCap = 12;

// Arrival order: ascending trade id.
Ordering fcfs_ordering(const Block& block);

// Uniform random permutation drawn from the given seed.
Ordering random_ordering(const Block& block, std::uint64_t seed);

// Greedy sequencing rule: track the running price against the status-quo
// price p0. While above p0 only price-decreasing trades (SellX) are
// eligible, while below only price-increasing ones (BuyY); at exactly p0
// both sides are. When the required side is exhausted every pending
// trade is eligible. Gsr picks the eligible trade with the smallest id.
Ordering gsr_ordering(const Pool& pool, const Block& block);

// Volume heuristic variant: among eligible trades, pick the one with the
// smallest input amount expressed in X units at p0 (BuyY inputs are
// divided by p0); ties fall back to the smallest id.
Ordering vhgsr_ordering(const Pool& pool, const Block& block);

// Greedy local-volatility rule: at each step execute the pending trade
// whose resulting price P minimizes (ln p0 - ln P)^2, ties resolved by
// the smallest id. O(n^2) swap evaluations.
Ordering clvr_ordering(const Pool& pool, const Block& block);

struct AnnotatedOrdering {
  Ordering ordering;
  // Parallel to `ordering`: true where the trade was appended as
  // unsatisfiable and will fail its slippage floor.
  std::vector<bool> predicted_failed;
  std::size_t predicted_failures{0};
};

// Slippage-aware greedy rules: at each step, candidates whose output
// under the current pool would fall below their min_amount_out are set
// aside; the base rule picks among the viable rest. If no pending trade
// is viable, the remainder is appended in id order and marked failed.
// Executing the result with slippage enforcement reproduces exactly the
// predicted failures. Trades without a floor are always viable.
AnnotatedOrdering clvr_slippage_aware_ordering(const Pool& pool,
                                               const Block& block);
AnnotatedOrdering vhgsr_slippage_aware_ordering(const Pool& pool,
                                                const Block& block);

struct BruteForceResult {
  Ordering ordering;
  double value{0.0};
};

// Exhaustive search over all n! orderings for the extreme value of a
// metric. Executes without slippage enforcement. Among orderings with
// the same extreme value the lexicographically smallest is returned.
// Throws TractabilityError when block.size() > factorial_cap.
BruteForceResult brute_force_search(const Pool& pool, const Block& block,
                                    Metric metric, bool maximize,
                                    std::size_t factorial_cap = kDefaultFactorialCap);

// Min and max of a metric over all orderings in a single enumeration.
struct MetricEnvelope {
  double min_value{0.0};
  double max_value{0.0};
};
MetricEnvelope metric_envelope(const Pool& pool, const Block& block,
                               Metric metric,
                               std::size_t factorial_cap = kDefaultFactorialCap);

struct SequencerSpec {
  SequencerKind kind{SequencerKind::Clvr};
  Metric metric{Metric::Volatility};  // brute-force kinds only
  std::uint64_t seed{0};              // Random only
};

// Dispatch helper; slippage-aware kinds return just the ordering.
Ordering sequence(const Pool& pool, const Block& block,
                  const SequencerSpec& spec,
                  std::size_t factorial_cap = kDefaultFactorialCap);

}  // namespace clvr
