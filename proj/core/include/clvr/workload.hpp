#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>

#include "clvr/amm.hpp"

namespace clvr {

// Trade sizes drawn as exp(mu + sigma * z), z standard normal. The
// defaults fit observed swap sizes on a large constant-product venue.
struct LogNormalSizes {
  double mu{4.93};
  double sigma{2.05};
};

struct UniformSizes {
  double lo{0.0};
  double hi{100000.0};
};

using SizeDistribution = std::variant<LogNormalSizes, UniformSizes>;

// Recipe for one synthetic block: n independent trades with random
// direction (BuyY with probability buy_probability) and random size.
// split_factor > 1 splits every generated trade into that many equal
// children sharing the parent's owner.
struct WorkloadSpec {
  std::size_t n{10};
  SizeDistribution sizes{LogNormalSizes{}};
  double buy_probability{0.5};
  std::uint64_t seed{0};
  std::uint32_t split_factor{1};
};

Block generate_block(const WorkloadSpec& spec);

// Copy of `block` where every trade's min_amount_out is set to
// (1 - tolerance) times the output it would get executing alone against
// `pool`. tolerance in [0, 1]; 0 means any adverse move at all fails the
// trade unless it runs first, 1 disables the floor.
Block assign_slippage(const Pool& pool, const Block& block, double tolerance);

// Which trades split_trades splits.
struct SplitAll {};
struct SplitOne {
  TradeId id{0};
};
using SplitTarget = std::variant<SplitAll, SplitOne>;

// Replaces each targeted trade by `factor` children of equal size
// (amount_in / factor), same direction, owner inherited from the parent,
// and re-assigns canonical ids. Children of one parent are adjacent and
// untargeted trades keep their relative order. factor must be >= 1.
Block split_trades(const Block& block, std::uint32_t factor,
                   const SplitTarget& target = SplitAll{});

}  // namespace clvr
