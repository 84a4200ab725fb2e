#include "clvr/workload.hpp"

#include <cmath>

#include "clvr/errors.hpp"
#include "clvr/rng.hpp"

namespace clvr {

namespace {

double draw_size(Rng& rng, const SizeDistribution& sizes) {
  if (const auto* ln = std::get_if<LogNormalSizes>(&sizes)) {
    return std::exp(ln->mu + ln->sigma * rng.next_normal());
  }
  const auto& u = std::get<UniformSizes>(sizes);
  // Open at the low end so sizes stay strictly positive when lo == 0.
  return u.lo + (u.hi - u.lo) * rng.next_open_double();
}

}  // namespace

Block generate_block(const WorkloadSpec& spec) {
  if (const auto* ln = std::get_if<LogNormalSizes>(&spec.sizes)) {
    if (!(ln->sigma > 0.0) || !std::isfinite(ln->mu)) {
      throw ContractViolation("lognormal sizes need finite mu and sigma > 0");
    }
  }
  if (const auto* u = std::get_if<UniformSizes>(&spec.sizes)) {
    if (!(u->hi > u->lo) || !(u->lo >= 0.0)) {
      throw ContractViolation("uniform size range must satisfy 0 <= lo < hi");
    }
  }
  if (!(spec.buy_probability >= 0.0) || !(spec.buy_probability <= 1.0)) {
    throw ContractViolation("buy_probability must lie in [0, 1]");
  }
  if (spec.split_factor == 0) {
    throw ContractViolation("split_factor must be at least 1");
  }

  Rng rng(spec.seed);
  Block block;
  block.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const Direction direction = rng.next_bernoulli(spec.buy_probability)
                                    ? Direction::BuyY
                                    : Direction::SellX;
    block.push_back(make_trade(static_cast<TradeId>(i), direction,
                               draw_size(rng, spec.sizes)));
  }
  if (spec.split_factor > 1) {
    block = split_trades(block, spec.split_factor, SplitAll{});
  }
  return block;
}

Block assign_slippage(const Pool& pool, const Block& block, double tolerance) {
  validate_pool(pool);
  validate_block(block);
  if (!(tolerance >= 0.0) || !(tolerance <= 1.0)) {
    throw ContractViolation("slippage tolerance must lie in [0, 1]");
  }
  Block out = block;
  for (Trade& trade : out) {
    const double isolated = execute_trade(pool, trade).amount_out;
    trade.min_amount_out = (1.0 - tolerance) * isolated;
  }
  return out;
}

Block split_trades(const Block& block, std::uint32_t factor,
                   const SplitTarget& target) {
  validate_block(block);
  if (factor == 0) {
    throw ContractViolation("split factor must be at least 1");
  }
  const auto targeted = [&](const Trade& trade) {
    if (std::holds_alternative<SplitAll>(target)) return true;
    return trade.id == std::get<SplitOne>(target).id;
  };

  Block out;
  out.reserve(block.size());
  TradeId next_id = 0;
  for (const Trade& trade : block) {
    const std::uint32_t pieces = targeted(trade) ? factor : 1;
    for (std::uint32_t k = 0; k < pieces; ++k) {
      Trade child = trade;
      child.id = next_id++;
      child.amount_in = trade.amount_in / static_cast<double>(pieces);
      if (trade.min_amount_out) {
        child.min_amount_out =
            *trade.min_amount_out / static_cast<double>(pieces);
      }
      out.push_back(child);
    }
  }
  return out;
}

}  // namespace clvr
