#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace clvr {

using TradeId = std::uint32_t;

// Swap direction against the pool. SellX deposits token X and withdraws Y,
// pushing the spot price (Y per X) down; BuyY deposits token Y and
// withdraws X, pushing the price up.
enum class Direction : std::uint8_t { SellX, BuyY };

// Constant-product pool state. fee_rate is the fraction of the input
// amount retained by the pool, 0 <= fee_rate < 1.
struct Pool {
  double reserve_x{0.0};
  double reserve_y{0.0};
  double fee_rate{0.0};
};

// Spot price quoted as Y per X: reserve_y / reserve_x.
double spot_price(const Pool& pool);

// Throws ContractViolation unless reserves are positive and finite and
// fee_rate is in [0, 1).
void validate_pool(const Pool& pool);

// One swap request. amount_in is denominated in the deposited token
// (X for SellX, Y for BuyY). min_amount_out, when present, is the
// slippage floor in the withdrawn token; a step whose output falls below
// it fails instead of executing when slippage is enforced.
//
// Blocks are canonical: trade ids equal vector positions, so an Ordering
// indexes the block directly. `owner` groups trades that belong to one
// principal (children of a split trade share their parent's owner).
struct Trade {
  TradeId id{0};
  Direction direction{Direction::SellX};
  double amount_in{0.0};
  std::optional<double> min_amount_out{};
  std::uint32_t owner{0};
  std::string label{};
};

using Block = std::vector<Trade>;

// Execution order: a permutation of the trade ids 0..n-1.
using Ordering = std::vector<TradeId>;

Ordering identity_ordering(std::size_t n);
bool is_permutation_ordering(const Ordering& ordering, std::size_t n);

// Throws ContractViolation if ids are not exactly 0..n-1 in order or a
// trade has a non-positive / non-finite amount.
void validate_block(const Block& block);

// Convenience constructors that fill in sequential ids.
Trade make_trade(TradeId id, Direction direction, double amount_in,
                 std::optional<double> min_amount_out = std::nullopt);
Block make_block(std::initializer_list<std::pair<Direction, double>> trades);

struct SwapResult {
  Pool pool;
  double amount_out;
};

// Executes a single swap. For SellX with input dx the pool keeps
// dx_eff = dx * (1 - fee_rate) as the priced input:
//   amount_out = reserve_y * dx_eff / (reserve_x + dx_eff)
// and the full dx is added to reserve_x, so fees accrue to the pool.
// BuyY is symmetric in Y. Throws ContractViolation on invalid input and
// ExecutionError if the swap would produce a non-positive or non-finite
// output or drain a reserve.
SwapResult execute_trade(const Pool& pool, const Trade& trade);

struct TraceStep {
  TradeId trade{0};
  double price_after{0.0};
  double amount_out{0.0};
  bool failed{false};
};

// Result of running a block through the pool in a given order.
// For failed steps the pool is unchanged and price_after repeats the
// previous step's price (the initial price for a failure at step 0).
struct ExecutionTrace {
  double initial_price{0.0};
  std::vector<TraceStep> steps{};
  Pool final_pool{};
};

// Executes `ordering` against `pool`. With enforce_slippage, a step whose
// amount_out would fall below the trade's min_amount_out is marked failed
// and leaves the pool untouched; without it every step executes.
ExecutionTrace execute_block(const Pool& pool, const Block& block,
                             const Ordering& ordering, bool enforce_slippage);

}  // namespace clvr
