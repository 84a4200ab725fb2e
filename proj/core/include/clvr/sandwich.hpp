#pragma once

#include "clvr/amm.hpp"

namespace clvr {

// Three-trade sandwich instance on a frictionless pool. The victim
// sells X; the attacker wraps it with a front-running SellX of
// front_run_amount (token X) and a back-running BuyY of back_run_amount
// (token Y). The opposite-direction victim case is the same scenario
// with the token labels, and hence the reserves, swapped.
struct SandwichScenario {
  Pool pool{};
  double victim_amount{0.0};
  double front_run_amount{0.0};
  double back_run_amount{0.0};
};

// Canonical block for the scenario: id 0 front-run, 1 victim, 2 back-run.
Block sandwich_block(const SandwichScenario& scenario);

inline constexpr TradeId kFrontRunId = 0;
inline constexpr TradeId kVictimId = 1;
inline constexpr TradeId kBackRunId = 2;

struct SandwichOutcome {
  // X the attacker ends up with minus the X they put in.
  double attacker_profit_x{0.0};
  // True when the back-run repays no more Y than the front-run received,
  // so the attacker carries no inventory risk.
  bool risk_free{false};
  double front_run_out_y{0.0};
  double back_run_out_x{0.0};
};

// Executes the scenario's block in the given order (no slippage
// enforcement) and reports the attacker's position.
SandwichOutcome evaluate_sandwich(const SandwichScenario& scenario,
                                  const Ordering& ordering);

// True when the ordering the greedy local-volatility rule assigns to the
// scenario's block denies the attacker a risk-free profit: either the
// rule breaks the front-victim-back pattern, or executing its ordering
// yields no risk-free gain.
bool clvr_blocks_sandwich(const SandwichScenario& scenario);

}  // namespace clvr
