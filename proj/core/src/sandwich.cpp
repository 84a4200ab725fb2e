#include "clvr/sandwich.hpp"

#include "clvr/errors.hpp"
#include "clvr/sequencers.hpp"

namespace clvr {

Block sandwich_block(const SandwichScenario& scenario) {
  if (scenario.pool.fee_rate != 0.0) {
    throw ContractViolation("sandwich analysis assumes a frictionless pool");
  }
  Block block;
  block.push_back(
      make_trade(kFrontRunId, Direction::SellX, scenario.front_run_amount));
  block.push_back(
      make_trade(kVictimId, Direction::SellX, scenario.victim_amount));
  block.push_back(
      make_trade(kBackRunId, Direction::BuyY, scenario.back_run_amount));
  // The attacker's trades belong to one principal.
  block[kBackRunId].owner = kFrontRunId;
  return block;
}

SandwichOutcome evaluate_sandwich(const SandwichScenario& scenario,
                                  const Ordering& ordering) {
  const Block block = sandwich_block(scenario);
  const ExecutionTrace trace =
      execute_block(scenario.pool, block, ordering, /*enforce_slippage=*/false);

  SandwichOutcome outcome;
  for (const TraceStep& step : trace.steps) {
    if (step.trade == kFrontRunId) outcome.front_run_out_y = step.amount_out;
    if (step.trade == kBackRunId) outcome.back_run_out_x = step.amount_out;
  }
  outcome.attacker_profit_x =
      outcome.back_run_out_x - scenario.front_run_amount;
  outcome.risk_free =
      scenario.back_run_amount <= outcome.front_run_out_y;
  return outcome;
}

bool clvr_blocks_sandwich(const SandwichScenario& scenario) {
  const Block block = sandwich_block(scenario);
  const Ordering ordering = clvr_ordering(scenario.pool, block);

  const bool attack_shape = ordering[0] == kFrontRunId &&
                            ordering[1] == kVictimId &&
                            ordering[2] == kBackRunId;
  if (!attack_shape) return true;

  const SandwichOutcome outcome = evaluate_sandwich(scenario, ordering);
  return !(outcome.risk_free && outcome.attacker_profit_x > 0.0);
}

}  // namespace clvr
