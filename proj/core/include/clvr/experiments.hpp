#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clvr/amm.hpp"
#include "clvr/io.hpp"
#include "clvr/sequencers.hpp"
#include "clvr/workload.hpp"

namespace clvr {

// FNV-1a hash of an ordering's id sequence, hex-encoded; a compact
// fingerprint for per-trial reporting.
std::string ordering_digest(const Ordering& ordering);

struct TrialSequencerResult {
  std::string sequencer;
  std::string digest;
  double volatility{0.0};
  std::optional<double> relative_volatility{};
  std::size_t failures{0};
  std::optional<double> gini{};
};

struct TrialResult {
  std::size_t trial_id{0};
  std::vector<TrialSequencerResult> sequencers;
};

// ---------------------------------------------------------------------------
// Sequencer comparison: mean raw and relative volatility, winner counts
// and a paired one-sided t-test per block size.

struct CompareConfig {
  Pool pool{2'000'000.0, 2'000'000.0, 0.0};
  WorkloadSpec workload{};
  std::vector<std::size_t> block_sizes{2, 5, 10, 50, 100};
  std::size_t trials{100};
  std::vector<SequencerSpec> sequencers{{SequencerKind::Vhgsr},
                                        {SequencerKind::Clvr}};
  // Compute per-trial relative volatility via exhaustive min/max when the
  // block size is within factorial_cap. Skipped above the cap regardless.
  bool compute_relative{true};
  std::size_t factorial_cap{kDefaultFactorialCap};
  // Two volatilities within this relative distance count as a tie.
  double tie_threshold{1e-12};
  unsigned threads{1};
  bool keep_trials{false};
};

struct CompareCell {
  std::string sequencer;
  double mean_volatility{0.0};
  std::optional<double> mean_relative{};
  std::size_t wins{0};
};

struct CompareRow {
  std::size_t n{0};
  std::vector<CompareCell> cells;
  std::size_t ties{0};
  // One-sided paired t-test that clvr's per-trial volatility is below
  // vhgsr's; present when both are configured and the differences have
  // nonzero variance.
  std::optional<double> p_value{};
  std::vector<TrialResult> trials;  // populated when keep_trials
};

struct CompareReport {
  CompareConfig config;
  std::vector<CompareRow> rows;
};

CompareReport compare_sequencers(const CompareConfig& config);

// ---------------------------------------------------------------------------
// Failure rates under slippage enforcement: random ordering vs the
// slippage-aware greedy rules, as a percentage of all trades.

struct FailureRateConfig {
  Pool pool{2'000'000.0, 2'000'000.0, 0.0};
  WorkloadSpec workload{};
  std::vector<std::size_t> block_sizes{3, 5, 10, 50, 100};
  std::size_t trials{1000};
  double tolerance{0.005};
  unsigned threads{1};
};

struct FailureRateRow {
  std::size_t n{0};
  double random_pct{0.0};
  double vhgsr_pct{0.0};
  double clvr_pct{0.0};
  // 100 * (random - clvr) / random, 0 when random is 0.
  double reduction_pct{0.0};
};

struct FailureRateReport {
  FailureRateConfig config;
  std::vector<FailureRateRow> rows;
};

FailureRateReport failure_rate_experiment(const FailureRateConfig& config);

// ---------------------------------------------------------------------------
// Batching granularity: a fixed trade stream is cut into blocks of each
// requested size, every block is sequenced by the greedy rule against
// its own opening price and executed on the carried-forward pool. The
// per-trial aggregate is the mean squared log deviation of every
// executed step from the stream's opening price, summarized by
// quartiles; coarser partitions give the rule more room to cancel flow,
// so they score lower.

struct BlockSizeSweepConfig {
  Pool pool{2'000'000.0, 2'000'000.0, 0.0};
  WorkloadSpec workload{};
  std::size_t total_trades{100};
  std::vector<std::size_t> block_sizes{1, 10, 100};  // must divide total
  std::size_t trials{1000};
  unsigned threads{1};
};

struct BlockSizeSweepRow {
  std::size_t block_size{0};
  double p25{0.0};
  double median{0.0};
  double p75{0.0};
};

struct BlockSizeSweepReport {
  BlockSizeSweepConfig config;
  std::vector<BlockSizeSweepRow> rows;
};

BlockSizeSweepReport block_size_sweep(const BlockSizeSweepConfig& config);

// ---------------------------------------------------------------------------
// Trade splitting: does cutting a trade into equal children change the
// total amount received under greedy local-volatility sequencing?

enum class SplitMode : std::uint8_t {
  // One target BuyY trade of a fixed size splits; background trades don't.
  OneSplits,
  // Every trade in a generated block splits; gains averaged over owners.
  AllSplit,
};

struct SplittingConfig {
  Pool pool{2'000'000.0, 2'000'000.0, 0.0};
  WorkloadSpec workload{};
  std::vector<double> target_sizes{100.0, 10'000.0};  // OneSplits only
  std::vector<std::uint32_t> split_factors{2, 5, 10};
  std::size_t background_trades{9};  // OneSplits only
  std::size_t trials{1000};
  SplitMode mode{SplitMode::OneSplits};
  unsigned threads{1};
};

struct SplittingCell {
  std::optional<double> target_size{};  // absent in AllSplit mode
  std::uint32_t split_factor{0};
  // Mean of 100 * (children total out - unsplit out) / unsplit out.
  double mean_gain_pct{0.0};
};

struct SplittingReport {
  SplittingConfig config;
  std::vector<SplittingCell> cells;
};

SplittingReport splitting_experiment(const SplittingConfig& config);

// ---------------------------------------------------------------------------
// Do the volatility and equality objectives agree? Exhaustive search
// scores every ordering on both metrics; each extreme ordering of one
// metric is placed on the other metric's 0-100 scale.

struct ObjectiveConflictConfig {
  Pool pool{2'000'000.0, 2'000'000.0, 0.0};
  WorkloadSpec workload{};
  std::vector<std::size_t> block_sizes{3, 5};
  std::size_t trials{1000};
  std::size_t factorial_cap{kDefaultFactorialCap};
  unsigned threads{1};
};

struct ObjectiveConflictRow {
  std::size_t n{0};
  double mean_rel_gini_of_vol_min{0.0};
  double mean_rel_gini_of_vol_max{0.0};
  double mean_rel_vol_of_gini_min{0.0};
  double mean_rel_vol_of_gini_max{0.0};
};

struct ObjectiveConflictReport {
  ObjectiveConflictConfig config;
  std::vector<ObjectiveConflictRow> rows;
};

ObjectiveConflictReport objective_conflict(const ObjectiveConflictConfig& config);

// ---------------------------------------------------------------------------
// Replay of an observed swap history. Swaps are grouped into blocks
// (native block numbers, or fixed-size chunks when chunk_size > 0); each
// configured sequencer re-orders every block and executes it on its own
// carried-forward pool trajectory. Winner counts are tallied between the
// volume heuristic and the greedy local-volatility rule when both are
// configured, otherwise across all sequencers.

struct ReplayConfig {
  Pool pool{2'000'000.0, 2'000'000.0, 0.0};
  std::size_t chunk_size{0};
  std::vector<SequencerSpec> sequencers{{SequencerKind::Fcfs},
                                        {SequencerKind::Vhgsr},
                                        {SequencerKind::Clvr}};
  bool compute_relative{true};
  // Exhaustive per-block min/max is only attempted for blocks of at most
  // this many swaps (and never above factorial_cap).
  std::size_t relative_cap{8};
  std::size_t factorial_cap{kDefaultFactorialCap};
  std::uint64_t seed{0};
  double tie_threshold{1e-12};
  unsigned threads{1};
};

struct ReplayBlockDetail {
  std::size_t index{0};
  std::int64_t block_number{0};
  std::size_t swap_count{0};
  std::vector<double> volatility;                 // per sequencer
  std::vector<std::optional<double>> relative;    // per sequencer
};

struct ReplaySizeRow {
  std::size_t swap_count{0};
  std::size_t blocks{0};
  std::vector<std::size_t> wins;  // per sequencer
  std::size_t ties{0};
  std::vector<std::optional<double>> mean_relative;  // per sequencer
  std::optional<double> p_value{};
};

struct ReplayReport {
  ReplayConfig config;
  std::vector<std::string> sequencer_names;
  std::vector<ReplayBlockDetail> blocks;
  std::vector<ReplaySizeRow> by_size;
  std::vector<double> mean_volatility;         // per sequencer
  // 100 * (mean_vol[0] - mean_vol[i]) / mean_vol[0]; the first configured
  // sequencer is the baseline (the observed order when it is fcfs).
  std::vector<double> reduction_vs_baseline_pct;
};

ReplayReport replay_empirical(const std::vector<SwapRecord>& swaps,
                              const ReplayConfig& config);

}  // namespace clvr
