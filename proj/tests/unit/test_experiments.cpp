#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "clvr/errors.hpp"
#include "clvr/experiments.hpp"
#include "clvr/metrics.hpp"
#include "clvr/report.hpp"
#include "clvr/sequencers.hpp"

using namespace clvr;

TEST_CASE("two-trade blocks always tie") {
  CompareConfig config;
  config.block_sizes = {2};
  config.trials = 25;
  config.workload.seed = 11;
  auto report = compare_sequencers(config);
  REQUIRE(report.rows.size() == 1);
  const auto& row = report.rows[0];
  CHECK(row.n == 2);
  CHECK(row.ties == 25);
  for (const auto& cell : row.cells) {
    CHECK(cell.wins == 0);
    REQUIRE(cell.mean_relative.has_value());
    CHECK(*cell.mean_relative == doctest::Approx(0.0).epsilon(1e-9));
  }
  // Identical per-trial volatilities leave the t-test degenerate.
  CHECK_FALSE(row.p_value.has_value());
}

TEST_CASE("winner counts and ties partition the trials") {
  CompareConfig config;
  config.block_sizes = {5, 8};
  config.trials = 40;
  config.workload.seed = 3;
  auto report = compare_sequencers(config);
  REQUIRE(report.rows.size() == 2);
  for (const auto& row : report.rows) {
    std::size_t wins = 0;
    for (const auto& cell : row.cells) wins += cell.wins;
    CHECK(wins + row.ties == 40);
  }
}

TEST_CASE("per-trial relative volatility stays on its scale") {
  CompareConfig config;
  config.block_sizes = {5};
  config.trials = 30;
  config.workload.seed = 17;
  config.keep_trials = true;
  auto report = compare_sequencers(config);
  REQUIRE(report.rows.size() == 1);
  bool interior_seen = false;
  for (const auto& trial : report.rows[0].trials) {
    for (const auto& result : trial.sequencers) {
      REQUIRE(result.relative_volatility.has_value());
      CHECK(*result.relative_volatility >= 0.0);
      CHECK(*result.relative_volatility <= 100.0);
      interior_seen |= *result.relative_volatility > 0.0;
    }
  }
  CHECK(interior_seen);
}

TEST_CASE("relative columns vanish above the factorial cap") {
  CompareConfig config;
  config.block_sizes = {6};
  config.trials = 5;
  config.factorial_cap = 5;
  auto report = compare_sequencers(config);
  for (const auto& cell : report.rows[0].cells) {
    CHECK_FALSE(cell.mean_relative.has_value());
  }

  config.factorial_cap = kDefaultFactorialCap;
  config.compute_relative = false;
  auto plain = compare_sequencers(config);
  for (const auto& cell : plain.rows[0].cells) {
    CHECK_FALSE(cell.mean_relative.has_value());
  }
}

TEST_CASE("comparison trend at moderate size favors the greedy rule") {
  CompareConfig config;
  config.block_sizes = {10};
  config.trials = 60;
  config.workload.seed = 101;
  config.compute_relative = false;
  auto report = compare_sequencers(config);
  const auto& row = report.rows[0];
  REQUIRE(row.cells.size() == 2);
  const auto& vhgsr = row.cells[0];
  const auto& clvr = row.cells[1];
  CHECK(clvr.mean_volatility < vhgsr.mean_volatility);
  CHECK(clvr.wins > vhgsr.wins);
  REQUIRE(row.p_value.has_value());
  CHECK(*row.p_value < 0.5);
}

TEST_CASE("comparison reports render deterministically") {
  CompareConfig config;
  config.block_sizes = {2, 5};
  config.trials = 10;
  config.workload.seed = 77;
  auto a = render(compare_sequencers(config), ReportFormat::Json);
  auto b = render(compare_sequencers(config), ReportFormat::Json);
  CHECK(a == b);

  config.threads = 4;
  auto parallel = render(compare_sequencers(config), ReportFormat::Json);
  CHECK(a == parallel);
}

TEST_CASE("failure rates vanish for single-trade blocks") {
  FailureRateConfig config;
  config.block_sizes = {1};
  config.trials = 50;
  auto report = failure_rate_experiment(config);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].random_pct == 0.0);
  CHECK(report.rows[0].vhgsr_pct == 0.0);
  CHECK(report.rows[0].clvr_pct == 0.0);
  CHECK(report.rows[0].reduction_pct == 0.0);
}

TEST_CASE("full tolerance never fails a trade") {
  FailureRateConfig config;
  config.block_sizes = {5, 10};
  config.trials = 30;
  config.tolerance = 1.0;
  auto report = failure_rate_experiment(config);
  for (const auto& row : report.rows) {
    CHECK(row.random_pct == 0.0);
    CHECK(row.vhgsr_pct == 0.0);
    CHECK(row.clvr_pct == 0.0);
  }
}

TEST_CASE("failure percentages are consistent") {
  FailureRateConfig config;
  config.block_sizes = {5, 10};
  config.trials = 100;
  config.workload.seed = 5;
  auto report = failure_rate_experiment(config);
  for (const auto& row : report.rows) {
    for (double pct : {row.random_pct, row.vhgsr_pct, row.clvr_pct}) {
      CHECK(pct >= 0.0);
      CHECK(pct <= 100.0);
    }
    CHECK(row.clvr_pct <= row.random_pct);
    if (row.random_pct > 0.0) {
      CHECK(row.reduction_pct ==
            doctest::Approx(100.0 * (row.random_pct - row.clvr_pct) /
                            row.random_pct));
    }
  }
}

TEST_CASE("random-order failure rates grow with block size") {
  FailureRateConfig config;
  config.block_sizes = {3, 10, 30};
  config.trials = 200;
  config.workload.seed = 23;
  auto report = failure_rate_experiment(config);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].random_pct <= report.rows[1].random_pct);
  CHECK(report.rows[1].random_pct <= report.rows[2].random_pct);
}

TEST_CASE("block size sweep reports ordered quartiles") {
  BlockSizeSweepConfig config;
  config.total_trades = 20;
  config.block_sizes = {1, 4, 20};
  config.trials = 50;
  config.workload.seed = 9;
  auto report = block_size_sweep(config);
  REQUIRE(report.rows.size() == 3);
  for (const auto& row : report.rows) {
    CHECK(row.p25 <= row.median);
    CHECK(row.median <= row.p75);
    CHECK(row.p25 > 0.0);
  }
}

TEST_CASE("block sizes must divide the stream") {
  BlockSizeSweepConfig config;
  config.total_trades = 10;
  config.block_sizes = {3};
  CHECK_THROWS_AS(block_size_sweep(config), ContractViolation);
}

TEST_CASE("whole-stream batching beats single-trade batching") {
  BlockSizeSweepConfig config;
  config.total_trades = 20;
  config.block_sizes = {1, 20};
  config.trials = 150;
  config.workload.seed = 14;
  auto report = block_size_sweep(config);
  double median_single = 0.0, median_whole = 0.0;
  for (const auto& row : report.rows) {
    if (row.block_size == 1) median_single = row.median;
    if (row.block_size == 20) median_whole = row.median;
  }
  CHECK(median_whole < median_single);
}

TEST_CASE("unit split factor changes nothing") {
  SplittingConfig config;
  config.split_factors = {1};
  config.target_sizes = {100.0};
  config.trials = 10;
  auto report = splitting_experiment(config);
  REQUIRE(report.cells.size() == 1);
  CHECK(report.cells[0].mean_gain_pct == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("one-splits cells carry their target size") {
  SplittingConfig config;
  config.target_sizes = {100.0, 10000.0};
  config.split_factors = {2, 5};
  config.trials = 5;
  config.workload.seed = 31;
  auto report = splitting_experiment(config);
  REQUIRE(report.cells.size() == 4);
  for (const auto& cell : report.cells) {
    REQUIRE(cell.target_size.has_value());
    CHECK(std::isfinite(cell.mean_gain_pct));
  }
  // Grid is ordered by (target size, split factor).
  CHECK(*report.cells[0].target_size == 100.0);
  CHECK(report.cells[0].split_factor == 2);
  CHECK(*report.cells[3].target_size == 10000.0);
  CHECK(report.cells[3].split_factor == 5);
}

TEST_CASE("all-split mode drops the target size") {
  SplittingConfig config;
  config.mode = SplitMode::AllSplit;
  config.split_factors = {2};
  config.trials = 5;
  config.workload.n = 4;
  config.workload.seed = 12;
  auto report = splitting_experiment(config);
  REQUIRE(report.cells.size() == 1);
  CHECK_FALSE(report.cells[0].target_size.has_value());
  CHECK(std::isfinite(report.cells[0].mean_gain_pct));
}

TEST_CASE("single-ordering blocks degenerate all conflict scores to zero") {
  ObjectiveConflictConfig config;
  config.block_sizes = {1};
  config.trials = 10;
  auto report = objective_conflict(config);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].mean_rel_gini_of_vol_min == 0.0);
  CHECK(report.rows[0].mean_rel_gini_of_vol_max == 0.0);
  CHECK(report.rows[0].mean_rel_vol_of_gini_min == 0.0);
  CHECK(report.rows[0].mean_rel_vol_of_gini_max == 0.0);
}

TEST_CASE("conflict scores live on the relative scale") {
  ObjectiveConflictConfig config;
  config.block_sizes = {3, 4};
  config.trials = 40;
  config.workload.seed = 19;
  auto report = objective_conflict(config);
  for (const auto& row : report.rows) {
    for (double value :
         {row.mean_rel_gini_of_vol_min, row.mean_rel_gini_of_vol_max,
          row.mean_rel_vol_of_gini_min, row.mean_rel_vol_of_gini_max}) {
      CHECK(value >= 0.0);
      CHECK(value <= 100.0);
    }
    // Optimizing one metric leaves the other away from its own optimum:
    // the volatility extremes land strictly inside the gini scale.
    CHECK(row.mean_rel_gini_of_vol_min > 0.0);
    CHECK(row.mean_rel_gini_of_vol_min < 100.0);
  }
}

TEST_CASE("conflict above the factorial cap is refused") {
  ObjectiveConflictConfig config;
  config.block_sizes = {13};
  config.trials = 1;
  CHECK_THROWS_AS(objective_conflict(config), TractabilityError);
}

TEST_CASE("optimizing one objective concedes the other, per trial") {
  Pool pool{2e6, 2e6, 0.0};
  WorkloadSpec spec;
  spec.n = 4;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    spec.seed = seed;
    Block block = generate_block(spec);
    auto vol_min = brute_force_search(pool, block, Metric::Volatility, false);
    auto gini_min = brute_force_search(pool, block, Metric::Gini, false);
    double vol_of_gini_min = volatility_value(
        execute_block(pool, block, gini_min.ordering, false));
    CHECK(vol_of_gini_min >= vol_min.value * (1.0 - 1e-12));
  }
}

namespace {

std::vector<SwapRecord> synthetic_swaps(std::size_t blocks,
                                        std::size_t per_block) {
  std::vector<SwapRecord> swaps;
  std::uint64_t t = 1700000000;
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t i = 0; i < per_block; ++i) {
      SwapRecord record;
      record.block_number = static_cast<std::int64_t>(1000 + b);
      record.direction =
          (i * 2654435761u + b) % 3 == 0 ? Direction::BuyY : Direction::SellX;
      record.amount_in = 50.0 + 37.0 * ((i * 7 + b * 13) % 11);
      record.timestamp = static_cast<std::int64_t>(t += 12);
      swaps.push_back(record);
    }
  }
  return swaps;
}

}  // namespace

TEST_CASE("replay groups by native block numbers") {
  auto swaps = synthetic_swaps(3, 4);
  ReplayConfig config;
  auto report = replay_empirical(swaps, config);
  REQUIRE(report.blocks.size() == 3);
  CHECK(report.sequencer_names ==
        std::vector<std::string>{"fcfs", "vhgsr", "clvr"});
  for (const auto& block : report.blocks) {
    CHECK(block.swap_count == 4);
    REQUIRE(block.volatility.size() == 3);
    for (double vol : block.volatility) CHECK(vol >= 0.0);
  }
  REQUIRE(report.by_size.size() == 1);
  const auto& row = report.by_size[0];
  std::size_t wins = row.ties;
  for (std::size_t w : row.wins) wins += w;
  CHECK(wins == 3);
}

TEST_CASE("replay chunking overrides native blocks") {
  auto swaps = synthetic_swaps(3, 4);
  ReplayConfig config;
  config.chunk_size = 6;
  auto report = replay_empirical(swaps, config);
  REQUIRE(report.blocks.size() == 2);
  CHECK(report.blocks[0].swap_count == 6);
  CHECK(report.blocks[1].swap_count == 6);
}

TEST_CASE("single-swap blocks leave nothing to reorder") {
  auto swaps = synthetic_swaps(4, 3);
  ReplayConfig config;
  config.chunk_size = 1;
  auto report = replay_empirical(swaps, config);
  REQUIRE(report.blocks.size() == 12);
  for (double reduction : report.reduction_vs_baseline_pct) {
    CHECK(reduction == 0.0);
  }
  for (std::size_t i = 1; i < report.mean_volatility.size(); ++i) {
    CHECK(report.mean_volatility[i] ==
          doctest::Approx(report.mean_volatility[0]));
  }
}

TEST_CASE("replay relative scores respect the size cap") {
  auto swaps = synthetic_swaps(2, 4);
  ReplayConfig config;
  config.relative_cap = 3;  // blocks of 4 exceed it
  auto capped = replay_empirical(swaps, config);
  for (const auto& block : capped.blocks) {
    for (const auto& rel : block.relative) {
      CHECK_FALSE(rel.has_value());
    }
  }

  config.relative_cap = 8;
  auto scored = replay_empirical(swaps, config);
  for (const auto& block : scored.blocks) {
    for (const auto& rel : block.relative) {
      REQUIRE(rel.has_value());
      CHECK(*rel >= 0.0);
      CHECK(*rel <= 100.0);
    }
  }
}

TEST_CASE("replay rejects interleaved block numbers") {
  auto swaps = synthetic_swaps(2, 2);
  std::swap(swaps[1], swaps[2]);  // 1000,1001,1000,1001
  ReplayConfig config;
  CHECK_THROWS_AS(replay_empirical(swaps, config), ContractViolation);
}

TEST_CASE("replay renders deterministically across thread counts") {
  auto swaps = synthetic_swaps(4, 5);
  ReplayConfig config;
  auto a = render(replay_empirical(swaps, config), ReportFormat::Json);
  auto b = render(replay_empirical(swaps, config), ReportFormat::Json);
  CHECK(a == b);
  config.threads = 3;
  auto parallel = render(replay_empirical(swaps, config), ReportFormat::Json);
  CHECK(a == parallel);
}

TEST_CASE("ordering digests are stable and order-sensitive") {
  CHECK(ordering_digest(Ordering{0, 1, 2}) == ordering_digest(Ordering{0, 1, 2}));
  CHECK(ordering_digest(Ordering{0, 1, 2}) != ordering_digest(Ordering{0, 2, 1}));
  CHECK(ordering_digest(Ordering{}).size() == 16);
}
