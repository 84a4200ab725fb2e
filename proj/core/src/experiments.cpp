#include "clvr/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "clvr/errors.hpp"
#include "clvr/metrics.hpp"
#include "clvr/rng.hpp"
#include "clvr/stats.hpp"
#include "parallel.hpp"

namespace clvr {

std::string ordering_digest(const Ordering& ordering) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (TradeId id : ordering) {
    for (int shift = 0; shift < 32; shift += 8) {
      h ^= (id >> shift) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

namespace {

// Copies [first, first + count) of `block` into a canonical sub-block.
Block slice_block(const Block& block, std::size_t first, std::size_t count) {
  Block sub;
  sub.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Trade t = block[first + i];
    t.id = static_cast<TradeId>(i);
    sub.push_back(std::move(t));
  }
  return sub;
}

SequencerSpec with_trial_seed(const SequencerSpec& spec,
                              std::uint64_t trial_base, std::size_t index) {
  SequencerSpec derived = spec;
  if (spec.kind == SequencerKind::Random) {
    derived.seed = derive_seed(trial_base, kStreamOrdering + index, spec.seed);
  }
  return derived;
}

// Indices of the volume heuristic and the greedy local-volatility rule
// inside a sequencer list, when both are present: the pair that winner
// counts and the t-test compare.
struct ContestPair {
  std::optional<std::size_t> vhgsr;
  std::optional<std::size_t> clvr;
  bool both() const { return vhgsr.has_value() && clvr.has_value(); }
};

ContestPair find_contest(const std::vector<SequencerSpec>& sequencers) {
  ContestPair pair;
  for (std::size_t i = 0; i < sequencers.size(); ++i) {
    if (sequencers[i].kind == SequencerKind::Vhgsr && !pair.vhgsr) {
      pair.vhgsr = i;
    }
    if (sequencers[i].kind == SequencerKind::Clvr && !pair.clvr) {
      pair.clvr = i;
    }
  }
  return pair;
}

// Winner bookkeeping across a set of per-sequencer volatilities.
// `contest` limits who competes; ties are volatilities within
// tie_threshold (relative) of the group minimum.
void tally_winners(const std::vector<double>& vols,
                   const std::vector<std::size_t>& contest,
                   double tie_threshold, std::vector<std::size_t>& wins,
                   std::size_t& ties) {
  double vmin = vols[contest[0]];
  double vmag = std::abs(vols[contest[0]]);
  for (std::size_t i : contest) {
    vmin = std::min(vmin, vols[i]);
    vmag = std::max(vmag, std::abs(vols[i]));
  }
  const double threshold = tie_threshold * std::max(vmag, 1e-300);
  std::size_t in_tie = 0;
  std::size_t winner = contest[0];
  for (std::size_t i : contest) {
    if (vols[i] - vmin <= threshold) {
      ++in_tie;
      winner = i;
    }
  }
  if (in_tie >= 2) {
    ++ties;
  } else {
    ++wins[winner];
  }
}

std::optional<double> contest_p_value(const std::vector<double>& clvr_vols,
                                      const std::vector<double>& vhgsr_vols) {
  if (clvr_vols.size() < 2) return std::nullopt;
  std::vector<double> diffs(clvr_vols.size());
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    diffs[i] = clvr_vols[i] - vhgsr_vols[i];
  }
  if (mean_and_variance(diffs).sample_variance == 0.0) return std::nullopt;
  return paired_t_test(diffs, Alternative::Less);
}

}  // namespace

CompareReport compare_sequencers(const CompareConfig& config) {
  validate_pool(config.pool);
  if (config.trials == 0) {
    throw ContractViolation("compare_sequencers needs at least one trial");
  }
  if (config.sequencers.empty()) {
    throw ContractViolation("compare_sequencers needs at least one sequencer");
  }

  CompareReport report;
  report.config = config;
  const std::size_t n_seq = config.sequencers.size();
  const ContestPair contest = find_contest(config.sequencers);

  for (std::size_t n : config.block_sizes) {
    const bool relative_here =
        config.compute_relative && n <= config.factorial_cap;

    std::vector<std::vector<double>> vols(
        n_seq, std::vector<double>(config.trials, 0.0));
    std::vector<std::vector<double>> rels;
    if (relative_here) {
      rels.assign(n_seq, std::vector<double>(config.trials, 0.0));
    }
    std::vector<TrialResult> trials;
    if (config.keep_trials) trials.resize(config.trials);

    detail::parallel_for(config.trials, config.threads, [&](std::size_t t) {
      const std::uint64_t trial_base =
          derive_seed(config.workload.seed, n, t);
      WorkloadSpec ws = config.workload;
      ws.n = n;
      ws.seed = derive_seed(trial_base, kStreamWorkload);
      const Block block = generate_block(ws);
      const double p0 = spot_price(config.pool);

      MetricEnvelope envelope;
      if (relative_here) {
        envelope = metric_envelope(config.pool, block, Metric::Volatility,
                                   config.factorial_cap);
      }

      TrialResult trial;
      trial.trial_id = t;
      for (std::size_t i = 0; i < n_seq; ++i) {
        const SequencerSpec spec =
            with_trial_seed(config.sequencers[i], trial_base, i);
        const Ordering ordering =
            sequence(config.pool, block, spec, config.factorial_cap);
        const ExecutionTrace trace =
            execute_block(config.pool, block, ordering, false);
        const double vol = volatility_value(trace);
        vols[i][t] = vol;
        TrialSequencerResult tsr;
        tsr.sequencer = sequencer_name(spec.kind);
        tsr.digest = ordering_digest(ordering);
        tsr.volatility = vol;
        if (relative_here) {
          const double rel =
              relative_score(vol, envelope.min_value, envelope.max_value)
                  .value_pct;
          rels[i][t] = rel;
          tsr.relative_volatility = rel;
        }
        if (config.keep_trials) {
          tsr.gini = gini(trace, block, p0);
          trial.sequencers.push_back(std::move(tsr));
        }
      }
      if (config.keep_trials) trials[t] = std::move(trial);
    });

    CompareRow row;
    row.n = n;
    std::vector<std::size_t> wins(n_seq, 0);
    std::vector<std::size_t> all_indices(n_seq);
    for (std::size_t i = 0; i < n_seq; ++i) all_indices[i] = i;
    const std::vector<std::size_t> contenders =
        contest.both()
            ? std::vector<std::size_t>{*contest.vhgsr, *contest.clvr}
            : all_indices;

    std::vector<double> per_trial(n_seq);
    for (std::size_t t = 0; t < config.trials; ++t) {
      for (std::size_t i = 0; i < n_seq; ++i) per_trial[i] = vols[i][t];
      tally_winners(per_trial, contenders, config.tie_threshold, wins,
                    row.ties);
    }

    for (std::size_t i = 0; i < n_seq; ++i) {
      CompareCell cell;
      cell.sequencer = sequencer_name(config.sequencers[i].kind);
      cell.mean_volatility = mean_and_variance(vols[i]).mean;
      if (relative_here) cell.mean_relative = mean_and_variance(rels[i]).mean;
      cell.wins = wins[i];
      row.cells.push_back(std::move(cell));
    }
    if (contest.both()) {
      row.p_value = contest_p_value(vols[*contest.clvr], vols[*contest.vhgsr]);
    }
    if (config.keep_trials) row.trials = std::move(trials);
    report.rows.push_back(std::move(row));
  }
  return report;
}

FailureRateReport failure_rate_experiment(const FailureRateConfig& config) {
  validate_pool(config.pool);
  if (config.trials == 0) {
    throw ContractViolation("failure_rate_experiment needs at least one trial");
  }

  FailureRateReport report;
  report.config = config;

  for (std::size_t n : config.block_sizes) {
    std::vector<std::size_t> random_failures(config.trials, 0);
    std::vector<std::size_t> vhgsr_failures(config.trials, 0);
    std::vector<std::size_t> clvr_failures(config.trials, 0);

    detail::parallel_for(config.trials, config.threads, [&](std::size_t t) {
      const std::uint64_t trial_base =
          derive_seed(config.workload.seed, n, t);
      WorkloadSpec ws = config.workload;
      ws.n = n;
      ws.seed = derive_seed(trial_base, kStreamWorkload);
      const Block block = assign_slippage(
          config.pool, generate_block(ws), config.tolerance);

      auto count_failures = [&](const Ordering& ordering) {
        const ExecutionTrace trace =
            execute_block(config.pool, block, ordering, true);
        std::size_t failures = 0;
        for (const TraceStep& step : trace.steps) {
          if (step.failed) ++failures;
        }
        return failures;
      };

      random_failures[t] = count_failures(random_ordering(
          block, derive_seed(trial_base, kStreamOrdering)));
      vhgsr_failures[t] = count_failures(
          vhgsr_slippage_aware_ordering(config.pool, block).ordering);
      clvr_failures[t] = count_failures(
          clvr_slippage_aware_ordering(config.pool, block).ordering);
    });

    const double denom = static_cast<double>(config.trials * n);
    auto pct = [denom](const std::vector<std::size_t>& counts) {
      std::size_t total = 0;
      for (std::size_t c : counts) total += c;
      return denom > 0.0 ? 100.0 * static_cast<double>(total) / denom : 0.0;
    };

    FailureRateRow row;
    row.n = n;
    row.random_pct = pct(random_failures);
    row.vhgsr_pct = pct(vhgsr_failures);
    row.clvr_pct = pct(clvr_failures);
    row.reduction_pct =
        row.random_pct > 0.0
            ? 100.0 * (row.random_pct - row.clvr_pct) / row.random_pct
            : 0.0;
    report.rows.push_back(row);
  }
  return report;
}

BlockSizeSweepReport block_size_sweep(const BlockSizeSweepConfig& config) {
  validate_pool(config.pool);
  if (config.trials == 0 || config.total_trades == 0) {
    throw ContractViolation("block_size_sweep needs trials and trades");
  }
  for (std::size_t b : config.block_sizes) {
    if (b == 0 || config.total_trades % b != 0) {
      throw ContractViolation("block size " + std::to_string(b) +
                              " does not divide the stream of " +
                              std::to_string(config.total_trades));
    }
  }

  std::vector<std::vector<double>> stats(
      config.block_sizes.size(), std::vector<double>(config.trials, 0.0));

  detail::parallel_for(config.trials, config.threads, [&](std::size_t t) {
    const std::uint64_t trial_base =
        derive_seed(config.workload.seed, config.total_trades, t);
    WorkloadSpec ws = config.workload;
    ws.n = config.total_trades;
    ws.seed = derive_seed(trial_base, kStreamWorkload);
    const Block stream = generate_block(ws);

    for (std::size_t bi = 0; bi < config.block_sizes.size(); ++bi) {
      const std::size_t b = config.block_sizes[bi];
      Pool pool = config.pool;
      // Aggregate volatility is measured against the stream's opening
      // price; each block is still sequenced against its own opening
      // price, which is the status quo the rule sees.
      const double stream_p0 = spot_price(pool);
      double dev_sum = 0.0;
      const std::size_t chunks = config.total_trades / b;
      for (std::size_t c = 0; c < chunks; ++c) {
        const Block sub = slice_block(stream, c * b, b);
        const Ordering ordering = clvr_ordering(pool, sub);
        const ExecutionTrace trace = execute_block(pool, sub, ordering, false);
        for (const TraceStep& step : trace.steps) {
          dev_sum += squared_log_deviation(stream_p0, step.price_after);
        }
        pool = trace.final_pool;
      }
      stats[bi][t] = dev_sum / static_cast<double>(config.total_trades);
    }
  });

  BlockSizeSweepReport report;
  report.config = config;
  for (std::size_t bi = 0; bi < config.block_sizes.size(); ++bi) {
    BlockSizeSweepRow row;
    row.block_size = config.block_sizes[bi];
    row.p25 = percentile(stats[bi], 0.25);
    row.median = percentile(stats[bi], 0.50);
    row.p75 = percentile(stats[bi], 0.75);
    report.rows.push_back(row);
  }
  return report;
}

namespace {

double amount_out_of(const ExecutionTrace& trace, TradeId id) {
  for (const TraceStep& step : trace.steps) {
    if (step.trade == id) return step.amount_out;
  }
  throw ContractViolation("trade missing from trace");
}

double owner_total_out(const ExecutionTrace& trace, const Block& block,
                       std::uint32_t owner) {
  double total = 0.0;
  for (const TraceStep& step : trace.steps) {
    if (block[step.trade].owner == owner) total += step.amount_out;
  }
  return total;
}

}  // namespace

SplittingReport splitting_experiment(const SplittingConfig& config) {
  validate_pool(config.pool);
  if (config.trials == 0) {
    throw ContractViolation("splitting_experiment needs at least one trial");
  }
  for (std::uint32_t k : config.split_factors) {
    if (k == 0) throw ContractViolation("split factors must be >= 1");
  }

  SplittingReport report;
  report.config = config;

  if (config.mode == SplitMode::OneSplits) {
    for (double size : config.target_sizes) {
      if (!(size > 0.0)) {
        throw ContractViolation("target sizes must be positive");
      }
    }
    for (double size : config.target_sizes) {
      for (std::uint32_t k : config.split_factors) {
        std::vector<double> gains(config.trials, 0.0);
        detail::parallel_for(config.trials, config.threads, [&](std::size_t t) {
          // The background block and the target trade are shared across
          // every (size, factor) cell for this trial id, so cell-to-cell
          // differences are paired.
          WorkloadSpec ws = config.workload;
          ws.n = config.background_trades;
          ws.seed = derive_seed(config.workload.seed, kStreamWorkload, t);
          const Block background = generate_block(ws);

          Block base;
          base.push_back(make_trade(0, Direction::BuyY, size));
          for (const Trade& bg : background) {
            Trade shifted = bg;
            shifted.id = static_cast<TradeId>(base.size());
            shifted.owner = shifted.id;
            base.push_back(std::move(shifted));
          }

          const ExecutionTrace base_trace = execute_block(
              config.pool, base, clvr_ordering(config.pool, base), false);
          const double base_out = amount_out_of(base_trace, 0);

          const Block split = split_trades(base, k, SplitOne{0});
          const ExecutionTrace split_trace = execute_block(
              config.pool, split, clvr_ordering(config.pool, split), false);
          const double split_out = owner_total_out(split_trace, split, 0);

          gains[t] = 100.0 * (split_out - base_out) / base_out;
        });
        SplittingCell cell;
        cell.target_size = size;
        cell.split_factor = k;
        cell.mean_gain_pct = mean_and_variance(gains).mean;
        report.cells.push_back(cell);
      }
    }
    return report;
  }

  // AllSplit: every owner splits; average per-owner gain.
  for (std::uint32_t k : config.split_factors) {
    std::vector<double> gains(config.trials, 0.0);
    detail::parallel_for(config.trials, config.threads, [&](std::size_t t) {
      WorkloadSpec ws = config.workload;
      ws.seed = derive_seed(config.workload.seed, kStreamWorkload, t);
      const Block base = generate_block(ws);

      const ExecutionTrace base_trace = execute_block(
          config.pool, base, clvr_ordering(config.pool, base), false);
      const Block split = split_trades(base, k, SplitAll{});
      const ExecutionTrace split_trace = execute_block(
          config.pool, split, clvr_ordering(config.pool, split), false);

      double gain_sum = 0.0;
      for (const Trade& trade : base) {
        const double before = amount_out_of(base_trace, trade.id);
        const double after = owner_total_out(split_trace, split, trade.owner);
        gain_sum += 100.0 * (after - before) / before;
      }
      gains[t] = gain_sum / static_cast<double>(base.size());
    });
    SplittingCell cell;
    cell.split_factor = k;
    cell.mean_gain_pct = mean_and_variance(gains).mean;
    report.cells.push_back(cell);
  }
  return report;
}

namespace {

struct ConflictExtremes {
  double vol_min{0.0};
  double vol_max{0.0};
  double gini_min{0.0};
  double gini_max{0.0};
  double gini_at_vol_min{0.0};
  double gini_at_vol_max{0.0};
  double vol_at_gini_min{0.0};
  double vol_at_gini_max{0.0};
};

// One exhaustive pass scoring every ordering on both metrics.
ConflictExtremes conflict_extremes(const Pool& pool, const Block& block) {
  const double p0 = spot_price(pool);

  ConflictExtremes ex;
  Ordering perm = identity_ordering(block.size());
  std::vector<double> wealth(block.size());
  bool first = true;
  do {
    Pool current = pool;
    double dev_sum = 0.0;
    for (std::size_t s = 0; s < perm.size(); ++s) {
      const Trade& trade = block[perm[s]];
      const SwapResult swapped = execute_trade(current, trade);
      current = swapped.pool;
      dev_sum += squared_log_deviation(p0, spot_price(current));
      wealth[s] = trade.direction == Direction::BuyY
                      ? swapped.amount_out * p0
                      : swapped.amount_out;
    }
    const double vol = dev_sum / static_cast<double>(perm.size());

    std::sort(wealth.begin(), wealth.end());
    const double n = static_cast<double>(wealth.size());
    double total = 0.0;
    double weighted = 0.0;
    for (std::size_t i = 0; i < wealth.size(); ++i) {
      total += wealth[i];
      weighted += static_cast<double>(i + 1) * wealth[i];
    }
    const double g = 2.0 * weighted / (n * total) - (n + 1.0) / n;

    if (first || vol < ex.vol_min) {
      ex.vol_min = vol;
      ex.gini_at_vol_min = g;
    }
    if (first || vol > ex.vol_max) {
      ex.vol_max = vol;
      ex.gini_at_vol_max = g;
    }
    if (first || g < ex.gini_min) {
      ex.gini_min = g;
      ex.vol_at_gini_min = vol;
    }
    if (first || g > ex.gini_max) {
      ex.gini_max = g;
      ex.vol_at_gini_max = vol;
    }
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return ex;
}

}  // namespace

ObjectiveConflictReport objective_conflict(
    const ObjectiveConflictConfig& config) {
  validate_pool(config.pool);
  if (config.trials == 0) {
    throw ContractViolation("objective_conflict needs at least one trial");
  }
  for (std::size_t n : config.block_sizes) {
    if (n == 0) throw ContractViolation("block sizes must be >= 1");
    if (n > config.factorial_cap) {
      throw TractabilityError("objective_conflict at n = " +
                              std::to_string(n) +
                              " exceeds the factorial cap of " +
                              std::to_string(config.factorial_cap));
    }
  }

  ObjectiveConflictReport report;
  report.config = config;

  for (std::size_t n : config.block_sizes) {
    std::vector<double> rel_gini_vmin(config.trials, 0.0);
    std::vector<double> rel_gini_vmax(config.trials, 0.0);
    std::vector<double> rel_vol_gmin(config.trials, 0.0);
    std::vector<double> rel_vol_gmax(config.trials, 0.0);

    detail::parallel_for(config.trials, config.threads, [&](std::size_t t) {
      const std::uint64_t trial_base =
          derive_seed(config.workload.seed, n, t);
      WorkloadSpec ws = config.workload;
      ws.n = n;
      ws.seed = derive_seed(trial_base, kStreamWorkload);
      const Block block = generate_block(ws);

      const ConflictExtremes ex = conflict_extremes(config.pool, block);
      rel_gini_vmin[t] =
          relative_score(ex.gini_at_vol_min, ex.gini_min, ex.gini_max)
              .value_pct;
      rel_gini_vmax[t] =
          relative_score(ex.gini_at_vol_max, ex.gini_min, ex.gini_max)
              .value_pct;
      rel_vol_gmin[t] =
          relative_score(ex.vol_at_gini_min, ex.vol_min, ex.vol_max).value_pct;
      rel_vol_gmax[t] =
          relative_score(ex.vol_at_gini_max, ex.vol_min, ex.vol_max).value_pct;
    });

    ObjectiveConflictRow row;
    row.n = n;
    row.mean_rel_gini_of_vol_min = mean_and_variance(rel_gini_vmin).mean;
    row.mean_rel_gini_of_vol_max = mean_and_variance(rel_gini_vmax).mean;
    row.mean_rel_vol_of_gini_min = mean_and_variance(rel_vol_gmin).mean;
    row.mean_rel_vol_of_gini_max = mean_and_variance(rel_vol_gmax).mean;
    report.rows.push_back(row);
  }
  return report;
}

ReplayReport replay_empirical(const std::vector<SwapRecord>& swaps,
                              const ReplayConfig& config) {
  validate_pool(config.pool);
  if (swaps.empty()) {
    throw ContractViolation("replay needs at least one swap record");
  }
  if (config.sequencers.empty()) {
    throw ContractViolation("replay needs at least one sequencer");
  }

  // Partition the record stream into blocks.
  struct Span {
    std::int64_t number;
    std::size_t first;
    std::size_t count;
  };
  std::vector<Span> spans;
  if (config.chunk_size == 0) {
    std::set<std::int64_t> seen;
    std::size_t i = 0;
    while (i < swaps.size()) {
      const std::int64_t number = swaps[i].block_number;
      if (!seen.insert(number).second) {
        throw ContractViolation("swap records for block " +
                                std::to_string(number) +
                                " are not contiguous");
      }
      std::size_t j = i;
      while (j < swaps.size() && swaps[j].block_number == number) ++j;
      spans.push_back({number, i, j - i});
      i = j;
    }
  } else {
    for (std::size_t i = 0; i < swaps.size(); i += config.chunk_size) {
      const std::size_t count = std::min(config.chunk_size, swaps.size() - i);
      spans.push_back({static_cast<std::int64_t>(spans.size()), i, count});
    }
  }

  const std::size_t n_seq = config.sequencers.size();
  ReplayReport report;
  report.config = config;
  for (const SequencerSpec& spec : config.sequencers) {
    report.sequencer_names.emplace_back(sequencer_name(spec.kind));
  }
  report.blocks.resize(spans.size());
  for (std::size_t b = 0; b < spans.size(); ++b) {
    report.blocks[b].index = b;
    report.blocks[b].block_number = spans[b].number;
    report.blocks[b].swap_count = spans[b].count;
    report.blocks[b].volatility.assign(n_seq, 0.0);
    report.blocks[b].relative.assign(n_seq, std::nullopt);
  }

  // Each sequencer advances its own pool trajectory block by block, so
  // trajectories are sequential per sequencer but independent of each
  // other; parallelism is across sequencers.
  detail::parallel_for(n_seq, config.threads, [&](std::size_t i) {
    Pool pool = config.pool;
    for (std::size_t b = 0; b < spans.size(); ++b) {
      Block block;
      block.reserve(spans[b].count);
      for (std::size_t r = 0; r < spans[b].count; ++r) {
        const SwapRecord& record = swaps[spans[b].first + r];
        block.push_back(make_trade(static_cast<TradeId>(r), record.direction,
                                   record.amount_in));
      }
      SequencerSpec spec = config.sequencers[i];
      if (spec.kind == SequencerKind::Random) {
        spec.seed = derive_seed(config.seed, kStreamOrdering + i, b);
      }
      const Ordering ordering =
          sequence(pool, block, spec, config.factorial_cap);
      const ExecutionTrace trace = execute_block(pool, block, ordering, false);
      const double vol = volatility_value(trace);
      report.blocks[b].volatility[i] = vol;
      if (config.compute_relative && spans[b].count <= config.relative_cap &&
          spans[b].count <= config.factorial_cap) {
        const MetricEnvelope envelope = metric_envelope(
            pool, block, Metric::Volatility, config.factorial_cap);
        report.blocks[b].relative[i] =
            relative_score(vol, envelope.min_value, envelope.max_value)
                .value_pct;
      }
      pool = trace.final_pool;
    }
  });

  // Aggregate by swap count.
  const ContestPair contest = find_contest(config.sequencers);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t b = 0; b < spans.size(); ++b) {
    groups[spans[b].count].push_back(b);
  }
  for (const auto& [count, members] : groups) {
    ReplaySizeRow row;
    row.swap_count = count;
    row.blocks = members.size();
    row.wins.assign(n_seq, 0);

    std::vector<std::size_t> all_indices(n_seq);
    for (std::size_t i = 0; i < n_seq; ++i) all_indices[i] = i;
    const std::vector<std::size_t> contenders =
        contest.both()
            ? std::vector<std::size_t>{*contest.vhgsr, *contest.clvr}
            : all_indices;

    for (std::size_t b : members) {
      tally_winners(report.blocks[b].volatility, contenders,
                    config.tie_threshold, row.wins, row.ties);
    }

    for (std::size_t i = 0; i < n_seq; ++i) {
      std::vector<double> present;
      for (std::size_t b : members) {
        if (report.blocks[b].relative[i]) {
          present.push_back(*report.blocks[b].relative[i]);
        }
      }
      row.mean_relative.push_back(
          present.empty()
              ? std::nullopt
              : std::optional<double>(mean_and_variance(present).mean));
    }

    if (contest.both() && members.size() >= 2) {
      std::vector<double> clvr_vols;
      std::vector<double> vhgsr_vols;
      for (std::size_t b : members) {
        clvr_vols.push_back(report.blocks[b].volatility[*contest.clvr]);
        vhgsr_vols.push_back(report.blocks[b].volatility[*contest.vhgsr]);
      }
      row.p_value = contest_p_value(clvr_vols, vhgsr_vols);
    }
    report.by_size.push_back(std::move(row));
  }

  report.mean_volatility.assign(n_seq, 0.0);
  for (std::size_t i = 0; i < n_seq; ++i) {
    double sum = 0.0;
    for (const ReplayBlockDetail& block : report.blocks) {
      sum += block.volatility[i];
    }
    report.mean_volatility[i] = sum / static_cast<double>(spans.size());
  }
  report.reduction_vs_baseline_pct.assign(n_seq, 0.0);
  if (report.mean_volatility[0] > 0.0) {
    for (std::size_t i = 0; i < n_seq; ++i) {
      report.reduction_vs_baseline_pct[i] =
          100.0 * (report.mean_volatility[0] - report.mean_volatility[i]) /
          report.mean_volatility[0];
    }
  }
  return report;
}

}  // namespace clvr
