// clvr: sequencing simulator for constant-product AMM blocks.
//
// Subcommands:
//   sequence    order one block with a chosen rule and execute it
//   verify      check a claimed ordering against what a rule produces
//   experiment  run one of the built-in batch experiments
//   replay      re-order an observed swap history block by block
//
// Exit codes: 0 success (verify: compliant), 1 verify found a deviation,
// 2 validation or parse problem, 3 file I/O problem, 4 intractable
// exhaustive search.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "clvr/errors.hpp"
#include "clvr/experiments.hpp"
#include "clvr/io.hpp"
#include "clvr/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDeviation = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitTractability = 4;

struct PoolOptions {
  double reserve_x = 2'000'000.0;
  double reserve_y = 2'000'000.0;
  double fee = 0.0;

  clvr::Pool pool() const { return {reserve_x, reserve_y, fee}; }

  void attach(CLI::App* cmd) {
    cmd->add_option("--reserve-x", reserve_x, "Pool reserve of token X")
        ->capture_default_str();
    cmd->add_option("--reserve-y", reserve_y, "Pool reserve of token Y")
        ->capture_default_str();
    cmd->add_option("--fee", fee, "Pool fee rate in [0, 1)")
        ->capture_default_str();
  }
};

struct BlockOptions {
  std::string input;
  std::vector<std::string> inline_trades;

  void attach(CLI::App* cmd) {
    cmd->add_option("--input", input,
                    "Trade CSV: id,direction,amount_in[,min_amount_out]");
    cmd->add_option("--trade", inline_trades,
                    "Inline trade dir:amount[:min_out], e.g. sell:10");
  }

  clvr::Block load() const {
    if (!input.empty() && !inline_trades.empty()) {
      throw clvr::ContractViolation("--input and --trade are exclusive");
    }
    if (!input.empty()) return clvr::read_trade_csv_file(input);
    clvr::Block block;
    for (const std::string& text : inline_trades) {
      std::vector<std::string> parts;
      std::stringstream ss(text);
      std::string part;
      while (std::getline(ss, part, ':')) parts.push_back(part);
      if (parts.size() != 2 && parts.size() != 3) {
        throw clvr::ContractViolation("bad --trade '" + text +
                                      "', expected dir:amount[:min_out]");
      }
      clvr::Direction direction;
      if (parts[0] == "sell") {
        direction = clvr::Direction::SellX;
      } else if (parts[0] == "buy") {
        direction = clvr::Direction::BuyY;
      } else {
        throw clvr::ContractViolation("bad direction '" + parts[0] + "'");
      }
      clvr::Trade trade = clvr::make_trade(
          static_cast<clvr::TradeId>(block.size()), direction,
          std::stod(parts[1]));
      if (parts.size() == 3) trade.min_amount_out = std::stod(parts[2]);
      block.push_back(std::move(trade));
    }
    return block;
  }
};

struct OutputOptions {
  std::string format_name = "text";
  std::string out_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--format", format_name, "Output format: text|json|csv")
        ->capture_default_str();
    cmd->add_option("--out", out_path, "Write the report here (default stdout)");
  }

  clvr::ReportFormat format() const {
    const auto parsed = clvr::parse_format(format_name);
    if (!parsed) {
      throw clvr::ContractViolation("unknown format '" + format_name + "'");
    }
    return *parsed;
  }

  void deliver(const std::string& rendered) const {
    if (out_path.empty()) {
      std::cout << rendered;
      return;
    }
    std::ofstream out(out_path);
    if (!out) {
      throw clvr::IoError("cannot open output file '" + out_path + "'");
    }
    out << rendered;
    if (!out) {
      throw clvr::IoError("failed writing output file '" + out_path + "'");
    }
  }
};

clvr::SequencerSpec parse_rule(const std::string& rule,
                               const std::string& metric,
                               std::uint64_t seed) {
  const auto kind = clvr::parse_sequencer(rule);
  if (!kind) {
    throw clvr::ContractViolation("unknown rule '" + rule + "'");
  }
  clvr::SequencerSpec spec;
  spec.kind = *kind;
  spec.seed = seed;
  if (metric == "volatility") {
    spec.metric = clvr::Metric::Volatility;
  } else if (metric == "gini") {
    spec.metric = clvr::Metric::Gini;
  } else {
    throw clvr::ContractViolation("unknown metric '" + metric + "'");
  }
  return spec;
}

std::vector<clvr::SequencerSpec> parse_sequencer_list(
    const std::vector<std::string>& names, std::uint64_t seed) {
  std::vector<clvr::SequencerSpec> specs;
  for (const std::string& name : names) {
    specs.push_back(parse_rule(name, "volatility", seed));
  }
  return specs;
}

struct WorkloadOptions {
  std::string distribution = "lognormal";
  double mu = 4.93;
  double sigma = 2.05;
  double lo = 0.0;
  double hi = 100'000.0;
  double buy_probability = 0.5;

  void attach(CLI::App* cmd) {
    cmd->add_option("--dist", distribution,
                    "Trade size distribution: lognormal|uniform")
        ->capture_default_str();
    cmd->add_option("--mu", mu, "Lognormal mu")->capture_default_str();
    cmd->add_option("--sigma", sigma, "Lognormal sigma")->capture_default_str();
    cmd->add_option("--lo", lo, "Uniform lower bound")->capture_default_str();
    cmd->add_option("--hi", hi, "Uniform upper bound")->capture_default_str();
    cmd->add_option("--buy-prob", buy_probability,
                    "Probability a generated trade buys Y")
        ->capture_default_str();
  }

  clvr::WorkloadSpec spec(std::uint64_t seed) const {
    clvr::WorkloadSpec ws;
    if (distribution == "lognormal") {
      ws.sizes = clvr::LogNormalSizes{mu, sigma};
    } else if (distribution == "uniform") {
      ws.sizes = clvr::UniformSizes{lo, hi};
    } else {
      throw clvr::ContractViolation("unknown distribution '" + distribution +
                                    "'");
    }
    ws.buy_probability = buy_probability;
    ws.seed = seed;
    return ws;
  }
};

int run_sequence(const PoolOptions& pool_opts, const BlockOptions& block_opts,
                 const OutputOptions& out_opts, const std::string& rule,
                 const std::string& metric, std::uint64_t seed,
                 bool enforce_slippage, std::size_t factorial_cap) {
  const clvr::Pool pool = pool_opts.pool();
  const clvr::Block block = block_opts.load();
  const clvr::SequencerSpec spec = parse_rule(rule, metric, seed);
  const bool enforce = enforce_slippage ||
                       spec.kind == clvr::SequencerKind::ClvrSlippageAware ||
                       spec.kind == clvr::SequencerKind::VhgsrSlippageAware;
  const clvr::Ordering ordering =
      clvr::sequence(pool, block, spec, factorial_cap);
  const clvr::ExecutionTrace trace =
      clvr::execute_block(pool, block, ordering, enforce);
  out_opts.deliver(clvr::render_trace(block, ordering, trace,
                                      out_opts.format()));
  return kExitOk;
}

int run_verify(const PoolOptions& pool_opts, const BlockOptions& block_opts,
               const std::string& claim, const std::string& rule,
               const std::string& metric, std::uint64_t seed,
               std::size_t factorial_cap) {
  const clvr::Pool pool = pool_opts.pool();
  const clvr::Block block = block_opts.load();

  std::vector<std::string> labels;
  std::stringstream ss(claim);
  std::string label;
  while (std::getline(ss, label, ',')) {
    if (!label.empty()) labels.push_back(label);
  }
  const clvr::Ordering claimed = clvr::resolve_claim(block, labels);
  const clvr::SequencerSpec spec = parse_rule(rule, metric, seed);
  const clvr::Ordering expected =
      clvr::sequence(pool, block, spec, factorial_cap);

  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (claimed[i] != expected[i]) {
      const auto label_of = [&](clvr::TradeId id) {
        return block[id].label.empty() ? std::to_string(id) : block[id].label;
      };
      std::cout << "deviation at position " << i << ": rule '" << rule
                << "' puts trade " << label_of(expected[i])
                << " here, claim has " << label_of(claimed[i]) << "\n";
      return kExitDeviation;
    }
  }
  std::cout << "compliant: claim matches rule '" << rule << "' for all "
            << expected.size() << " positions\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transaction sequencing simulator for constant-product AMMs"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");
  app.allow_config_extras(CLI::config_extras_mode::ignore_all);

  // --- sequence ---
  CLI::App* seq = app.add_subcommand("sequence", "Order and execute a block");
  PoolOptions seq_pool;
  BlockOptions seq_block;
  OutputOptions seq_out;
  std::string seq_rule = "clvr";
  std::string seq_metric = "volatility";
  std::uint64_t seq_seed = 0;
  bool seq_enforce = false;
  std::size_t seq_cap = clvr::kDefaultFactorialCap;
  seq_pool.attach(seq);
  seq_block.attach(seq);
  seq_out.attach(seq);
  seq->add_option("--rule", seq_rule,
                  "fcfs|random|gsr|vhgsr|clvr|clvr-slippage|vhgsr-slippage|"
                  "bf-min|bf-max")
      ->capture_default_str();
  seq->add_option("--metric", seq_metric, "Brute-force metric: volatility|gini")
      ->capture_default_str();
  seq->add_option("--seed", seq_seed, "Seed for the random rule")
      ->capture_default_str();
  seq->add_flag("--enforce-slippage", seq_enforce,
                "Fail steps whose output drops below min_amount_out");
  seq->add_option("--factorial-cap", seq_cap,
                  "Largest block exhaustive search accepts")
      ->capture_default_str();

  // --- verify ---
  CLI::App* ver = app.add_subcommand(
      "verify", "Check a claimed ordering against a rule");
  PoolOptions ver_pool;
  BlockOptions ver_block;
  std::string ver_claim;
  std::string ver_rule = "clvr";
  std::string ver_metric = "volatility";
  std::uint64_t ver_seed = 0;
  std::size_t ver_cap = clvr::kDefaultFactorialCap;
  ver_pool.attach(ver);
  ver_block.attach(ver);
  ver->add_option("--claim", ver_claim,
                  "Comma-separated trade ids/labels in claimed order")
      ->required();
  ver->add_option("--rule", ver_rule, "Rule the claim is checked against")
      ->capture_default_str();
  ver->add_option("--metric", ver_metric, "Brute-force metric")
      ->capture_default_str();
  ver->add_option("--seed", ver_seed, "Seed for the random rule")
      ->capture_default_str();
  ver->add_option("--factorial-cap", ver_cap, "Exhaustive search cap")
      ->capture_default_str();

  // --- experiment ---
  CLI::App* exp = app.add_subcommand("experiment", "Run a batch experiment");
  PoolOptions exp_pool;
  OutputOptions exp_out;
  WorkloadOptions exp_workload;
  std::string exp_name;
  std::size_t exp_trials = 0;  // 0: per-experiment default
  std::uint64_t exp_seed = 0;
  std::vector<std::size_t> exp_block_sizes;
  std::vector<std::string> exp_sequencers;
  double exp_tolerance = 0.005;
  std::size_t exp_total_trades = 100;
  std::vector<double> exp_target_sizes;
  std::vector<std::uint32_t> exp_split_factors;
  std::string exp_split_mode = "one";
  std::size_t exp_background = 9;
  bool exp_no_relative = false;
  bool exp_keep_trials = false;
  std::size_t exp_cap = clvr::kDefaultFactorialCap;
  unsigned exp_threads = 1;
  exp_pool.attach(exp);
  exp_out.attach(exp);
  exp_workload.attach(exp);
  exp->add_option("--name", exp_name,
                  "compare|failure_rates|block_size_sweep|splitting|"
                  "objective_conflict")
      ->required();
  exp->add_option("--trials", exp_trials, "Trials per configuration");
  exp->add_option("--seed", exp_seed, "Base seed")->capture_default_str();
  exp->add_option("--block-sizes", exp_block_sizes,
                  "Block sizes (or sweep partitions)")
      ->delimiter(',');
  exp->add_option("--sequencers", exp_sequencers,
                  "Sequencers for the comparison")
      ->delimiter(',');
  exp->add_option("--tolerance", exp_tolerance,
                  "Slippage tolerance for failure_rates")
      ->capture_default_str();
  exp->add_option("--total-trades", exp_total_trades,
                  "Stream length for block_size_sweep")
      ->capture_default_str();
  exp->add_option("--target-sizes", exp_target_sizes,
                  "Split target sizes for splitting")
      ->delimiter(',');
  exp->add_option("--split-factors", exp_split_factors,
                  "Split factors for splitting")
      ->delimiter(',');
  exp->add_option("--split-mode", exp_split_mode, "splitting mode: one|all")
      ->capture_default_str();
  exp->add_option("--background-trades", exp_background,
                  "Background trades around the splitting target")
      ->capture_default_str();
  exp->add_flag("--no-relative", exp_no_relative,
                "Skip exhaustive relative-volatility scoring");
  exp->add_flag("--keep-trials", exp_keep_trials,
                "Embed per-trial detail in the compare report");
  exp->add_option("--factorial-cap", exp_cap, "Exhaustive search cap")
      ->capture_default_str();
  exp->add_option("--threads", exp_threads, "Worker threads, 0 = all cores")
      ->capture_default_str();

  // --- replay ---
  CLI::App* rep = app.add_subcommand("replay",
                                     "Re-order an observed swap history");
  PoolOptions rep_pool;
  OutputOptions rep_out;
  std::string rep_input;
  std::size_t rep_chunk = 0;
  std::vector<std::string> rep_sequencers;
  bool rep_no_relative = false;
  std::size_t rep_relative_cap = 8;
  std::size_t rep_cap = clvr::kDefaultFactorialCap;
  std::uint64_t rep_seed = 0;
  unsigned rep_threads = 1;
  rep_pool.attach(rep);
  rep_out.attach(rep);
  rep->add_option("--input", rep_input,
                  "Swap CSV: block,direction,amount_in,timestamp")
      ->required();
  rep->add_option("--chunk", rep_chunk,
                  "Re-chunk the stream into blocks of this size "
                  "(0 = native blocks)")
      ->capture_default_str();
  rep->add_option("--sequencers", rep_sequencers, "Sequencers to replay with")
      ->delimiter(',');
  rep->add_flag("--no-relative", rep_no_relative,
                "Skip exhaustive relative-volatility scoring");
  rep->add_option("--relative-cap", rep_relative_cap,
                  "Largest block scored exhaustively")
      ->capture_default_str();
  rep->add_option("--factorial-cap", rep_cap, "Exhaustive search cap")
      ->capture_default_str();
  rep->add_option("--seed", rep_seed, "Seed for the random rule")
      ->capture_default_str();
  rep->add_option("--threads", rep_threads, "Worker threads, 0 = all cores")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (seq->parsed()) {
      return run_sequence(seq_pool, seq_block, seq_out, seq_rule, seq_metric,
                          seq_seed, seq_enforce, seq_cap);
    }
    if (ver->parsed()) {
      return run_verify(ver_pool, ver_block, ver_claim, ver_rule, ver_metric,
                        ver_seed, ver_cap);
    }
    if (exp->parsed()) {
      const clvr::ReportFormat format = exp_out.format();
      const clvr::WorkloadSpec workload = exp_workload.spec(exp_seed);
      const clvr::Pool pool = exp_pool.pool();
      std::string rendered;
      if (exp_name == "compare") {
        clvr::CompareConfig config;
        config.pool = pool;
        config.workload = workload;
        if (!exp_block_sizes.empty()) config.block_sizes = exp_block_sizes;
        if (exp_trials > 0) config.trials = exp_trials;
        if (!exp_sequencers.empty()) {
          config.sequencers = parse_sequencer_list(exp_sequencers, exp_seed);
        }
        config.compute_relative = !exp_no_relative;
        config.factorial_cap = exp_cap;
        config.threads = exp_threads;
        config.keep_trials = exp_keep_trials;
        rendered = clvr::render(clvr::compare_sequencers(config), format);
      } else if (exp_name == "failure_rates") {
        clvr::FailureRateConfig config;
        config.pool = pool;
        config.workload = workload;
        if (!exp_block_sizes.empty()) config.block_sizes = exp_block_sizes;
        if (exp_trials > 0) config.trials = exp_trials;
        config.tolerance = exp_tolerance;
        config.threads = exp_threads;
        rendered = clvr::render(clvr::failure_rate_experiment(config), format);
      } else if (exp_name == "block_size_sweep") {
        clvr::BlockSizeSweepConfig config;
        config.pool = pool;
        config.workload = workload;
        config.total_trades = exp_total_trades;
        if (!exp_block_sizes.empty()) config.block_sizes = exp_block_sizes;
        if (exp_trials > 0) config.trials = exp_trials;
        config.threads = exp_threads;
        rendered = clvr::render(clvr::block_size_sweep(config), format);
      } else if (exp_name == "splitting") {
        clvr::SplittingConfig config;
        config.pool = pool;
        config.workload = workload;
        if (!exp_target_sizes.empty()) config.target_sizes = exp_target_sizes;
        if (!exp_split_factors.empty()) {
          config.split_factors = exp_split_factors;
        }
        if (exp_trials > 0) config.trials = exp_trials;
        config.background_trades = exp_background;
        if (exp_split_mode == "one") {
          config.mode = clvr::SplitMode::OneSplits;
        } else if (exp_split_mode == "all") {
          config.mode = clvr::SplitMode::AllSplit;
        } else {
          throw clvr::ContractViolation("unknown split mode '" +
                                        exp_split_mode + "'");
        }
        config.threads = exp_threads;
        rendered = clvr::render(clvr::splitting_experiment(config), format);
      } else if (exp_name == "objective_conflict") {
        clvr::ObjectiveConflictConfig config;
        config.pool = pool;
        config.workload = workload;
        if (!exp_block_sizes.empty()) config.block_sizes = exp_block_sizes;
        if (exp_trials > 0) config.trials = exp_trials;
        config.factorial_cap = exp_cap;
        config.threads = exp_threads;
        rendered = clvr::render(clvr::objective_conflict(config), format);
      } else {
        throw clvr::ContractViolation("unknown experiment '" + exp_name + "'");
      }
      exp_out.deliver(rendered);
      return kExitOk;
    }
    if (rep->parsed()) {
      clvr::ReplayConfig config;
      config.pool = rep_pool.pool();
      config.chunk_size = rep_chunk;
      if (!rep_sequencers.empty()) {
        config.sequencers = parse_sequencer_list(rep_sequencers, rep_seed);
      }
      config.compute_relative = !rep_no_relative;
      config.relative_cap = rep_relative_cap;
      config.factorial_cap = rep_cap;
      config.seed = rep_seed;
      config.threads = rep_threads;
      const std::vector<clvr::SwapRecord> swaps =
          clvr::read_swap_csv_file(rep_input);
      rep_out.deliver(
          clvr::render(clvr::replay_empirical(swaps, config),
                       rep_out.format()));
      return kExitOk;
    }
  } catch (const clvr::TractabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTractability;
  } catch (const clvr::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const clvr::SimError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
