#include "clvr/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "clvr/errors.hpp"
#include "clvr/metrics.hpp"

namespace clvr {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt(*v) : std::string("-");
}

const char* direction_name(Direction d) {
  return d == Direction::SellX ? "sell" : "buy";
}

ordered_json pool_json(const Pool& pool) {
  return {{"reserve_x", pool.reserve_x},
          {"reserve_y", pool.reserve_y},
          {"fee_rate", pool.fee_rate}};
}

ordered_json workload_json(const WorkloadSpec& spec) {
  ordered_json j;
  if (const auto* ln = std::get_if<LogNormalSizes>(&spec.sizes)) {
    j["distribution"] = "lognormal";
    j["mu"] = ln->mu;
    j["sigma"] = ln->sigma;
  } else {
    const auto& u = std::get<UniformSizes>(spec.sizes);
    j["distribution"] = "uniform";
    j["lo"] = u.lo;
    j["hi"] = u.hi;
  }
  j["n"] = spec.n;
  j["buy_probability"] = spec.buy_probability;
  j["seed"] = spec.seed;
  j["split_factor"] = spec.split_factor;
  return j;
}

ordered_json sequencers_json(const std::vector<SequencerSpec>& specs) {
  ordered_json arr = ordered_json::array();
  for (const SequencerSpec& spec : specs) {
    arr.push_back(sequencer_name(spec.kind));
  }
  return arr;
}

void set_opt(ordered_json& j, const char* key,
             const std::optional<double>& v) {
  if (v) j[key] = *v;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json trial_json(const TrialResult& trial) {
  ordered_json seqs = ordered_json::array();
  for (const TrialSequencerResult& tsr : trial.sequencers) {
    ordered_json s{{"sequencer", tsr.sequencer},
                   {"digest", tsr.digest},
                   {"volatility", tsr.volatility}};
    set_opt(s, "relative_volatility", tsr.relative_volatility);
    s["failures"] = tsr.failures;
    set_opt(s, "gini", tsr.gini);
    seqs.push_back(std::move(s));
  }
  return {{"trial", trial.trial_id}, {"sequencers", std::move(seqs)}};
}

}  // namespace

std::optional<ReportFormat> parse_format(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "text") return ReportFormat::Text;
  if (name == "csv") return ReportFormat::Csv;
  return std::nullopt;
}

std::string render(const CompareReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json j;
    j["experiment"] = "compare";
    j["config"] = {{"pool", pool_json(report.config.pool)},
                   {"workload", workload_json(report.config.workload)},
                   {"block_sizes", report.config.block_sizes},
                   {"trials", report.config.trials},
                   {"sequencers", sequencers_json(report.config.sequencers)},
                   {"compute_relative", report.config.compute_relative},
                   {"factorial_cap", report.config.factorial_cap},
                   {"tie_threshold", report.config.tie_threshold}};
    ordered_json rows = ordered_json::array();
    for (const CompareRow& row : report.rows) {
      ordered_json cells = ordered_json::array();
      for (const CompareCell& cell : row.cells) {
        ordered_json c{{"sequencer", cell.sequencer},
                       {"mean_volatility", cell.mean_volatility},
                       {"wins", cell.wins}};
        set_opt(c, "mean_relative", cell.mean_relative);
        cells.push_back(std::move(c));
      }
      ordered_json r{{"n", row.n},
                     {"sequencers", std::move(cells)},
                     {"ties", row.ties}};
      set_opt(r, "p_value", row.p_value);
      if (!row.trials.empty()) {
        ordered_json trials = ordered_json::array();
        for (const TrialResult& trial : row.trials) {
          trials.push_back(trial_json(trial));
        }
        r["trials"] = std::move(trials);
      }
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return dump(j);
  }

  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "n,sequencer,mean_volatility,mean_relative,wins,ties,p_value\n";
    for (const CompareRow& row : report.rows) {
      for (const CompareCell& cell : row.cells) {
        out << row.n << ',' << cell.sequencer << ','
            << fmt(cell.mean_volatility) << ','
            << (cell.mean_relative ? fmt(*cell.mean_relative) : "") << ','
            << cell.wins << ',' << row.ties << ','
            << (row.p_value ? fmt(*row.p_value) : "") << '\n';
      }
    }
    return out.str();
  }

  std::ostringstream out;
  out << "sequencer comparison (" << report.config.trials << " trials)\n";
  for (const CompareRow& row : report.rows) {
    out << "n = " << row.n << "  ties = " << row.ties
        << "  p(clvr < vhgsr) = " << fmt_opt(row.p_value) << '\n';
    for (const CompareCell& cell : row.cells) {
      out << "  " << cell.sequencer << ": mean vol = "
          << fmt(cell.mean_volatility)
          << ", mean relative = " << fmt_opt(cell.mean_relative)
          << ", wins = " << cell.wins << '\n';
    }
  }
  return out.str();
}

std::string render(const FailureRateReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json j;
    j["experiment"] = "failure_rates";
    j["config"] = {{"pool", pool_json(report.config.pool)},
                   {"workload", workload_json(report.config.workload)},
                   {"block_sizes", report.config.block_sizes},
                   {"trials", report.config.trials},
                   {"tolerance", report.config.tolerance}};
    ordered_json rows = ordered_json::array();
    for (const FailureRateRow& row : report.rows) {
      rows.push_back({{"n", row.n},
                      {"random_pct", row.random_pct},
                      {"vhgsr_pct", row.vhgsr_pct},
                      {"clvr_pct", row.clvr_pct},
                      {"reduction_pct", row.reduction_pct}});
    }
    j["rows"] = std::move(rows);
    return dump(j);
  }
  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "n,random_pct,vhgsr_pct,clvr_pct,reduction_pct\n";
    for (const FailureRateRow& row : report.rows) {
      out << row.n << ',' << fmt(row.random_pct) << ',' << fmt(row.vhgsr_pct)
          << ',' << fmt(row.clvr_pct) << ',' << fmt(row.reduction_pct)
          << '\n';
    }
    return out.str();
  }
  std::ostringstream out;
  out << "failure rates, tolerance = " << fmt(report.config.tolerance)
      << " (" << report.config.trials << " trials)\n";
  out << "  n     random%   vhgsr%    clvr%     reduction%\n";
  for (const FailureRateRow& row : report.rows) {
    char line[128];
    std::snprintf(line, sizeof(line), "  %-5zu %-9.4g %-9.4g %-9.4g %-9.4g\n",
                  row.n, row.random_pct, row.vhgsr_pct, row.clvr_pct,
                  row.reduction_pct);
    out << line;
  }
  return out.str();
}

std::string render(const BlockSizeSweepReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json j;
    j["experiment"] = "block_size_sweep";
    j["config"] = {{"pool", pool_json(report.config.pool)},
                   {"workload", workload_json(report.config.workload)},
                   {"total_trades", report.config.total_trades},
                   {"block_sizes", report.config.block_sizes},
                   {"trials", report.config.trials}};
    ordered_json rows = ordered_json::array();
    for (const BlockSizeSweepRow& row : report.rows) {
      rows.push_back({{"block_size", row.block_size},
                      {"p25", row.p25},
                      {"median", row.median},
                      {"p75", row.p75}});
    }
    j["rows"] = std::move(rows);
    return dump(j);
  }
  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "block_size,p25,median,p75\n";
    for (const BlockSizeSweepRow& row : report.rows) {
      out << row.block_size << ',' << fmt(row.p25) << ',' << fmt(row.median)
          << ',' << fmt(row.p75) << '\n';
    }
    return out.str();
  }
  std::ostringstream out;
  out << "block size sweep, " << report.config.total_trades
      << " trades per trial (" << report.config.trials << " trials)\n";
  out << "  block_size  p25         median      p75\n";
  for (const BlockSizeSweepRow& row : report.rows) {
    char line[128];
    std::snprintf(line, sizeof(line), "  %-11zu %-11.4g %-11.4g %-11.4g\n",
                  row.block_size, row.p25, row.median, row.p75);
    out << line;
  }
  return out.str();
}

std::string render(const SplittingReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json j;
    j["experiment"] = "splitting";
    j["config"] = {
        {"pool", pool_json(report.config.pool)},
        {"workload", workload_json(report.config.workload)},
        {"mode",
         report.config.mode == SplitMode::OneSplits ? "one" : "all"},
        {"split_factors", report.config.split_factors},
        {"background_trades", report.config.background_trades},
        {"trials", report.config.trials}};
    if (report.config.mode == SplitMode::OneSplits) {
      j["config"]["target_sizes"] = report.config.target_sizes;
    }
    ordered_json cells = ordered_json::array();
    for (const SplittingCell& cell : report.cells) {
      ordered_json c;
      set_opt(c, "target_size", cell.target_size);
      c["split_factor"] = cell.split_factor;
      c["mean_gain_pct"] = cell.mean_gain_pct;
      cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);
    return dump(j);
  }
  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "target_size,split_factor,mean_gain_pct\n";
    for (const SplittingCell& cell : report.cells) {
      out << (cell.target_size ? fmt(*cell.target_size) : "") << ','
          << cell.split_factor << ',' << fmt(cell.mean_gain_pct) << '\n';
    }
    return out.str();
  }
  std::ostringstream out;
  out << "trade splitting ("
      << (report.config.mode == SplitMode::OneSplits ? "one trade splits"
                                                     : "all trades split")
      << ", " << report.config.trials << " trials)\n";
  for (const SplittingCell& cell : report.cells) {
    out << "  ";
    if (cell.target_size) out << "size " << fmt(*cell.target_size) << ", ";
    out << "k = " << cell.split_factor
        << ": mean gain = " << fmt(cell.mean_gain_pct) << "%\n";
  }
  return out.str();
}

std::string render(const ObjectiveConflictReport& report,
                   ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json j;
    j["experiment"] = "objective_conflict";
    j["config"] = {{"pool", pool_json(report.config.pool)},
                   {"workload", workload_json(report.config.workload)},
                   {"block_sizes", report.config.block_sizes},
                   {"trials", report.config.trials},
                   {"factorial_cap", report.config.factorial_cap}};
    ordered_json rows = ordered_json::array();
    for (const ObjectiveConflictRow& row : report.rows) {
      rows.push_back(
          {{"n", row.n},
           {"rel_gini_of_vol_min", row.mean_rel_gini_of_vol_min},
           {"rel_gini_of_vol_max", row.mean_rel_gini_of_vol_max},
           {"rel_vol_of_gini_min", row.mean_rel_vol_of_gini_min},
           {"rel_vol_of_gini_max", row.mean_rel_vol_of_gini_max}});
    }
    j["rows"] = std::move(rows);
    return dump(j);
  }
  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "n,rel_gini_of_vol_min,rel_gini_of_vol_max,rel_vol_of_gini_min,"
           "rel_vol_of_gini_max\n";
    for (const ObjectiveConflictRow& row : report.rows) {
      out << row.n << ',' << fmt(row.mean_rel_gini_of_vol_min) << ','
          << fmt(row.mean_rel_gini_of_vol_max) << ','
          << fmt(row.mean_rel_vol_of_gini_min) << ','
          << fmt(row.mean_rel_vol_of_gini_max) << '\n';
    }
    return out.str();
  }
  std::ostringstream out;
  out << "objective conflict (" << report.config.trials << " trials)\n";
  for (const ObjectiveConflictRow& row : report.rows) {
    out << "n = " << row.n << '\n'
        << "  relative Gini of the vol-min / vol-max orderings: "
        << fmt(row.mean_rel_gini_of_vol_min) << " / "
        << fmt(row.mean_rel_gini_of_vol_max) << '\n'
        << "  relative vol of the Gini-min / Gini-max orderings: "
        << fmt(row.mean_rel_vol_of_gini_min) << " / "
        << fmt(row.mean_rel_vol_of_gini_max) << '\n';
  }
  return out.str();
}

std::string render(const ReplayReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json j;
    j["experiment"] = "replay";
    j["config"] = {{"pool", pool_json(report.config.pool)},
                   {"chunk_size", report.config.chunk_size},
                   {"sequencers", sequencers_json(report.config.sequencers)},
                   {"compute_relative", report.config.compute_relative},
                   {"relative_cap", report.config.relative_cap},
                   {"factorial_cap", report.config.factorial_cap},
                   {"seed", report.config.seed}};
    ordered_json blocks = ordered_json::array();
    for (const ReplayBlockDetail& block : report.blocks) {
      ordered_json b{{"index", block.index},
                     {"block_number", block.block_number},
                     {"swap_count", block.swap_count}};
      ordered_json vols = ordered_json::object();
      ordered_json rels = ordered_json::object();
      for (std::size_t i = 0; i < report.sequencer_names.size(); ++i) {
        vols[report.sequencer_names[i]] = block.volatility[i];
        if (block.relative[i]) {
          rels[report.sequencer_names[i]] = *block.relative[i];
        }
      }
      b["volatility"] = std::move(vols);
      if (!rels.empty()) b["relative"] = std::move(rels);
      blocks.push_back(std::move(b));
    }
    j["blocks"] = std::move(blocks);
    ordered_json rows = ordered_json::array();
    for (const ReplaySizeRow& row : report.by_size) {
      ordered_json r{{"swap_count", row.swap_count},
                     {"blocks", row.blocks},
                     {"ties", row.ties}};
      ordered_json wins = ordered_json::object();
      ordered_json rels = ordered_json::object();
      for (std::size_t i = 0; i < report.sequencer_names.size(); ++i) {
        wins[report.sequencer_names[i]] = row.wins[i];
        if (row.mean_relative[i]) {
          rels[report.sequencer_names[i]] = *row.mean_relative[i];
        }
      }
      r["wins"] = std::move(wins);
      if (!rels.empty()) r["mean_relative"] = std::move(rels);
      set_opt(r, "p_value", row.p_value);
      rows.push_back(std::move(r));
    }
    j["by_swap_count"] = std::move(rows);
    ordered_json overall = ordered_json::object();
    ordered_json means = ordered_json::object();
    ordered_json reductions = ordered_json::object();
    for (std::size_t i = 0; i < report.sequencer_names.size(); ++i) {
      means[report.sequencer_names[i]] = report.mean_volatility[i];
      reductions[report.sequencer_names[i]] =
          report.reduction_vs_baseline_pct[i];
    }
    overall["mean_volatility"] = std::move(means);
    overall["reduction_vs_baseline_pct"] = std::move(reductions);
    j["overall"] = std::move(overall);
    return dump(j);
  }

  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "swap_count,blocks,sequencer,wins,mean_relative,ties,p_value\n";
    for (const ReplaySizeRow& row : report.by_size) {
      for (std::size_t i = 0; i < report.sequencer_names.size(); ++i) {
        out << row.swap_count << ',' << row.blocks << ','
            << report.sequencer_names[i] << ',' << row.wins[i] << ','
            << (row.mean_relative[i] ? fmt(*row.mean_relative[i]) : "") << ','
            << row.ties << ','
            << (row.p_value ? fmt(*row.p_value) : "") << '\n';
      }
    }
    return out.str();
  }

  std::ostringstream out;
  out << "replay over " << report.blocks.size() << " blocks\n";
  for (const ReplaySizeRow& row : report.by_size) {
    out << "swap count " << row.swap_count << " (" << row.blocks
        << " blocks): ties = " << row.ties
        << ", p(clvr < vhgsr) = " << fmt_opt(row.p_value) << '\n';
    for (std::size_t i = 0; i < report.sequencer_names.size(); ++i) {
      out << "  " << report.sequencer_names[i] << ": wins = " << row.wins[i]
          << ", mean relative = " << fmt_opt(row.mean_relative[i]) << '\n';
    }
  }
  out << "overall mean volatility / reduction vs "
      << report.sequencer_names[0] << ":\n";
  for (std::size_t i = 0; i < report.sequencer_names.size(); ++i) {
    out << "  " << report.sequencer_names[i] << ": "
        << fmt(report.mean_volatility[i]) << " / "
        << fmt(report.reduction_vs_baseline_pct[i]) << "%\n";
  }
  return out.str();
}

std::string render_trace(const Block& block, const Ordering& ordering,
                         const ExecutionTrace& trace, ReportFormat format) {
  const auto label_of = [&](TradeId id) {
    return block[id].label.empty() ? std::to_string(id) : block[id].label;
  };

  std::optional<double> vol;
  if (!trace.steps.empty()) vol = volatility_value(trace);

  if (format == ReportFormat::Json) {
    ordered_json j;
    j["initial_price"] = trace.initial_price;
    ordered_json order = ordered_json::array();
    for (TradeId id : ordering) order.push_back(label_of(id));
    j["ordering"] = std::move(order);
    ordered_json steps = ordered_json::array();
    for (const TraceStep& step : trace.steps) {
      steps.push_back({{"trade", label_of(step.trade)},
                       {"direction", direction_name(block[step.trade].direction)},
                       {"amount_in", block[step.trade].amount_in},
                       {"amount_out", step.amount_out},
                       {"price_after", step.price_after},
                       {"failed", step.failed}});
    }
    j["steps"] = std::move(steps);
    j["final_pool"] = pool_json(trace.final_pool);
    set_opt(j, "volatility", vol);
    return dump(j);
  }

  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "position,trade,direction,amount_in,amount_out,price_after,failed\n";
    for (std::size_t s = 0; s < trace.steps.size(); ++s) {
      const TraceStep& step = trace.steps[s];
      out << s << ',' << label_of(step.trade) << ','
          << direction_name(block[step.trade].direction) << ','
          << fmt(block[step.trade].amount_in) << ',' << fmt(step.amount_out)
          << ',' << fmt(step.price_after) << ','
          << (step.failed ? "yes" : "no") << '\n';
    }
    return out.str();
  }

  std::ostringstream out;
  out << "status-quo price: " << fmt(trace.initial_price) << '\n';
  if (trace.steps.empty()) {
    out << "empty block: nothing to execute, volatility undefined\n";
    return out.str();
  }
  out << "  #  trade      dir   amount_in    amount_out   price_after\n";
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const TraceStep& step = trace.steps[s];
    char line[160];
    std::snprintf(line, sizeof(line),
                  "  %-2zu %-10s %-5s %-12.6g %-12.6g %-12.6g%s\n", s,
                  label_of(step.trade).c_str(),
                  direction_name(block[step.trade].direction),
                  block[step.trade].amount_in, step.amount_out,
                  step.price_after, step.failed ? "  FAILED" : "");
    out << line;
  }
  out << "final pool: x = " << fmt(trace.final_pool.reserve_x)
      << ", y = " << fmt(trace.final_pool.reserve_y) << '\n';
  out << "volatility: " << fmt_opt(vol) << '\n';
  return out.str();
}

}  // namespace clvr
