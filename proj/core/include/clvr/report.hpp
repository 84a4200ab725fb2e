#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "clvr/experiments.hpp"

namespace clvr {

enum class ReportFormat : std::uint8_t { Json, Text, Csv };

std::optional<ReportFormat> parse_format(std::string_view name);

// Deterministic serializations: the same report renders to the same
// bytes on every run and thread count.
std::string render(const CompareReport& report, ReportFormat format);
std::string render(const FailureRateReport& report, ReportFormat format);
std::string render(const BlockSizeSweepReport& report, ReportFormat format);
std::string render(const SplittingReport& report, ReportFormat format);
std::string render(const ObjectiveConflictReport& report, ReportFormat format);
std::string render(const ReplayReport& report, ReportFormat format);

// Single-block execution result for the sequencing front end. Csv lists
// the executed steps.
std::string render_trace(const Block& block, const Ordering& ordering,
                         const ExecutionTrace& trace, ReportFormat format);

}  // namespace clvr
