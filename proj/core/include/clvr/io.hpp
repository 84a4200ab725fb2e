#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "clvr/amm.hpp"

namespace clvr {

// Trade list format, one trade per line:
//   id,direction,amount_in[,min_amount_out]
// direction is `sell` (deposit X) or `buy` (deposit Y). A leading header
// line and blank lines are skipped. The id column is kept as the trade's
// label; canonical ids are assigned by position. Throws IngestError with
// the offending 1-based line number.
Block read_trade_csv(std::istream& in);
Block read_trade_csv_file(const std::string& path);
void write_trade_csv(std::ostream& out, const Block& block);

// One observed swap from an external venue.
struct SwapRecord {
  std::int64_t block_number{0};
  Direction direction{Direction::SellX};
  double amount_in{0.0};
  std::int64_t timestamp{0};
};

// Swap history format, one record per line with a mandatory header:
//   block,direction,amount_in,timestamp
// Records must be grouped by block number (a block's records are
// contiguous); within a block the file order is the observed order.
std::vector<SwapRecord> read_swap_csv(std::istream& in);
std::vector<SwapRecord> read_swap_csv_file(const std::string& path);

// Resolves a claimed ordering from labels (or label-less indices) to
// canonical ids against `block`. Throws ContractViolation on unknown or
// duplicate entries.
Ordering resolve_claim(const Block& block,
                       const std::vector<std::string>& labels);

}  // namespace clvr
