#include "clvr/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "clvr/errors.hpp"

namespace clvr {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // Trim surrounding whitespace.
    const auto begin = field.find_first_not_of(" \t\r");
    const auto end = field.find_last_not_of(" \t\r");
    fields.push_back(begin == std::string::npos
                         ? std::string{}
                         : field.substr(begin, end - begin + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, std::size_t line,
                    const char* what) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw IngestError(std::string("malformed ") + what + " '" + text + "'",
                      line);
  }
  return value;
}

std::int64_t parse_int(const std::string& text, std::size_t line,
                       const char* what) {
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw IngestError(std::string("malformed ") + what + " '" + text + "'",
                      line);
  }
  return value;
}

Direction parse_direction(const std::string& text, std::size_t line) {
  if (text == "sell") return Direction::SellX;
  if (text == "buy") return Direction::BuyY;
  throw IngestError("direction must be 'sell' or 'buy', got '" + text + "'",
                    line);
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

// Shortest decimal form that parses back to the same double.
std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace

Block read_trade_csv(std::istream& in) {
  Block block;
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (first_content && !fields.empty() && fields[0] == "id") {
      first_content = false;
      continue;
    }
    first_content = false;
    if (fields.size() != 3 && fields.size() != 4) {
      throw IngestError("expected id,direction,amount_in[,min_amount_out]",
                        line_no);
    }
    Trade trade = make_trade(static_cast<TradeId>(block.size()),
                             parse_direction(fields[1], line_no),
                             parse_double(fields[2], line_no, "amount_in"));
    trade.label = fields[0];
    if (!(trade.amount_in > 0.0)) {
      throw IngestError("amount_in must be positive", line_no);
    }
    if (fields.size() == 4 && !fields[3].empty()) {
      const double floor =
          parse_double(fields[3], line_no, "min_amount_out");
      if (floor < 0.0) {
        throw IngestError("min_amount_out must be non-negative", line_no);
      }
      trade.min_amount_out = floor;
    }
    block.push_back(std::move(trade));
  }
  return block;
}

Block read_trade_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open trade file '" + path + "'");
  }
  return read_trade_csv(in);
}

void write_trade_csv(std::ostream& out, const Block& block) {
  out << "id,direction,amount_in,min_amount_out\n";
  for (const Trade& trade : block) {
    out << (trade.label.empty() ? std::to_string(trade.id) : trade.label)
        << ',' << (trade.direction == Direction::SellX ? "sell" : "buy")
        << ',' << format_double(trade.amount_in) << ',';
    if (trade.min_amount_out) out << format_double(*trade.min_amount_out);
    out << '\n';
  }
}

std::vector<SwapRecord> read_swap_csv(std::istream& in) {
  std::vector<SwapRecord> records;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (!saw_header) {
      if (fields.size() != 4 || fields[0] != "block" ||
          fields[1] != "direction" || fields[2] != "amount_in" ||
          fields[3] != "timestamp") {
        throw IngestError(
            "expected header 'block,direction,amount_in,timestamp'", line_no);
      }
      saw_header = true;
      continue;
    }
    if (fields.size() != 4) {
      throw IngestError("expected block,direction,amount_in,timestamp",
                        line_no);
    }
    SwapRecord record;
    record.block_number = parse_int(fields[0], line_no, "block");
    record.direction = parse_direction(fields[1], line_no);
    record.amount_in = parse_double(fields[2], line_no, "amount_in");
    record.timestamp = parse_int(fields[3], line_no, "timestamp");
    if (!(record.amount_in > 0.0)) {
      throw IngestError("amount_in must be positive", line_no);
    }
    records.push_back(record);
  }
  if (!saw_header) {
    throw IngestError("swap file is empty or missing its header", 1);
  }
  return records;
}

std::vector<SwapRecord> read_swap_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open swap file '" + path + "'");
  }
  return read_swap_csv(in);
}

Ordering resolve_claim(const Block& block,
                       const std::vector<std::string>& labels) {
  std::unordered_map<std::string, TradeId> by_label;
  for (const Trade& trade : block) {
    const std::string key =
        trade.label.empty() ? std::to_string(trade.id) : trade.label;
    by_label.emplace(key, trade.id);
  }
  Ordering ordering;
  ordering.reserve(labels.size());
  std::vector<bool> used(block.size(), false);
  for (const std::string& label : labels) {
    const auto it = by_label.find(label);
    if (it == by_label.end()) {
      throw ContractViolation("claim references unknown trade '" + label +
                              "'");
    }
    if (used[it->second]) {
      throw ContractViolation("claim lists trade '" + label + "' twice");
    }
    used[it->second] = true;
    ordering.push_back(it->second);
  }
  if (ordering.size() != block.size()) {
    throw ContractViolation("claim does not cover every trade in the block");
  }
  return ordering;
}

}  // namespace clvr
