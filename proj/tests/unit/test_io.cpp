#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "clvr/amm.hpp"
#include "clvr/errors.hpp"
#include "clvr/io.hpp"

using namespace clvr;

TEST_CASE("trade csv parses with and without a header") {
  std::istringstream with_header(
      "id,direction,amount_in,min_amount_out\n"
      "a,sell,2\n"
      "b,sell,5\n"
      "c,buy,10,9.5\n");
  Block block = read_trade_csv(with_header);
  REQUIRE(block.size() == 3);
  CHECK(block[0].id == 0);
  CHECK(block[0].label == "a");
  CHECK(block[0].direction == Direction::SellX);
  CHECK(block[0].amount_in == 2.0);
  CHECK_FALSE(block[0].min_amount_out.has_value());
  CHECK(block[2].direction == Direction::BuyY);
  REQUIRE(block[2].min_amount_out.has_value());
  CHECK(*block[2].min_amount_out == 9.5);

  std::istringstream bare(
      "0,sell,2\n"
      "1,buy,10\n");
  Block plain = read_trade_csv(bare);
  REQUIRE(plain.size() == 2);
  CHECK(plain[1].direction == Direction::BuyY);
}

TEST_CASE("blank lines and surrounding whitespace are tolerated") {
  std::istringstream in(
      "\n"
      " 7 , sell , 2.5 \n"
      "\n"
      "8,buy,3,\n");
  Block block = read_trade_csv(in);
  REQUIRE(block.size() == 2);
  CHECK(block[0].label == "7");
  CHECK(block[0].amount_in == 2.5);
  // Trailing comma means an empty floor field, which stays unset.
  CHECK_FALSE(block[1].min_amount_out.has_value());
}

TEST_CASE("trade csv round-trips exactly") {
  Block block;
  block.push_back(make_trade(0, Direction::SellX, 9.090909090909091));
  block.push_back(make_trade(1, Direction::BuyY, 1e-7, 3.33333333333333e-8));
  std::ostringstream out;
  write_trade_csv(out, block);
  std::istringstream in(out.str());
  Block parsed = read_trade_csv(in);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].amount_in == block[0].amount_in);
  CHECK(parsed[1].amount_in == block[1].amount_in);
  REQUIRE(parsed[1].min_amount_out.has_value());
  CHECK(*parsed[1].min_amount_out == *block[1].min_amount_out);
}

TEST_CASE("malformed trade lines report their line number") {
  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_trade_csv(in);
    } catch (const IngestError& error) {
      return error.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("0,sell,2\n1,hold,5\n") == 2);
  CHECK(line_of("0,sell,abc\n") == 1);
  CHECK(line_of("0,sell\n") == 1);
  CHECK(line_of("0,sell,2\n\n1,buy,-4\n") == 3);
  CHECK(line_of("0,sell,2,-1\n") == 1);

  std::istringstream bad("0,sell,0\n");
  CHECK_THROWS_AS(read_trade_csv(bad), IngestError);
}

TEST_CASE("missing files raise an io error") {
  CHECK_THROWS_AS(read_trade_csv_file("/nonexistent/trades.csv"), IoError);
  CHECK_THROWS_AS(read_swap_csv_file("/nonexistent/swaps.csv"), IoError);
}

TEST_CASE("swap csv requires its exact header") {
  std::istringstream good(
      "block,direction,amount_in,timestamp\n"
      "17290000,sell,120.5,1700000000\n"
      "17290000,buy,3.25,1700000012\n"
      "17290001,sell,9,1700000030\n");
  auto records = read_swap_csv(good);
  REQUIRE(records.size() == 3);
  CHECK(records[0].block_number == 17290000);
  CHECK(records[0].direction == Direction::SellX);
  CHECK(records[0].amount_in == 120.5);
  CHECK(records[0].timestamp == 1700000000);
  CHECK(records[2].block_number == 17290001);

  std::istringstream headerless("17290000,sell,120.5,1700000000\n");
  CHECK_THROWS_AS(read_swap_csv(headerless), IngestError);

  std::istringstream empty("");
  CHECK_THROWS_AS(read_swap_csv(empty), IngestError);
}

TEST_CASE("malformed swap lines report their line number") {
  std::istringstream in(
      "block,direction,amount_in,timestamp\n"
      "1,sell,10,100\n"
      "1,buy,0,101\n");
  try {
    read_swap_csv(in);
    FAIL("expected an ingest error");
  } catch (const IngestError& error) {
    CHECK(error.line() == 3);
  }
}

TEST_CASE("claims resolve by label to canonical ids") {
  std::istringstream in(
      "id,direction,amount_in\n"
      "alpha,sell,2\n"
      "beta,sell,5\n"
      "gamma,buy,10\n");
  Block block = read_trade_csv(in);
  Ordering ordering = resolve_claim(block, {"beta", "gamma", "alpha"});
  CHECK(ordering == Ordering{1, 2, 0});

  CHECK_THROWS_AS(resolve_claim(block, {"beta", "gamma", "delta"}),
                  ContractViolation);
  CHECK_THROWS_AS(resolve_claim(block, {"beta", "beta", "alpha"}),
                  ContractViolation);
  CHECK_THROWS_AS(resolve_claim(block, {"beta", "gamma"}), ContractViolation);
}

TEST_CASE("unlabeled blocks resolve claims by id text") {
  Block block = make_block({{Direction::SellX, 1.0}, {Direction::BuyY, 2.0}});
  Ordering ordering = resolve_claim(block, {"1", "0"});
  CHECK(ordering == Ordering{1, 0});
}
