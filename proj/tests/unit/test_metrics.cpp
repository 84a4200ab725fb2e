#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "clvr/amm.hpp"
#include "clvr/errors.hpp"
#include "clvr/metrics.hpp"
#include "clvr/workload.hpp"

using namespace clvr;

namespace {

Block three_trade_set() {
  Block block;
  block.push_back(make_trade(0, Direction::SellX, 2.0));
  block.push_back(make_trade(1, Direction::SellX, 5.0));
  block.push_back(make_trade(2, Direction::BuyY, 10.0));
  return block;
}

// Swap the roles of the two tokens: reserves trade places and each
// deposit of physical X becomes a deposit of the mirrored pool's Y.
Pool mirror(const Pool& pool) {
  return Pool{pool.reserve_y, pool.reserve_x, pool.fee_rate};
}

Block mirror(const Block& block) {
  Block out = block;
  for (auto& trade : out) {
    trade.direction = trade.direction == Direction::SellX ? Direction::BuyY
                                                          : Direction::SellX;
  }
  return out;
}

}  // namespace

TEST_CASE("three-trade volatilities match the worked counterexample") {
  Pool pool{100.0, 100.0, 0.0};
  Block block = three_trade_set();

  auto greedy = execute_block(pool, block, Ordering{0, 1, 2}, false);
  auto optimal = execute_block(pool, block, Ordering{1, 2, 0}, false);

  CHECK(volatility_value(greedy) == doctest::Approx(8.16732952435e-3).epsilon(1e-9));
  CHECK(volatility_value(optimal) == doctest::Approx(7.86762832451e-3).epsilon(1e-9));
  CHECK(std::abs(volatility_value(greedy) - 8.2e-3) < 0.05e-3);
  CHECK(std::abs(volatility_value(optimal) - 7.9e-3) < 0.05e-3);

  auto report = volatility(greedy);
  CHECK(report.steps == 3);
  CHECK(report.status_quo_price == doctest::Approx(1.0));
}

TEST_CASE("four-trade sequence volatilities") {
  Pool pool{100.0, 100.0, 0.0};
  Block ssbb = make_block({{Direction::SellX, 10.0},
                           {Direction::SellX, 10.0},
                           {Direction::BuyY, 10.0},
                           {Direction::BuyY, 10.0}});
  Block sbsb = make_block({{Direction::SellX, 10.0},
                           {Direction::BuyY, 10.0},
                           {Direction::SellX, 10.0},
                           {Direction::BuyY, 10.0}});
  double vol_grouped =
      volatility_value(execute_block(pool, ssbb, identity_ordering(4), false));
  double vol_alternating =
      volatility_value(execute_block(pool, sbsb, identity_ordering(4), false));
  CHECK(vol_grouped == doctest::Approx(0.0481603692429).epsilon(1e-9));
  CHECK(vol_alternating == doctest::Approx(0.0170209642785).epsilon(1e-9));
  CHECK(vol_alternating < vol_grouped);
}

TEST_CASE("volatility is insensitive to the quote direction") {
  WorkloadSpec spec;
  spec.n = 10;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    spec.seed = seed;
    Block block = generate_block(spec);
    Pool pool{2e6, 2e6, 0.0};

    double direct = volatility_value(
        execute_block(pool, block, identity_ordering(block.size()), false));
    double mirrored = volatility_value(execute_block(
        mirror(pool), mirror(block), identity_ordering(block.size()), false));
    CHECK(std::abs(direct - mirrored) <= 1e-12 * std::max(direct, mirrored));
  }
}

TEST_CASE("single-trade trace is quote-invariant") {
  Pool pool{300.0, 200.0, 0.0};
  Block block = make_block({{Direction::SellX, 10.0}});
  double direct =
      volatility_value(execute_block(pool, block, Ordering{0}, false));
  double mirrored = volatility_value(
      execute_block(mirror(pool), mirror(block), Ordering{0}, false));
  CHECK(std::abs(direct - mirrored) <= 1e-12 * std::max(direct, mirrored));
}

TEST_CASE("vanishing trades give vanishing volatility") {
  Pool pool{100.0, 100.0, 0.0};
  Block block = make_block({{Direction::SellX, 1e-9},
                            {Direction::BuyY, 1e-9},
                            {Direction::SellX, 1e-9}});
  double vol =
      volatility_value(execute_block(pool, block, identity_ordering(3), false));
  CHECK(vol < 1e-20);
}

TEST_CASE("volatility argmin survives a common rescaling") {
  // Reserves and trade sizes scaled together leave log-price paths, and
  // hence every ordering's volatility, unchanged.
  Block block = three_trade_set();
  Pool pool{100.0, 100.0, 0.0};
  const double c = 1e4;
  Block scaled = block;
  for (auto& trade : scaled) trade.amount_in *= c;
  Pool scaled_pool{pool.reserve_x * c, pool.reserve_y * c, 0.0};

  for (const Ordering& ordering :
       {Ordering{0, 1, 2}, Ordering{1, 2, 0}, Ordering{2, 1, 0}}) {
    double base = volatility_value(execute_block(pool, block, ordering, false));
    double big =
        volatility_value(execute_block(scaled_pool, scaled, ordering, false));
    CHECK(std::abs(base - big) <= 1e-9 * std::max(base, big));
  }
}

TEST_CASE("failed steps still occupy a volatility slot") {
  Pool pool{100.0, 100.0, 0.0};
  Block block;
  block.push_back(make_trade(0, Direction::SellX, 10.0));
  block.push_back(make_trade(1, Direction::SellX, 10.0, 9.5));  // will fail
  auto trace = execute_block(pool, block, identity_ordering(2), true);
  REQUIRE(trace.steps[1].failed);

  auto report = volatility(trace);
  CHECK(report.steps == 2);
  // Both steps sit at the post-first-trade price.
  double dev = squared_log_deviation(1.0, trace.steps[0].price_after);
  CHECK(report.volatility == doctest::Approx(dev));
}

TEST_CASE("volatility of an empty trace is undefined") {
  ExecutionTrace trace;
  trace.initial_price = 1.0;
  CHECK_THROWS_AS(volatility(trace), UndefinedMetricError);
}

TEST_CASE("squared log deviation basics") {
  CHECK(squared_log_deviation(1.0, 1.0) == 0.0);
  CHECK(squared_log_deviation(1.0, std::exp(1.0)) == doctest::Approx(1.0));
  CHECK(squared_log_deviation(2.0, 1.0) ==
        doctest::Approx(squared_log_deviation(1.0, 2.0)));
  CHECK(squared_log_deviation(1.0, 0.5) ==
        doctest::Approx(squared_log_deviation(1.0, 2.0)));
}

TEST_CASE("gini of identical payouts is zero") {
  Pool pool{1000.0, 1000.0, 0.0};
  Block block = make_block({{Direction::SellX, 5.0},
                            {Direction::SellX, 5.0},
                            {Direction::SellX, 5.0}});
  // Identical sells receive slightly different outputs as the price
  // moves, so check the analytic all-equal case through a single trade.
  Block one = make_block({{Direction::SellX, 5.0}});
  auto trace = execute_block(pool, one, Ordering{0}, false);
  CHECK(gini(trace, one, spot_price(pool)) == doctest::Approx(0.0));

  // And near-zero for the nearly-equal case.
  auto trace3 = execute_block(pool, block, identity_ordering(3), false);
  CHECK(gini(trace3, block, spot_price(pool)) < 0.01);
}

TEST_CASE("two-agent maximal inequality scores one half") {
  // Wealth vector (0, W): one failed trade, one successful one.
  Pool pool{100.0, 100.0, 0.0};
  Block block;
  block.push_back(make_trade(0, Direction::SellX, 10.0));
  block.push_back(make_trade(1, Direction::SellX, 10.0, 9.5));  // fails
  auto trace = execute_block(pool, block, identity_ordering(2), true);
  REQUIRE(trace.steps[1].failed);
  CHECK(gini(trace, block, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("gini converts buy outputs at the status-quo price") {
  // p0 = 2 (y/x). A SellX of 1 and a BuyY of 2 are the same trade size in
  // opposite directions; on a deep pool their outputs are near-equal
  // after conversion, so gini is near zero. Without conversion the X
  // output (about half the Y size) would register as unequal wealth.
  Pool pool{1e6, 2e6, 0.0};
  Block block;
  block.push_back(make_trade(0, Direction::SellX, 1.0));
  block.push_back(make_trade(1, Direction::BuyY, 2.0));
  auto trace = execute_block(pool, block, identity_ordering(2), false);
  CHECK(gini(trace, block, spot_price(pool)) < 1e-4);
}

TEST_CASE("gini stays within its n-agent bound") {
  Pool pool{1000.0, 1000.0, 0.0};
  WorkloadSpec spec;
  spec.n = 5;
  spec.sizes = UniformSizes{1.0, 50.0};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    spec.seed = seed;
    Block block = generate_block(spec);
    auto trace = execute_block(pool, block, identity_ordering(5), false);
    double g = gini(trace, block, spot_price(pool));
    CHECK(g >= 0.0);
    CHECK(g <= 1.0 - 1.0 / 5.0);
  }
}

TEST_CASE("gini of all-zero wealth is undefined") {
  Pool pool{100.0, 100.0, 0.0};
  Block block;
  block.push_back(make_trade(0, Direction::SellX, 10.0, 100.0));
  auto trace = execute_block(pool, block, identity_ordering(1), true);
  REQUIRE(trace.steps[0].failed);
  CHECK_THROWS_AS(gini(trace, block, 1.0), UndefinedMetricError);

  ExecutionTrace empty;
  empty.initial_price = 1.0;
  CHECK_THROWS_AS(gini(empty, Block{}, 1.0), UndefinedMetricError);
}

TEST_CASE("relative score endpoints and midpoint") {
  CHECK(relative_score(1.0, 1.0, 3.0).value_pct == doctest::Approx(0.0));
  CHECK(relative_score(3.0, 1.0, 3.0).value_pct == doctest::Approx(100.0));
  CHECK(relative_score(2.0, 1.0, 3.0).value_pct == doctest::Approx(50.0));

  auto score = relative_score(2.5, 1.0, 3.0);
  CHECK(score.global_min == 1.0);
  CHECK(score.global_max == 3.0);
  CHECK(score.value_pct == doctest::Approx(75.0));
}

TEST_CASE("relative score is monotone and clamped") {
  double prev = -1.0;
  for (double raw : {1.0, 1.2, 1.7, 2.4, 3.0}) {
    double pct = relative_score(raw, 1.0, 3.0).value_pct;
    CHECK(pct > prev);
    prev = pct;
  }
  // Values a rounding error outside the range clamp instead of escaping.
  CHECK(relative_score(1.0 - 1e-13, 1.0, 3.0).value_pct == 0.0);
  CHECK(relative_score(3.0 + 1e-13, 1.0, 3.0).value_pct == 100.0);
}

TEST_CASE("degenerate and invalid relative ranges") {
  CHECK(relative_score(5.0, 5.0, 5.0).value_pct == 0.0);
  CHECK_THROWS_AS(relative_score(2.0, 3.0, 1.0), ContractViolation);
}

TEST_CASE("relative score from a collection of ordering values") {
  std::vector<double> values{0.3, 0.1, 0.5, 0.2};
  auto score = relative_score(0.3, values);
  CHECK(score.global_min == doctest::Approx(0.1));
  CHECK(score.global_max == doctest::Approx(0.5));
  CHECK(score.value_pct == doctest::Approx(50.0));
}
