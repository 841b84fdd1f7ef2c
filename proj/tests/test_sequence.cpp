#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "koethe/sequence.hpp"

using namespace koethe;

TEST_CASE("exponent sequences evaluate their closed forms") {
  CHECK(ExponentSequence::linear(2.0).at(5) == Catch::Approx(10.0));
  CHECK(ExponentSequence::log_form().at(7) == Catch::Approx(std::log(8.0)));
  CHECK(ExponentSequence::power_log(1.0, 2.0, 1.0).at(3) ==
        Catch::Approx(9.0 * std::log(4.0)));
  CHECK(ExponentSequence::power_log(0.5, 0.0, 2.0).at(4) ==
        Catch::Approx(0.5 * std::log(5.0) * std::log(5.0)));
  ExponentSequence t = ExponentSequence::table({1.0, 1.5, 4.0});
  CHECK(t.at(2) == 1.5);
  CHECK_THROWS_AS(t.at(4), std::out_of_range);
  CHECK_THROWS_AS(t.at(0), std::out_of_range);
}

TEST_CASE("exponent sequences validate their parameters") {
  CHECK_THROWS_AS(ExponentSequence::linear(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ExponentSequence::linear(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(ExponentSequence::power_log(1.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ExponentSequence::power_log(-1.0, 1.0, 0.0), std::invalid_argument);
  // Tables must be nondecreasing (they model monotone exponents).
  CHECK_THROWS_AS(ExponentSequence::table({1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("finite tables index 1-based and vanish beyond their support") {
  ScalarSequence x = ScalarSequence::finite_table_doubles({1.0, -2.0, 0.5});
  CHECK(x.at(1).to_double() == Catch::Approx(1.0));
  CHECK(x.at(2).to_double() == Catch::Approx(-2.0));
  CHECK(x.at(3).to_double() == Catch::Approx(0.5));
  CHECK(x.at(4).is_zero());
  CHECK(x.at(1000).is_zero());
  REQUIRE(x.finite_support());
  CHECK(*x.finite_support() == 3);

  std::vector<LogValue> pre = x.prefix(5);
  REQUIRE(pre.size() == 5);
  CHECK(pre[3].is_zero());
  CHECK(pre[4].is_zero());
}

TEST_CASE("geometric sequences are r^n with alternating sign for r < 0") {
  ScalarSequence g = ScalarSequence::geometric(0.5);
  CHECK(g.at(1).to_double() == Catch::Approx(0.5));
  CHECK(g.at(3).to_double() == Catch::Approx(0.125));
  CHECK_FALSE(g.finite_support());

  ScalarSequence neg = ScalarSequence::geometric(-2.0);
  CHECK(neg.at(1).to_double() == Catch::Approx(-2.0));
  CHECK(neg.at(2).to_double() == Catch::Approx(4.0));
  CHECK(neg.at(3).to_double() == Catch::Approx(-8.0));

  ScalarSequence zero = ScalarSequence::geometric(0.0);
  CHECK(zero.at(1).is_zero());
  REQUIRE(zero.finite_support());
  CHECK(*zero.finite_support() == 0);

  // Growth far past double range stays representable.
  ScalarSequence big = ScalarSequence::geometric(2.0);
  CHECK(big.at(5000).logmag == Catch::Approx(5000.0 * std::log(2.0)));
}

TEST_CASE("power-law sequences evaluate c * n^p * log(n+1)^q") {
  ScalarSequence x = ScalarSequence::power_law(2.0, 1.0, 1.0);
  CHECK(x.at(3).to_double() == Catch::Approx(6.0 * std::log(4.0)));
  ScalarSequence ones = ScalarSequence::power_law(1.0, 0.0, 0.0);
  CHECK(ones.at(1).to_double() == Catch::Approx(1.0));
  CHECK(ones.at(999).to_double() == Catch::Approx(1.0));
  ScalarSequence negc = ScalarSequence::power_law(-1.5, 2.0, 0.0);
  CHECK(negc.at(2).to_double() == Catch::Approx(-6.0));
  ScalarSequence null = ScalarSequence::power_law(0.0, 3.0, 0.0);
  CHECK(null.at(7).is_zero());
  REQUIRE(null.finite_support());
  CHECK(*null.finite_support() == 0);
}

TEST_CASE("exp-of-exponent sequences evaluate e^{s * alpha_n}") {
  ScalarSequence x = ScalarSequence::exp_of_exponent(-2.0, ExponentSequence::linear(1.0));
  CHECK(x.at(4).logmag == Catch::Approx(-8.0));
  CHECK(x.at(4).sign == 1);
  ScalarSequence fast = ScalarSequence::exp_of_exponent(1.0,
      ExponentSequence::power_log(1.0, 2.0, 0.0));
  CHECK(fast.at(10).logmag == Catch::Approx(100.0));
}

TEST_CASE("expression sequences evaluate the n variable") {
  ScalarSequence x = ScalarSequence::expression("1/(n*n)");
  CHECK(x.at(4).to_double() == Catch::Approx(0.0625));
  ScalarSequence y = ScalarSequence::expression("-n");
  CHECK(y.at(3).sign == -1);
  CHECK(y.at(3).to_double() == Catch::Approx(-3.0));
  ScalarSequence z = ScalarSequence::expression("exp(n) / (n + 1)");
  CHECK(z.at(2).to_double() == Catch::Approx(std::exp(2.0) / 3.0));
}
