#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "koethe/convolution.hpp"

using namespace koethe;

namespace {

// Independent reference: plain double-precision Cauchy product,
// z_n = sum_{i+j = n+1} x_i y_j, written as a direct double loop.
std::vector<double> naive_cauchy(const std::vector<double>& x, const std::vector<double>& y,
                                 long N) {
  std::vector<double> z(static_cast<size_t>(N), 0.0);
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) {
      size_t n = i + j;  // 0-based target
      if (n < z.size()) z[n] += x[i] * y[j];
    }
  return z;
}

} // namespace

TEST_CASE("cauchy product matches the hand oracle on a fixed example") {
  ScalarSequence x = ScalarSequence::finite_table_doubles({1.0, 2.0, 3.0});
  ScalarSequence y = ScalarSequence::finite_table_doubles({4.0, 5.0});
  Prefix z = cauchy_product_prefix(x, y, 6);
  REQUIRE(z.length() == 6);
  CHECK(z.at(1).to_double() == Catch::Approx(4.0));
  CHECK(z.at(2).to_double() == Catch::Approx(13.0));
  CHECK(z.at(3).to_double() == Catch::Approx(22.0));
  CHECK(z.at(4).to_double() == Catch::Approx(15.0));
  CHECK(z.at(5).is_zero());
  CHECK(z.at(6).is_zero());
}

TEST_CASE("cauchy product matches the double-loop oracle on random tables") {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_int_distribution<int> len(1, 24);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xv(static_cast<size_t>(len(rng))), yv(static_cast<size_t>(len(rng)));
    for (double& v : xv) v = coef(rng);
    for (double& v : yv) v = coef(rng);
    long N = static_cast<long>(xv.size() + yv.size());
    std::vector<double> want = naive_cauchy(xv, yv, N);
    Prefix got = cauchy_product_prefix(ScalarSequence::finite_table_doubles(xv),
                                       ScalarSequence::finite_table_doubles(yv), N);
    for (long n = 1; n <= N; ++n) {
      double w = want[static_cast<size_t>(n - 1)];
      double g = got.at(n).to_double();
      // Compensated log-domain summation vs plain double accumulation.
      CHECK(std::abs(g - w) <= 1e-12 * std::max(1.0, std::abs(w)));
    }
  }
}

TEST_CASE("cauchy product is commutative bit for bit") {
  ScalarSequence x = ScalarSequence::finite_table_doubles({0.25, -1.5, 3.0, 0.0, 2.0});
  ScalarSequence y = ScalarSequence::finite_table_doubles({-2.0, 0.5, 1.0});
  Prefix a = cauchy_product_prefix(x, y, 10);
  Prefix b = cauchy_product_prefix(y, x, 10);
  for (long n = 1; n <= 10; ++n) CHECK(bit_equal(a.at(n), b.at(n)));
}

TEST_CASE("geometric convolved with ones gives geometric partial sums") {
  // z_n = sum_{i=1..n} r^i = r (1 - r^n) / (1 - r).
  ScalarSequence g = ScalarSequence::geometric(0.5);
  ScalarSequence ones = ScalarSequence::power_law(1.0, 0.0, 0.0);
  Prefix z = cauchy_product_prefix(g, ones, 12);
  for (long n = 1; n <= 12; ++n) {
    double want = 1.0 - std::pow(0.5, static_cast<double>(n));
    CHECK(z.at(n).to_double() == Catch::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("toeplitz columns agree with convolving a shifted basis vector") {
  ScalarSequence theta = ScalarSequence::finite_table_doubles({1.0, -2.0, 0.5, 3.0});
  // e_2 as a finite table.
  ScalarSequence e2 = ScalarSequence::finite_table_doubles({0.0, 1.0});
  Prefix col = toeplitz_column(theta, 2, 8);
  Prefix conv = cauchy_product_prefix(theta, e2, 8);
  for (long j = 1; j <= 8; ++j) CHECK(bit_equal(col.at(j), conv.at(j)));
  // Column shape: zero above the diagonal, theta shifted below it.
  CHECK(col.at(1).is_zero());
  CHECK(col.at(2).to_double() == Catch::Approx(1.0));
  CHECK(col.at(3).to_double() == Catch::Approx(-2.0));
}

TEST_CASE("toeplitz rows collect the reversed symbol prefix") {
  ScalarSequence theta = ScalarSequence::finite_table_doubles({1.0, -2.0, 0.5});
  Prefix row = toeplitz_row(theta, 3, 5);
  // Row n=3: entry i = theta_{3+1-i} for i <= 3, zero target beyond.
  CHECK(row.at(1).to_double() == Catch::Approx(0.5));
  CHECK(row.at(2).to_double() == Catch::Approx(-2.0));
  CHECK(row.at(3).to_double() == Catch::Approx(1.0));
  CHECK(row.at(4).is_zero());
  CHECK(row.at(5).is_zero());
}

TEST_CASE("argument validation") {
  ScalarSequence x = ScalarSequence::finite_table_doubles({1.0});
  CHECK_THROWS_AS(cauchy_product_prefix(x, x, -1), std::invalid_argument);
  CHECK_THROWS_AS(toeplitz_column(x, 0, 5), std::invalid_argument);
  CHECK_THROWS_AS(toeplitz_row(x, 0, 5), std::invalid_argument);
}
