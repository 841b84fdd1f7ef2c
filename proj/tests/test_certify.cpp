#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "koethe/certify.hpp"

using namespace koethe;

namespace {
LogValue lv(double x) { return LogValue::from_double(x); }
}

TEST_CASE("finite support makes series sums exact") {
  TermFn term = [](long n) { return LogValue::from_log(1, -n * std::log(2.0)); };
  SeriesScan s = certify_series(term, Budget{}, 10L);
  CHECK(s.cert.certified());
  CHECK_FALSE(s.cert.divergent);
  CHECK(s.cert.tail.kind == TailArgument::Kind::closed_form);
  CHECK(s.cert.tail.rule == "finite-support");
  CHECK(s.cert.tail_bound.is_zero());
  // sum_{n=1..10} 2^{-n} = 1 - 2^{-10}.
  CHECK(s.cert.value.to_double() == Catch::Approx(1.0 - std::pow(2.0, -10)).epsilon(1e-14));
  CHECK(s.cert.verified_up_to == 10);
}

TEST_CASE("geometric decay certifies through the ratio window") {
  TermFn term = [](long n) { return LogValue::from_log(1, -static_cast<double>(n)); };
  Budget b;
  SeriesScan s = certify_series(term, b);
  REQUIRE(s.cert.certified());
  CHECK(s.cert.tail.kind == TailArgument::Kind::ratio_domination);
  CHECK(s.cert.tail.ratio <= 0.99);
  CHECK(s.cert.tail.ratio == Catch::Approx(std::exp(-1.0)).margin(1e-12));
  double exact = 1.0 / (std::exp(1.0) - 1.0);
  // Truncation bracket: value <= exact <= value + tail_bound.
  CHECK(s.cert.value.logmag <= std::log(exact) + 1e-15);
  CHECK(s.cert.upper().logmag >= std::log(exact) - 1e-15);
  CHECK(s.cert.value.to_double() == Catch::Approx(exact).epsilon(1e-9));
}

TEST_CASE("slow decay falls back to the dyadic block majorant") {
  // term = e^{-log^2(n+1)}: consecutive ratios tend to 1, so geometric
  // extrapolation is refused, but dyadic blocks decay fast enough.
  TermFn term = [](long n) {
    double l = std::log(static_cast<double>(n) + 1.0);
    return LogValue::from_log(1, -l * l);
  };
  SeriesScan s = certify_series(term, Budget{});
  REQUIRE(s.cert.certified());
  CHECK(s.cert.tail.kind == TailArgument::Kind::closed_form);
  CHECK(s.cert.tail.rule == "dyadic-block-majorant");
  CHECK_FALSE(s.cert.divergent);
  CHECK(s.cert.tail_bound.sign == 1);  // honest nonzero tail estimate
}

TEST_CASE("non-vanishing terms attest divergence with increasing partial sums") {
  TermFn term = [](long) { return LogValue::one(); };
  SeriesScan s = certify_series(term, Budget{});
  CHECK(s.cert.divergent);
  CHECK_FALSE(s.cert.certified());
  REQUIRE(s.trace_indices.size() >= 3);
  REQUIRE(s.trace_values.size() == s.trace_indices.size());
  for (size_t i = 1; i < s.trace_values.size(); ++i)
    CHECK(log_less(s.trace_values[i - 1], s.trace_values[i]));
  CHECK(s.trace_indices.back() == Budget{}.N);
}

TEST_CASE("oscillating windows yield an uncertified lower bound") {
  TermFn term = [](long n) {
    double base = (n % 2 == 0) ? -static_cast<double>(n) : -static_cast<double>(n) / 2.0;
    return LogValue::from_log(1, base);
  };
  SeriesScan s = certify_series(term, Budget{});
  CHECK_FALSE(s.cert.certified());
  CHECK_FALSE(s.cert.divergent);
  CHECK(s.cert.value.sign == 1);  // the partial sum itself is still reported
}

TEST_CASE("suprema certify when the argmax stabilizes before the window") {
  TermFn term = [](long n) { return LogValue::from_log(1, -static_cast<double>(n)); };
  SupScan s = certify_sup(term, Budget{});
  REQUIRE(s.cert.certified());
  CHECK(s.argmax == 1);
  CHECK(s.cert.value.logmag == Catch::Approx(-1.0).margin(1e-15));
  CHECK(s.cert.tail_bound.is_zero());  // certified sup is exact
}

TEST_CASE("strictly growing terms attest an unbounded supremum") {
  TermFn term = [](long n) { return lv(static_cast<double>(n)); };
  SupScan s = certify_sup(term, Budget{});
  CHECK(s.cert.divergent);
  REQUIRE(!s.trace_indices.empty());
  for (size_t i = 1; i < s.trace_values.size(); ++i)
    CHECK(log_less(s.trace_values[i - 1], s.trace_values[i]));
}

TEST_CASE("slowly saturating terms stay unknown rather than misattest") {
  // 1 - 1/n increases forever but the per-step growth drops below the
  // attestation threshold, so neither bounded nor unbounded is claimed.
  TermFn term = [](long n) { return lv(1.0 - 1.0 / static_cast<double>(n)); };
  BoundedScan s = check_bounded(term, Budget{});
  CHECK(s.status == BoundedStatus::unknown);
}

TEST_CASE("check_bounded classifies the three regimes") {
  CHECK(check_bounded([](long n) { return LogValue::from_log(1, -static_cast<double>(n)); },
                      Budget{})
            .status == BoundedStatus::bounded);
  CHECK(check_bounded([](long n) { return lv(static_cast<double>(n)); }, Budget{}).status ==
        BoundedStatus::unbounded);
  BoundedScan flat = check_bounded([](long) { return LogValue::one(); }, Budget{});
  CHECK(flat.status == BoundedStatus::bounded);
  CHECK(flat.sup.logmag == Catch::Approx(0.0).margin(1e-15));
  CHECK(flat.argmax == 1);
}

TEST_CASE("empty known support gives an exact zero supremum") {
  SupScan s = certify_sup([](long) { return LogValue::one(); }, Budget{}, 0L);
  CHECK(s.cert.certified());
  CHECK(s.cert.value.is_zero());
}

TEST_CASE("window shorter than three differences attests no trend") {
  Budget tiny;
  tiny.N = 4;  // trailing window covers indices 3..4: a single difference

  // Growing terms: a full window would attest divergence, but one difference
  // is never accepted as a trend.
  SeriesScan grow = certify_series(
      [](long n) { return LogValue::from_log(1, static_cast<double>(n)); }, tiny);
  CHECK_FALSE(grow.cert.divergent);
  CHECK_FALSE(grow.cert.certified());

  // The sup scan needs a nonincreasing trend to close; a single decaying
  // difference leaves the value a lower bound.
  SupScan sup = certify_sup(
      [](long n) { return LogValue::from_log(1, -static_cast<double>(n)); }, tiny);
  CHECK_FALSE(sup.cert.certified());
  CHECK_FALSE(sup.cert.divergent);
}

TEST_CASE("a single strongly decaying difference still bounds a series tail") {
  Budget tiny;
  tiny.N = 4;
  SeriesScan s = certify_series(
      [](long n) { return LogValue::from_log(1, -static_cast<double>(n)); }, tiny);
  REQUIRE(s.cert.certified());
  CHECK(s.cert.tail.kind == TailArgument::Kind::ratio_domination);
  // True value sum e^{-n} = 1/(e-1); certified upper bound must dominate it.
  double truth = 1.0 / (std::exp(1.0) - 1.0);
  LogValue upper = log_add(s.cert.value, s.cert.tail_bound);
  CHECK(s.cert.value.logmag <= std::log(truth) + 1e-12);
  CHECK(upper.logmag >= std::log(truth) - 1e-12);
}
