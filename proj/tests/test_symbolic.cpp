#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "koethe/certify.hpp"
#include "koethe/symbolic.hpp"

using namespace koethe;

namespace {

const ExponentSequence kLin1 = ExponentSequence::linear(1.0);
const ExponentSequence kLin2 = ExponentSequence::linear(2.0);
const ExponentSequence kLog = ExponentSequence::log_form();
const ExponentSequence kNsq = ExponentSequence::power_log(1.0, 2.0, 0.0);
const ExponentSequence kLogSq = ExponentSequence::power_log(1.0, 0.0, 2.0);
const ExponentSequence kSqrtLog = ExponentSequence::power_log(1.0, 0.0, 0.5);

const KoetheMatrix kInLog = KoetheMatrix::infinite_type(kLog);
const KoetheMatrix kInLin = KoetheMatrix::infinite_type(kLin1);
const KoetheMatrix kFinLin = KoetheMatrix::finite_type(kLin1);
const KoetheMatrix kFinLog = KoetheMatrix::finite_type(kLog);

const ScalarSequence kOnes = ScalarSequence::power_law(1.0, 0.0, 0.0);
const ScalarSequence kCube = ScalarSequence::power_law(1.0, 3.0, 0.0);
const ScalarSequence kGeoHalf = ScalarSequence::geometric(0.5);
const ScalarSequence kGeo2 = ScalarSequence::geometric(2.0);

}  // namespace

// ---------------------------------------------------------------------------
// decide_series: exact convergence classification of sum exp(-s*a_n)*(n+1)^d.
// ---------------------------------------------------------------------------

TEST_CASE("series oracle settles power-of-log families as p-series") {
  // With a_n = log(n+1) the terms are (n+1)^{d-s}; convergence iff d - s < -1.
  CHECK(decide_series({2.0, 0.0, kLog}).status == Status::holds);
  CHECK(decide_series({2.0, 0.0, kLog}).rule == "p-series");
  CHECK(decide_series({1.0, 0.0, kLog}).status == Status::fails);  // harmonic
  CHECK(decide_series({0.0, -1.5, kLog}).status == Status::holds);
  CHECK(decide_series({0.0, -1.0, kLog}).status == Status::fails);
  CHECK(decide_series({0.5, -0.3, kLog}).status == Status::fails);  // (n+1)^{-0.8}
}

TEST_CASE("series oracle flags exactly-constant term families") {
  // Both forms reduce to t_n = 1 for every n.
  ExactVerdict flat = decide_series({0.0, 0.0, kLog});
  CHECK(flat.status == Status::fails);
  CHECK(flat.rule == "constant-terms");
  ExactVerdict cancel = decide_series({1.0, 1.0, kLog});
  CHECK(cancel.status == Status::fails);
  CHECK(cancel.rule == "constant-terms");
}

TEST_CASE("series oracle uses exponential and super-log comparisons") {
  ExactVerdict e = decide_series({1.0, 5.0, kLin2});
  CHECK(e.status == Status::holds);
  CHECK(e.rule == "exponential-comparison");
  ExactVerdict sq = decide_series({1.0, 3.0, kLogSq});
  CHECK(sq.status == Status::holds);
  CHECK(sq.rule == "super-log-comparison");
}

TEST_CASE("series oracle rejects sub-log exponent scales") {
  // exp(-sqrt(log(n+1))) decays slower than every power: diverges.
  ExactVerdict v = decide_series({1.0, 0.0, kSqrtLog});
  CHECK(v.status == Status::fails);
  CHECK(v.rule == "sub-log-row");
  // A genuine power factor restores convergence and the p-series rule.
  ExactVerdict w = decide_series({1.0, -2.0, kSqrtLog});
  CHECK(w.status == Status::holds);
  CHECK(w.rule == "p-series");
}

TEST_CASE("series oracle rejects forms outside the grammar") {
  CHECK_THROWS_AS(decide_series({-1.0, 0.0, kLog}), UnsupportedForm);
  ExponentSequence table = ExponentSequence::table({0.5, 1.0, 2.0});
  CHECK_THROWS_AS(decide_series({1.0, 0.0, table}), UnsupportedForm);
}

TEST_CASE("series oracle never contradicts the certifying scanner") {
  struct Form {
    double s, d;
    const ExponentSequence* alpha;
  };
  std::vector<Form> forms = {
      {2.0, 0.0, &kLog},    {1.0, 0.0, &kLog},     {0.0, -1.5, &kLog},
      {0.0, -1.2, &kLog},   {0.0, 0.5, &kLog},     {1.0, 5.0, &kLin2},
      {1.0, 0.0, &kLin1},   {0.5, 2.0, &kLin1},    {1.0, 3.0, &kLogSq},
      {1.0, 0.0, &kNsq},    {1.0, 0.0, &kSqrtLog}, {0.0, 1.0, &kLog},
      {1.3, -2.0, &kLin1},  {0.0, -3.0, &kLog},    {2.5, 4.0, &kNsq},
  };
  Budget budget;
  budget.N = 4000;
  for (const Form& f : forms) {
    ExactVerdict sym = decide_series({f.s, f.d, *f.alpha});
    const double s = f.s, d = f.d;
    const ExponentSequence alpha = *f.alpha;
    TermFn term = [s, d, alpha](long n) {
      double lg = -s * alpha.at(n) + d * std::log(static_cast<double>(n) + 1.0);
      return LogValue::from_log(1, lg);
    };
    SeriesScan scan = certify_series(term, budget);
    INFO("s=" << f.s << " d=" << f.d);
    if (sym.status == Status::holds) CHECK_FALSE(scan.cert.divergent);
    if (sym.status == Status::fails) CHECK_FALSE(scan.cert.certified());
  }
}

// ---------------------------------------------------------------------------
// sym_nuclear
// ---------------------------------------------------------------------------

TEST_CASE("nuclearity oracle on log-scale infinite matrices") {
  ExactVerdict v = sym_nuclear(kInLog);
  REQUIRE(v.status == Status::holds);
  CHECK(v.rule == "p-series");
  CHECK(v.witness == "m = k+2");
  CHECK(v.selector(3) == 5);
  CHECK(v.selector(1) == 3);
}

TEST_CASE("nuclearity oracle offset respects the log coefficient") {
  // a_n = 3*log(n+1): ratio (n+1)^{-3(m-k)} already summable at m = k+1.
  KoetheMatrix fat = KoetheMatrix::infinite_type(ExponentSequence::power_log(3.0, 0.0, 1.0));
  ExactVerdict v = sym_nuclear(fat);
  REQUIRE(v.status == Status::holds);
  CHECK(v.witness == "m = k+1");
  CHECK(v.selector(4) == 5);
}

TEST_CASE("nuclearity oracle on super-log scales") {
  ExactVerdict lin = sym_nuclear(kInLin);
  REQUIRE(lin.status == Status::holds);
  CHECK(lin.rule == "exponential-comparison");
  CHECK(lin.witness == "m = k+1");
  ExactVerdict sq = sym_nuclear(KoetheMatrix::infinite_type(kLogSq));
  REQUIRE(sq.status == Status::holds);
  CHECK(sq.rule == "super-log-comparison");
  ExactVerdict fin = sym_nuclear(kFinLin);
  REQUIRE(fin.status == Status::holds);
  CHECK(fin.rule == "exponential-comparison");
  CHECK(fin.witness == "m = 2k");
  CHECK(fin.selector(4) == 8);
  ExactVerdict finsq = sym_nuclear(KoetheMatrix::finite_type(kNsq));
  CHECK(finsq.status == Status::holds);
}

TEST_CASE("nuclearity oracle fails finite-type log matrices") {
  ExactVerdict v = sym_nuclear(kFinLog);
  REQUIRE(v.status == Status::fails);
  CHECK(v.rule == "p-series");
  CHECK(v.witness == "no partner for k = 1");
}

TEST_CASE("nuclearity oracle fails sub-log rows") {
  ExactVerdict v = sym_nuclear(KoetheMatrix::infinite_type(kSqrtLog));
  REQUIRE(v.status == Status::fails);
  CHECK(v.rule == "sub-log-row");
}

// ---------------------------------------------------------------------------
// sym_g1 / sym_ginf
// ---------------------------------------------------------------------------

TEST_CASE("decreasing-row oracle accepts raw finite-type matrices") {
  ExactVerdict v = sym_g1(kFinLin);
  REQUIRE(v.status == Status::holds);
  CHECK(v.rule == "half-exponent-identity");
  CHECK(v.witness == "j = 2k (C = 1)");
  CHECK(v.selector(3) == 6);
}

TEST_CASE("decreasing-row oracle rejects entries not below one") {
  CHECK(sym_g1(kInLog).status == Status::fails);
  CHECK(sym_g1(kInLog).rule == "entries-below-one");
  CHECK(sym_g1(kFinLin.normalized_copy()).status == Status::fails);
}

TEST_CASE("increasing-row oracle needs normalization") {
  ExactVerdict raw = sym_ginf(kInLog);
  REQUIRE(raw.status == Status::fails);
  CHECK(raw.rule == "first-row-one");
  ExactVerdict ok = sym_ginf(kInLog.normalized_copy());
  REQUIRE(ok.status == Status::holds);
  CHECK(ok.rule == "exponent-doubling");
  CHECK(ok.witness == "j = 2k-1 (C = 1)");
  CHECK(ok.selector(2) == 3);
  CHECK(ok.selector(1) == 1);
}

TEST_CASE("increasing-row oracle rejects bounded exponent scales") {
  ExactVerdict v = sym_ginf(kFinLin.normalized_copy());
  REQUIRE(v.status == Status::fails);
  CHECK(v.rule == "exponent-cap");
}

// ---------------------------------------------------------------------------
// sym_inclusion
// ---------------------------------------------------------------------------

TEST_CASE("inclusion oracle: decaying target on a faster scale") {
  ExactVerdict v = sym_inclusion(kInLog, kFinLin);
  REQUIRE(v.status == Status::holds);
  CHECK(v.rule == "faster-decay");
  CHECK(v.witness == "m = 1");
  CHECK(v.selector(7) == 1);
}

TEST_CASE("inclusion oracle: growing target on a faster scale fails") {
  ExactVerdict v = sym_inclusion(kInLog, kInLin);
  REQUIRE(v.status == Status::fails);
  CHECK(v.rule == "growth-mismatch");
  CHECK(v.witness == "target weights grow on a faster scale than the source");
}

TEST_CASE("inclusion oracle: dominating source weights") {
  ExactVerdict raw = sym_inclusion(kInLin, kInLog);
  REQUIRE(raw.status == Status::holds);
  CHECK(raw.rule == "weights-dominate");
  CHECK(raw.witness == "m = 1");
  ExactVerdict norm = sym_inclusion(kInLin.normalized_copy(), kInLog);
  REQUIRE(norm.status == Status::holds);
  CHECK(norm.witness == "m = 2");
  // Normalized finite-type rows grow like exp(n(1-1/m)): they dominate too.
  ExactVerdict finNorm = sym_inclusion(kFinLin.normalized_copy(), kFinLog);
  REQUIRE(finNorm.status == Status::holds);
  CHECK(finNorm.witness == "m = 2");
}

TEST_CASE("inclusion oracle: raw finite-type source cannot cover growth") {
  ExactVerdict v = sym_inclusion(kFinLin, kInLog);
  REQUIRE(v.status == Status::fails);
  CHECK(v.rule == "insufficient-weights");
  CHECK(v.witness == "source weights decay on a faster scale than the target");
}

TEST_CASE("inclusion oracle: same scale with closed-form partner") {
  ExactVerdict same = sym_inclusion(kInLog, kInLog);
  REQUIRE(same.status == Status::holds);
  CHECK(same.rule == "scale-comparison");
  CHECK(same.witness == "m = k");
  CHECK(same.selector(5) == 5);

  KoetheMatrix inLin2 = KoetheMatrix::infinite_type(kLin2);
  ExactVerdict up = sym_inclusion(kInLin, inLin2);
  REQUIRE(up.status == Status::holds);
  CHECK(up.witness == "m = ceil(2*k)");
  CHECK(up.selector(3) == 6);
  ExactVerdict down = sym_inclusion(inLin2, kInLin);
  REQUIRE(down.status == Status::holds);
  CHECK(down.witness == "m = ceil(0.5*k)");
  CHECK(down.selector(3) == 2);
}

TEST_CASE("inclusion oracle: same scale finite-type row search") {
  KoetheMatrix finLin2 = KoetheMatrix::finite_type(kLin2);
  ExactVerdict v = sym_inclusion(finLin2, kFinLin);
  REQUIRE(v.status == Status::holds);
  CHECK(v.rule == "scale-comparison");
  CHECK(v.witness == "m = ceil(k/0.5)");
  CHECK(v.selector(4) == 8);
  ExactVerdict id = sym_inclusion(kFinLin, kFinLin);
  REQUIRE(id.status == Status::holds);
  CHECK(id.witness == "m = k");
  CHECK(id.selector(3) == 3);
}

TEST_CASE("inclusion oracle: same scale with unreachable targets fails") {
  // Target rows exp(n(1-1/k)) grow; source rows exp(-4n/m) only decay.
  KoetheMatrix finLin4 = KoetheMatrix::finite_type(ExponentSequence::linear(4.0));
  ExactVerdict v = sym_inclusion(finLin4, kFinLin.normalized_copy());
  REQUIRE(v.status == Status::fails);
  CHECK(v.rule == "scale-comparison");
  CHECK(v.witness == "no partner row for k = 1");
  // Unbounded target exponents against a bounded source on the same scale.
  ExactVerdict w = sym_inclusion(kFinLin, kInLin);
  REQUIRE(w.status == Status::fails);
  CHECK(w.rule == "scale-comparison");
}

// ---------------------------------------------------------------------------
// sym_membership
// ---------------------------------------------------------------------------

TEST_CASE("membership oracle: finite support always belongs") {
  ScalarSequence x = ScalarSequence::finite_table_doubles({1.0, 2.0});
  ExactVerdict v = sym_membership(x, kInLog);
  REQUIRE(v.status == Status::holds);
  CHECK(v.rule == "finite-support");
  CHECK(v.witness == "finitely many nonzero entries");
}

TEST_CASE("membership oracle: geometric decay inside finite-type spaces") {
  ExactVerdict v = sym_membership(kGeoHalf, kFinLin);
  REQUIRE(v.status == Status::holds);
  CHECK(v.rule == "exponential-comparison");
}

TEST_CASE("membership oracle: boundary cases use the unattained supremum") {
  // sum (n+1)^d exp(-n/k) converges for every k even at d = 0 or d = 3.
  CHECK(sym_membership(kOnes, kFinLin).status == Status::holds);
  CHECK(sym_membership(kCube, kFinLin).status == Status::holds);
}

TEST_CASE("membership oracle: growth against growing weights fails with witness") {
  ExactVerdict v = sym_membership(kOnes, kInLog);
  REQUIRE(v.status == Status::fails);
  CHECK(v.rule == "p-series");
  CHECK(v.witness == "seminorm diverges at k = 1");
  ExactVerdict g = sym_membership(kGeo2, kFinLin);
  REQUIRE(g.status == Status::fails);
  CHECK(g.rule == "exponential-comparison");
  CHECK(g.witness == "seminorm diverges at k = 2");
}

TEST_CASE("membership oracle: super-fast decay beats every log row") {
  ScalarSequence fast = ScalarSequence::exp_of_exponent(-1.0, kNsq);
  ExactVerdict v = sym_membership(fast, kInLog);
  REQUIRE(v.status == Status::holds);
  CHECK(v.rule == "p-series");
}

TEST_CASE("membership oracle: sub-log scales") {
  KoetheMatrix finSub = KoetheMatrix::finite_type(kSqrtLog);
  CHECK(sym_membership(kGeoHalf, finSub).status == Status::holds);
  CHECK(sym_membership(kGeoHalf, finSub).rule == "sub-log-row");
  KoetheMatrix inSub = KoetheMatrix::infinite_type(kSqrtLog);
  ExactVerdict v = sym_membership(kOnes, inSub);
  REQUIRE(v.status == Status::fails);
  CHECK(v.rule == "sub-log-row");
  CHECK(v.witness == "seminorm diverges at k = 1");
}

// ---------------------------------------------------------------------------
// sym_dual_membership
// ---------------------------------------------------------------------------

TEST_CASE("dual oracle: bounded sequences sit under the first row") {
  ExactVerdict v = sym_dual_membership(kOnes, kInLog);
  REQUIRE(v.status == Status::holds);
  CHECK(v.rule == "growth-domination");
  CHECK(v.witness == "k = 1");
  CHECK(v.selector(9) == 1);
}

TEST_CASE("dual oracle: polynomial growth picks the matching row") {
  ExactVerdict raw = sym_dual_membership(kCube, kInLog);
  REQUIRE(raw.status == Status::holds);
  CHECK(raw.witness == "k = 3");
  // Normalized rows (n+1)^{k-1} shift the witness up by one.
  ExactVerdict norm = sym_dual_membership(kCube, kInLog.normalized_copy());
  REQUIRE(norm.status == Status::holds);
  CHECK(norm.witness == "k = 4");
  CHECK(norm.selector(1) == 4);
}

TEST_CASE("dual oracle: geometric sequences against finite-type rows") {
  ExactVerdict half = sym_dual_membership(kGeoHalf, kFinLin);
  REQUIRE(half.status == Status::holds);
  CHECK(half.witness == "k = 2");
  ExactVerdict ones = sym_dual_membership(kOnes, kFinLin);
  REQUIRE(ones.status == Status::fails);
  CHECK(ones.rule == "growth-domination");
  CHECK(ones.witness == "sequence growth outpaces every weight row");
}

TEST_CASE("dual oracle: super-polynomial growth is hopeless") {
  ScalarSequence fast = ScalarSequence::exp_of_exponent(1.0, kNsq);
  ExactVerdict v = sym_dual_membership(fast, kInLog.normalized_copy());
  REQUIRE(v.status == Status::fails);
  CHECK(v.witness == "sequence growth outpaces every weight row");
}

TEST_CASE("dual oracle: witnesses beyond the search cap are refused") {
  ScalarSequence huge = ScalarSequence::power_law(1.0, 5000.0, 0.0);
  CHECK_THROWS_AS(sym_dual_membership(huge, kInLog), UnsupportedForm);
}

TEST_CASE("dual oracle: finite support passes outright") {
  ScalarSequence x = ScalarSequence::geometric(0.0);
  CHECK(sym_dual_membership(x, kInLog).rule == "finite-support");
}

// ---------------------------------------------------------------------------
// sym_theorem
// ---------------------------------------------------------------------------

TEST_CASE("conjunction oracle passes when both criteria pass") {
  ExactVerdict v = sym_theorem(kOnes, kInLog, kFinLin, false);
  REQUIRE(v.status == Status::holds);
  CHECK(v.rule == "criteria-conjunction");
  CHECK(v.witness == "m = 1");
}

TEST_CASE("conjunction oracle reports the failing membership criterion") {
  ExactVerdict v = sym_theorem(kGeo2, kInLog, kFinLin, false);
  REQUIRE(v.status == Status::fails);
  CHECK(v.rule == "exponential-comparison");
  CHECK(v.witness == "membership fails (seminorm diverges at k = 2)");
}

TEST_CASE("conjunction oracle reports the failing inclusion criterion") {
  ExactVerdict v = sym_theorem(kOnes, kInLog, kInLin, true);
  REQUIRE(v.status == Status::fails);
  CHECK(v.rule == "growth-mismatch");
  CHECK(v.witness ==
        "inclusion fails (target weights grow on a faster scale than the source)");
}

TEST_CASE("conjunction oracle joins both witnesses in transpose form") {
  ExactVerdict v = sym_theorem(kOnes, kInLog, kFinLin, true);
  REQUIRE(v.status == Status::holds);
  CHECK(v.witness == "k = 1; m = 1");
}
