#pragma once
// Exact symbolic decision procedure on the power-series grammar.
//
// Every series and boundedness question raised by the structural checks on
// grammar instances (InfiniteType/FiniteType matrices over Linear, Log or
// PowerLog exponents, scalar sequences that are finitely supported, geometric
// or of power-law type) reduces to a term of the form
//
//     t_n = exp( sum_i c_i * n^{p_i} * log(n+1)^{q_i}  +  ll * loglog(n+1) )
//
// with finitely many exponent monomials. Convergence of sum t_n and
// boundedness of t_n are decided exactly from the leading monomial, with the
// classical boundary refinements (p-series at exponent -1, log-power and
// sub-logarithmic rows). Each rule cites its reduction:
//   * leading monomial above log(n+1): geometric / super-polynomial
//     comparison — sign of the coefficient decides.
//   * leading monomial equal to log(n+1) with coefficient D: p-series,
//     converges iff D < -1; at D = -1 the largest sub-log monomial (or the
//     loglog coefficient, Bertrand series) decides.
//   * leading monomial below log(n+1): terms decay slower than any power,
//     the series diverges.
// Mixed log(n) / log(n+1) factors differ by a bounded ratio and never affect
// these verdicts, so both are mapped to the same monomial.
//
// Decisions are two-valued; anything outside the grammar (expression-defined
// sequences, tabulated matrices) throws UnsupportedForm and callers fall back
// to the numeric scans.

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "koethe/matrix.hpp"
#include "koethe/sequence.hpp"
#include "koethe/verdict.hpp"

namespace koethe {

struct UnsupportedForm : std::runtime_error {
  explicit UnsupportedForm(const std::string& what) : std::runtime_error(what) {}
};

/// Two-valued exact verdict. Holds carries a constructive partner selector
/// whenever the decided statement quantifies over a partner index.
struct ExactVerdict {
  Status status = Status::holds;  // holds or fails, never inconclusive
  std::string rule;               // decision-table row that fired
  std::string witness;            // human-readable selector, e.g. "m = k+2"
  std::function<int(int)> selector;  // partner as a function of k, if any

  static ExactVerdict pass(std::string rule_id, std::string witness_text = "",
                           std::function<int(int)> sel = nullptr) {
    ExactVerdict v;
    v.status = Status::holds;
    v.rule = std::move(rule_id);
    v.witness = std::move(witness_text);
    v.selector = std::move(sel);
    return v;
  }
  static ExactVerdict fail(std::string rule_id, std::string detail = "") {
    ExactVerdict v;
    v.status = Status::fails;
    v.rule = std::move(rule_id);
    v.witness = std::move(detail);
    return v;
  }
};

namespace symbolic_detail {

struct MonoKey {
  double p = 0;  // power of n
  double q = 0;  // power of log(n+1)
  friend bool operator==(const MonoKey& a, const MonoKey& b) {
    return a.p == b.p && a.q == b.q;
  }
};

// Lexicographic by growth rate, fastest first.
struct MonoGreater {
  bool operator()(const MonoKey& a, const MonoKey& b) const {
    if (a.p != b.p) return a.p > b.p;
    return a.q > b.q;
  }
};

inline bool grows_faster(const MonoKey& a, const MonoKey& b) {
  return MonoGreater{}(a, b);
}

constexpr MonoKey kLogKey{0.0, 1.0};

// Exponent of a grammar term: sum of monomials plus a loglog slot. Constant
// offsets are tracked but never influence a decision.
struct Exponent {
  std::map<MonoKey, double, MonoGreater> mono;
  double loglog = 0;
  double constant = 0;

  void add(MonoKey key, double coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = mono.try_emplace(key, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) mono.erase(it);
    }
  }
  std::optional<std::pair<MonoKey, double>> leading() const {
    if (mono.empty()) return std::nullopt;
    return *mono.begin();
  }
  double coeff_at(const MonoKey& key) const {
    auto it = mono.find(key);
    return it == mono.end() ? 0.0 : it->second;
  }
  Exponent without(const MonoKey& key) const {
    Exponent e = *this;
    e.mono.erase(key);
    return e;
  }
  Exponent plus(const Exponent& other) const {
    Exponent e = *this;
    for (auto& [k, c] : other.mono) e.add(k, c);
    e.loglog += other.loglog;
    e.constant += other.constant;
    return e;
  }
  Exponent scaled(double f) const {
    Exponent e;
    for (auto& [k, c] : mono)
      if (f * c != 0) e.mono.emplace(k, f * c);
    e.loglog = f * loglog;
    e.constant = f * constant;
    return e;
  }
};

// --- plain decisions -------------------------------------------------------

inline bool exponent_series_converges(const Exponent& E) {
  auto lead = E.leading();
  if (!lead) return false;  // constant or pure loglog factor: terms are n^{o(1)}
  auto [key, c] = *lead;
  if (grows_faster(key, kLogKey)) return c < 0;  // super-polynomial comparison
  if (key == kLogKey) {
    if (c < -1) return true;   // p-series
    if (c > -1) return false;  // p-series
    Exponent rest = E.without(kLogKey);
    if (auto sub = rest.leading()) return sub->second < 0;  // sub-log factor decides
    return E.loglog < -1;  // Bertrand series: sum 1/(n log^r n)
  }
  return false;  // sub-logarithmic decay/growth: terms beat no power of n
}

inline bool exponent_bounded(const Exponent& E) {
  auto lead = E.leading();
  if (!lead) return E.loglog <= 0;
  return lead->second < 0;
}

// Threshold analysis in a single monomial coefficient. Both decisions are
// monotone in the coefficient u placed at `key` (larger u gives termwise
// larger values), so the set of converging (resp. bounded) u is a down-set;
// these return its supremum. Values strictly below the threshold always
// satisfy the property; values strictly above never do.
constexpr double kInf = std::numeric_limits<double>::infinity();

inline double series_coeff_threshold(const Exponent& R_in, const MonoKey& key) {
  Exponent R = R_in.without(key);
  auto lead = R.leading();
  if (lead && grows_faster(lead->first, key)) {
    auto [lk, lc] = *lead;
    if (grows_faster(lk, kLogKey)) return lc < 0 ? kInf : -kInf;
    if (lk == kLogKey) {
      if (lc < -1) return kInf;
      if (lc > -1) return -kInf;
      Exponent rest = R.without(kLogKey);
      auto sub = rest.leading();
      if (sub && grows_faster(sub->first, key)) return sub->second < 0 ? kInf : -kInf;
      return 0.0;  // the monomial at `key` is the deciding sub-log factor
    }
    return -kInf;  // sub-log leading term above `key`: diverges regardless
  }
  if (grows_faster(key, kLogKey)) return 0.0;
  if (key == kLogKey) return -1.0;
  return -kInf;  // sub-log key with nothing larger: never converges
}

inline double bounded_coeff_threshold(const Exponent& R_in, const MonoKey& key) {
  Exponent R = R_in.without(key);
  auto lead = R.leading();
  if (lead && grows_faster(lead->first, key)) return lead->second < 0 ? kInf : -kInf;
  return 0.0;
}

// --- grammar extraction ----------------------------------------------------

struct AlphaForm {
  MonoKey key;
  double c = 1;  // alpha_n = c * n^p * log(n+1)^q
};

inline AlphaForm alpha_form(const ExponentSequence& alpha) {
  switch (alpha.form()) {
    case ExponentSequence::Form::linear:
      return {MonoKey{1, 0}, alpha.c()};
    case ExponentSequence::Form::log:
      return {kLogKey, 1.0};
    case ExponentSequence::Form::power_log:
      return {MonoKey{alpha.p(), alpha.q()}, alpha.c()};
    case ExponentSequence::Form::table:
      throw UnsupportedForm("tabulated exponent sequence is outside the decision grammar");
  }
  throw UnsupportedForm("unrecognized exponent sequence");
}

// Weight-exponent factor: entry(n,k) = exp(g(k) * alpha_n). Captures class
// and first-row normalization.
struct WeightForm {
  AlphaForm alpha;
  bool finite_type = false;
  bool normalized = false;

  double g(int k) const {
    double base = finite_type ? -1.0 / k : static_cast<double>(k);
    return normalized ? base - (finite_type ? -1.0 : 1.0) : base;
  }
  // Supremum of g(k) over k >= 1; never attained except for unbounded forms.
  double g_sup() const {
    if (!finite_type) return kInf;
    return normalized ? 1.0 : 0.0;
  }
  bool g_unbounded() const { return !finite_type; }
};

inline WeightForm weight_form(const KoetheMatrix& A) {
  WeightForm w;
  switch (A.matrix_class()) {
    case KoetheMatrix::Class::infinite_type:
      w.finite_type = false;
      break;
    case KoetheMatrix::Class::finite_type:
      w.finite_type = true;
      break;
    default:
      throw UnsupportedForm("matrix class is outside the decision grammar");
  }
  w.alpha = alpha_form(A.alpha());
  w.normalized = A.normalized();
  return w;
}

// Exponent of |theta_n| for grammar scalar sequences; nullopt marks a finitely
// supported sequence (every statement below is then trivially satisfied).
inline std::optional<Exponent> theta_exponent(const ScalarSequence& theta) {
  using Form = ScalarSequence::Form;
  Exponent E;
  switch (theta.form()) {
    case Form::finite_table:
      return std::nullopt;
    case Form::geometric: {
      double r = std::abs(theta.r());
      if (r == 0) return std::nullopt;  // identically zero
      E.add(MonoKey{1, 0}, std::log(r));
      return E;
    }
    case Form::power_law: {
      if (theta.c() == 0) return std::nullopt;  // identically zero
      // c * n^p * log(n+1)^q: the log factor contributes to the loglog slot.
      E.add(kLogKey, theta.p());
      E.loglog += theta.q();
      E.constant += std::log(std::abs(theta.c()));
      return E;
    }
    case Form::exp_of_exponent: {
      AlphaForm a = alpha_form(theta.alpha());
      E.add(a.key, theta.scale() * a.c);
      return E;
    }
    case Form::expression:
      throw UnsupportedForm("expression-defined sequence is outside the decision grammar");
  }
  throw UnsupportedForm("unrecognized scalar sequence");
}

inline std::string fmt_int(double v) {
  std::ostringstream os;
  if (v == static_cast<long long>(v))
    os << static_cast<long long>(v);
  else
    os << v;
  return os.str();
}

} // namespace symbolic_detail

/// Term family t_n = exp(-s * alpha_n) * (n+1)^d with s >= 0.
struct SeriesForm {
  double s = 0;
  double d = 0;
  ExponentSequence alpha = ExponentSequence::log_form();
};

/// Decides convergence of sum_n t_n for a grammar series form.
inline ExactVerdict decide_series(const SeriesForm& f) {
  using namespace symbolic_detail;
  if (f.s < 0) throw UnsupportedForm("series form requires s >= 0");
  AlphaForm a = alpha_form(f.alpha);
  Exponent E;
  E.add(a.key, -f.s * a.c);
  E.add(kLogKey, f.d);
  bool conv = exponent_series_converges(E);
  // Name the comparison that decided.
  std::string rule;
  auto lead = E.leading();
  if (!lead)
    rule = "constant-terms";
  else if (grows_faster(lead->first, kLogKey))
    rule = lead->first.p > 0 ? "exponential-comparison" : "super-log-comparison";
  else if (lead->first == kLogKey)
    rule = "p-series";
  else
    rule = "sub-log-row";
  return conv ? ExactVerdict::pass(rule) : ExactVerdict::fail(rule);
}

/// Nuclearity of a grammar matrix: for each k a partner m with
/// sum_n entry(n,k)/entry(n,m) finite. Exact, with closed-form selectors.
inline ExactVerdict sym_nuclear(const KoetheMatrix& A) {
  using namespace symbolic_detail;
  WeightForm w = weight_form(A);
  const MonoKey key = w.alpha.key;
  const double c = w.alpha.c;
  // Ratio exponent is (g(k) - g(m)) * c at `key`; normalization cancels.
  if (key.p > 0 || (key.p == 0 && key.q > 1)) {
    // exp(-s * alpha) with alpha super-logarithmic converges for every s > 0.
    std::string rule = key.p > 0 ? "exponential-comparison" : "super-log-comparison";
    if (!w.finite_type)
      return ExactVerdict::pass(rule, "m = k+1", [](int k) { return k + 1; });
    return ExactVerdict::pass(rule, "m = 2k", [](int k) { return 2 * k; });
  }
  if (key == kLogKey) {
    // Ratio reduces to (n+1)^{-s*c}; p-series needs s*c > 1.
    if (!w.finite_type) {
      int off = static_cast<int>(std::floor(1.0 / c)) + 1;
      return ExactVerdict::pass("p-series", "m = k+" + std::to_string(off),
                                [off](int k) { return k + off; });
    }
    // s = 1/k - 1/m < 1/k, so s*c > 1 is impossible once k >= c.
    int bad_k = static_cast<int>(std::ceil(c));
    return ExactVerdict::fail("p-series",
                              "no partner for k = " + std::to_string(std::max(1, bad_k)));
  }
  return ExactVerdict::fail("sub-log-row", "ratio terms decay slower than every power");
}

/// Decreasing-row class on the grammar: entries in (0,1), rows nonincreasing,
/// and b_n^k = O((b_n^j)^2) for some j.
inline ExactVerdict sym_g1(const KoetheMatrix& B) {
  using namespace symbolic_detail;
  WeightForm w = weight_form(B);
  if (!w.finite_type || w.normalized)
    return ExactVerdict::fail("entries-below-one", "entries are not strictly below 1");
  // exp(-alpha/k) = (exp(-alpha/(2k)))^2 exactly, constant 1.
  return ExactVerdict::pass("half-exponent-identity", "j = 2k (C = 1)",
                            [](int k) { return 2 * k; });
}

/// Increasing-row class on the grammar: first row 1, rows nondecreasing,
/// and (a_n^k)^2 = O(a_n^j) for some j.
inline ExactVerdict sym_ginf(const KoetheMatrix& A) {
  using namespace symbolic_detail;
  WeightForm w = weight_form(A);
  if (!w.normalized)
    return ExactVerdict::fail("first-row-one", "first row is not identically 1");
  if (w.finite_type)
    return ExactVerdict::fail("exponent-cap",
                              "squared exponent 2(1-1/k) exceeds every 1-1/j at k = 2");
  // (exp((k-1)alpha))^2 = exp((2k-2)alpha) = entry(n, 2k-1) exactly.
  return ExactVerdict::pass("exponent-doubling", "j = 2k-1 (C = 1)",
                            [](int k) { return 2 * k - 1; });
}

/// lambda(A) subset of lambda(B) on the grammar, by exponent comparison.
inline ExactVerdict sym_inclusion(const KoetheMatrix& A, const KoetheMatrix& B) {
  using namespace symbolic_detail;
  WeightForm wa = weight_form(A);
  WeightForm wb = weight_form(B);
  // Need, for every k, an m with gB(k)*cB*keyB - gA(m)*cA*keyA bounded above.
  if (grows_faster(wb.alpha.key, wa.alpha.key)) {
    // B's exponent dominates: its sign must already be favorable.
    if (wb.finite_type && !wb.normalized)
      return ExactVerdict::pass("faster-decay", "m = 1", [](int) { return 1; });
    // gB(k) > 0 for some k, so the ratio grows beyond every weight row.
    return ExactVerdict::fail("growth-mismatch",
                              "target weights grow on a faster scale than the source");
  }
  if (grows_faster(wa.alpha.key, wb.alpha.key)) {
    // A's exponent dominates: need gA(m) > 0.
    if (!wa.finite_type) {
      int m0 = wa.normalized ? 2 : 1;
      return ExactVerdict::pass("weights-dominate", "m = " + std::to_string(m0),
                                [m0](int) { return m0; });
    }
    if (wa.normalized)
      return ExactVerdict::pass("weights-dominate", "m = 2", [](int) { return 2; });
    return ExactVerdict::fail("insufficient-weights",
                              "source weights decay on a faster scale than the target");
  }
  // Same growth scale: need gA(m) >= lambda * gB(k) with lambda = cB/cA.
  // gA increases in m toward sup_m gA(m) without attaining it (except for the
  // unbounded forms), so k admits a partner exactly when
  // lambda * gB(k) < sup_m gA(m), or always when gA is unbounded.
  const double lam = wb.alpha.c / wa.alpha.c;
  auto first_bad_k = [wa, wb, lam]() {
    int k = 1;
    while (k < (1 << 20) && lam * wb.g(k) < wa.g_sup()) ++k;
    return k;
  };
  if (wb.g_unbounded()) {
    if (!wa.g_unbounded())
      return ExactVerdict::fail("scale-comparison",
                                "no partner row for k = " + std::to_string(first_bad_k()));
    // Selector in closed form: m = ceil(lambda * gB(k)) adjusted for shift.
    bool an = wa.normalized, bn = wb.normalized;
    auto sel = [lam, an, bn](int k) {
      double gb = bn ? k - 1.0 : static_cast<double>(k);
      int m = static_cast<int>(std::ceil(lam * gb)) + (an ? 1 : 0);
      return std::max(1, m);
    };
    std::string text = (lam == 1.0 && !an && !bn)
                           ? "m = k"
                           : "m = ceil(" + fmt_int(lam) + "*k)" + (an ? "+1" : "");
    return ExactVerdict::pass("scale-comparison", text, sel);
  }
  if (!wa.g_unbounded() && lam * wb.g_sup() > wa.g_sup())
    return ExactVerdict::fail("scale-comparison",
                              "no partner row for k = " + std::to_string(first_bad_k()));
  // Every target lam*gB(k) stays strictly below sup gA; search the partner.
  auto sel = [wa, wb, lam](int k) {
    double target = lam * wb.g(k);
    int m = 1;
    while (m < (1 << 20) && wa.g(m) < target) ++m;
    return m;
  };
  std::string text;
  if (wa.finite_type && !wa.normalized && wb.finite_type && !wb.normalized)
    // -1/m >= -lam/k  <=>  m >= k/lam.
    text = lam == 1.0 ? "m = k" : "m = ceil(k/" + fmt_int(lam) + ")";
  else
    text = "m = m(k) by row search";
  return ExactVerdict::pass("scale-comparison", text, sel);
}

/// theta in lambda(B) on the grammar: sum |theta_n| * entry(n,k) finite for
/// every k. Decided through the coefficient threshold at B's exponent key.
inline ExactVerdict sym_membership(const ScalarSequence& theta, const KoetheMatrix& B) {
  using namespace symbolic_detail;
  WeightForm w = weight_form(B);
  std::optional<Exponent> Et = theta_exponent(theta);
  if (!Et) return ExactVerdict::pass("finite-support", "finitely many nonzero entries");
  const MonoKey key = w.alpha.key;
  const double t = Et->coeff_at(key);
  const double thr = series_coeff_threshold(*Et, key);
  bool holds;
  if (w.g_unbounded()) {
    // u(k) = t + g(k)*c grows without bound; only an infinite threshold survives.
    holds = thr == kInf;
  } else {
    // u(k) increases toward t + c*g_sup and never attains it.
    holds = t + w.alpha.c * w.g_sup() <= thr;
  }
  std::string rule = key == kLogKey ? "p-series" : (grows_faster(key, kLogKey) ? "exponential-comparison" : "sub-log-row");
  if (holds) return ExactVerdict::pass(rule);
  // Smallest k whose series diverges, for the report.
  for (int k = 1; k <= 4096; ++k) {
    Exponent E = *Et;
    E.add(key, w.g(k) * w.alpha.c);
    if (!exponent_series_converges(E))
      return ExactVerdict::fail(rule, "seminorm diverges at k = " + std::to_string(k));
  }
  return ExactVerdict::fail(rule, "seminorm diverges for large k");
}

/// theta in the dual of lambda(A) on the grammar: |theta_n| <= C * entry(n,k)
/// for some k.
inline ExactVerdict sym_dual_membership(const ScalarSequence& theta, const KoetheMatrix& A) {
  using namespace symbolic_detail;
  WeightForm w = weight_form(A);
  std::optional<Exponent> Et = theta_exponent(theta);
  if (!Et) return ExactVerdict::pass("finite-support", "finitely many nonzero entries");
  const MonoKey key = w.alpha.key;
  // Exponent of |theta_n| / entry(n,k): subtract g(k)*c at the key.
  for (int k = 1; k <= 4096; ++k) {
    Exponent E = *Et;
    E.add(key, -w.g(k) * w.alpha.c);
    if (exponent_bounded(E)) {
      std::string text = "k = " + std::to_string(k);
      return ExactVerdict::pass("growth-domination", text,
                                [k](int) { return k; });
    }
  }
  const double t = Et->coeff_at(key);
  const double thr = bounded_coeff_threshold(*Et, key);
  // u(k) = t - g(k)*c decreases; if even its infimum stays at or above the
  // boundedness threshold, no k can work.
  bool hopeless = (thr == -kInf) || (!w.g_unbounded() && t - w.alpha.c * w.g_sup() >= thr);
  if (hopeless)
    return ExactVerdict::fail("growth-domination",
                              "sequence growth outpaces every weight row");
  throw UnsupportedForm("dual witness exceeds the symbolic search cap");
}

/// Conjunction oracle for the continuity criteria: membership (forward form)
/// or dual membership (transpose form) together with inclusion.
inline ExactVerdict sym_theorem(const ScalarSequence& theta, const KoetheMatrix& A,
                                const KoetheMatrix& B, bool transpose_form) {
  KoetheMatrix lhs = transpose_form && !A.normalized() ? A.normalized_copy() : A;
  ExactVerdict cond1 = transpose_form ? sym_dual_membership(theta, lhs)
                                      : sym_membership(theta, B);
  if (cond1.status == Status::fails) {
    std::string detail = transpose_form ? "dual membership fails" : "membership fails";
    if (!cond1.witness.empty()) detail += " (" + cond1.witness + ")";
    return ExactVerdict::fail(cond1.rule, detail);
  }
  ExactVerdict cond2 = sym_inclusion(lhs, B);
  if (cond2.status == Status::fails) {
    std::string detail = "inclusion fails";
    if (!cond2.witness.empty()) detail += " (" + cond2.witness + ")";
    return ExactVerdict::fail(cond2.rule, detail);
  }
  std::string witness = cond1.witness.empty() ? cond2.witness
                        : cond2.witness.empty() ? cond1.witness
                                                : cond1.witness + "; " + cond2.witness;
  return ExactVerdict::pass("criteria-conjunction", witness);
}

} // namespace koethe
