#pragma once
// Three-valued verdicts with machine-checkable evidence. Every Holds carries
// bound witnesses, every numeric Fails carries a strictly increasing
// divergence trace; anything else is Inconclusive.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "koethe/log_value.hpp"

namespace koethe {

enum class Status { holds, fails, inconclusive };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::holds: return "Holds";
    case Status::fails: return "Fails";
    case Status::inconclusive: return "Inconclusive";
  }
  return "?";
}

/// Scan budgets. N bounds row scans, k_max the weight indices checked,
/// m_max / j_max the witness searches, window_frac the trailing window used
/// for ratio and stabilization analysis.
struct Budget {
  long N = 2000;
  int k_max = 8;
  int m_max = 32;
  int j_max = 32;
  double window_frac = 0.25;

  long window_start(long n) const {
    long w = static_cast<long>(static_cast<double>(n) * window_frac);
    if (w < 2) w = 2;
    long start = n - w + 1;
    return start < 2 ? 2 : start;
  }
};

/// Evidence that a scanned quantity keeps behaving beyond the scan.
///  - ratio_domination: consecutive-term ratio was <= ratio for every sampled
///    index in [start_index, end of scan]; tail bounds extrapolate from it.
///  - closed_form: a named rule (finite support, dyadic block majorant,
///    grammar row) justifies the tail.
struct TailArgument {
  enum class Kind { none, ratio_domination, closed_form };
  Kind kind = Kind::none;
  long start_index = 0;   // ratio_domination: first sampled index
  double ratio = 0.0;     // ratio_domination: max sampled consecutive ratio, < 1
  std::string rule;       // closed_form: rule identifier

  static TailArgument none() { return {}; }
  static TailArgument from_ratio(long start, double r) {
    TailArgument t;
    t.kind = Kind::ratio_domination;
    t.start_index = start;
    t.ratio = r;
    return t;
  }
  static TailArgument closed(std::string rule_id) {
    TailArgument t;
    t.kind = Kind::closed_form;
    t.rule = std::move(rule_id);
    return t;
  }
};

/// (k, partner, C) such that the defining inequality of the check holds for
/// all n <= verified_up_to; partner is the paired index (m or j), -1 if the
/// check has none.
struct WitnessBound {
  int k = 0;
  int partner = -1;
  LogValue bound = LogValue::zero();
  long verified_up_to = 0;
  TailArgument tail = TailArgument::none();
};

/// Sampled indices where the scanned values rose past every candidate bound;
/// values are strictly increasing across the recorded window.
struct DivergenceTrace {
  int k = 0;
  int partner = -1;
  std::vector<long> indices;
  std::vector<LogValue> values;
};

using Witness = std::variant<WitnessBound, DivergenceTrace>;

/// Outcome of one weight index inside a composite check.
struct PerWeight {
  int k = 0;
  Status status = Status::inconclusive;
  int partner = -1;
  std::optional<LogValue> bound;
  long verified_up_to = 0;
};

struct Verdict {
  Status status = Status::inconclusive;
  std::vector<Witness> witnesses;
  std::vector<PerWeight> per_weight;
  Budget budget_used;
  std::vector<std::string> notes;

  static Verdict make(Status s, Budget b) {
    Verdict v;
    v.status = s;
    v.budget_used = b;
    return v;
  }
};

/// Truncated nonnegative series or supremum with an explicit tail contract:
/// when tail.kind != none and divergent is false, the exact value lies in
/// [value, value + tail_bound].
struct CertifiedValue {
  LogValue value = LogValue::zero();
  LogValue tail_bound = LogValue::zero();
  TailArgument tail = TailArgument::none();
  bool divergent = false;
  long verified_up_to = 0;

  bool certified() const { return !divergent && tail.kind != TailArgument::Kind::none; }

  LogValue upper() const { return log_add(value, tail_bound); }
};

} // namespace koethe
