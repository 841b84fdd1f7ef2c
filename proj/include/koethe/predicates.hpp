#pragma once
// Structural checks on Koethe matrices: axioms, nuclearity, the two
// power-series regularity classes, inclusion between spaces, and membership
// of a sequence in a space or its dual. All checks are three-valued and
// evidence-carrying; see verdict.hpp for the witness contracts.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "koethe/certify.hpp"
#include "koethe/matrix.hpp"
#include "koethe/parallel.hpp"
#include "koethe/sequence.hpp"
#include "koethe/verdict.hpp"

namespace koethe {

namespace detail {

inline std::string idx(long n, int k) {
  return "(n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")";
}

inline DivergenceTrace pair_trace(int k, int partner, long n, LogValue lo, LogValue hi) {
  DivergenceTrace t;
  t.k = k;
  t.partner = partner;
  t.indices = {n, n + 1};
  t.values = {lo, hi};
  return t;
}

struct PartnerSearch {
  Status status = Status::inconclusive;
  int partner = -1;
  LogValue bound = LogValue::zero();
  long verified_up_to = 0;
  TailArgument tail = TailArgument::none();
  std::optional<DivergenceTrace> trace;  // set when status == fails
};

// Exists-partner search over certified series: Holds at the smallest partner
// whose series certifies finite; Fails only when every candidate diverges
// with an attested trace.
inline PartnerSearch search_series_partner(int k, int lo, int hi,
                                           const std::function<TermFn(int)>& make_term,
                                           const Budget& budget) {
  PartnerSearch out;
  bool all_divergent = true;
  std::optional<DivergenceTrace> last_trace;
  for (int m = lo; m <= hi; ++m) {
    SeriesScan scan = certify_series(make_term(m), budget);
    if (scan.cert.certified()) {
      out.status = Status::holds;
      out.partner = m;
      out.bound = scan.cert.upper();
      out.verified_up_to = scan.cert.verified_up_to;
      out.tail = scan.cert.tail;
      return out;
    }
    if (scan.cert.divergent) {
      DivergenceTrace t;
      t.k = k;
      t.partner = m;
      t.indices = scan.trace_indices;
      t.values = scan.trace_values;
      last_trace = std::move(t);
    } else {
      all_divergent = false;
    }
  }
  if (all_divergent && last_trace) {
    out.status = Status::fails;
    out.trace = std::move(last_trace);
  }
  return out;
}

// Exists-partner search over boundedness checks.
inline PartnerSearch search_bounded_partner(int k, int lo, int hi,
                                            const std::function<TermFn(int)>& make_term,
                                            const Budget& budget) {
  PartnerSearch out;
  bool all_unbounded = true;
  std::optional<DivergenceTrace> last_trace;
  for (int m = lo; m <= hi; ++m) {
    BoundedScan scan = check_bounded(make_term(m), budget);
    if (scan.status == BoundedStatus::bounded) {
      out.status = Status::holds;
      out.partner = m;
      out.bound = scan.sup;
      out.verified_up_to = scan.verified_up_to;
      return out;
    }
    if (scan.status == BoundedStatus::unbounded) {
      DivergenceTrace t;
      t.k = k;
      t.partner = m;
      t.indices = scan.trace_indices;
      t.values = scan.trace_values;
      last_trace = std::move(t);
    } else {
      all_unbounded = false;
    }
  }
  if (all_unbounded && last_trace) {
    out.status = Status::fails;
    out.trace = std::move(last_trace);
  }
  return out;
}

// Forall-k aggregation with per-weight bookkeeping.
inline Verdict aggregate_per_weight(std::vector<PartnerSearch> results, const Budget& budget) {
  Verdict v = Verdict::make(Status::holds, budget);
  bool any_fails = false, any_unknown = false;
  for (size_t i = 0; i < results.size(); ++i) {
    PartnerSearch& r = results[i];
    int k = static_cast<int>(i) + 1;
    PerWeight pw;
    pw.k = k;
    pw.status = r.status;
    pw.partner = r.partner;
    pw.verified_up_to = r.verified_up_to;
    if (r.status == Status::holds) {
      pw.bound = r.bound;
      WitnessBound w;
      w.k = k;
      w.partner = r.partner;
      w.bound = r.bound;
      w.verified_up_to = r.verified_up_to;
      w.tail = r.tail;
      v.witnesses.emplace_back(w);
    } else if (r.status == Status::fails) {
      any_fails = true;
      if (r.trace) v.witnesses.emplace_back(*r.trace);
    } else {
      any_unknown = true;
    }
    v.per_weight.push_back(pw);
  }
  if (any_fails)
    v.status = Status::fails;
  else if (any_unknown)
    v.status = Status::inconclusive;
  return v;
}

} // namespace detail

/// Positivity and monotonicity in k over the scanned prefix. A failure is a
/// concrete counterexample index pair. with_g_extras additionally reports the
/// pointwise G-set preconditions as notes.
inline Verdict check_koethe_axioms(const KoetheMatrix& A, long N, int K,
                                   bool with_g_extras = false) {
  Budget used;
  used.N = A.max_rows(N);
  used.k_max = A.max_cols(K);
  Verdict v = Verdict::make(Status::holds, used);
  for (long n = 1; n <= used.N; ++n) {
    for (int k = 1; k <= used.k_max; ++k) {
      LogValue e = A.entry(n, k);
      if (e.sign <= 0) {
        v.status = Status::fails;
        v.notes.push_back("entry is not strictly positive at " + detail::idx(n, k));
        return v;
      }
      if (k < used.k_max) {
        LogValue next = A.entry(n, k + 1);
        if (next.sign <= 0) continue;  // caught on the next k iteration
        if (e.logmag > next.logmag + detail::flat_log_tol) {
          v.status = Status::fails;
          v.notes.push_back("weights decrease in k at " + detail::idx(n, k));
          v.witnesses.emplace_back(detail::pair_trace(k, k + 1, n, next, e));
          return v;
        }
      }
    }
  }
  if (with_g_extras) {
    bool first_row_one = true, rows_nondecreasing = true, below_one = true;
    for (long n = 1; n <= used.N; ++n) {
      if (std::abs(A.entry(n, 1).logmag) > 1e-12) first_row_one = false;
      for (int k = 1; k <= used.k_max; ++k) {
        if (A.entry(n, k).logmag >= 0.0) below_one = false;
        if (n < used.N &&
            A.entry(n + 1, k).logmag < A.entry(n, k).logmag - detail::flat_log_tol)
          rows_nondecreasing = false;
      }
    }
    v.notes.push_back(std::string("first row identically 1: ") + (first_row_one ? "yes" : "no"));
    v.notes.push_back(std::string("rows nondecreasing in n: ") + (rows_nondecreasing ? "yes" : "no"));
    v.notes.push_back(std::string("all entries below 1: ") + (below_one ? "yes" : "no"));
  }
  return v;
}

/// For every k, search m with sum_n a_n^k / a_n^m certified finite.
inline Verdict check_nuclear(const KoetheMatrix& A, const Budget& budget) {
  Budget b = budget;
  b.N = A.max_rows(budget.N);
  b.k_max = A.max_cols(budget.k_max);
  b.m_max = A.max_cols(budget.m_max);
  std::vector<detail::PartnerSearch> results(static_cast<size_t>(b.k_max));
  parallel_for_index(results.size(), [&](size_t i) {
    int k = static_cast<int>(i) + 1;
    auto make_term = [&A, k](int m) -> TermFn {
      return [&A, k, m](long n) { return A.entry(n, k) / A.entry(n, m); };
    };
    // m <= k gives termwise >= 1; start above.
    results[i] = detail::search_series_partner(k, k + 1, b.m_max, make_term, b);
  });
  Verdict v = detail::aggregate_per_weight(std::move(results), b);
  if (v.status == Status::holds) return v;
  for (auto& pw : v.per_weight)
    if (pw.status != Status::holds)
      v.notes.push_back("no certified summable ratio row for k=" + std::to_string(pw.k) +
                        " with m <= " + std::to_string(b.m_max));
  return v;
}

/// Decreasing-row class: entries in (0,1), rows nonincreasing in n, and for
/// every k some j with b_n^k = O((b_n^j)^2).
inline Verdict check_g1(const KoetheMatrix& B, const Budget& budget) {
  Budget b = budget;
  b.N = B.max_rows(budget.N);
  b.k_max = B.max_cols(budget.k_max);
  b.j_max = B.max_cols(budget.j_max);
  Verdict v = Verdict::make(Status::holds, b);
  for (long n = 1; n <= b.N; ++n) {
    for (int k = 1; k <= b.k_max; ++k) {
      LogValue e = B.entry(n, k);
      if (e.sign <= 0) {
        v.status = Status::fails;
        v.notes.push_back("entry not strictly positive at " + detail::idx(n, k));
        return v;
      }
      if (e.logmag >= 0.0) {
        v.status = Status::fails;
        v.notes.push_back("entry not below 1 at " + detail::idx(n, k));
        return v;
      }
      if (n < b.N) {
        LogValue next = B.entry(n + 1, k);
        if (next.sign > 0 && next.logmag > e.logmag + detail::flat_log_tol) {
          v.status = Status::fails;
          v.notes.push_back("rows increase in n at " + detail::idx(n, k));
          v.witnesses.emplace_back(detail::pair_trace(k, -1, n, e, next));
          return v;
        }
      }
    }
  }
  std::vector<detail::PartnerSearch> results(static_cast<size_t>(b.k_max));
  parallel_for_index(results.size(), [&](size_t i) {
    int k = static_cast<int>(i) + 1;
    auto make_term = [&B, k](int j) -> TermFn {
      return [&B, k, j](long n) {
        LogValue bj = B.entry(n, j);
        return B.entry(n, k) / (bj * bj);
      };
    };
    results[i] = detail::search_bounded_partner(k, 1, b.j_max, make_term, b);
  });
  return detail::aggregate_per_weight(std::move(results), b);
}

/// Increasing-row class: first row identically 1, rows nondecreasing in n,
/// and for every k some j with (a_n^k)^2 = O(a_n^j).
inline Verdict check_ginf(const KoetheMatrix& A, const Budget& budget) {
  Budget b = budget;
  b.N = A.max_rows(budget.N);
  b.k_max = A.max_cols(budget.k_max);
  b.j_max = A.max_cols(budget.j_max);
  Verdict v = Verdict::make(Status::holds, b);
  for (long n = 1; n <= b.N; ++n) {
    LogValue first = A.entry(n, 1);
    if (first.sign <= 0 || std::abs(first.logmag) > 1e-12) {
      v.status = Status::fails;
      v.notes.push_back("first row is not 1 at n=" + std::to_string(n) +
                        (A.normalized() ? "" : " (matrix not normalized)"));
      return v;
    }
    for (int k = 1; k <= b.k_max; ++k) {
      LogValue e = A.entry(n, k);
      if (e.sign <= 0) {
        v.status = Status::fails;
        v.notes.push_back("entry not strictly positive at " + detail::idx(n, k));
        return v;
      }
      if (n < b.N) {
        LogValue next = A.entry(n + 1, k);
        if (next.sign > 0 && next.logmag < e.logmag - detail::flat_log_tol) {
          v.status = Status::fails;
          v.notes.push_back("rows decrease in n at " + detail::idx(n, k));
          v.witnesses.emplace_back(detail::pair_trace(k, -1, n, next, e));
          return v;
        }
      }
    }
  }
  std::vector<detail::PartnerSearch> results(static_cast<size_t>(b.k_max));
  parallel_for_index(results.size(), [&](size_t i) {
    int k = static_cast<int>(i) + 1;
    auto make_term = [&A, k](int j) -> TermFn {
      return [&A, k, j](long n) {
        LogValue ak = A.entry(n, k);
        return (ak * ak) / A.entry(n, j);
      };
    };
    results[i] = detail::search_bounded_partner(k, 1, b.j_max, make_term, b);
  });
  return detail::aggregate_per_weight(std::move(results), b);
}

/// lambda(A) subset of lambda(B): for every k some m with
/// b_n^k <= C a_n^m for all n.
inline Verdict check_inclusion(const KoetheMatrix& A, const KoetheMatrix& B,
                               const Budget& budget) {
  Budget b = budget;
  b.N = std::min(A.max_rows(budget.N), B.max_rows(budget.N));
  b.k_max = B.max_cols(budget.k_max);
  b.m_max = A.max_cols(budget.m_max);
  std::vector<detail::PartnerSearch> results(static_cast<size_t>(b.k_max));
  parallel_for_index(results.size(), [&](size_t i) {
    int k = static_cast<int>(i) + 1;
    auto make_term = [&A, &B, k](int m) -> TermFn {
      return [&A, &B, k, m](long n) { return B.entry(n, k) / A.entry(n, m); };
    };
    results[i] = detail::search_bounded_partner(k, 1, b.m_max, make_term, b);
  });
  return detail::aggregate_per_weight(std::move(results), b);
}

/// theta in lambda(B): every weighted l1 seminorm certified finite.
inline Verdict check_membership(const ScalarSequence& theta, const KoetheMatrix& B,
                                const Budget& budget) {
  Budget b = budget;
  b.N = B.max_rows(budget.N);
  b.k_max = B.max_cols(budget.k_max);
  std::optional<long> support = theta.finite_support();
  if (support && *support > b.N) support = std::nullopt;
  std::vector<detail::PartnerSearch> results(static_cast<size_t>(b.k_max));
  parallel_for_index(results.size(), [&](size_t i) {
    int k = static_cast<int>(i) + 1;
    SeriesScan scan = certify_series(
        [&theta, &B, k](long n) { return theta.at(n).abs() * B.entry(n, k).abs(); }, b, support);
    detail::PartnerSearch r;
    if (scan.cert.certified()) {
      r.status = Status::holds;
      r.bound = scan.cert.upper();
      r.verified_up_to = scan.cert.verified_up_to;
      r.tail = scan.cert.tail;
    } else if (scan.cert.divergent) {
      r.status = Status::fails;
      DivergenceTrace t;
      t.k = k;
      t.indices = scan.trace_indices;
      t.values = scan.trace_values;
      r.trace = std::move(t);
    }
    results[i] = r;
  });
  // Membership fails as soon as one seminorm diverges.
  Verdict v = detail::aggregate_per_weight(std::move(results), b);
  return v;
}

/// theta in the dual of lambda(A): some k and C with |theta_n| <= C a_n^k.
inline Verdict check_dual_membership(const ScalarSequence& theta, const KoetheMatrix& A,
                                     const Budget& budget) {
  Budget b = budget;
  b.N = A.max_rows(budget.N);
  b.k_max = A.max_cols(budget.k_max);
  std::optional<long> support = theta.finite_support();
  if (support && *support > b.N) support = std::nullopt;
  Verdict v = Verdict::make(Status::inconclusive, b);
  bool all_unbounded = true;
  std::optional<DivergenceTrace> last_trace;
  for (int k = 1; k <= b.k_max; ++k) {
    BoundedScan scan = check_bounded(
        [&theta, &A, k](long n) { return theta.at(n).abs() / A.entry(n, k).abs(); }, b, support);
    PerWeight pw;
    pw.k = k;
    pw.verified_up_to = scan.verified_up_to;
    if (scan.status == BoundedStatus::bounded) {
      pw.status = Status::holds;
      pw.partner = -1;
      pw.bound = scan.sup;
      v.per_weight.push_back(pw);
      WitnessBound w;
      w.k = k;
      w.bound = scan.sup;
      w.verified_up_to = scan.verified_up_to;
      v.witnesses.emplace_back(w);
      v.status = Status::holds;
      return v;
    }
    if (scan.status == BoundedStatus::unbounded) {
      pw.status = Status::fails;
      DivergenceTrace t;
      t.k = k;
      t.indices = scan.trace_indices;
      t.values = scan.trace_values;
      last_trace = std::move(t);
    } else {
      all_unbounded = false;
    }
    v.per_weight.push_back(pw);
  }
  if (all_unbounded && last_trace) {
    v.status = Status::fails;
    v.witnesses.emplace_back(*last_trace);
    v.notes.push_back("growth outpaces every weight row k <= " + std::to_string(b.k_max));
  }
  return v;
}

} // namespace koethe
