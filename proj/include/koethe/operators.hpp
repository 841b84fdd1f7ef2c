#pragma once
// The Cauchy-product operator T_theta, its transpose, continuity
// certificates in the basis-norm formulation, theorem-level cross
// verification against the structural criteria, and the normality transfer
// of certificates to dominated symbols.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koethe/certify.hpp"
#include "koethe/convolution.hpp"
#include "koethe/matrix.hpp"
#include "koethe/parallel.hpp"
#include "koethe/predicates.hpp"
#include "koethe/sequence.hpp"
#include "koethe/verdict.hpp"

namespace koethe {

enum class Direction { forward, transpose };

inline std::string to_string(Direction d) {
  return d == Direction::forward ? "forward" : "transpose";
}

/// One operator-continuity scenario: T_theta (or its transpose) from
/// lambda(A) to lambda(B).
struct SpaceInstance {
  KoetheMatrix A;
  KoetheMatrix B;
  ScalarSequence theta;
  Direction direction = Direction::forward;
};

enum class Agreement { consistent, contradiction, undetermined };

inline std::string to_string(Agreement a) {
  switch (a) {
    case Agreement::consistent: return "Consistent";
    case Agreement::contradiction: return "Contradiction";
    case Agreement::undetermined: return "Undetermined";
  }
  return "Undetermined";
}

/// Continuity certificate plus the structural criteria it is checked
/// against. `certificate` is the operator-side verdict; condition_i and
/// condition_ii are the sequence-space criteria; agreement compares the two
/// sides and Contradiction is the never-expected alarm state.
struct ContinuityReport {
  Verdict certificate;
  Verdict condition_i;
  Verdict condition_ii;
  std::vector<std::pair<std::string, Status>> preconditions;
  bool preconditions_ok = true;
  bool theta1_zero = false;
  Agreement agreement = Agreement::undetermined;
  std::vector<std::string> notes;

  Status criteria_status() const {
    if (condition_i.status == Status::fails || condition_ii.status == Status::fails)
      return Status::fails;
    if (condition_i.status == Status::holds && condition_ii.status == Status::holds)
      return Status::holds;
    return Status::inconclusive;
  }
};

inline Agreement agreement_of(Status lhs, Status rhs) {
  if (lhs == Status::inconclusive || rhs == Status::inconclusive)
    return Agreement::undetermined;
  return lhs == rhs ? Agreement::consistent : Agreement::contradiction;
}

/// T_theta x: the Cauchy product theta * x, first N entries.
inline Prefix apply_T(const ScalarSequence& theta, const ScalarSequence& x, long N) {
  return cauchy_product_prefix(theta, x, N);
}

/// Transpose image: entry i is sum_{j >= i} theta_{j+1-i} x_j. Exact for
/// finitely supported x; otherwise each entry must certify (the certified
/// tail is the decay witness) and the truncated sum is returned.
inline Prefix apply_T_transpose(const ScalarSequence& theta, const ScalarSequence& x, long N,
                                const Budget& budget = Budget{}) {
  if (N < 1) throw std::invalid_argument("apply_T_transpose: N must be >= 1");
  Prefix out;
  out.values.resize(static_cast<size_t>(N), LogValue::zero());
  std::optional<long> Lx = x.finite_support();
  for (long i = 1; i <= N; ++i) {
    std::vector<LogValue> terms;
    if (Lx) {
      for (long j = i; j <= *Lx; ++j) terms.push_back(theta.at(j + 1 - i) * x.at(j));
    } else {
      SeriesScan scan = certify_series(
          [&theta, &x, i](long t) { return theta.at(t).abs() * x.at(t + i - 1).abs(); }, budget);
      if (!scan.cert.certified())
        throw std::domain_error(
            "apply_T_transpose: entry " + std::to_string(i) +
            " is an infinite sum that does not certify; finite support or a decay witness is required");
      for (long t = 1; t <= budget.N; ++t) terms.push_back(theta.at(t) * x.at(t + i - 1));
    }
    out.values[static_cast<size_t>(i - 1)] = log_sum(std::move(terms));
  }
  return out;
}

namespace detail {

// sup_{j >= n} |theta_{j-n+1}| b_j^k as a certification scan. The scan index
// t = j - n + 1 runs from 1; the matrix row is clamped for tabulated grids.
inline SupScan image_norm_scan(const ScalarSequence& theta, const KoetheMatrix& B, int k,
                               long n, const Budget& budget) {
  long last_row = B.max_rows(n + budget.N - 1);
  long local_N = std::max<long>(0, last_row - n + 1);
  Budget nb = budget;
  nb.N = local_N;
  std::optional<long> support = theta.finite_support();
  if (support && *support > local_N) support = std::nullopt;
  return certify_sup(
      [&theta, &B, k, n](long t) { return theta.at(t).abs() * B.entry(t + n - 1, k).abs(); }, nb,
      support);
}

} // namespace detail

/// Certified sup_{j >= n} |theta_{j-n+1}| * b_j^k — the k-th seminorm of the
/// image of the n-th basis vector under T_theta.
inline CertifiedValue basis_image_norm(const ScalarSequence& theta, const KoetheMatrix& B, int k,
                                       long n, const Budget& budget) {
  return detail::image_norm_scan(theta, B, k, n, budget).cert;
}

/// Exact max_{1 <= i <= n} |theta_{n+1-i}| * b_i^k — the k-th seminorm of the
/// image of the n-th basis vector under the transpose.
inline LogValue basis_image_norm_transpose(const ScalarSequence& theta, const KoetheMatrix& B,
                                           int k, long n) {
  if (n < 1) throw std::invalid_argument("basis_image_norm_transpose: n must be >= 1");
  LogValue best = LogValue::zero();
  for (long i = 1; i <= n; ++i) {
    LogValue t = theta.at(n + 1 - i).abs() * B.entry(i, k).abs();
    if (log_compare(t, best) > 0) best = t;
  }
  return best;
}

/// Observed (finite-range) image norm: the running max over the scan range,
/// with no extrapolation. Used for certificate re-validation.
inline LogValue observed_image_norm(const SpaceInstance& inst, const ScalarSequence& theta,
                                    int k, long n, const Budget& budget) {
  if (inst.direction == Direction::transpose)
    return basis_image_norm_transpose(theta, inst.B, k, n);
  SupScan s = detail::image_norm_scan(theta, inst.B, k, n, budget);
  return s.cert.value;
}

/// Basis-norm continuity certificate: for each k, search m with
/// sup_n ||T e_n||_k / a_n^m finite, witnessed by a stabilized running sup.
/// Divergent image norms fail the weight immediately with the growth trace.
inline ContinuityReport continuity_certificate(const SpaceInstance& inst, const Budget& budget) {
  ContinuityReport rep;
  const KoetheMatrix& A = inst.A;
  const KoetheMatrix& B = inst.B;
  Budget b = budget;
  b.N = std::min(A.max_rows(budget.N), B.max_rows(budget.N));
  b.k_max = B.max_cols(budget.k_max);
  b.m_max = A.max_cols(budget.m_max);

  std::vector<detail::PartnerSearch> results(static_cast<size_t>(b.k_max));
  std::vector<std::string> k_notes(static_cast<size_t>(b.k_max));
  parallel_for_index(results.size(), [&](size_t idx) {
    int k = static_cast<int>(idx) + 1;
    std::vector<LogValue> norms(static_cast<size_t>(b.N), LogValue::zero());
    std::optional<DivergenceTrace> divergence;
    long divergent_n = 0;
    for (long n = 1; n <= b.N && !divergence; ++n) {
      if (inst.direction == Direction::forward) {
        SupScan s = detail::image_norm_scan(inst.theta, B, k, n, budget);
        if (s.cert.divergent) {
          DivergenceTrace t;
          t.k = k;
          t.partner = -1;
          t.indices = s.trace_indices;
          t.values = s.trace_values;
          divergence = std::move(t);
          divergent_n = n;
        } else {
          norms[static_cast<size_t>(n - 1)] = s.cert.value;
        }
      } else {
        norms[static_cast<size_t>(n - 1)] = basis_image_norm_transpose(inst.theta, B, k, n);
      }
    }
    detail::PartnerSearch r;
    if (divergence) {
      r.status = Status::fails;
      r.trace = std::move(divergence);
      k_notes[idx] = "image norm diverges at basis vector n=" + std::to_string(divergent_n) +
                     " for k=" + std::to_string(k);
    } else {
      auto make_term = [&A, &norms](int m) -> TermFn {
        return [&A, &norms, m](long n) {
          return norms[static_cast<size_t>(n - 1)] / A.entry(n, m);
        };
      };
      r = detail::search_bounded_partner(k, 1, b.m_max, make_term, b);
    }
    results[idx] = r;
  });
  rep.certificate = detail::aggregate_per_weight(std::move(results), b);
  for (auto& note : k_notes)
    if (!note.empty()) rep.certificate.notes.push_back(note);
  return rep;
}

namespace detail {

inline void record_precondition(ContinuityReport& rep, const std::string& name, Status s) {
  rep.preconditions.emplace_back(name, s);
  if (s != Status::holds) {
    rep.preconditions_ok = false;
    rep.notes.push_back("precondition not established: " + name + " -> " + to_string(s));
  }
}

} // namespace detail

/// Forward criterion cross-check: continuity certificate vs the conjunction
/// of membership of theta in lambda(B) and inclusion lambda(A) in lambda(B).
inline ContinuityReport verify_theorem1(const SpaceInstance& inst, const Budget& budget) {
  if (inst.direction != Direction::forward)
    throw std::invalid_argument("verify_theorem1: instance direction must be forward");
  ContinuityReport rep = continuity_certificate(inst, budget);
  detail::record_precondition(rep, "axioms(A)",
                              check_koethe_axioms(inst.A, budget.N, budget.k_max).status);
  detail::record_precondition(rep, "axioms(B)",
                              check_koethe_axioms(inst.B, budget.N, budget.k_max).status);
  detail::record_precondition(rep, "nuclear(A)", check_nuclear(inst.A, budget).status);
  detail::record_precondition(rep, "nuclear(B)", check_nuclear(inst.B, budget).status);
  detail::record_precondition(rep, "g1(B)", check_g1(inst.B, budget).status);
  rep.condition_i = check_membership(inst.theta, inst.B, budget);
  rep.condition_ii = check_inclusion(inst.A, inst.B, budget);
  rep.agreement = agreement_of(rep.certificate.status, rep.criteria_status());
  return rep;
}

/// Transpose criterion cross-check: certificate vs dual membership of theta
/// and inclusion, with A normalized so its first weight row is 1.
inline ContinuityReport verify_theorem2(const SpaceInstance& inst, const Budget& budget) {
  if (inst.direction != Direction::transpose)
    throw std::invalid_argument("verify_theorem2: instance direction must be transpose");
  SpaceInstance work = inst;
  if (!work.A.normalized()) work.A = work.A.normalized_copy();
  ContinuityReport rep = continuity_certificate(work, budget);
  detail::record_precondition(rep, "axioms(A~)",
                              check_koethe_axioms(work.A, budget.N, budget.k_max).status);
  detail::record_precondition(rep, "axioms(B)",
                              check_koethe_axioms(work.B, budget.N, budget.k_max).status);
  detail::record_precondition(rep, "ginf(A~)", check_ginf(work.A, budget).status);
  detail::record_precondition(rep, "nuclear(A~)", check_nuclear(work.A, budget).status);
  detail::record_precondition(rep, "nuclear(B)", check_nuclear(work.B, budget).status);
  rep.condition_i = check_dual_membership(inst.theta, work.A, budget);
  rep.condition_ii = check_inclusion(work.A, work.B, budget);
  if (inst.theta.at(1).sign == 0) {
    rep.theta1_zero = true;
    rep.notes.push_back("theta_1 = 0: the transpose criterion is stated without this case; "
                        "flagged rather than assumed");
  }
  rep.agreement = agreement_of(rep.certificate.status, rep.criteria_status());
  return rep;
}

/// Transfers a Holds certificate from a dominating symbol eta to theta with
/// the identical (m, C) witnesses: |theta_i| <= |eta_i| termwise makes every
/// image norm of theta at most that of eta.
inline Verdict normality_transfer(const SpaceInstance& inst, const ScalarSequence& eta,
                                  const ContinuityReport& eta_report, const Budget& budget) {
  long Nn = std::min(inst.A.max_rows(budget.N), inst.B.max_rows(budget.N));
  for (long i = 1; i <= budget.N; ++i) {
    if (log_compare(inst.theta.at(i).abs(), eta.at(i).abs()) > 0)
      throw std::invalid_argument("normality transfer: domination fails at index " +
                                  std::to_string(i));
  }
  if (eta_report.certificate.status != Status::holds)
    throw std::invalid_argument(
        "normality transfer: the dominating symbol's certificate must Hold");
  Budget b = budget;
  b.N = Nn;
  Verdict v = Verdict::make(Status::holds, b);
  for (const Witness& w : eta_report.certificate.witnesses) {
    const WitnessBound* bound = std::get_if<WitnessBound>(&w);
    if (!bound) continue;
    long upto = std::min(bound->verified_up_to, Nn);
    PerWeight pw;
    pw.k = bound->k;
    pw.partner = bound->partner;
    pw.bound = bound->bound;
    pw.verified_up_to = upto;
    pw.status = Status::holds;
    for (long n = 1; n <= upto; ++n) {
      LogValue lhs = observed_image_norm(inst, inst.theta, bound->k, n, budget);
      LogValue rhs = bound->bound * inst.A.entry(n, bound->partner);
      if (lhs.sign > 0 && (rhs.sign <= 0 || lhs.logmag > rhs.logmag + 1e-12)) {
        pw.status = Status::fails;
        v.status = Status::fails;
        v.notes.push_back("witness (k=" + std::to_string(bound->k) +
                          ", m=" + std::to_string(bound->partner) +
                          ") does not re-validate at n=" + std::to_string(n));
        break;
      }
    }
    if (pw.status == Status::holds) {
      WitnessBound copy = *bound;
      copy.verified_up_to = upto;
      v.witnesses.emplace_back(copy);
    }
    v.per_weight.push_back(pw);
  }
  return v;
}

/// Entrywise check of additivity and homogeneity of the Cauchy product on a
/// length-N prefix, within 1e-12 relative tolerance.
inline Verdict linearity_check(const ScalarSequence& theta, const ScalarSequence& eta,
                               double lambda, const ScalarSequence& x, long N) {
  if (N < 1) throw std::invalid_argument("linearity_check: N must be >= 1");
  Budget b;
  b.N = N;
  Verdict v = Verdict::make(Status::holds, b);
  Prefix tx = apply_T(theta, x, N);
  Prefix ex = apply_T(eta, x, N);

  Prefix sum_symbol, scaled_symbol;
  LogValue lam = LogValue::from_double(lambda);
  for (long n = 1; n <= N; ++n) {
    sum_symbol.values.push_back(log_add(theta.at(n), eta.at(n)));
    scaled_symbol.values.push_back(lam * theta.at(n));
  }
  Prefix x_prefix;
  x_prefix.values = x.prefix(N);
  Prefix sum_image = cauchy_product_prefix(sum_symbol, x_prefix, N);
  Prefix scaled_image = cauchy_product_prefix(scaled_symbol, x_prefix, N);

  for (long n = 1; n <= N; ++n) {
    LogValue want_add = log_add(tx.at(n), ex.at(n));
    if (!rel_close(sum_image.at(n), want_add, 1e-12)) {
      v.status = Status::fails;
      v.notes.push_back("additivity breaks at entry " + std::to_string(n));
      return v;
    }
    LogValue want_scale = lam * tx.at(n);
    if (!rel_close(scaled_image.at(n), want_scale, 1e-12)) {
      v.status = Status::fails;
      v.notes.push_back("homogeneity breaks at entry " + std::to_string(n));
      return v;
    }
  }
  v.notes.push_back("additivity and homogeneity verified on " + std::to_string(N) + " entries");
  return v;
}

} // namespace koethe
