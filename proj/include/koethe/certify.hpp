#pragma once
// Certification engines for nonnegative series and suprema over scanned
// prefixes. These produce the evidence behind every numeric verdict:
//
//  * series: partial sum plus a tail bound, via (a) exact finite support,
//    (b) geometric extrapolation when the trailing-window term ratio stays
//    below a hard cap, or (c) a dyadic block majorant when the window is
//    nonincreasing; divergence is attested by a nonvanishing nondecreasing
//    trailing window.
//  * sup: running maximum; certified exact when the maximum stabilized
//    before the trailing window and the window is nonincreasing; divergence
//    is attested by strict growth of at least 1 + 1e-6 per step through the
//    whole window.

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "koethe/log_value.hpp"
#include "koethe/verdict.hpp"

namespace koethe {

using TermFn = std::function<LogValue(long)>;  // n >= 1 -> nonnegative term

namespace detail {

// Geometric tail extrapolation is only trusted when the sampled ratio is
// clearly below 1; slowly decaying series (ratio -> 1) must take the dyadic
// route instead.
inline constexpr double series_ratio_cap = 0.99;
// Nonincreasing tolerance for log-ratios (absorbs rounding of flat windows).
inline constexpr double flat_log_tol = 1e-12;
// Strict growth threshold per step: factor 1 + 1e-6.
inline const double growth_log_threshold = std::log1p(1e-6);

inline constexpr int dyadic_max_blocks = 96;
inline constexpr double dyadic_block_ratio_cap = 0.9;

struct WindowStats {
  bool any_zero = false;
  bool nonincreasing = true;   // log-diffs <= flat_log_tol
  bool nondecreasing = true;   // log-diffs >= -flat_log_tol
  bool strict_growth = true;   // log-diffs >= growth_log_threshold
  double max_log_diff = -std::numeric_limits<double>::infinity();
};

inline WindowStats window_stats(const std::vector<LogValue>& terms, long w0) {
  WindowStats st;
  size_t start = static_cast<size_t>(w0 - 1);
  long diffs = 0;
  for (size_t i = start; i < terms.size(); ++i) {
    if (terms[i].sign <= 0) {
      st.any_zero = true;
      st.strict_growth = false;
      continue;
    }
    if (i > start && terms[i - 1].sign > 0) {
      double d = terms[i].logmag - terms[i - 1].logmag;
      st.max_log_diff = std::max(st.max_log_diff, d);
      if (d > flat_log_tol) st.nonincreasing = false;
      if (d < -flat_log_tol) st.nondecreasing = false;
      if (d < growth_log_threshold) st.strict_growth = false;
      ++diffs;
    }
  }
  if (st.any_zero) st.nondecreasing = false;
  // A window too short to sample a trend attests nothing.
  if (diffs < 3) {
    st.nonincreasing = false;
    st.nondecreasing = false;
    st.strict_growth = false;
  }
  return st;
}

// Upper bound for sum_{n > N} t_n assuming t is nonincreasing beyond N
// (sampled at block anchors and midpoints): block [L+1, 2L] contributes at
// most L * t(L+1). Succeeds when the block bounds become negligible or decay
// geometrically with observed ratio <= dyadic_block_ratio_cap.
inline std::optional<LogValue> dyadic_tail_bound(const TermFn& term, long N) try {
  LogValue acc = LogValue::zero();
  double prev_block = std::numeric_limits<double>::quiet_NaN();
  double prev_anchor_log = std::numeric_limits<double>::infinity();
  std::vector<double> ratios;
  long L = N;
  constexpr long index_cap = 1L << 60;
  for (int i = 0; i < dyadic_max_blocks && L < index_cap; ++i) {
    LogValue t = term(L + 1);
    if (t.sign <= 0) return std::nullopt;  // cannot attest behavior past a sampled zero
    LogValue mid = term(L + L / 2 + 1);
    if (mid.sign <= 0 || mid.logmag > t.logmag + flat_log_tol) return std::nullopt;
    if (t.logmag > prev_anchor_log + flat_log_tol) return std::nullopt;
    prev_anchor_log = t.logmag;

    double block_log = std::log(static_cast<double>(L)) + t.logmag;
    acc = log_add(acc, LogValue::from_log(1, block_log));
    if (!std::isnan(prev_block)) ratios.push_back(std::exp(block_log - prev_block));
    prev_block = block_log;

    // Blocks negligible relative to what we already accumulated: the rest is
    // bounded by a further small multiple, folded in conservatively.
    if (acc.sign > 0 && block_log < acc.logmag + std::log(1e-15)) {
      double rho = ratios.empty() ? 0.5 : ratios.back();
      if (rho < dyadic_block_ratio_cap) {
        LogValue rest = LogValue::from_log(1, block_log + std::log(rho / (1.0 - rho)));
        return log_add(acc, rest);
      }
    }
    L *= 2;
  }
  if (ratios.size() >= 3) {
    double r1 = ratios[ratios.size() - 3], r2 = ratios[ratios.size() - 2], r3 = ratios.back();
    if (r3 <= dyadic_block_ratio_cap && r3 <= r2 + 1e-9 && r2 <= r1 + 1e-9) {
      LogValue rest = LogValue::from_log(1, prev_block + std::log(r3 / (1.0 - r3)));
      return log_add(acc, rest);
    }
  }
  return std::nullopt;
} catch (const std::exception&) {
  // Sampling past the scan horizon can run off a finite table; no attestation.
  return std::nullopt;
}

inline std::vector<LogValue> partial_sums_at(const std::vector<LogValue>& terms,
                                             const std::vector<long>& indices) {
  std::vector<LogValue> out;
  LogValue run = LogValue::zero();
  size_t next = 0;
  for (long n = 1; n <= static_cast<long>(terms.size()) && next < indices.size(); ++n) {
    run = log_add(run, terms[static_cast<size_t>(n - 1)]);
    if (n == indices[next]) {
      out.push_back(run);
      ++next;
    }
  }
  return out;
}

} // namespace detail

struct SeriesScan {
  CertifiedValue cert;
  std::vector<long> trace_indices;     // populated when cert.divergent
  std::vector<LogValue> trace_values;  // strictly increasing partial sums
};

/// Certify sum_{n >= 1} term(n) with nonnegative terms.
/// known_support, when set, makes the sum exact (terms vanish beyond it).
inline SeriesScan certify_series(const TermFn& term, const Budget& budget,
                                 std::optional<long> known_support = std::nullopt) {
  SeriesScan out;
  if (known_support) {
    long L = *known_support;
    std::vector<LogValue> terms;
    terms.reserve(static_cast<size_t>(L));
    for (long n = 1; n <= L; ++n) terms.push_back(term(n).abs());
    out.cert.value = log_sum(std::move(terms));
    out.cert.tail_bound = LogValue::zero();
    out.cert.tail = TailArgument::closed("finite-support");
    out.cert.verified_up_to = L;
    return out;
  }

  const long N = budget.N;
  std::vector<LogValue> terms;
  terms.reserve(static_cast<size_t>(N));
  for (long n = 1; n <= N; ++n) {
    LogValue t = term(n);
    if (t.sign < 0) throw std::domain_error("certify_series: negative term at n=" + std::to_string(n));
    terms.push_back(t);
  }
  out.cert.value = log_sum(terms);
  out.cert.verified_up_to = N;

  const long w0 = budget.window_start(N);
  detail::WindowStats st = detail::window_stats(terms, w0);
  const LogValue& last = terms.back();

  // Attested divergence: positive terms that never decay across the window.
  if (!st.any_zero && st.nondecreasing && last.sign > 0) {
    out.cert.divergent = true;
    for (long n = w0; n <= N; n += std::max<long>(1, (N - w0) / 16)) out.trace_indices.push_back(n);
    if (out.trace_indices.back() != N) out.trace_indices.push_back(N);
    out.trace_values = detail::partial_sums_at(terms, out.trace_indices);
    return out;
  }

  if (!st.any_zero && last.sign > 0 &&
      st.max_log_diff <= std::log(detail::series_ratio_cap)) {
    double r = std::exp(st.max_log_diff);
    out.cert.tail = TailArgument::from_ratio(w0, r);
    out.cert.tail_bound = LogValue::from_log(1, last.logmag + std::log(r / (1.0 - r)));
    return out;
  }

  if (st.nonincreasing) {
    if (auto tail = detail::dyadic_tail_bound(term, N)) {
      out.cert.tail = TailArgument::closed("dyadic-block-majorant");
      out.cert.tail_bound = *tail;
      return out;
    }
  }

  // Lower bound only.
  return out;
}

struct SupScan {
  CertifiedValue cert;   // value = max over scan; certified => exact sup
  long argmax = 0;
  std::vector<long> trace_indices;     // populated when cert.divergent
  std::vector<LogValue> trace_values;  // strictly increasing term values
};

/// Certify sup_{n >= 1} term(n) with nonnegative terms.
inline SupScan certify_sup(const TermFn& term, const Budget& budget,
                           std::optional<long> known_support = std::nullopt) {
  SupScan out;
  long N = known_support ? *known_support : budget.N;
  if (N < 1) {
    // Empty support: sup over no terms is zero, exactly.
    out.cert.tail = TailArgument::closed("finite-support");
    return out;
  }
  std::vector<LogValue> terms;
  terms.reserve(static_cast<size_t>(N));
  LogValue best = LogValue::zero();
  long arg = 0;
  for (long n = 1; n <= N; ++n) {
    LogValue t = term(n).abs();
    terms.push_back(t);
    if (arg == 0 || log_compare(t, best) > 0) {
      best = t;
      arg = n;
    }
  }
  out.cert.value = best;
  out.cert.verified_up_to = N;
  out.argmax = arg;

  if (known_support) {
    out.cert.tail = TailArgument::closed("finite-support");
    return out;
  }

  const long w0 = budget.window_start(N);
  detail::WindowStats st = detail::window_stats(terms, w0);

  if (st.strict_growth) {
    out.cert.divergent = true;
    for (long n = w0; n <= N; n += std::max<long>(1, (N - w0) / 16)) out.trace_indices.push_back(n);
    if (out.trace_indices.back() != N) out.trace_indices.push_back(N);
    for (long n : out.trace_indices) out.trace_values.push_back(terms[static_cast<size_t>(n - 1)]);
    return out;
  }

  if (arg < w0 && st.nonincreasing && !st.any_zero) {
    if (st.max_log_diff < -detail::flat_log_tol)
      out.cert.tail = TailArgument::from_ratio(w0, std::exp(st.max_log_diff));
    else
      out.cert.tail = TailArgument::closed("nonincreasing-window");
    return out;
  }
  if (arg < w0 && st.nonincreasing && st.any_zero) {
    // Zeros inside a nonincreasing window cannot be extrapolated; leave the
    // value as a lower bound.
    return out;
  }
  return out;
}

enum class BoundedStatus { bounded, unbounded, unknown };

struct BoundedScan {
  BoundedStatus status = BoundedStatus::unknown;
  LogValue sup = LogValue::zero();  // exact observed supremum over the scan
  long argmax = 0;
  long verified_up_to = 0;
  std::vector<long> trace_indices;
  std::vector<LogValue> trace_values;
};

/// Big-O test: is term(n) bounded over n? Bounded means the running sup
/// stabilized before the trailing window; unbounded requires strict growth
/// of factor >= 1 + 1e-6 at every window step.
inline BoundedScan check_bounded(const TermFn& term, const Budget& budget,
                                 std::optional<long> known_support = std::nullopt) {
  SupScan s = certify_sup(term, budget, known_support);
  BoundedScan out;
  out.sup = s.cert.value;
  out.argmax = s.argmax;
  out.verified_up_to = s.cert.verified_up_to;
  if (s.cert.divergent) {
    out.status = BoundedStatus::unbounded;
    out.trace_indices = std::move(s.trace_indices);
    out.trace_values = std::move(s.trace_values);
  } else if (s.cert.certified()) {
    out.status = BoundedStatus::bounded;
  }
  return out;
}

} // namespace koethe
