#pragma once
// Weighted seminorms of a sequence against a Koethe matrix:
//   l1 : sum_n |x_n| a_n^k   (certified truncation)
//   sup: sup_n |x_n| a_n^k   (certified supremum)

#include <optional>

#include "koethe/certify.hpp"
#include "koethe/matrix.hpp"
#include "koethe/sequence.hpp"
#include "koethe/verdict.hpp"

namespace koethe {

namespace detail {

inline TermFn weighted_term(const ScalarSequence& x, const KoetheMatrix& A, int k) {
  return [&x, &A, k](long n) { return x.at(n).abs() * A.entry(n, k).abs(); };
}

// Finite tables clamp the scan; finite support of x makes it exact.
inline std::optional<long> effective_support(const ScalarSequence& x, const KoetheMatrix& A,
                                             long N) {
  std::optional<long> sup = x.finite_support();
  long rows = A.max_rows(N);
  if (sup && *sup <= rows) return sup;
  if (rows < N) return std::nullopt;  // clamped grid, not true support
  return sup;
}

} // namespace detail

inline CertifiedValue seminorm_l1(const KoetheMatrix& A, int k, const ScalarSequence& x,
                                  const Budget& budget) {
  Budget b = budget;
  b.N = A.max_rows(budget.N);
  std::optional<long> support = detail::effective_support(x, A, b.N);
  SeriesScan scan = certify_series(detail::weighted_term(x, A, k), b, support);
  return scan.cert;
}

inline CertifiedValue seminorm_sup(const KoetheMatrix& A, int k, const ScalarSequence& x,
                                   const Budget& budget) {
  Budget b = budget;
  b.N = A.max_rows(budget.N);
  std::optional<long> support = detail::effective_support(x, A, b.N);
  SupScan scan = certify_sup(detail::weighted_term(x, A, k), b, support);
  return scan.cert;
}

} // namespace koethe
