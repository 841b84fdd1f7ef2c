#pragma once
// Cauchy product of sequences and the columns/rows of the associated
// lower-triangular Toeplitz matrix and its transpose.

#include <vector>

#include "koethe/log_value.hpp"
#include "koethe/sequence.hpp"

namespace koethe {

// c_n = sum_{k=1..n} x_{n+1-k} * y_k, for n = 1..N.
// Each entry is accumulated with sort-by-magnitude compensated summation;
// a single nonzero summand is preserved bit-for-bit.
inline Prefix cauchy_product_prefix(const ScalarSequence& x, const ScalarSequence& y, long N) {
  if (N < 0) throw std::invalid_argument("cauchy_product_prefix: N must be >= 0");
  std::vector<LogValue> xv = x.prefix(N);
  std::vector<LogValue> yv = y.prefix(N);
  Prefix out;
  out.values.reserve(static_cast<size_t>(N));
  std::vector<LogValue> terms;
  for (long n = 1; n <= N; ++n) {
    terms.clear();
    terms.reserve(static_cast<size_t>(n));
    for (long k = 1; k <= n; ++k)
      terms.push_back(xv[static_cast<size_t>(n - k)] * yv[static_cast<size_t>(k - 1)]);
    out.values.push_back(log_sum(terms));
  }
  return out;
}

inline Prefix cauchy_product_prefix(const Prefix& x, const Prefix& y, long N) {
  ScalarSequence xs = ScalarSequence::finite_table(x.values);
  ScalarSequence ys = ScalarSequence::finite_table(y.values);
  return cauchy_product_prefix(xs, ys, N);
}

// Column n of the convolution operator: entry j is theta_{j-n+1} for j >= n,
// zero above the diagonal.
inline Prefix toeplitz_column(const ScalarSequence& theta, long n, long N) {
  if (n < 1) throw std::invalid_argument("toeplitz_column: n must be >= 1");
  Prefix out;
  out.values.assign(static_cast<size_t>(N), LogValue::zero());
  for (long j = n; j <= N; ++j) out.values[static_cast<size_t>(j - 1)] = theta.at(j - n + 1);
  return out;
}

// Column n of the transposed operator: entry i is theta_{n+1-i} for i <= n,
// zero below.
inline Prefix toeplitz_row(const ScalarSequence& theta, long n, long N) {
  if (n < 1) throw std::invalid_argument("toeplitz_row: n must be >= 1");
  Prefix out;
  out.values.assign(static_cast<size_t>(N), LogValue::zero());
  for (long i = 1; i <= n && i <= N; ++i)
    out.values[static_cast<size_t>(i - 1)] = theta.at(n + 1 - i);
  return out;
}

} // namespace koethe
