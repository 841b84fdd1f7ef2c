#pragma once
// Signed log-domain scalars: a value x is stored as (sign, ln|x|) so that
// quantities like e^{k*alpha_n} stay representable far beyond double range.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace koethe {

struct LogValue {
  int sign = 0;                                              // -1, 0, +1
  double logmag = -std::numeric_limits<double>::infinity();  // ln|x|; ignored when sign == 0

  static LogValue zero() { return LogValue{}; }
  static LogValue one() { return LogValue{1, 0.0}; }

  static LogValue from_double(double x) {
    if (std::isnan(x)) throw std::invalid_argument("LogValue: NaN input");
    if (x == 0.0) return zero();
    return LogValue{x > 0.0 ? 1 : -1, std::log(std::abs(x))};
  }

  // s must be -1, 0 or +1; lm is ln|x| and is discarded for s == 0.
  static LogValue from_log(int s, double lm) {
    if (s == 0) return zero();
    if (std::isnan(lm)) throw std::invalid_argument("LogValue: NaN log magnitude");
    return LogValue{s > 0 ? 1 : -1, lm};
  }

  bool is_zero() const { return sign == 0; }

  // Overflows to +-inf / underflows to 0 when |logmag| exceeds double range.
  double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(logmag); }

  LogValue abs() const { return sign == 0 ? zero() : LogValue{1, logmag}; }
  LogValue negated() const { return LogValue{-sign, logmag}; }

  friend LogValue operator*(const LogValue& a, const LogValue& b) {
    if (a.sign == 0 || b.sign == 0) return zero();
    return LogValue{a.sign * b.sign, a.logmag + b.logmag};
  }

  friend LogValue operator/(const LogValue& a, const LogValue& b) {
    if (b.sign == 0) throw std::domain_error("LogValue: division by zero");
    if (a.sign == 0) return zero();
    return LogValue{a.sign * b.sign, a.logmag - b.logmag};
  }
};

// Total order consistent with the real line: returns -1, 0, +1.
inline int log_compare(const LogValue& a, const LogValue& b) {
  if (a.sign != b.sign) return a.sign < b.sign ? -1 : 1;
  if (a.sign == 0) return 0;
  if (a.logmag == b.logmag) return 0;
  bool mag_less = a.logmag < b.logmag;
  if (a.sign > 0) return mag_less ? -1 : 1;
  return mag_less ? 1 : -1;
}

inline bool log_less(const LogValue& a, const LogValue& b) { return log_compare(a, b) < 0; }

// Exact at the representation level for equal magnitudes of opposite sign.
inline LogValue log_add(const LogValue& a, const LogValue& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const LogValue& hi = (a.logmag >= b.logmag) ? a : b;
  const LogValue& lo = (a.logmag >= b.logmag) ? b : a;
  if (hi.sign == lo.sign) {
    return LogValue{hi.sign, hi.logmag + std::log1p(std::exp(lo.logmag - hi.logmag))};
  }
  if (hi.logmag == lo.logmag) return LogValue::zero();
  double d = std::exp(lo.logmag - hi.logmag);  // in (0, 1]
  if (d >= 1.0) return LogValue::zero();
  return LogValue{hi.sign, hi.logmag + std::log1p(-d)};
}

// Mixed-sign summation: rescale to the largest magnitude, then accumulate in
// ascending magnitude order with Neumaier compensation (error <= 2 ulp per term
// relative to the dominant scale). A single nonzero term is returned unchanged.
inline LogValue log_sum(std::vector<LogValue> terms) {
  std::erase_if(terms, [](const LogValue& v) { return v.sign == 0; });
  if (terms.empty()) return LogValue::zero();
  if (terms.size() == 1) return terms.front();
  std::sort(terms.begin(), terms.end(), [](const LogValue& x, const LogValue& y) {
    if (x.logmag != y.logmag) return x.logmag < y.logmag;
    return x.sign < y.sign;
  });
  const double scale = terms.back().logmag;
  double s = 0.0, comp = 0.0;
  for (const LogValue& v : terms) {
    double x = v.sign * std::exp(v.logmag - scale);
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      comp += (s - t) + x;
    else
      comp += (x - t) + s;
    s = t;
  }
  double total = s + comp;
  if (total == 0.0) return LogValue::zero();
  return LogValue{total > 0.0 ? 1 : -1, scale + std::log(std::abs(total))};
}

// |a - b| <= tol * max(|a|, |b|); exact zeros compare equal only to zeros.
inline bool rel_close(const LogValue& a, const LogValue& b, double tol) {
  if (a.sign == 0 && b.sign == 0) return true;
  LogValue diff = log_add(a, b.negated());
  if (diff.sign == 0) return true;
  double ref = std::max(a.sign == 0 ? -std::numeric_limits<double>::infinity() : a.logmag,
                        b.sign == 0 ? -std::numeric_limits<double>::infinity() : b.logmag);
  return diff.logmag <= ref + std::log(tol);
}

inline bool bit_equal(const LogValue& a, const LogValue& b) {
  if (a.sign != b.sign) return false;
  if (a.sign == 0) return true;
  return a.logmag == b.logmag;
}

// Decimal rendering that survives magnitudes far outside double range,
// e.g. logmag 4e6 renders as "3.1e+1737177".
inline std::string to_decimal_string(const LogValue& v) {
  if (v.sign == 0) return "0";
  double log10v = v.logmag / std::log(10.0);
  double e = std::floor(log10v);
  double mant = std::pow(10.0, log10v - e);
  // Guard against mant rounding to 10 at representation boundaries; the
  // second check catches values like 9.999996 that %.5f would round up.
  if (mant >= 10.0 || (10.0 - mant) < 5e-6) {
    mant /= 10.0;
    e += 1.0;
    if (mant < 1.0) mant = 1.0;
  }
  char buf[64];
  // Six significant digits: mantissa in [1, 10) with five decimals.
  std::snprintf(buf, sizeof(buf), "%s%.5fe%+.0f", v.sign < 0 ? "-" : "", mant, e);
  return std::string(buf);
}

} // namespace koethe
