#pragma once
// Scalar sequences (index base 1) and exponent sequences used to build
// Koethe matrices. All evaluation goes through LogValue so forms like
// e^{n^2} remain exact in the log domain.

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "koethe/expr.hpp"
#include "koethe/log_value.hpp"

namespace koethe {

/// Monotone nondecreasing exponent sequence alpha_n.
class ExponentSequence {
 public:
  enum class Form { linear, log, power_log, table };

  static ExponentSequence linear(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("exponent linear(c): c must be > 0");
    ExponentSequence e;
    e.form_ = Form::linear;
    e.c_ = c;
    return e;
  }

  // alpha_n = log(n + 1)
  static ExponentSequence log_form() {
    ExponentSequence e;
    e.form_ = Form::log;
    return e;
  }

  // alpha_n = c * n^p * log(n+1)^q with c > 0, p,q >= 0, p + q > 0.
  static ExponentSequence power_log(double c, double p, double q) {
    if (!(c > 0.0)) throw std::invalid_argument("exponent power_log: c must be > 0");
    if (p < 0.0 || q < 0.0) throw std::invalid_argument("exponent power_log: p, q must be >= 0");
    if (p == 0.0 && q == 0.0)
      throw std::invalid_argument("exponent power_log: p and q must not both be 0");
    ExponentSequence e;
    e.form_ = Form::power_log;
    e.c_ = c;
    e.p_ = p;
    e.q_ = q;
    return e;
  }

  static ExponentSequence table(std::vector<double> values) {
    for (size_t i = 0; i + 1 < values.size(); ++i)
      if (values[i + 1] < values[i])
        throw std::invalid_argument("exponent table: values must be nondecreasing (index " +
                                    std::to_string(i + 2) + ")");
    ExponentSequence e;
    e.form_ = Form::table;
    e.values_ = std::move(values);
    return e;
  }

  Form form() const { return form_; }
  double c() const { return c_; }
  double p() const { return p_; }
  double q() const { return q_; }
  const std::vector<double>& values() const { return values_; }

  double at(long n) const {
    if (n < 1) throw std::out_of_range("exponent sequence: index must be >= 1");
    switch (form_) {
      case Form::linear: return c_ * static_cast<double>(n);
      case Form::log: return std::log(static_cast<double>(n) + 1.0);
      case Form::power_log:
        return c_ * std::pow(static_cast<double>(n), p_) *
               std::pow(std::log(static_cast<double>(n) + 1.0), q_);
      case Form::table:
        if (static_cast<size_t>(n) > values_.size())
          throw std::out_of_range("exponent table: index " + std::to_string(n) +
                                  " beyond table length " + std::to_string(values_.size()));
        return values_[static_cast<size_t>(n - 1)];
    }
    throw std::logic_error("exponent sequence: corrupt form");
  }

 private:
  Form form_ = Form::log;
  double c_ = 1.0, p_ = 0.0, q_ = 0.0;
  std::vector<double> values_;
};

/// Scalar sequence theta_n in one of several closed forms.
class ScalarSequence {
 public:
  enum class Form { finite_table, geometric, power_law, exp_of_exponent, expression };

  // Entries beyond the table are exactly zero.
  static ScalarSequence finite_table(std::vector<LogValue> values) {
    ScalarSequence s;
    s.form_ = Form::finite_table;
    s.table_ = std::move(values);
    return s;
  }

  static ScalarSequence finite_table_doubles(const std::vector<double>& values) {
    std::vector<LogValue> t;
    t.reserve(values.size());
    for (double v : values) t.push_back(LogValue::from_double(v));
    return finite_table(std::move(t));
  }

  // theta_n = r^n (r may be negative or zero).
  static ScalarSequence geometric(double r) {
    ScalarSequence s;
    s.form_ = Form::geometric;
    s.r_ = r;
    return s;
  }

  // theta_n = c * n^p * log(n+1)^q.
  static ScalarSequence power_law(double c, double p, double q) {
    ScalarSequence s;
    s.form_ = Form::power_law;
    s.c_ = c;
    s.p_ = p;
    s.q_ = q;
    return s;
  }

  // theta_n = e^{s * alpha_n}.
  static ScalarSequence exp_of_exponent(double scale, ExponentSequence alpha) {
    ScalarSequence s;
    s.form_ = Form::exp_of_exponent;
    s.s_ = scale;
    s.alpha_ = std::move(alpha);
    return s;
  }

  static ScalarSequence expression(std::string expr_text) {
    ScalarSequence s;
    s.form_ = Form::expression;
    s.expr_ = std::make_shared<Expr>(std::move(expr_text));
    return s;
  }

  Form form() const { return form_; }
  double r() const { return r_; }
  double c() const { return c_; }
  double p() const { return p_; }
  double q() const { return q_; }
  double scale() const { return s_; }
  const ExponentSequence& alpha() const { return alpha_; }
  const std::vector<LogValue>& table() const { return table_; }

  LogValue at(long n) const {
    if (n < 1) throw std::out_of_range("scalar sequence: index must be >= 1");
    switch (form_) {
      case Form::finite_table:
        if (static_cast<size_t>(n) > table_.size()) return LogValue::zero();
        return table_[static_cast<size_t>(n - 1)];
      case Form::geometric: {
        if (r_ == 0.0) return LogValue::zero();
        int sign = (r_ < 0.0 && (n % 2 != 0)) ? -1 : 1;
        return LogValue::from_log(sign, static_cast<double>(n) * std::log(std::abs(r_)));
      }
      case Form::power_law: {
        if (c_ == 0.0) return LogValue::zero();
        double lm = std::log(std::abs(c_)) + p_ * std::log(static_cast<double>(n)) +
                    q_ * std::log(std::log(static_cast<double>(n) + 1.0));
        return LogValue::from_log(c_ > 0.0 ? 1 : -1, lm);
      }
      case Form::exp_of_exponent: return LogValue::from_log(1, s_ * alpha_.at(n));
      case Form::expression: return LogValue::from_double(expr_->eval(static_cast<double>(n)));
    }
    throw std::logic_error("scalar sequence: corrupt form");
  }

  // Smallest L such that theta_n = 0 for all n > L, when structurally known.
  std::optional<long> finite_support() const {
    switch (form_) {
      case Form::finite_table: return static_cast<long>(table_.size());
      case Form::geometric:
        if (r_ == 0.0) return 0;
        return std::nullopt;
      case Form::power_law:
        if (c_ == 0.0) return 0;
        return std::nullopt;
      default: return std::nullopt;
    }
  }

  /// First L entries as LogValues (1-based index i stored at slot i-1).
  std::vector<LogValue> prefix(long L) const {
    std::vector<LogValue> out;
    out.reserve(static_cast<size_t>(L));
    for (long n = 1; n <= L; ++n) out.push_back(at(n));
    return out;
  }

 private:
  Form form_ = Form::finite_table;
  std::vector<LogValue> table_;
  double r_ = 0.0, c_ = 0.0, p_ = 0.0, q_ = 0.0, s_ = 0.0;
  ExponentSequence alpha_ = ExponentSequence::log_form();
  std::shared_ptr<Expr> expr_;
};

/// First N entries of a sequence; index base 1.
struct Prefix {
  std::vector<LogValue> values;

  long length() const { return static_cast<long>(values.size()); }

  const LogValue& at(long n) const {
    if (n < 1 || n > length()) throw std::out_of_range("prefix: index " + std::to_string(n));
    return values[static_cast<size_t>(n - 1)];
  }
};

} // namespace koethe
