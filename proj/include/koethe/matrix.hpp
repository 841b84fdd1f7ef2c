#pragma once
// Koethe matrices a_n^k (rows n >= 1, weight index k >= 1) in the closed
// forms used throughout: power series types, custom expressions and finite
// tabulated grids. Entries are produced in the log domain.

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "koethe/expr.hpp"
#include "koethe/log_value.hpp"
#include "koethe/sequence.hpp"

namespace koethe {

class KoetheMatrix {
 public:
  enum class Class { infinite_type, finite_type, expression, tabulated };

  // a_n^k = e^{k * alpha_n}
  static KoetheMatrix infinite_type(ExponentSequence alpha) {
    KoetheMatrix m;
    m.class_ = Class::infinite_type;
    m.alpha_ = std::move(alpha);
    return m;
  }

  // a_n^k = e^{-alpha_n / k}
  static KoetheMatrix finite_type(ExponentSequence alpha) {
    KoetheMatrix m;
    m.class_ = Class::finite_type;
    m.alpha_ = std::move(alpha);
    return m;
  }

  static KoetheMatrix expression(std::string expr_text) {
    KoetheMatrix m;
    m.class_ = Class::expression;
    m.expr_ = std::make_shared<Expr>(std::move(expr_text));
    return m;
  }

  // Finite grid; rows n = 1..grid.size(), columns k = 1..grid[0].size().
  // Access beyond the grid raises out_of_range rather than extrapolating.
  static KoetheMatrix tabulated(std::vector<std::vector<double>> grid) {
    if (grid.empty() || grid.front().empty())
      throw std::invalid_argument("tabulated matrix: grid must be nonempty");
    size_t cols = grid.front().size();
    for (const auto& row : grid)
      if (row.size() != cols)
        throw std::invalid_argument("tabulated matrix: ragged grid");
    KoetheMatrix m;
    m.class_ = Class::tabulated;
    m.grid_ = std::move(grid);
    return m;
  }

  Class matrix_class() const { return class_; }
  const ExponentSequence& alpha() const { return alpha_; }
  bool normalized() const { return normalized_; }

  // Same matrix with every row divided by its k = 1 entry, so the first
  // weight row becomes identically 1.
  KoetheMatrix normalized_copy() const {
    KoetheMatrix m = *this;
    m.normalized_ = true;
    return m;
  }

  KoetheMatrix denormalized_copy() const {
    KoetheMatrix m = *this;
    m.normalized_ = false;
    return m;
  }

  LogValue entry(long n, int k) const {
    LogValue raw = raw_entry(n, k);
    if (!normalized_) return raw;
    LogValue base = raw_entry(n, 1);
    if (base.sign <= 0)
      throw std::domain_error("matrix normalization: nonpositive first-row entry at n=" +
                              std::to_string(n));
    return raw / base;
  }

  // Upper bounds for scans; unbounded classes return the requested budget.
  long max_rows(long requested) const {
    if (class_ == Class::tabulated) return std::min<long>(requested, static_cast<long>(grid_.size()));
    if (class_ != Class::expression && alpha_.form() == ExponentSequence::Form::table)
      return std::min<long>(requested, static_cast<long>(alpha_.values().size()));
    return requested;
  }

  int max_cols(int requested) const {
    if (class_ == Class::tabulated)
      return std::min<int>(requested, static_cast<int>(grid_.front().size()));
    return requested;
  }

  // ln a_n^k for n = 1..n_max; requires strictly positive entries.
  std::vector<double> row_logs(int k, long n_max) const {
    std::vector<double> out;
    out.reserve(static_cast<size_t>(n_max));
    for (long n = 1; n <= n_max; ++n) {
      LogValue e = entry(n, k);
      if (e.sign <= 0)
        throw std::domain_error("matrix entry a_" + std::to_string(n) + "^" + std::to_string(k) +
                                " is not strictly positive");
      out.push_back(e.logmag);
    }
    return out;
  }

 private:
  LogValue raw_entry(long n, int k) const {
    if (n < 1 || k < 1) throw std::out_of_range("matrix entry: require n >= 1 and k >= 1");
    switch (class_) {
      case Class::infinite_type: return LogValue::from_log(1, static_cast<double>(k) * alpha_.at(n));
      case Class::finite_type:
        return LogValue::from_log(1, -alpha_.at(n) / static_cast<double>(k));
      case Class::expression:
        return LogValue::from_double(expr_->eval(static_cast<double>(n), static_cast<double>(k)));
      case Class::tabulated:
        if (static_cast<size_t>(n) > grid_.size() ||
            static_cast<size_t>(k) > grid_.front().size())
          throw std::out_of_range("tabulated matrix: entry (" + std::to_string(n) + ", " +
                                  std::to_string(k) + ") outside grid of " +
                                  std::to_string(grid_.size()) + " rows x " +
                                  std::to_string(grid_.front().size()) + " columns");
        return LogValue::from_double(grid_[static_cast<size_t>(n - 1)][static_cast<size_t>(k - 1)]);
    }
    throw std::logic_error("matrix: corrupt class");
  }

  Class class_ = Class::infinite_type;
  ExponentSequence alpha_ = ExponentSequence::log_form();
  std::shared_ptr<Expr> expr_;
  std::vector<std::vector<double>> grid_;
  bool normalized_ = false;
};

} // namespace koethe
