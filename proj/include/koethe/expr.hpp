#pragma once
// Tiny arithmetic expression evaluator over the variables n and k.
// Grammar: + - * / ^ (right assoc), unary minus, parentheses, log/exp/sqrt.
// Evaluation is in plain double; intended for moderate-magnitude custom forms.

#include <cctype>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace koethe {

class Expr {
 public:
  explicit Expr(std::string text) : text_(std::move(text)) { root_ = parse(); }

  double eval(double n, double k = 0.0) const { return eval_node(root_, n, k); }
  const std::string& text() const { return text_; }

 private:
  struct Node {
    enum class Kind { number, var_n, var_k, add, sub, mul, div, pow, neg, log, exp, sqrt };
    Kind kind;
    double value = 0.0;
    int lhs = -1, rhs = -1;
  };

  std::string text_;
  std::vector<Node> nodes_;
  int root_ = -1;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("expression parse error at position " + std::to_string(pos_) +
                                " in \"" + text_ + "\": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int make(Node::Kind kind, int lhs = -1, int rhs = -1, double value = 0.0) {
    nodes_.push_back(Node{kind, value, lhs, rhs});
    return static_cast<int>(nodes_.size()) - 1;
  }

  int parse() {
    pos_ = 0;
    int e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

  int parse_sum() {
    int e = parse_product();
    for (;;) {
      if (consume('+'))
        e = make(Node::Kind::add, e, parse_product());
      else if (consume('-'))
        e = make(Node::Kind::sub, e, parse_product());
      else
        return e;
    }
  }

  int parse_product() {
    int e = parse_unary();
    for (;;) {
      if (consume('*'))
        e = make(Node::Kind::mul, e, parse_unary());
      else if (consume('/'))
        e = make(Node::Kind::div, e, parse_unary());
      else
        return e;
    }
  }

  int parse_unary() {
    if (consume('-')) return make(Node::Kind::neg, parse_unary());
    return parse_power();
  }

  int parse_power() {
    int base = parse_atom();
    if (consume('^')) return make(Node::Kind::pow, base, parse_unary());
    return base;
  }

  int parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      int e = parse_sum();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t end = 0;
      double v = std::stod(text_.substr(pos_), &end);
      pos_ += end;
      return make(Node::Kind::number, -1, -1, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string word = text_.substr(start, pos_ - start);
      if (word == "n") return make(Node::Kind::var_n);
      if (word == "k") return make(Node::Kind::var_k);
      Node::Kind fn;
      if (word == "log")
        fn = Node::Kind::log;
      else if (word == "exp")
        fn = Node::Kind::exp;
      else if (word == "sqrt")
        fn = Node::Kind::sqrt;
      else
        fail("unknown identifier '" + word + "'");
      if (!consume('(')) fail("expected '(' after function name");
      int arg = parse_sum();
      if (!consume(')')) fail("expected ')'");
      return make(fn, arg);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  double eval_node(int idx, double n, double k) const {
    const Node& nd = nodes_[static_cast<size_t>(idx)];
    switch (nd.kind) {
      case Node::Kind::number: return nd.value;
      case Node::Kind::var_n: return n;
      case Node::Kind::var_k: return k;
      case Node::Kind::add: return eval_node(nd.lhs, n, k) + eval_node(nd.rhs, n, k);
      case Node::Kind::sub: return eval_node(nd.lhs, n, k) - eval_node(nd.rhs, n, k);
      case Node::Kind::mul: return eval_node(nd.lhs, n, k) * eval_node(nd.rhs, n, k);
      case Node::Kind::div: return eval_node(nd.lhs, n, k) / eval_node(nd.rhs, n, k);
      case Node::Kind::pow: return std::pow(eval_node(nd.lhs, n, k), eval_node(nd.rhs, n, k));
      case Node::Kind::neg: return -eval_node(nd.lhs, n, k);
      case Node::Kind::log: return std::log(eval_node(nd.lhs, n, k));
      case Node::Kind::exp: return std::exp(eval_node(nd.lhs, n, k));
      case Node::Kind::sqrt: return std::sqrt(eval_node(nd.lhs, n, k));
    }
    throw std::logic_error("expression: corrupt node");
  }
};

} // namespace koethe
