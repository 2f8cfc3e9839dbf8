// SPDX-License-Identifier: Apache-2.0
#include "twistor/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace twistor {
namespace {

class Parser {
 public:
  Parser(const std::string& s, int nvars) : s_(s), nvars_(nvars) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::InvalidConfig, "expression '" + s_ + "': " + msg + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  static ExprPtr node(Expr::Op op, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->args = std::move(args);
    return e;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = node(Expr::Op::Add, {lhs, term()});
      else if (accept('-')) lhs = node(Expr::Op::Sub, {lhs, term()});
      else return lhs;
    }
  }
  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = node(Expr::Op::Mul, {lhs, unary()});
      else if (accept('/')) lhs = node(Expr::Op::Div, {lhs, unary()});
      else return lhs;
    }
  }
  ExprPtr unary() {
    if (accept('-')) return node(Expr::Op::Neg, {unary()});
    if (accept('+')) return unary();
    return power();
  }
  ExprPtr power() {
    ExprPtr base = primary();
    if (accept('^')) return node(Expr::Op::Pow, {base, unary()});
    return base;
  }
  ExprPtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (accept('(')) {
      ExprPtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = std::stod(s_.substr(pos_), &used);
      pos_ += used;
      auto e = std::make_shared<Expr>();
      e->value = v;
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (id == "pi" || id == "e") {
        auto e = std::make_shared<Expr>();
        e->value = id == "pi" ? std::numbers::pi : std::numbers::e;
        return e;
      }
      if (id.size() >= 2 && id[0] == 'x' && std::all_of(id.begin() + 1, id.end(), ::isdigit)) {
        int k = std::stoi(id.substr(1));
        if (k >= nvars_) fail("variable " + id + " out of range");
        auto e = std::make_shared<Expr>();
        e->op = Expr::Op::Var;
        e->var = k;
        return e;
      }
      static const char* fns[] = {"sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh", "tanh"};
      for (const char* f : fns) {
        if (id == f) {
          if (!accept('(')) fail("expected '(' after " + id);
          ExprPtr a = expr();
          if (!accept(')')) fail("expected ')'");
          auto e = std::make_shared<Expr>();
          e->op = Expr::Op::Func;
          e->fn = id;
          e->args = {a};
          return e;
        }
      }
      fail("unknown identifier " + id);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string s_;
  int nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expression(const std::string& text, int nvars) { return Parser(text, nvars).parse(); }

}  // namespace twistor
