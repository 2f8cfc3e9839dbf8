// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "twistor/types.hpp"

#include <memory>
#include <string>
#include <vector>

namespace twistor {

/// Arithmetic expression over coordinates x0, x1, … for user-defined metrics.
/// Grammar: + − * / ^, unary minus, parentheses, constants pi and e, and the
/// functions sin cos tan exp log sqrt sinh cosh tanh.
struct Expr {
  enum class Op { Num, Var, Add, Sub, Mul, Div, Pow, Neg, Func };
  Op op = Op::Num;
  double value = 0.0;
  int var = 0;
  std::string fn;
  std::vector<std::shared_ptr<const Expr>> args;
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Throws Error(InvalidConfig) on malformed input or a variable index ≥ nvars.
ExprPtr parse_expression(const std::string& text, int nvars);

template <class S>
S eval_expression(const Expr& e, const S* x) {
  using std::cos;
  using std::cosh;
  using std::exp;
  using std::log;
  using std::pow;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  using std::tan;
  using std::tanh;
  switch (e.op) {
    case Expr::Op::Num: return S(e.value);
    case Expr::Op::Var: return x[e.var];
    case Expr::Op::Add: return eval_expression(*e.args[0], x) + eval_expression(*e.args[1], x);
    case Expr::Op::Sub: return eval_expression(*e.args[0], x) - eval_expression(*e.args[1], x);
    case Expr::Op::Mul: return eval_expression(*e.args[0], x) * eval_expression(*e.args[1], x);
    case Expr::Op::Div: return eval_expression(*e.args[0], x) / eval_expression(*e.args[1], x);
    case Expr::Op::Neg: return -eval_expression(*e.args[0], x);
    case Expr::Op::Pow: {
      S base = eval_expression(*e.args[0], x);
      const Expr& ex = *e.args[1];
      if (ex.op == Expr::Op::Num) {
        double p = ex.value;
        if (p == std::round(p) && std::abs(p) <= 16.0) {
          S r(1.0);
          for (int i = 0; i < static_cast<int>(std::abs(p)); ++i) r = r * base;
          return p < 0 ? S(S(1.0) / r) : r;
        }
        return S(pow(base, p));
      }
      return S(exp(eval_expression(ex, x) * log(base)));
    }
    case Expr::Op::Func: {
      S a = eval_expression(*e.args[0], x);
      if (e.fn == "sin") return sin(a);
      if (e.fn == "cos") return cos(a);
      if (e.fn == "tan") return tan(a);
      if (e.fn == "exp") return exp(a);
      if (e.fn == "log") return log(a);
      if (e.fn == "sqrt") return sqrt(a);
      if (e.fn == "sinh") return sinh(a);
      if (e.fn == "cosh") return cosh(a);
      return tanh(a);
    }
  }
  return S(0.0);
}

}  // namespace twistor
