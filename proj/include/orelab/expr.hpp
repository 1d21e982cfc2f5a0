#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "orelab/errors.hpp"
#include "orelab/ratfunc.hpp"

namespace orelab {

/// Parse tree of the expression grammar
///
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' INT)?
///   primary := INT | IDENT | '(' sum ')'
///
/// so `^` binds tighter than unary minus, which binds tighter than `*` `/`.
struct ExprNode {
  enum class Kind { Number, Symbol, Add, Sub, Mul, Div, Neg, Pow };

  Kind kind = Kind::Number;
  std::string text;            // digits for Number, name for Symbol
  std::uint32_t exponent = 0;  // Pow only
  std::size_t pos = 0;
  std::vector<ExprNode> kids;
};

ExprNode parse_expression(std::string_view text);

/// Folds a parse tree into any algebra providing
///   value_type, number(digits), symbol(name, pos), add, sub, mul,
///   div(a, b, pos), neg, pow(a, e).
template <class Algebra>
typename Algebra::value_type evaluate(const ExprNode& n, Algebra& alg) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::Number:
      return alg.number(n.text);
    case K::Symbol:
      return alg.symbol(n.text, n.pos);
    case K::Neg:
      return alg.neg(evaluate(n.kids[0], alg));
    case K::Pow:
      return alg.pow(evaluate(n.kids[0], alg), n.exponent);
    case K::Add:
      return alg.add(evaluate(n.kids[0], alg), evaluate(n.kids[1], alg));
    case K::Sub:
      return alg.sub(evaluate(n.kids[0], alg), evaluate(n.kids[1], alg));
    case K::Mul:
      return alg.mul(evaluate(n.kids[0], alg), evaluate(n.kids[1], alg));
    case K::Div:
      return alg.div(evaluate(n.kids[0], alg), evaluate(n.kids[1], alg), n.pos);
  }
  throw std::logic_error("evaluate: unknown node kind");
}

/// Elements of K written in the grammar. Identifiers name field variables;
/// `v` and `X` are rejected.
template <BaseField F>
RatFunc<F> parse_expr(std::string_view text);

}  // namespace orelab
