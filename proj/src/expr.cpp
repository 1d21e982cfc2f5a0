#include "orelab/expr.hpp"

#include <cctype>
#include <limits>

namespace orelab {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  ExprNode parse() {
    ExprNode n = sum();
    skip_ws();
    if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
    return n;
  }

 private:
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool accept(char c) {
    skip_ws();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  static ExprNode binary(ExprNode::Kind k, ExprNode lhs, ExprNode rhs, std::size_t pos) {
    ExprNode n;
    n.kind = k;
    n.pos = pos;
    n.kids.push_back(std::move(lhs));
    n.kids.push_back(std::move(rhs));
    return n;
  }

  ExprNode sum() {
    ExprNode lhs = product();
    for (;;) {
      skip_ws();
      std::size_t at = i_;
      if (accept('+')) {
        lhs = binary(ExprNode::Kind::Add, std::move(lhs), product(), at);
      } else if (accept('-')) {
        lhs = binary(ExprNode::Kind::Sub, std::move(lhs), product(), at);
      } else {
        return lhs;
      }
    }
  }

  ExprNode product() {
    ExprNode lhs = unary();
    for (;;) {
      skip_ws();
      std::size_t at = i_;
      if (accept('*')) {
        lhs = binary(ExprNode::Kind::Mul, std::move(lhs), unary(), at);
      } else if (accept('/')) {
        lhs = binary(ExprNode::Kind::Div, std::move(lhs), unary(), at);
      } else {
        return lhs;
      }
    }
  }

  ExprNode unary() {
    skip_ws();
    std::size_t at = i_;
    if (accept('-')) {
      ExprNode n;
      n.kind = ExprNode::Kind::Neg;
      n.pos = at;
      n.kids.push_back(unary());
      return n;
    }
    return power();
  }

  ExprNode power() {
    ExprNode base = primary();
    skip_ws();
    std::size_t at = i_;
    if (!accept('^')) return base;
    skip_ws();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) throw ParseError("exponent must be a nonnegative integer literal", start);
    std::uint64_t e = 0;
    for (std::size_t k = start; k < i_; ++k) {
      e = e * 10 + static_cast<std::uint64_t>(s_[k] - '0');
      if (e > std::numeric_limits<std::uint32_t>::max()) throw ParseError("exponent too large", start);
    }
    ExprNode n;
    n.kind = ExprNode::Kind::Pow;
    n.pos = at;
    n.exponent = static_cast<std::uint32_t>(e);
    n.kids.push_back(std::move(base));
    return n;
  }

  ExprNode primary() {
    skip_ws();
    if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
    std::size_t at = i_;
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      ExprNode n = sum();
      if (!accept(')')) throw ParseError("expected ')'", i_);
      return n;
    }
    ExprNode n;
    n.pos = at;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      n.kind = ExprNode::Kind::Number;
      n.text = std::string(s_.substr(at, i_ - at));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      n.kind = ExprNode::Kind::Symbol;
      n.text = std::string(s_.substr(at, i_ - at));
      return n;
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", at);
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

template <class F>
struct FieldAlgebra {
  using value_type = RatFunc<F>;

  value_type number(const std::string& digits) { return value_type(FieldTraits<F>::from_digits(digits)); }
  value_type symbol(const std::string& name, std::size_t pos) {
    if (is_reserved_name(name)) throw ParseError("'" + name + "' is not a field variable", pos);
    return value_type::var(VarRegistry::global().intern(name));
  }
  value_type add(const value_type& a, const value_type& b) { return a + b; }
  value_type sub(const value_type& a, const value_type& b) { return a - b; }
  value_type mul(const value_type& a, const value_type& b) { return a * b; }
  value_type div(const value_type& a, const value_type& b, std::size_t pos) {
    if (b.is_zero()) throw DomainError("division by the zero function at position " + std::to_string(pos));
    return a / b;
  }
  value_type neg(const value_type& a) { return -a; }
  value_type pow(const value_type& a, std::uint32_t e) { return a.pow(e); }
};

}  // namespace

ExprNode parse_expression(std::string_view text) { return Parser(text).parse(); }

template <BaseField F>
RatFunc<F> parse_expr(std::string_view text) {
  FieldAlgebra<F> alg;
  return evaluate(parse_expression(text), alg);
}

template RatFunc<Rational> parse_expr<Rational>(std::string_view);
template RatFunc<ModP> parse_expr<ModP>(std::string_view);

}  // namespace orelab
