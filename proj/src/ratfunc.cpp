#include "orelab/ratfunc.hpp"

#include <algorithm>
#include <stdexcept>

#include "orelab/errors.hpp"

namespace orelab {

namespace {

template <class F>
MultiPoly<F> divide_or_throw(const MultiPoly<F>& p, const MultiPoly<F>& d) {
  if (d.is_one()) return p;
  auto q = exact_divide(p, d);
  if (!q) throw std::logic_error("RatFunc: gcd does not divide");
  return std::move(*q);
}

}  // namespace

template <BaseField F>
RatFunc<F> RatFunc<F>::fraction(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw DomainError("division by the zero function");
  if (num.is_zero()) return RatFunc{};
  if (den.is_constant()) {
    F inv = FieldTraits<F>::inverse(den.leading().coeff);
    return RatFunc(num.scaled(inv), Poly::constant(1), 0);
  }
  Poly g = poly_gcd(num, den);
  Poly n = divide_or_throw(num, g);
  Poly d = divide_or_throw(den, g);
  F inv = FieldTraits<F>::inverse(d.leading().coeff);
  return RatFunc(n.scaled(inv), d.scaled(inv), 0);
}

template <BaseField F>
std::vector<VarId> RatFunc<F>::variables() const {
  std::vector<VarId> a = num_.variables();
  std::vector<VarId> b = den_.variables();
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

template <BaseField F>
RatFunc<F> RatFunc<F>::operator-() const {
  return RatFunc(-num_, den_, 0);
}

template <BaseField F>
RatFunc<F> RatFunc<F>::operator+(const RatFunc& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_.is_one() && o.den_.is_one()) return RatFunc(num_ + o.num_);
  if (den_ == o.den_) return fraction(num_ + o.num_, den_);
  // a/b + c/d with g = gcd(b, d): the sum's reduction only needs gcd with g.
  Poly g = poly_gcd(den_, o.den_);
  Poly b1 = divide_or_throw(den_, g);
  Poly d1 = divide_or_throw(o.den_, g);
  Poly n = num_ * d1 + o.num_ * b1;
  if (n.is_zero()) return RatFunc{};
  Poly den = b1 * o.den_;
  if (g.is_one()) {
    F inv = FieldTraits<F>::inverse(den.leading().coeff);
    return RatFunc(n.scaled(inv), den.scaled(inv), 0);
  }
  Poly h = poly_gcd(n, g);
  n = divide_or_throw(n, h);
  den = divide_or_throw(den, h);
  F inv = FieldTraits<F>::inverse(den.leading().coeff);
  return RatFunc(n.scaled(inv), den.scaled(inv), 0);
}

template <BaseField F>
RatFunc<F> RatFunc<F>::operator-(const RatFunc& o) const {
  return *this + (-o);
}

template <BaseField F>
RatFunc<F> RatFunc<F>::operator*(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return RatFunc{};
  if (den_.is_one() && o.den_.is_one()) return RatFunc(num_ * o.num_);
  // (a/b)(c/d): cancel gcd(a, d) and gcd(c, b) before multiplying.
  Poly g1 = poly_gcd(num_, o.den_);
  Poly g2 = poly_gcd(o.num_, den_);
  Poly n = divide_or_throw(num_, g1) * divide_or_throw(o.num_, g2);
  Poly d = divide_or_throw(den_, g2) * divide_or_throw(o.den_, g1);
  F inv = FieldTraits<F>::inverse(d.leading().coeff);
  return RatFunc(n.scaled(inv), d.scaled(inv), 0);
}

template <BaseField F>
RatFunc<F> RatFunc<F>::inverse() const {
  if (is_zero()) throw DomainError("division by the zero function");
  F inv = FieldTraits<F>::inverse(num_.leading().coeff);
  return RatFunc(den_.scaled(inv), num_.scaled(inv), 0);
}

template <BaseField F>
RatFunc<F> RatFunc<F>::operator/(const RatFunc& o) const {
  return *this * o.inverse();
}

template <BaseField F>
RatFunc<F> RatFunc<F>::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  auto ue = static_cast<std::uint32_t>(e);
  // num and den stay coprime under powers; den^e stays monic.
  return RatFunc(num_.pow(ue), den_.pow(ue), 0);
}

template <BaseField F>
std::string render(const RatFunc<F>& f) {
  if (f.is_polynomial()) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

template class RatFunc<Rational>;
template class RatFunc<ModP>;
template std::string render(const RatFunc<Rational>&);
template std::string render(const RatFunc<ModP>&);

}  // namespace orelab
