#include "orelab/substitute.hpp"

#include "orelab/errors.hpp"

namespace orelab {

namespace {

template <class F>
class Substituter {
 public:
  explicit Substituter(const VarImage<F>& image) : image_(image) {}

  RatFunc<F> apply(const RatFunc<F>& f) {
    if (f.is_constant()) return f;
    for (VarId v : f.variables()) {
      if (!image_of(v).is_polynomial()) all_polynomial_ = false;
    }
    if (all_polynomial_) {
      MultiPoly<F> n = poly_image(f.num());
      MultiPoly<F> d = poly_image(f.den());
      if (d.is_zero()) throw DomainError("substitution sends the denominator to zero");
      return RatFunc<F>::fraction(n, d);
    }
    RatFunc<F> n = rat_image(f.num());
    RatFunc<F> d = rat_image(f.den());
    if (d.is_zero()) throw DomainError("substitution sends the denominator to zero");
    return n / d;
  }

 private:
  const RatFunc<F>& image_of(VarId v) {
    auto it = images_.find(v);
    if (it == images_.end()) it = images_.emplace(v, image_(v)).first;
    return it->second;
  }

  const RatFunc<F>& power(VarId v, std::uint32_t e) {
    auto key = std::make_pair(v, e);
    auto it = powers_.find(key);
    if (it == powers_.end()) it = powers_.emplace(key, image_of(v).pow(e)).first;
    return it->second;
  }

  MultiPoly<F> poly_image(const MultiPoly<F>& p) {
    MultiPoly<F> acc;
    for (const auto& t : p.terms()) {
      MultiPoly<F> term(t.coeff);
      for (const auto& [v, e] : t.mono.entries()) term = term * power(v, e).num();
      acc += term;
    }
    return acc;
  }

  RatFunc<F> rat_image(const MultiPoly<F>& p) {
    RatFunc<F> acc;
    for (const auto& t : p.terms()) {
      RatFunc<F> term(t.coeff);
      for (const auto& [v, e] : t.mono.entries()) term = term * power(v, e);
      acc += term;
    }
    return acc;
  }

  const VarImage<F>& image_;
  std::map<VarId, RatFunc<F>> images_;
  std::map<std::pair<VarId, std::uint32_t>, RatFunc<F>> powers_;
  bool all_polynomial_ = true;
};

}  // namespace

template <BaseField F>
RatFunc<F> substitute(const RatFunc<F>& f, const VarImage<F>& image) {
  return Substituter<F>(image).apply(f);
}

template <BaseField F>
RatFunc<F> substitute(const RatFunc<F>& f, const Assignment<F>& assignment) {
  VarImage<F> image = [&](VarId v) {
    auto it = assignment.find(v);
    return it == assignment.end() ? RatFunc<F>::var(v) : it->second;
  };
  return substitute(f, image);
}

template RatFunc<Rational> substitute(const RatFunc<Rational>&, const VarImage<Rational>&);
template RatFunc<ModP> substitute(const RatFunc<ModP>&, const VarImage<ModP>&);
template RatFunc<Rational> substitute(const RatFunc<Rational>&, const Assignment<Rational>&);
template RatFunc<ModP> substitute(const RatFunc<ModP>&, const Assignment<ModP>&);

}  // namespace orelab
