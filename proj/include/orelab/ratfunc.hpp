#pragma once

#include <string>
#include <vector>

#include "orelab/multipoly.hpp"

namespace orelab {

/// Element of K = F(x0, x1, ...): a reduced fraction num/den with den monic
/// under grlex, so equality is syntactic.
template <BaseField F>
class RatFunc {
 public:
  using Poly = MultiPoly<F>;

  RatFunc() : den_(Poly::constant(1)) {}
  RatFunc(const F& c) : num_(c), den_(Poly::constant(1)) {}  // NOLINT
  RatFunc(long long c) : RatFunc(FieldTraits<F>::from_int(c)) {}  // NOLINT
  explicit RatFunc(Poly p) : num_(std::move(p)), den_(Poly::constant(1)) {}

  /// Reduces num/den. Throws DomainError when den is zero.
  static RatFunc fraction(const Poly& num, const Poly& den);
  static RatFunc var(VarId v) { return RatFunc(Poly::var(v)); }

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  std::vector<VarId> variables() const;

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  RatFunc inverse() const;
  RatFunc pow(long long e) const;

  friend bool operator==(const RatFunc&, const RatFunc&) = default;

 private:
  RatFunc(Poly num, Poly den, int) : num_(std::move(num)), den_(std::move(den)) {}

  Poly num_;
  Poly den_;
};

/// Renders in the expression grammar; parse_expr(render(f)) == f.
template <BaseField F>
std::string render(const RatFunc<F>& f);

}  // namespace orelab
