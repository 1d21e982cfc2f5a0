#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orelab/field.hpp"
#include "orelab/variables.hpp"

namespace orelab {

/// Power product of indeterminates, stored sparsely as (variable, exponent)
/// pairs sorted by variable. Exponents are always positive.
class Monomial {
 public:
  using Entry = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  static Monomial of(VarId v, std::uint32_t e = 1);
  static Monomial from_entries(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const noexcept { return e_; }
  std::uint32_t degree() const noexcept { return deg_; }
  std::uint32_t exponent(VarId v) const noexcept;
  bool is_one() const noexcept { return e_.empty(); }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const noexcept;
  /// Requires divides(o) read as this | o; returns o / this.
  Monomial quotient_of(const Monomial& o) const;
  Monomial without(VarId v) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Entry> e_;
  std::uint32_t deg_ = 0;
};

/// Graded lexicographic order by variable index.
std::strong_ordering grlex(const Monomial& a, const Monomial& b) noexcept;

template <BaseField F>
class MultiPoly {
 public:
  struct Term {
    Monomial mono;
    F coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  MultiPoly() = default;
  explicit MultiPoly(const F& c);
  static MultiPoly constant(long long c) { return MultiPoly(FieldTraits<F>::from_int(c)); }
  static MultiPoly var(VarId v, std::uint32_t e = 1);
  static MultiPoly monomial(Monomial m, const F& c);
  /// Sorts, merges equal monomials and drops zero coefficients.
  static MultiPoly from_terms(std::vector<Term> terms);

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_one() const;
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  /// Leading term under grlex. Requires !is_zero().
  const Term& leading() const { return terms_.front(); }
  F constant_coeff() const;

  std::uint32_t total_degree() const noexcept;
  std::uint32_t degree_in(VarId v) const noexcept;
  std::vector<VarId> variables() const;
  bool involves(VarId v) const noexcept;
  /// Greatest monomial dividing every term.
  Monomial monomial_content() const;

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly scaled(const F& c) const;
  MultiPoly times_monomial(const Monomial& m, const F& c) const;
  MultiPoly pow(std::uint32_t e) const;
  /// Divides every monomial by m. Requires m | monomial_content().
  MultiPoly div_monomial(const Monomial& m) const;
  /// Scales so the leading coefficient is 1 (zero stays zero).
  MultiPoly monic() const;

  /// coefficients_in(y)[k] is the coefficient of y^k, free of y.
  std::vector<MultiPoly> coefficients_in(VarId y) const;
  static MultiPoly from_coefficients(VarId y, const std::vector<MultiPoly>& coeffs);

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  std::vector<Term> terms_;  // strictly decreasing under grlex
};

/// Returns q with p = d * q, or nullopt when d does not divide p.
template <BaseField F>
std::optional<MultiPoly<F>> exact_divide(const MultiPoly<F>& p, const MultiPoly<F>& d);

/// Monic greatest common divisor; gcd(0, 0) = 0.
template <BaseField F>
MultiPoly<F> poly_gcd(const MultiPoly<F>& p, const MultiPoly<F>& q);

template <BaseField F>
std::string to_string(const MultiPoly<F>& p);

std::string to_string(const Monomial& m);

}  // namespace orelab
