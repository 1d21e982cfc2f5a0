#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace orelab {

using Rational = mpq_class;

/// Element of the prime field F_p, p < 2^31.
///
/// The modulus is process-wide and must be set before any arithmetic
/// (ModP::set_modulus). The default is the Mersenne prime 2^31 - 1.
class ModP {
 public:
  ModP() = default;
  ModP(long long v);  // NOLINT: integer literals embed

  static void set_modulus(std::uint32_t p);
  static std::uint32_t modulus() noexcept { return modulus_; }

  std::uint32_t value() const noexcept { return v_; }

  ModP operator+(ModP o) const noexcept;
  ModP operator-(ModP o) const noexcept;
  ModP operator*(ModP o) const noexcept;
  ModP operator/(ModP o) const;
  ModP operator-() const noexcept;
  ModP& operator+=(ModP o) noexcept { return *this = *this + o; }
  ModP& operator-=(ModP o) noexcept { return *this = *this - o; }
  ModP& operator*=(ModP o) noexcept { return *this = *this * o; }
  ModP& operator/=(ModP o) { return *this = *this / o; }
  ModP inverse() const;

  friend bool operator==(ModP, ModP) = default;

 private:
  std::uint32_t v_ = 0;
  static inline std::uint32_t modulus_ = 2147483647u;
};

bool is_prime(std::uint32_t n);

/// Per-scalar services the polynomial layer needs beyond the arithmetic
/// operators.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static std::string name() { return "Q"; }
  static std::uint32_t characteristic() { return 0; }
  static Rational from_int(long long v) { return Rational(static_cast<long>(v)); }
  static Rational from_digits(std::string_view digits);
  static Rational from_fraction(long long num, long long den);
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static bool is_one(const Rational& a) { return a == 1; }
  static bool is_negative(const Rational& a) { return sgn(a) < 0; }
  static Rational inverse(const Rational& a) { return Rational(1) / a; }
  static std::string to_string(const Rational& a) { return a.get_str(); }
};

template <>
struct FieldTraits<ModP> {
  static std::string name() { return "Fp(" + std::to_string(ModP::modulus()) + ")"; }
  static std::uint32_t characteristic() { return ModP::modulus(); }
  static ModP from_int(long long v) { return ModP(v); }
  static ModP from_digits(std::string_view digits);
  static ModP from_fraction(long long num, long long den) { return ModP(num) / ModP(den); }
  static bool is_zero(const ModP& a) { return a.value() == 0; }
  static bool is_one(const ModP& a) { return a.value() == 1; }
  static bool is_negative(const ModP&) { return false; }
  static ModP inverse(const ModP& a) { return a.inverse(); }
  static std::string to_string(const ModP& a) { return std::to_string(a.value()); }
};

template <class F>
concept BaseField = std::regular<F> && requires(const F& a, const F& b) {
  { F(a + b) };
  { F(a - b) };
  { F(a * b) };
  { F(a / b) };
  { F(-a) };
  { FieldTraits<F>::is_zero(a) } -> std::convertible_to<bool>;
  { FieldTraits<F>::to_string(a) } -> std::convertible_to<std::string>;
};

}  // namespace orelab
