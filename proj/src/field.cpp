#include "orelab/field.hpp"

#include "orelab/errors.hpp"

namespace orelab {

namespace {

std::uint32_t reduce(long long v, std::uint32_t p) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

ModP::ModP(long long v) : v_(reduce(v, modulus_)) {}

void ModP::set_modulus(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw DomainError("modulus must be a prime below 2^31, got " + std::to_string(p));
  }
  modulus_ = p;
}

ModP ModP::operator+(ModP o) const noexcept {
  ModP r;
  std::uint64_t s = std::uint64_t{v_} + o.v_;
  r.v_ = static_cast<std::uint32_t>(s >= modulus_ ? s - modulus_ : s);
  return r;
}

ModP ModP::operator-(ModP o) const noexcept {
  ModP r;
  r.v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + (modulus_ - o.v_);
  return r;
}

ModP ModP::operator*(ModP o) const noexcept {
  ModP r;
  r.v_ = static_cast<std::uint32_t>((std::uint64_t{v_} * o.v_) % modulus_);
  return r;
}

ModP ModP::operator-() const noexcept {
  ModP r;
  r.v_ = v_ == 0 ? 0 : modulus_ - v_;
  return r;
}

ModP ModP::inverse() const {
  if (v_ == 0) throw DomainError("inverse of zero in F_p");
  // Extended Euclid on (v, p).
  long long a = v_, b = modulus_, x0 = 1, x1 = 0;
  while (b != 0) {
    long long q = a / b;
    long long t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  ModP r;
  r.v_ = reduce(x0, modulus_);
  return r;
}

ModP ModP::operator/(ModP o) const { return *this * o.inverse(); }

Rational FieldTraits<Rational>::from_digits(std::string_view digits) {
  mpz_class z(std::string(digits), 10);
  return Rational(z);
}

Rational FieldTraits<Rational>::from_fraction(long long num, long long den) {
  Rational r(static_cast<long>(num), static_cast<unsigned long>(den < 0 ? -den : den));
  if (den < 0) r = -r;
  r.canonicalize();
  return r;
}

ModP FieldTraits<ModP>::from_digits(std::string_view digits) {
  std::uint64_t acc = 0;
  for (char c : digits) {
    acc = (acc * 10 + static_cast<std::uint64_t>(c - '0')) % ModP::modulus();
  }
  return ModP(static_cast<long long>(acc));
}

}  // namespace orelab
