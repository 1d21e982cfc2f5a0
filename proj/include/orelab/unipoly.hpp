#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "orelab/errors.hpp"
#include "orelab/ratfunc.hpp"

namespace orelab {

template <class R>
struct RingOne {
  static R get() { return R(1); }
};

/// Dense univariate polynomial over a commutative ring R, coefficient k of
/// y^k at index k. Used for A = K[t], for K[x] and for A[x].
template <class R>
class UniPoly {
 public:
  using coeff_type = R;

  UniPoly() = default;
  explicit UniPoly(R c) {
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  explicit UniPoly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }

  /// y^k with coefficient c.
  static UniPoly monomial(std::size_t k, R c) {
    UniPoly p;
    if (c.is_zero()) return p;
    p.c_.resize(k + 1);
    p.c_[k] = std::move(c);
    return p;
  }

  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  std::size_t size() const noexcept { return c_.size(); }
  const std::vector<R>& coeffs() const noexcept { return c_; }
  R coeff(std::size_t k) const { return k < c_.size() ? c_[k] : R{}; }
  const R& leading() const { return c_.back(); }

  void set_coeff(std::size_t k, R value) {
    if (k >= c_.size()) {
      if (value.is_zero()) return;
      c_.resize(k + 1);
    }
    c_[k] = std::move(value);
    trim();
  }

  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  UniPoly operator+(const UniPoly& o) const {
    UniPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
      if (i < c_.size() && i < o.c_.size()) {
        r.c_[i] = c_[i] + o.c_[i];
      } else {
        r.c_[i] = i < c_.size() ? c_[i] : o.c_[i];
      }
    }
    r.trim();
    return r;
  }

  UniPoly operator-(const UniPoly& o) const { return *this + (-o); }

  UniPoly operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly{};
    UniPoly r;
    r.c_.resize(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) {
        if (o.c_[j].is_zero()) continue;
        r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
      }
    }
    r.trim();
    return r;
  }

  UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
  UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  /// Coefficientwise scalar multiple c * p.
  UniPoly scaled(const R& c) const {
    UniPoly r = *this;
    for (auto& x : r.c_) x = c * x;
    r.trim();
    return r;
  }

  UniPoly pow(std::size_t e) const {
    UniPoly result(RingOne<R>::get());
    for (std::size_t i = 0; i < e; ++i) result = result * *this;
    return result;
  }

  /// Horner evaluation at a point of R.
  R evaluate(const R& at) const {
    R acc{};
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * at + c_[i];
    return acc;
  }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<R> c_;
};

template <class R>
struct RingOne<UniPoly<R>> {
  static UniPoly<R> get() { return UniPoly<R>(RingOne<R>::get()); }
};

template <BaseField F>
std::optional<RatFunc<F>> exact_quotient(const RatFunc<F>& p, const RatFunc<F>& q) {
  return p / q;
}

/// Returns g with p = q * g, or nullopt. Coefficient quotients use the
/// exact_quotient of R, so this works over any integral domain R that
/// provides one (K, K[t], ...). Requires q != 0.
template <class R>
std::optional<UniPoly<R>> exact_quotient(const UniPoly<R>& p, const UniPoly<R>& q) {
  if (q.is_zero()) throw DomainError("exact_divide: division by the zero polynomial");
  if (p.is_zero()) return UniPoly<R>{};
  if (p.degree() < q.degree()) return std::nullopt;
  std::vector<R> rem = p.coeffs();
  std::vector<R> quot(static_cast<std::size_t>(p.degree() - q.degree() + 1));
  const auto& qc = q.coeffs();
  for (std::size_t k = quot.size(); k-- > 0;) {
    const R& top = rem[k + qc.size() - 1];
    if (top.is_zero()) continue;
    auto c = exact_quotient(top, q.leading());
    if (!c) return std::nullopt;
    for (std::size_t i = 0; i < qc.size(); ++i) rem[k + i] = rem[k + i] - *c * qc[i];
    quot[k] = std::move(*c);
  }
  for (const auto& r : rem) {
    if (!r.is_zero()) return std::nullopt;
  }
  return UniPoly<R>(std::move(quot));
}

/// Polynomials over K in one distinguished variable (t, or the Ore variable).
template <BaseField F>
using KPoly = UniPoly<RatFunc<F>>;

template <BaseField F>
std::optional<KPoly<F>> exact_divide(const KPoly<F>& p, const KPoly<F>& q) {
  return exact_quotient(p, q);
}

}  // namespace orelab
