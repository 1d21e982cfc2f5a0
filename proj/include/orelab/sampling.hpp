#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "orelab/corner_ring.hpp"

namespace orelab {

/// Seeded sampler for small random elements: coefficients n/d with |n|, d <= 20,
/// at most 3 variables per element, total degree <= 3.
template <BaseField F>
class Sampler {
 public:
  Sampler(std::uint64_t seed, std::vector<VarId> vars) : rng_(seed), vars_(std::move(vars)) {}

  std::uint64_t below(std::uint64_t n) { return rng_() % n; }
  long long between(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  F coeff() {
    long long n = between(-20, 20);
    if (n == 0) n = 1;
    return FieldTraits<F>::from_fraction(n, between(1, 20));
  }

  MultiPoly<F> poly(int max_terms = 3, std::uint32_t max_deg = 3) {
    std::vector<VarId> support;
    if (!vars_.empty()) {
      std::size_t nv = static_cast<std::size_t>(between(1, 3));
      for (std::size_t i = 0; i < nv; ++i) support.push_back(vars_[below(vars_.size())]);
    }
    std::vector<typename MultiPoly<F>::Term> terms;
    int n = static_cast<int>(between(1, max_terms));
    for (int i = 0; i < n; ++i) {
      std::vector<Monomial::Entry> es;
      std::uint32_t budget = support.empty() ? 0 : static_cast<std::uint32_t>(between(0, max_deg));
      while (budget > 0) {
        std::uint32_t e = static_cast<std::uint32_t>(between(1, budget));
        es.emplace_back(support[below(support.size())], e);
        budget -= e;
      }
      terms.push_back({Monomial::from_entries(es), coeff()});
    }
    return MultiPoly<F>::from_terms(std::move(terms));
  }

  RatFunc<F> ratfunc() {
    MultiPoly<F> n = poly();
    if (below(4) != 0) return RatFunc<F>(n);
    MultiPoly<F> d = poly(2, 2);
    if (d.is_zero()) return RatFunc<F>(n);
    return RatFunc<F>::fraction(n, d);
  }

  RatFunc<F> nonzero_ratfunc() {
    for (;;) {
      RatFunc<F> f = ratfunc();
      if (!f.is_zero()) return f;
    }
  }

  /// Element of A; t-degree at most 2 when A = K[t].
  CoeffElem<F> coeff_elem(CoeffRingKind kind) {
    if (kind == CoeffRingKind::Field) return CoeffElem<F>(ratfunc());
    std::vector<RatFunc<F>> cs;
    std::size_t deg = below(3);
    for (std::size_t j = 0; j <= deg; ++j) cs.push_back(below(3) == 0 ? RatFunc<F>{} : ratfunc());
    return CoeffElem<F>(std::move(cs));
  }

  RingElem<F> ring_elem(CoeffRingKind kind) {
    CoeffElem<F> a = below(5) == 0 ? CoeffElem<F>{} : coeff_elem(kind);
    RatFunc<F> m = below(4) == 0 ? RatFunc<F>{} : ratfunc();
    return {std::move(a), std::move(m)};
  }

  RingElem<F> nonzero_ring_elem(CoeffRingKind kind) {
    for (;;) {
      RingElem<F> r = ring_elem(kind);
      if (!r.is_zero()) return r;
    }
  }

 private:
  std::mt19937_64 rng_;
  std::vector<VarId> vars_;
};

}  // namespace orelab
