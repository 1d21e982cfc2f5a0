#include "orelab/corner_ring.hpp"

#include <algorithm>

#include "orelab/errors.hpp"
#include "orelab/sampling.hpp"

namespace orelab {

namespace {

template <BaseField F>
MultiPoly<F> partial_poly(const MultiPoly<F>& p, VarId v) {
  std::vector<typename MultiPoly<F>::Term> out;
  for (const auto& t : p.terms()) {
    std::uint32_t e = t.mono.exponent(v);
    if (e == 0) continue;
    std::vector<Monomial::Entry> es;
    for (const auto& [w, f] : t.mono.entries()) {
      if (w != v) {
        es.emplace_back(w, f);
      } else if (f > 1) {
        es.emplace_back(w, f - 1);
      }
    }
    out.push_back({Monomial::from_entries(std::move(es)), F(t.coeff * FieldTraits<F>::from_int(e))});
  }
  return MultiPoly<F>::from_terms(std::move(out));
}

// Evaluates a Custom table on arbitrary elements through the sigma-Leibniz rule.
template <BaseField F>
class CustomEvaluator {
 public:
  using Elem = RingElem<F>;
  using Custom = typename DerivationSpec<F>::Custom;

  CustomEvaluator(const CornerRing<F>& ring, const Custom& table) : ring_(ring), table_(table) {}

  Elem operator()(const Elem& r) const {
    Elem out = ring_.mul(table_.v_image, Elem::of_k(r.m));
    const auto& cs = r.a.coeffs();
    if (cs.empty()) return out;
    Elem t = Elem::of_a(CoeffElem<F>::monomial(1, RatFunc<F>(1)));
    Elem tpow = Elem::one();  // t^j
    Elem dtpow;               // delta(t^j)
    Elem dt = cs.size() > 1 ? gen(tvar()) : Elem{};
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (j > 0) {
        dtpow = ring_.mul(t, dtpow) + ring_.mul(dt, tpow);
        tpow = ring_.mul(tpow, t);
      }
      if (cs[j].is_zero()) continue;
      Elem c = Elem::of_k(cs[j]);
      out += ring_.mul(c, dtpow) + ring_.mul(field(cs[j]), tpow);
    }
    return out;
  }

 private:
  Elem gen(VarId v) const {
    auto it = table_.images.find(v);
    if (it != table_.images.end()) return it->second;
    const auto& g = ring_.generators();
    if (v == tvar() || std::find(g.begin(), g.end(), v) != g.end()) return Elem{};
    throw DomainError("custom derivation has no image for " + var_name(v));
  }

  // delta(p/q) = sigma(p) delta(q^-1) + delta(p) q^-1, delta(q^-1) = -q^-1 delta(q) q^-1.
  Elem field(const RatFunc<F>& k) const {
    Elem dp = poly(k.num());
    if (k.den().is_one()) return dp;
    Elem qinv = Elem::of_k(RatFunc<F>(k.den()).inverse());
    Elem dq = poly(k.den());
    Elem dqinv = -ring_.mul(ring_.mul(qinv, dq), qinv);
    return ring_.mul(Elem::of_k(RatFunc<F>(k.num())), dqinv) + ring_.mul(dp, qinv);
  }

  Elem poly(const MultiPoly<F>& p) const {
    Elem out;
    for (const auto& term : p.terms()) {
      Elem prefix = Elem::of_k(RatFunc<F>(term.coeff));
      Elem d;  // delta of the monomial processed so far, coefficient included
      for (const auto& [v, e] : term.mono.entries()) {
        Elem y = Elem::of_k(RatFunc<F>::var(v));
        Elem dy = gen(v);
        for (std::uint32_t i = 0; i < e; ++i) {
          d = ring_.mul(prefix, dy) + ring_.mul(d, y);
          prefix = ring_.mul(prefix, y);
        }
      }
      out += d;
    }
    return out;
  }

  const CornerRing<F>& ring_;
  const Custom& table_;
};

template <BaseField F>
std::string render_a(const CoeffElem<F>& a) {
  std::string out;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a.coeffs()[j].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + render(a.coeffs()[j]) + ")";
    if (j == 1) out += "*t";
    if (j > 1) out += "*t^" + std::to_string(j);
  }
  return out;
}

}  // namespace

template <BaseField F>
CornerRing<F>::CornerRing(CoeffRingKind kind, EndoSpec<F> phi, std::vector<VarId> generators)
    : kind_(kind), phi_(std::move(phi)), generators_(std::move(generators)) {
  if (kind_ == CoeffRingKind::PolyT && !phi_.image(tvar())) throw DomainError("phi has no image for t");
  for (VarId g : generators_) {
    if (g == tvar()) throw DomainError("t is not a field generator");
    phi_.image_or_throw(g);
  }
}

template <BaseField F>
RingElem<F> CornerRing<F>::mul(const RingElem<F>& r, const RingElem<F>& s) const {
  RingElem<F> out;
  out.a = r.a * s.a;
  if (!s.m.is_zero() && !r.a.is_zero()) out.m = phi_of(r.a) * s.m;
  if (!r.m.is_zero()) out.m += r.m * bar(s.a);
  return out;
}

template <BaseField F>
std::vector<RingElem<F>> CornerRing<F>::a_generators() const {
  std::vector<RingElem<F>> out;
  if (kind_ == CoeffRingKind::PolyT) out.push_back(RingElem<F>::of_a(CoeffElem<F>::monomial(1, RatFunc<F>(1))));
  for (VarId g : generators_) out.push_back(RingElem<F>::of_k(RatFunc<F>::var(g)));
  return out;
}

template <BaseField F>
RatFunc<F> partial(const RatFunc<F>& f, VarId v) {
  MultiPoly<F> dn = partial_poly(f.num(), v);
  if (f.den().is_one()) return RatFunc<F>(dn);
  MultiPoly<F> dd = partial_poly(f.den(), v);
  return RatFunc<F>::fraction(dn * f.den() - f.num() * dd, f.den() * f.den());
}

template <BaseField F>
RingElem<F> apply_derivation(const CornerRing<F>& ring, const DerivationSpec<F>& spec, const RingElem<F>& r) {
  using S = DerivationSpec<F>;
  return std::visit(
      [&](const auto& d) -> RingElem<F> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, typename S::DeltaOmega>) {
          return RingElem<F>::v(d.omega * r.m);
        } else if constexpr (std::is_same_v<T, typename S::Inner>) {
          RatFunc<F> m = ring.phi_of(d.y.a) * r.m;
          if (!d.y.m.is_zero()) m += d.y.m * (bar(r.a) - ring.phi_of(r.a));
          return RingElem<F>::v(std::move(m));
        } else if constexpr (std::is_same_v<T, typename S::Sum>) {
          RingElem<F> out;
          for (const auto& s : d.terms) out += apply_derivation(ring, s, r);
          return out;
        } else if constexpr (std::is_same_v<T, typename S::CommutativeField>) {
          if (!ring.commutative()) throw DomainError("commutative_field derivation requires A = K and phi = id");
          const RatFunc<F>& a = r.a.coeff(0);
          RatFunc<F> out;
          for (const auto& [v, dv] : d.d) {
            if (!dv.is_zero()) out += partial(a, v) * dv;
          }
          return RingElem<F>::v(std::move(out));
        } else {
          return CustomEvaluator<F>(ring, d)(r);
        }
      },
      spec.variant);
}

template <BaseField F>
LeibnizReport<F> check_sigma_derivation(const CornerRing<F>& ring, const DerivationSpec<F>& spec, int sample_count,
                                        std::uint64_t seed) {
  if (sample_count < 1) throw DomainError("sample_count must be at least 1");
  LeibnizReport<F> rep;
  auto delta = [&](const RingElem<F>& r) { return apply_derivation(ring, spec, r); };
  auto check = [&](const RingElem<F>& r, const RingElem<F>& s) {
    ++rep.checked;
    RingElem<F> dr = delta(r);
    RingElem<F> ds = delta(s);
    if (delta(r + s) != dr + ds) {
      rep.failure = "additivity";
    } else if (delta(ring.mul(r, s)) != ring.mul(sigma(r), ds) + ring.mul(dr, s)) {
      rep.failure = "leibniz";
    } else {
      return true;
    }
    rep.passed = false;
    rep.counterexample = {r, s};
    return false;
  };

  std::vector<RingElem<F>> structured = {RingElem<F>::v(), RingElem<F>::one()};
  for (const auto& g : ring.a_generators()) {
    structured.push_back(g);
    if (!g.a.coeff(0).is_zero()) structured.push_back(RingElem<F>::v(g.a.coeff(0)));
  }
  for (const auto& r : structured) {
    for (const auto& s : structured) {
      if (!check(r, s)) return rep;
    }
  }
  Sampler<F> rnd(seed, ring.generators());
  for (int i = 0; i < sample_count; ++i) {
    RingElem<F> r = rnd.ring_elem(ring.kind());
    RingElem<F> s = rnd.ring_elem(ring.kind());
    if (!check(r, s)) return rep;
  }
  return rep;
}

template <BaseField F>
DerivationSpec<F> DerivationClassification<F>::reconstructed() const {
  using S = DerivationSpec<F>;
  switch (kind) {
    case DerivationKind::Zero:
      return S::sum({});
    case DerivationKind::InnerOnly:
      return S::inner(y);
    case DerivationKind::CommutativeOuter:
      return S::sum({S::delta_omega(omega), S{typename S::CommutativeField{d}}});
    case DerivationKind::OuterSum:
    case DerivationKind::Unknown:
      break;
  }
  return S::sum({S::delta_omega(omega), S::inner(y)});
}

template <BaseField F>
DerivationClassification<F> classify_derivation(const CornerRing<F>& ring, const DerivationSpec<F>& spec) {
  DerivationClassification<F> res;
  auto delta = [&](const RingElem<F>& r) { return apply_derivation(ring, spec, r); };
  RingElem<F> dv = delta(RingElem<F>::v());
  if (!dv.a.is_zero()) throw DomainError("delta(v) has a nonzero A-part; not a sigma-derivation");
  res.omega = dv.m;
  // delta' = delta - delta_omega vanishes on vK.
  auto rest = [&](const RingElem<F>& r) { return delta(r) - RingElem<F>::v(res.omega * r.m); };
  for (VarId g : ring.generators()) {
    if (!rest(RingElem<F>::v(RatFunc<F>::var(g))).is_zero()) {
      res.note = "delta - delta_omega does not vanish on v*" + var_name(g);
      return res;
    }
  }
  std::vector<std::pair<RingElem<F>, RatFunc<F>>> nonzero;  // (a0, s) with delta'(a0) = v s
  for (const auto& g : ring.a_generators()) {
    RingElem<F> dg = rest(g);
    if (!dg.a.is_zero()) {
      res.note = "delta(" + to_string(g) + ") has a nonzero A-part";
      return res;
    }
    if (!dg.m.is_zero()) nonzero.emplace_back(g, dg.m);
  }
  res.membership = image_membership(ring.phi(), ring.kind(), res.omega);

  if (ring.commutative()) {
    for (const auto& [g, s] : nonzero) res.d[g.a.coeff(0).num().leading().mono.entries()[0].first] = s;
    res.reconstruction_verified = true;
    if (!res.d.empty()) {
      res.kind = DerivationKind::CommutativeOuter;
      return res;
    }
    res.y = RingElem<F>::of_k(res.omega);
    res.kind = res.omega.is_zero() ? DerivationKind::Zero : DerivationKind::InnerOnly;
    return res;
  }

  if (!nonzero.empty()) {
    bool found = false;
    for (const auto& [a0, s] : nonzero) {
      RatFunc<F> c = bar(a0.a) - ring.phi_of(a0.a);
      if (c.is_zero()) continue;
      res.y = RingElem<F>::v(s / c);
      found = true;
      break;
    }
    if (!found) {
      res.note = "no generator a0 with delta(a0) != 0 and bar(a0) != phi(a0)";
      return res;
    }
    auto dy = DerivationSpec<F>::inner(res.y);
    for (const auto& g : ring.a_generators()) {
      if (apply_derivation(ring, dy, g) != rest(g)) {
        res.note = "delta - delta_omega is not an inner derivation d_y on " + to_string(g);
        return res;
      }
    }
  }
  res.reconstruction_verified = true;

  switch (res.membership.verdict) {
    case MembershipVerdict::InImage:
      res.y.a = res.y.a + res.membership.preimage;
      res.kind = res.y.is_zero() ? DerivationKind::Zero : DerivationKind::InnerOnly;
      break;
    case MembershipVerdict::NotInImage:
      res.kind = DerivationKind::OuterSum;
      break;
    case MembershipVerdict::Unknown:
      res.kind = DerivationKind::Unknown;
      res.note = "delta = delta_omega + d_y reconstructed; outerness undetermined: " + res.membership.note;
      break;
  }
  return res;
}

template <BaseField F>
PrincipalMembership<F> principal_right_ideal_membership(const CornerRing<F>& ring, const RingElem<F>& s,
                                                        const RingElem<F>& r) {
  PrincipalMembership<F> out;
  if (s.is_zero()) {
    out.member = true;
    return out;
  }
  if (r.is_zero()) return out;
  if (!r.a.is_zero()) {
    auto ga = exact_divide(s.a, r.a);
    if (!ga) return out;
    RatFunc<F> pa = ring.phi_of(r.a);
    if (pa.is_zero()) throw ContractError("phi(a) = 0 for nonzero a; phi is not injective");
    out.cofactor = {*ga, (s.m - r.m * bar(*ga)) / pa};
  } else {
    if (!s.a.is_zero()) return out;
    out.cofactor = RingElem<F>::of_k(s.m / r.m);
  }
  if (ring.mul(r, out.cofactor) != s) throw ContractError("principal_right_ideal_membership: cofactor does not verify");
  out.member = true;
  return out;
}

template <BaseField F>
DuoProbeReport<F> right_duo_probe(const CornerRing<F>& ring, int sample_count, std::uint64_t seed) {
  DuoProbeReport<F> rep;
  rep.advisory = check_injectivity(ring.phi()).verdict != Injectivity::InjectiveCertified;
  Sampler<F> rnd(seed, ring.generators());
  for (int i = 0; i < sample_count; ++i) {
    RingElem<F> s = rnd.ring_elem(ring.kind());
    RingElem<F> r = rnd.nonzero_ring_elem(ring.kind());
    ++rep.checked;
    if (!principal_right_ideal_membership(ring, ring.mul(s, r), r).member) {
      rep.passed = false;
      rep.counterexample = {s, r};
      return rep;
    }
  }
  return rep;
}

template <BaseField F>
std::optional<LeftDuoWitness<F>> left_duo_counterexample(const CornerRing<F>& ring) {
  if (ring.commutative()) return std::nullopt;
  for (VarId g : ring.generators()) {
    RatFunc<F> x = RatFunc<F>::var(g);
    auto mem = image_membership(ring.phi(), ring.kind(), x);
    if (mem.verdict != MembershipVerdict::NotInImage) continue;
    LeftDuoWitness<F> w{RingElem<F>::v(), RingElem<F>::of_k(x), mem.certificate};
    if (ring.mul(w.g, w.s) != RingElem<F>::v(x)) throw ContractError("left_duo_counterexample: v*s != v*bar(s)");
    return w;
  }
  return std::nullopt;
}

template <BaseField F>
std::string to_string(const RingElem<F>& r) {
  std::string out = render_a(r.a);
  if (!r.m.is_zero()) {
    if (!out.empty()) out += " + ";
    out += "v*(" + render(r.m) + ")";
  }
  return out.empty() ? "0" : out;
}

std::string to_string(DerivationKind k) {
  switch (k) {
    case DerivationKind::Zero:
      return "Zero";
    case DerivationKind::InnerOnly:
      return "InnerOnly";
    case DerivationKind::OuterSum:
      return "OuterSum";
    case DerivationKind::CommutativeOuter:
      return "CommutativeOuter";
    case DerivationKind::Unknown:
      return "Unknown";
  }
  return "?";
}

#define ORELAB_INSTANTIATE(F)                                                                                      \
  template class CornerRing<F>;                                                                                    \
  template struct DerivationClassification<F>;                                                                     \
  template RingElem<F> apply_derivation(const CornerRing<F>&, const DerivationSpec<F>&, const RingElem<F>&);       \
  template RatFunc<F> partial(const RatFunc<F>&, VarId);                                                           \
  template LeibnizReport<F> check_sigma_derivation(const CornerRing<F>&, const DerivationSpec<F>&, int,            \
                                                   std::uint64_t);                                                 \
  template DerivationClassification<F> classify_derivation(const CornerRing<F>&, const DerivationSpec<F>&);        \
  template PrincipalMembership<F> principal_right_ideal_membership(const CornerRing<F>&, const RingElem<F>&,       \
                                                                   const RingElem<F>&);                            \
  template DuoProbeReport<F> right_duo_probe(const CornerRing<F>&, int, std::uint64_t);                            \
  template std::optional<LeftDuoWitness<F>> left_duo_counterexample(const CornerRing<F>&);                         \
  template std::string to_string(const RingElem<F>&);

ORELAB_INSTANTIATE(Rational)
ORELAB_INSTANTIATE(ModP)

#undef ORELAB_INSTANTIATE

}  // namespace orelab
