#include "orelab/ore_poly.hpp"

#include <map>

#include "orelab/errors.hpp"
#include "orelab/expr.hpp"

namespace orelab {

namespace {

// sum_i f_i X^i * g with X c = sigma(c) X + delta(c), for any coefficient type
// C of g that Ops can multiply on the left by elements of R.
template <BaseField F, class C, class Ops>
std::vector<C> skew_product(const std::vector<RingElem<F>>& f, const std::vector<C>& g, Ops& ops) {
  if (f.empty() || g.empty()) return {};
  std::vector<C> out(f.size() + g.size() - 1);
  std::vector<C> xg = g;  // X^i g
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i > 0) {
      std::vector<C> next(xg.size() + 1);
      for (std::size_t k = 0; k < xg.size(); ++k) {
        if (ops.is_zero(xg[k])) continue;
        ops.add_to(next[k + 1], ops.sigma(xg[k]));
        ops.add_to(next[k], ops.delta(xg[k]));
      }
      xg = std::move(next);
    }
    if (f[i].is_zero()) continue;
    for (std::size_t k = 0; k < xg.size(); ++k) {
      if (!ops.is_zero(xg[k])) ops.add_to(out[k], ops.mul(f[i], xg[k]));
    }
  }
  return out;
}

template <BaseField F>
struct ConcreteOps {
  const OreRing<F>& ore;
  bool is_zero(const RingElem<F>& r) const { return r.is_zero(); }
  void add_to(RingElem<F>& acc, const RingElem<F>& r) const { acc += r; }
  RingElem<F> sigma(const RingElem<F>& r) const { return orelab::sigma(r); }
  RingElem<F> delta(const RingElem<F>& r) const { return ore.delta_of(r); }
  RingElem<F> mul(const RingElem<F>& a, const RingElem<F>& b) const { return ore.base().mul(a, b); }
};

template <BaseField F>
APoly<F> a_part(const SkewPoly<F>& f) {
  std::vector<CoeffElem<F>> c;
  for (const auto& r : f.coeffs()) c.push_back(r.a);
  return APoly<F>(std::move(c));
}

template <BaseField F>
KPoly<F> v_part(const SkewPoly<F>& f) {
  std::vector<RatFunc<F>> c;
  for (const auto& r : f.coeffs()) c.push_back(r.m);
  return KPoly<F>(std::move(c));
}

template <BaseField F>
KPoly<F> bar_poly(const APoly<F>& p) {
  std::vector<RatFunc<F>> c;
  for (const auto& a : p.coeffs()) c.push_back(bar(a));
  return KPoly<F>(std::move(c));
}

template <BaseField F>
APoly<F> lift(const KPoly<F>& p) {
  std::vector<CoeffElem<F>> c;
  for (const auto& k : p.coeffs()) c.push_back(CoeffElem<F>(k));
  return APoly<F>(std::move(c));
}

// ---- linear-solve oracle ----

template <BaseField F>
using Lin = std::map<int, RatFunc<F>>;

template <BaseField F>
void axpy(Lin<F>& dst, const RatFunc<F>& c, const Lin<F>& src) {
  if (c.is_zero()) return;
  for (const auto& [u, a] : src) {
    RatFunc<F> v = dst[u] + c * a;
    if (v.is_zero()) {
      dst.erase(u);
    } else {
      dst[u] = std::move(v);
    }
  }
}

template <BaseField F>
void add_term(Lin<F>& dst, int u, const RatFunc<F>& c) {
  if (c.is_zero()) return;
  RatFunc<F> v = dst[u] + c;
  if (v.is_zero()) {
    dst.erase(u);
  } else {
    dst[u] = std::move(v);
  }
}

// Symbolic element of R whose K-components are linear forms in the unknowns.
template <BaseField F>
struct Sym {
  std::vector<Lin<F>> a;  // per t-degree
  Lin<F> m;
};

template <BaseField F>
std::size_t cost(const RatFunc<F>& c) {
  return c.num().size() + c.den().size() + c.num().total_degree() + c.den().total_degree();
}

// Incremental reduced row echelon form: pivot u satisfies u + sum c_w w = rhs.
template <BaseField F>
class Rref {
 public:
  void add(Lin<F> row, RatFunc<F> rhs) {
    if (inconsistent_) return;
    std::vector<int> hit;
    for (const auto& [u, c] : row) {
      if (pivots_.count(u)) hit.push_back(u);
    }
    for (int u : hit) {
      auto it = row.find(u);
      if (it == row.end()) continue;
      RatFunc<F> c = it->second;
      const auto& [prow, prhs] = pivots_.at(u);
      row.erase(it);
      axpy(row, -c, prow);
      rhs -= c * prhs;
    }
    if (row.empty()) {
      if (!rhs.is_zero()) inconsistent_ = true;
      return;
    }
    auto best = row.begin();
    for (auto it = row.begin(); it != row.end(); ++it) {
      if (cost(it->second) < cost(best->second)) best = it;
    }
    int p = best->first;
    RatFunc<F> inv = best->second.inverse();
    row.erase(best);
    for (auto& [u, c] : row) c = c * inv;
    rhs = rhs * inv;
    for (auto& [u, entry] : pivots_) {
      auto it = entry.first.find(p);
      if (it == entry.first.end()) continue;
      RatFunc<F> c = it->second;
      entry.first.erase(it);
      axpy(entry.first, -c, row);
      entry.second -= c * rhs;
    }
    pivots_.emplace(p, std::make_pair(std::move(row), std::move(rhs)));
  }

  bool inconsistent() const { return inconsistent_; }

  std::optional<RatFunc<F>> determined(int u) const {
    auto it = pivots_.find(u);
    if (it == pivots_.end() || !it->second.first.empty()) return std::nullopt;
    return it->second.second;
  }

  // Value with every free unknown set to zero.
  RatFunc<F> particular(int u) const {
    auto it = pivots_.find(u);
    return it == pivots_.end() ? RatFunc<F>{} : it->second.second;
  }

 private:
  std::map<int, std::pair<Lin<F>, RatFunc<F>>> pivots_;
  bool inconsistent_ = false;
};

template <BaseField F>
class LinearOracle {
 public:
  enum class Kind { Base, Phi, Delta };
  struct Unknown {
    Kind kind;
    int base;
  };

  explicit LinearOracle(const OreRing<F>& ore) : ore_(ore), ring_(ore.base()) {
    RingElem<F> dv = ore.delta_of(RingElem<F>::v());
    if (!dv.a.is_zero()) throw ContractError("delta(v) has a nonzero A-part");
    omega_v_ = dv.m;
    a_linear_ = ore.omega().has_value();
  }

  int fresh() {
    unknowns_.push_back({Kind::Base, -1});
    return static_cast<int>(unknowns_.size()) - 1;
  }

  const std::vector<Unknown>& unknowns() const { return unknowns_; }

  // Sym interface for skew_product.
  bool is_zero(const Sym<F>& s) const {
    if (!s.m.empty()) return false;
    for (const auto& l : s.a) {
      if (!l.empty()) return false;
    }
    return true;
  }

  void add_to(Sym<F>& acc, const Sym<F>& s) const {
    if (acc.a.size() < s.a.size()) acc.a.resize(s.a.size());
    for (std::size_t e = 0; e < s.a.size(); ++e) axpy(acc.a[e], RatFunc<F>(1), s.a[e]);
    axpy(acc.m, RatFunc<F>(1), s.m);
  }

  Sym<F> sigma(const Sym<F>& s) const { return {s.a, {}}; }

  Sym<F> delta(const Sym<F>& s) {
    Sym<F> out;
    axpy(out.m, omega_v_, s.m);
    if (a_linear_) return out;
    for (std::size_t e = 0; e < s.a.size(); ++e) {
      for (const auto& [u, lambda] : s.a[e]) {
        RatFunc<F> pl = ring_.phi_of(CoeffElem<F>(lambda));
        if (e == 0) {
          add_term(out.m, link(Kind::Delta, u), pl);
          add_term(out.m, u, delta_k(lambda));
        } else {
          add_term(out.m, link(Kind::Phi, u), pl * tau(e));
        }
      }
    }
    return out;
  }

  Sym<F> mul(const RingElem<F>& r, const Sym<F>& s) const {
    Sym<F> out;
    const auto& ra = r.a.coeffs();
    if (!ra.empty() && !s.a.empty()) out.a.resize(ra.size() + s.a.size() - 1);
    for (std::size_t i = 0; i < ra.size(); ++i) {
      for (std::size_t j = 0; j < s.a.size(); ++j) axpy(out.a[i + j], ra[i], s.a[j]);
    }
    if (!s.m.empty() && !r.a.is_zero()) axpy(out.m, ring_.phi_of(r.a), s.m);
    if (!r.m.is_zero() && !s.a.empty()) axpy(out.m, r.m, s.a[0]);
    return out;
  }

  // Value of a link unknown from the value of its argument.
  RatFunc<F> evaluate_link(Kind kind, const RatFunc<F>& value) const {
    if (kind == Kind::Phi) return ring_.phi_of(CoeffElem<F>(value));
    return delta_k(value);
  }

 private:
  int link(Kind kind, int u) {
    auto key = std::make_pair(static_cast<int>(kind), u);
    auto it = links_.find(key);
    if (it != links_.end()) return it->second;
    unknowns_.push_back({kind, u});
    int id = static_cast<int>(unknowns_.size()) - 1;
    links_.emplace(key, id);
    return id;
  }

  // delta(k) = v * delta_k(k) for k in K.
  RatFunc<F> delta_k(const RatFunc<F>& k) const {
    RingElem<F> d = ore_.delta_of(RingElem<F>::of_k(k));
    if (!d.a.is_zero()) throw ContractError("delta(K) is not contained in vK");
    return d.m;
  }

  const RatFunc<F>& tau(std::size_t e) {
    while (tau_.size() <= e) {
      RingElem<F> d = ore_.delta_of(RingElem<F>::of_a(CoeffElem<F>::monomial(tau_.size(), RatFunc<F>(1))));
      if (!d.a.is_zero()) throw ContractError("delta(A) is not contained in vK");
      tau_.push_back(d.m);
    }
    return tau_[e];
  }

  const OreRing<F>& ore_;
  const CornerRing<F>& ring_;
  RatFunc<F> omega_v_;
  bool a_linear_ = false;  // delta vanishes on A
  std::vector<Unknown> unknowns_;
  std::map<std::pair<int, int>, int> links_;
  std::vector<RatFunc<F>> tau_;
};

template <BaseField F>
class SkewAlgebra {
 public:
  using value_type = SkewPoly<F>;
  explicit SkewAlgebra(const OreRing<F>& ore) : ore_(ore) {}

  value_type number(const std::string& digits) {
    return value_type::constant(RingElem<F>::of_k(RatFunc<F>(FieldTraits<F>::from_digits(digits))));
  }
  value_type symbol(const std::string& name, std::size_t pos) {
    if (name == "X") return value_type::x();
    if (name == "v") return value_type::constant(RingElem<F>::v());
    if (name == "t") {
      if (ore_.base().kind() != CoeffRingKind::PolyT) throw ParseError("t is not available when A = K", pos);
      return value_type::constant(RingElem<F>::of_a(CoeffElem<F>::monomial(1, RatFunc<F>(1))));
    }
    return value_type::constant(RingElem<F>::of_k(RatFunc<F>::var(VarRegistry::global().intern(name))));
  }
  value_type add(const value_type& a, const value_type& b) { return a + b; }
  value_type sub(const value_type& a, const value_type& b) { return a - b; }
  value_type neg(const value_type& a) { return -a; }
  value_type mul(const value_type& a, const value_type& b) { return skew_mul(ore_, a, b); }
  value_type pow(const value_type& a, std::uint32_t e) { return skew_pow(ore_, a, e); }
  value_type div(const value_type& a, const value_type& b, std::size_t pos) {
    if (b.degree() != 0 || !b.coeff(0).m.is_zero() || b.coeff(0).a.degree() != 0) {
      throw ParseError("division is only by nonzero elements of K", pos);
    }
    return skew_mul(ore_, a, value_type::constant(RingElem<F>::of_k(b.coeff(0).a.coeff(0).inverse())));
  }

 private:
  const OreRing<F>& ore_;
};

}  // namespace

template <BaseField F>
const RatFunc<F>& OreRing<F>::require_omega(const char* op) const {
  if (auto* d = std::get_if<typename DerivationSpec<F>::DeltaOmega>(&delta_.variant)) return d->omega;
  throw ContractError(std::string(op) + " requires delta = delta_omega");
}

template <BaseField F>
SkewPoly<F> skew_mul(const OreRing<F>& ore, const SkewPoly<F>& f, const SkewPoly<F>& g) {
  ConcreteOps<F> ops{ore};
  return SkewPoly<F>(skew_product<F>(f.coeffs(), g.coeffs(), ops));
}

template <BaseField F>
SkewPoly<F> skew_pow(const OreRing<F>& ore, const SkewPoly<F>& f, std::uint32_t e) {
  SkewPoly<F> out = SkewPoly<F>::constant(RingElem<F>::one());
  for (std::uint32_t i = 0; i < e; ++i) out = skew_mul(ore, out, f);
  return out;
}

template <BaseField F>
SplitPoly<F> split(const SkewPoly<F>& f) {
  std::vector<RingElem<F>> a, v;
  for (const auto& c : f.coeffs()) {
    a.push_back(RingElem<F>::of_a(c.a));
    v.push_back(RingElem<F>::v(c.m));
  }
  return {SkewPoly<F>(std::move(a)), SkewPoly<F>(std::move(v))};
}

template <BaseField F>
TOmegaElem<F> tomega_mul(const OreRing<F>& ore, const TOmegaElem<F>& e1, const TOmegaElem<F>& e2) {
  const RatFunc<F>& omega = ore.require_omega("tomega_mul");
  RatFunc<F> d = phi_omega(ore.base().phi(), ore.base().kind(), e1.p, omega);
  return {e1.p * e2.p, e2.q.scaled(d) + e1.q * bar_poly(e2.p)};
}

template <BaseField F>
TOmegaElem<F> phi_iso(const OreRing<F>& ore, const SkewPoly<F>& f) {
  ore.require_omega("phi_iso");
  return {a_part(f), v_part(f)};
}

template <BaseField F>
SkewPoly<F> phi_iso_inv(const OreRing<F>& ore, const TOmegaElem<F>& e) {
  ore.require_omega("phi_iso_inv");
  std::size_t n = std::max(e.p.size(), e.q.size());
  std::vector<RingElem<F>> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = {e.p.coeff(k), e.q.coeff(k)};
  return SkewPoly<F>(std::move(c));
}

template <BaseField F>
RatFunc<F> d_value(const OreRing<F>& ore, const SkewPoly<F>& f) {
  const RatFunc<F>& omega = ore.require_omega("d_value");
  return phi_omega(ore.base().phi(), ore.base().kind(), a_part(f), omega);
}

template <BaseField F>
bool vf_is_zero(const SkewPoly<F>& f) {
  for (const auto& c : f.coeffs()) {
    if (!bar(c.a).is_zero()) return false;
  }
  return true;
}

template <BaseField F>
RightMembership<F> right_ideal_membership(const OreRing<F>& ore, const SkewPoly<F>& h, const SkewPoly<F>& f) {
  ore.require_omega("right_ideal_membership");
  RightMembership<F> res;
  if (h.is_zero()) {
    res.member = true;
    res.reason = "h = 0";
    return res;
  }
  if (f.is_zero()) {
    res.reason = "f = 0 and h != 0";
    return res;
  }
  APoly<F> fa = a_part(f), ha = a_part(h);
  KPoly<F> qf = v_part(f), hv = v_part(h);
  TOmegaElem<F> g;
  if (!fa.is_zero()) {
    RatFunc<F> df = d_value(ore, f);
    res.decision_case = df.is_zero() ? 2 : 1;
    auto ga = exact_quotient(ha, fa);
    if (!ga) {
      res.reason = "f_A does not divide h_A in A[x]";
      return res;
    }
    g.p = std::move(*ga);
    KPoly<F> rest = hv - qf * bar_poly(g.p);
    if (!df.is_zero()) {
      g.q = rest.scaled(df.inverse());
    } else if (!rest.is_zero()) {
      res.reason = "D_f = 0 and h_v != q_f * bar(g_A)";
      return res;
    }
  } else {
    res.decision_case = 3;
    if (!ha.is_zero()) {
      res.reason = "f_A = 0 and h_A != 0";
      return res;
    }
    auto gbar = exact_divide(hv, qf);
    if (!gbar) {
      res.reason = "q_f does not divide h_v in K[x]";
      return res;
    }
    g.p = lift(*gbar);
  }
  res.witness = phi_iso_inv(ore, g);
  if (skew_mul(ore, f, res.witness) != h) throw ContractError("right_ideal_membership: witness does not verify");
  res.member = true;
  res.reason = "witness verified";
  return res;
}

template <BaseField F>
LinearSolveResult<F> linear_solve_membership(const OreRing<F>& ore, const SkewPoly<F>& h, const SkewPoly<F>& f,
                                             int degree_bound) {
  LinearSolveResult<F> res;
  res.degree_bound = std::max(degree_bound, 0);
  if (h.is_zero()) {
    res.outcome = ProbeOutcome::Feasible;
    return res;
  }
  if (f.is_zero()) {
    res.outcome = ProbeOutcome::Infeasible;
    res.note = "f = 0";
    return res;
  }
  long tdeg = 0;
  for (const auto& c : h.coeffs()) tdeg = std::max(tdeg, c.a.degree());
  if (ore.base().kind() == CoeffRingKind::Field) tdeg = 0;

  LinearOracle<F> oracle(ore);
  std::size_t n = static_cast<std::size_t>(res.degree_bound) + 1;
  std::vector<std::vector<int>> alpha(n);
  std::vector<int> beta(n);
  std::vector<Sym<F>> g(n);
  for (std::size_t j = 0; j < n; ++j) {
    g[j].a.resize(static_cast<std::size_t>(tdeg) + 1);
    for (long e = 0; e <= tdeg; ++e) {
      int u = oracle.fresh();
      alpha[j].push_back(u);
      g[j].a[static_cast<std::size_t>(e)][u] = RatFunc<F>(1);
    }
    beta[j] = oracle.fresh();
    g[j].m[beta[j]] = RatFunc<F>(1);
  }
  std::vector<Sym<F>> prod = skew_product<F>(f.coeffs(), g, oracle);

  Rref<F> sys;
  std::size_t rows = std::max(prod.size(), h.coeffs().size());
  for (std::size_t k = 0; k < rows; ++k) {
    Sym<F> lhs = k < prod.size() ? prod[k] : Sym<F>{};
    RingElem<F> rhs = h.coeff(k);
    std::size_t te = std::max(lhs.a.size(), rhs.a.size());
    for (std::size_t e = 0; e < te; ++e) {
      sys.add(e < lhs.a.size() ? lhs.a[e] : Lin<F>{}, rhs.a.coeff(e));
      ++res.equations;
    }
    sys.add(lhs.m, rhs.m);
    ++res.equations;
  }

  // Prolongation: a link whose argument is determined gets its value.
  using Kind = typename LinearOracle<F>::Kind;
  const auto& unknowns = oracle.unknowns();
  res.unknowns = static_cast<int>(unknowns.size());
  std::vector<bool> resolved(unknowns.size(), false);
  for (bool progress = true; progress && !sys.inconsistent();) {
    progress = false;
    for (std::size_t l = 0; l < unknowns.size(); ++l) {
      if (resolved[l] || unknowns[l].kind == Kind::Base) continue;
      auto val = sys.determined(unknowns[l].base);
      if (!val) continue;
      resolved[l] = true;
      progress = true;
      sys.add(Lin<F>{{static_cast<int>(l), RatFunc<F>(1)}}, oracle.evaluate_link(unknowns[l].kind, *val));
      ++res.equations;
    }
  }
  if (sys.inconsistent()) {
    res.outcome = ProbeOutcome::Infeasible;
    res.note = "no g with deg g <= " + std::to_string(res.degree_bound);
    return res;
  }
  for (std::size_t l = 0; l < unknowns.size(); ++l) {
    if (unknowns[l].kind == Kind::Base) continue;
    RatFunc<F> want = oracle.evaluate_link(unknowns[l].kind, sys.particular(unknowns[l].base));
    if (sys.particular(static_cast<int>(l)) != want) {
      res.note = "particular solution violates a nonlinear constraint";
      return res;
    }
  }
  std::vector<RingElem<F>> wc(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<RatFunc<F>> a;
    for (int u : alpha[j]) a.push_back(sys.particular(u));
    wc[j] = {CoeffElem<F>(std::move(a)), sys.particular(beta[j])};
  }
  SkewPoly<F> w(std::move(wc));
  if (skew_mul(ore, f, w) != h) {
    res.note = "particular solution does not verify";
    return res;
  }
  res.outcome = ProbeOutcome::Feasible;
  res.witness = std::move(w);
  return res;
}

template <BaseField F>
std::vector<SkewPoly<F>> standard_multipliers(const OreRing<F>& ore) {
  std::vector<SkewPoly<F>> out = {SkewPoly<F>::constant(RingElem<F>::v())};
  for (const auto& g : ore.base().a_generators()) out.push_back(SkewPoly<F>::constant(g));
  out.push_back(SkewPoly<F>::x());
  return out;
}

template <BaseField F>
IdealClassification<F> classify_principal_ideal(const OreRing<F>& ore, const SkewPoly<F>& f, std::uint64_t seed) {
  IdealClassification<F> res;
  res.d_f = d_value(ore, f);
  SplitPoly<F> parts = split(f);
  if (!res.d_f.is_zero()) {
    res.two_sided = true;
    res.reason = IdealReason::DNonzero;
    return res;
  }
  if (parts.a.is_zero()) {
    res.two_sided = true;
    res.reason = IdealReason::CoeffsInVK;
    return res;
  }
  if (vf_is_zero(f) && parts.v.is_zero()) {
    res.two_sided = true;
    res.reason = IdealReason::CaseC;
    return res;
  }
  std::vector<SkewPoly<F>> candidates = standard_multipliers(ore);
  Sampler<F> rnd(seed, ore.base().generators());
  for (int i = 0; i < 16; ++i) candidates.push_back(sample_skew(rnd, ore.base().kind(), 2));
  for (const auto& r : candidates) {
    SkewPoly<F> h = skew_mul(ore, r, f);
    RightMembership<F> m = right_ideal_membership(ore, h, f);
    if (m.member) continue;
    res.multiplier = r;
    res.product = h;
    res.refutation = m.reason;
    res.reverified = !right_ideal_membership(ore, h, f).member;
    long slack = 2 * f.degree();
    res.oracle_confirms = linear_solve_membership(ore, h, f, static_cast<int>(std::max(0L, h.degree() - f.degree() + slack)))
                              .outcome == ProbeOutcome::Infeasible;
    return res;
  }
  throw ContractError("classify_principal_ideal: no multiplier refutes although D_f = 0 and f is not in case (b) or (c)");
}

template <BaseField F>
BruteProbeReport<F> brute_force_two_sided_probe(const OreRing<F>& ore, const SkewPoly<F>& f,
                                                const std::vector<SkewPoly<F>>& multipliers, int degree_slack) {
  BruteProbeReport<F> rep;
  long slack = degree_slack < 0 ? 2 * std::max(0L, f.degree()) : degree_slack;
  for (const auto& r : multipliers) {
    BruteProbeEntry<F> e;
    e.multiplier = r;
    if (f.is_zero()) {
      e.outcome = ProbeOutcome::Feasible;
      e.structural_member = true;
      e.agrees = true;
      rep.entries.push_back(std::move(e));
      continue;
    }
    SkewPoly<F> h = skew_mul(ore, r, f);
    int bound = static_cast<int>(std::max(0L, h.degree() - f.degree() + slack));
    e.outcome = linear_solve_membership(ore, h, f, bound).outcome;
    e.structural_member = right_ideal_membership(ore, h, f).member;
    e.agrees = (e.outcome == ProbeOutcome::Feasible && e.structural_member) ||
               (e.outcome == ProbeOutcome::Infeasible && !e.structural_member);
    rep.agrees = rep.agrees && e.agrees;
    rep.refuted = rep.refuted || e.outcome == ProbeOutcome::Infeasible;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

template <BaseField F>
SkewPoly<F> derivation_shift_iso(const OreRing<F>& target, const OreRing<F>& source, const SkewPoly<F>& f,
                                 const RingElem<F>& y) {
  const CornerRing<F>& ring = target.base();
  auto dy = DerivationSpec<F>::inner(y);
  std::vector<RingElem<F>> probes = ring.a_generators();
  probes.push_back(RingElem<F>::v());
  for (VarId g : ring.generators()) probes.push_back(RingElem<F>::v(RatFunc<F>::var(g)));
  for (const auto& r : probes) {
    if (source.delta_of(r) - target.delta_of(r) != apply_derivation(ring, dy, r)) {
      throw ContractError("derivation_shift_iso: delta2 - delta1 != d_y on " + to_string(r));
    }
  }
  SkewPoly<F> z(std::vector<RingElem<F>>{y, RingElem<F>::one()});
  SkewPoly<F> zk = SkewPoly<F>::constant(RingElem<F>::one());
  SkewPoly<F> out;
  for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
    if (k > 0) zk = skew_mul(target, zk, z);
    if (!f.coeffs()[k].is_zero()) out = out + skew_mul(target, SkewPoly<F>::constant(f.coeffs()[k]), zk);
  }
  return out;
}

template <BaseField F>
MarksReport verify_marks_conditions(const OreRing<F>& ore, int sample_count, std::uint64_t seed) {
  ore.require_omega("verify_marks_conditions");
  const CornerRing<F>& ring = ore.base();
  MarksReport rep;
  MarksCheck duo{"R right duo"}, stable{"ideals of R are sigma- and delta-stable"},
      idem{"sigma^2 = sigma"}, zero{"sigma delta = 0"}, comm{"commutators lie in vK[x]"};

  DuoProbeReport<F> d = right_duo_probe(ring, sample_count, seed + 1);
  duo.checked = d.checked;
  duo.passed = d.passed;
  if (!d.passed) duo.detail = "s*r not in rR for s = " + to_string(d.counterexample->first);

  Sampler<F> rnd(seed, ring.generators());
  auto fail = [](MarksCheck& c, const std::string& what) {
    if (c.passed) c.detail = what;
    c.passed = false;
  };
  auto a_free = [](const SkewPoly<F>& p) {
    for (const auto& c : p.coeffs()) {
      if (!c.a.is_zero()) return false;
    }
    return true;
  };
  for (int i = 0; i < sample_count; ++i) {
    RingElem<F> r = rnd.nonzero_ring_elem(ring.kind());
    RingElem<F> s = rnd.ring_elem(ring.kind());

    ++idem.checked;
    if (sigma(sigma(r)) != sigma(r)) fail(idem, "sigma(sigma(r)) != sigma(r) for r = " + to_string(r));
    ++zero.checked;
    if (!sigma(ore.delta_of(r)).is_zero()) fail(zero, "sigma(delta(r)) != 0 for r = " + to_string(r));

    ++stable.checked;
    RingElem<F> e = ring.mul(r, s);
    if (!principal_right_ideal_membership(ring, sigma(e), r).member ||
        !principal_right_ideal_membership(ring, ore.delta_of(e), r).member) {
      fail(stable, "rR not stable for r = " + to_string(r));
    }

    ++comm.checked;
    SkewPoly<F> pr = SkewPoly<F>::constant(r), ps = SkewPoly<F>::constant(s), x = SkewPoly<F>::x();
    SkewPoly<F> f = sample_skew(rnd, ring.kind(), 2), g = sample_skew(rnd, ring.kind(), 2);
    if (!a_free(skew_mul(ore, x, pr) - skew_mul(ore, pr, x)) || !a_free(skew_mul(ore, pr, ps) - skew_mul(ore, ps, pr)) ||
        !a_free(skew_mul(ore, f, g) - skew_mul(ore, g, f))) {
      fail(comm, "commutator with nonzero A-part for r = " + to_string(r));
    }
  }
  rep.checks = {duo, stable, idem, zero, comm};
  return rep;
}

template <BaseField F>
CommutativeVXReport<F> commutative_vx_check(const OreRing<F>& ore, int max_bound) {
  CommutativeVXReport<F> rep;
  if (!ore.base().commutative()) throw ContractError("commutative_vx_check requires A = K and phi = id");
  SkewPoly<F> x = SkewPoly<F>::x();
  SkewPoly<F> h = skew_mul(ore, SkewPoly<F>::constant(RingElem<F>::v()), x);
  for (int n = 0; n <= max_bound; ++n) {
    LinearSolveResult<F> r = linear_solve_membership(ore, h, x, n);
    if (r.outcome != ProbeOutcome::Infeasible) {
      rep.outcome = r.outcome;
      rep.note = "degree bound " + std::to_string(n) + ": " + to_string(r.outcome) + " " + r.note;
      return rep;
    }
    rep.bounds.push_back(n);
  }
  rep.outcome = ProbeOutcome::Infeasible;
  rep.note = "v*X not in X*R[X] for every deg g <= " + std::to_string(max_bound);
  return rep;
}

template <BaseField F>
SkewPoly<F> parse_skew(const OreRing<F>& ore, std::string_view text) {
  SkewAlgebra<F> alg(ore);
  return evaluate(parse_expression(text), alg);
}

template <BaseField F>
std::string to_string(const SkewPoly<F>& f) {
  std::string out;
  for (std::size_t k = f.coeffs().size(); k-- > 0;) {
    const auto& c = f.coeffs()[k];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")";
    if (k == 1) out += "*X";
    if (k > 1) out += "*X^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

std::string to_string(ProbeOutcome o) {
  switch (o) {
    case ProbeOutcome::Feasible:
      return "Feasible";
    case ProbeOutcome::Infeasible:
      return "Infeasible";
    case ProbeOutcome::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::string to_string(IdealReason r) {
  switch (r) {
    case IdealReason::DNonzero:
      return "DNonzero";
    case IdealReason::CoeffsInVK:
      return "CoeffsInVK";
    case IdealReason::CaseC:
      return "CaseC";
  }
  return "?";
}

#define ORELAB_INSTANTIATE(F)                                                                                      \
  template class OreRing<F>;                                                                                       \
  template SkewPoly<F> skew_mul(const OreRing<F>&, const SkewPoly<F>&, const SkewPoly<F>&);                        \
  template SkewPoly<F> skew_pow(const OreRing<F>&, const SkewPoly<F>&, std::uint32_t);                             \
  template SplitPoly<F> split(const SkewPoly<F>&);                                                                 \
  template TOmegaElem<F> tomega_mul(const OreRing<F>&, const TOmegaElem<F>&, const TOmegaElem<F>&);                \
  template TOmegaElem<F> phi_iso(const OreRing<F>&, const SkewPoly<F>&);                                           \
  template SkewPoly<F> phi_iso_inv(const OreRing<F>&, const TOmegaElem<F>&);                                       \
  template RatFunc<F> d_value(const OreRing<F>&, const SkewPoly<F>&);                                              \
  template bool vf_is_zero(const SkewPoly<F>&);                                                                    \
  template RightMembership<F> right_ideal_membership(const OreRing<F>&, const SkewPoly<F>&, const SkewPoly<F>&);   \
  template LinearSolveResult<F> linear_solve_membership(const OreRing<F>&, const SkewPoly<F>&, const SkewPoly<F>&, \
                                                        int);                                                      \
  template std::vector<SkewPoly<F>> standard_multipliers(const OreRing<F>&);                                       \
  template IdealClassification<F> classify_principal_ideal(const OreRing<F>&, const SkewPoly<F>&, std::uint64_t);  \
  template BruteProbeReport<F> brute_force_two_sided_probe(const OreRing<F>&, const SkewPoly<F>&,                  \
                                                           const std::vector<SkewPoly<F>>&, int);                  \
  template SkewPoly<F> derivation_shift_iso(const OreRing<F>&, const OreRing<F>&, const SkewPoly<F>&,              \
                                            const RingElem<F>&);                                                   \
  template MarksReport verify_marks_conditions(const OreRing<F>&, int, std::uint64_t);                             \
  template CommutativeVXReport<F> commutative_vx_check(const OreRing<F>&, int);                                    \
  template SkewPoly<F> parse_skew(const OreRing<F>&, std::string_view);                                            \
  template std::string to_string(const SkewPoly<F>&);

ORELAB_INSTANTIATE(Rational)
ORELAB_INSTANTIATE(ModP)

#undef ORELAB_INSTANTIATE

}  // namespace orelab
