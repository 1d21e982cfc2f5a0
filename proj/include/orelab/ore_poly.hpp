#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orelab/corner_ring.hpp"
#include "orelab/sampling.hpp"

namespace orelab {

/// Sum of c_k X^k with left coefficients c_k in R.
template <BaseField F>
class SkewPoly {
 public:
  SkewPoly() = default;
  explicit SkewPoly(std::vector<RingElem<F>> coeffs) : c_(std::move(coeffs)) { trim(); }

  static SkewPoly constant(RingElem<F> r) { return SkewPoly(std::vector<RingElem<F>>{std::move(r)}); }
  static SkewPoly monomial(std::size_t k, RingElem<F> r) {
    std::vector<RingElem<F>> c(k + 1);
    c[k] = std::move(r);
    return SkewPoly(std::move(c));
  }
  static SkewPoly x(std::size_t k = 1) { return monomial(k, RingElem<F>::one()); }

  bool is_zero() const noexcept { return c_.empty(); }
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  const std::vector<RingElem<F>>& coeffs() const noexcept { return c_; }
  RingElem<F> coeff(std::size_t k) const { return k < c_.size() ? c_[k] : RingElem<F>{}; }

  SkewPoly operator-() const {
    SkewPoly out = *this;
    for (auto& c : out.c_) c = -c;
    return out;
  }
  SkewPoly operator+(const SkewPoly& o) const {
    std::vector<RingElem<F>> c(std::max(c_.size(), o.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = coeff(k) + o.coeff(k);
    return SkewPoly(std::move(c));
  }
  SkewPoly operator-(const SkewPoly& o) const { return *this + (-o); }

  friend bool operator==(const SkewPoly&, const SkewPoly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<RingElem<F>> c_;
};

/// R[X; sigma, delta] over a corner ring.
template <BaseField F>
class OreRing {
 public:
  OreRing(CornerRing<F> base, DerivationSpec<F> delta) : base_(std::move(base)), delta_(std::move(delta)) {}

  const CornerRing<F>& base() const noexcept { return base_; }
  const DerivationSpec<F>& delta() const noexcept { return delta_; }
  /// omega when delta = delta_omega.
  std::optional<RatFunc<F>> omega() const { return delta_.as_delta_omega(); }
  /// Throws ContractError unless delta = delta_omega.
  const RatFunc<F>& require_omega(const char* op) const;

  RingElem<F> delta_of(const RingElem<F>& r) const { return apply_derivation(base_, delta_, r); }

 private:
  CornerRing<F> base_;
  DerivationSpec<F> delta_;
};

/// Product in R[X; sigma, delta] via X a = sigma(a) X + delta(a).
template <BaseField F>
SkewPoly<F> skew_mul(const OreRing<F>& ore, const SkewPoly<F>& f, const SkewPoly<F>& g);

template <BaseField F>
SkewPoly<F> skew_pow(const OreRing<F>& ore, const SkewPoly<F>& f, std::uint32_t e);

template <BaseField F>
struct SplitPoly {
  SkewPoly<F> a;  // f_A
  SkewPoly<F> v;  // f_v
};

template <BaseField F>
SplitPoly<F> split(const SkewPoly<F>& f);

/// An element p (+) vq of T_omega = A[x] (+) vK[x].
template <BaseField F>
struct TOmegaElem {
  APoly<F> p;
  KPoly<F> q;
  friend bool operator==(const TOmegaElem&, const TOmegaElem&) = default;
};

/// (p (+) vq)(r (+) vs) = pr (+) v(phi_omega(p) s + q bar(r)).
template <BaseField F>
TOmegaElem<F> tomega_mul(const OreRing<F>& ore, const TOmegaElem<F>& e1, const TOmegaElem<F>& e2);

template <BaseField F>
TOmegaElem<F> phi_iso(const OreRing<F>& ore, const SkewPoly<F>& f);

template <BaseField F>
SkewPoly<F> phi_iso_inv(const OreRing<F>& ore, const TOmegaElem<F>& e);

/// D_f = phi_omega(f_A).
template <BaseField F>
RatFunc<F> d_value(const OreRing<F>& ore, const SkewPoly<F>& f);

/// True iff every A-coefficient of f lies in P, i.e. v f = 0.
template <BaseField F>
bool vf_is_zero(const SkewPoly<F>& f);

template <BaseField F>
struct RightMembership {
  bool member = false;
  SkewPoly<F> witness;  // f * witness == h, re-verified
  int decision_case = 0;  // 1: f_A != 0, D_f != 0; 2: f_A != 0, D_f = 0; 3: f_A = 0
  std::string reason;
};

/// Decides h in f R[X; sigma, delta_omega] through T_omega.
template <BaseField F>
RightMembership<F> right_ideal_membership(const OreRing<F>& ore, const SkewPoly<F>& h, const SkewPoly<F>& f);

enum class ProbeOutcome { Feasible, Infeasible, Inconclusive };

template <BaseField F>
struct LinearSolveResult {
  ProbeOutcome outcome = ProbeOutcome::Inconclusive;
  SkewPoly<F> witness;  // Feasible: f * witness == h, re-verified
  int degree_bound = 0;
  int unknowns = 0;
  int equations = 0;
  std::string note;
};

/// Independent oracle: solves f * g = h for g of degree <= degree_bound as a
/// linear system over K in the coefficients of g, by exact elimination. Works
/// for any delta; non-K-linear parts of delta enter as auxiliary unknowns
/// that are fixed once their argument is determined.
template <BaseField F>
LinearSolveResult<F> linear_solve_membership(const OreRing<F>& ore, const SkewPoly<F>& h, const SkewPoly<F>& f,
                                             int degree_bound);

enum class IdealReason { DNonzero, CoeffsInVK, CaseC };

template <BaseField F>
struct IdealClassification {
  bool two_sided = false;
  IdealReason reason = IdealReason::DNonzero;  // TwoSided
  RatFunc<F> d_f;
  SkewPoly<F> multiplier;  // NotTwoSided: r with r * f not in fR
  SkewPoly<F> product;     // r * f
  std::string refutation;
  bool reverified = false;       // the membership decision, recomputed
  bool oracle_confirms = false;  // linear-solve probe infeasible for r
};

/// Multipliers tried in order: v, t (A = K[t]), the field generators, X, then
/// a bounded seeded random fallback.
template <BaseField F>
IdealClassification<F> classify_principal_ideal(const OreRing<F>& ore, const SkewPoly<F>& f, std::uint64_t seed = 0);

template <BaseField F>
std::vector<SkewPoly<F>> standard_multipliers(const OreRing<F>& ore);

template <BaseField F>
struct BruteProbeEntry {
  SkewPoly<F> multiplier;
  ProbeOutcome outcome = ProbeOutcome::Inconclusive;
  bool structural_member = false;
  bool agrees = false;
};

template <BaseField F>
struct BruteProbeReport {
  std::vector<BruteProbeEntry<F>> entries;
  bool agrees = true;   // every entry matches the structural decision
  bool refuted = false;  // some multiplier gives an infeasible system
};

/// degree_slack < 0 selects the default 2 * deg f.
template <BaseField F>
BruteProbeReport<F> brute_force_two_sided_probe(const OreRing<F>& ore, const SkewPoly<F>& f,
                                                const std::vector<SkewPoly<F>>& multipliers, int degree_slack = -1);

/// X -> X + y from R[X; sigma, delta2] to R[X; sigma, delta1]. Throws
/// ContractError unless delta2 - delta1 = d_y on v and the generators.
template <BaseField F>
SkewPoly<F> derivation_shift_iso(const OreRing<F>& target, const OreRing<F>& source, const SkewPoly<F>& f,
                                 const RingElem<F>& y);

struct MarksCheck {
  std::string name;
  int checked = 0;
  bool passed = true;
  std::string detail;
};

struct MarksReport {
  std::vector<MarksCheck> checks;
  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

template <BaseField F>
MarksReport verify_marks_conditions(const OreRing<F>& ore, int sample_count, std::uint64_t seed);

template <BaseField F>
struct CommutativeVXReport {
  ProbeOutcome outcome = ProbeOutcome::Inconclusive;
  std::vector<int> bounds;  // degree bounds at which the system was infeasible
  std::string note;
};

/// For phi = id and delta from a nonzero field derivation: v*X is not in X*R[X].
template <BaseField F>
CommutativeVXReport<F> commutative_vx_check(const OreRing<F>& ore, int max_bound);

/// Parses e.g. "(x0 + v*(1/x1))*X^2 - v*x2 + 3".
template <BaseField F>
SkewPoly<F> parse_skew(const OreRing<F>& ore, std::string_view text);

template <BaseField F>
std::string to_string(const SkewPoly<F>& f);
std::string to_string(ProbeOutcome o);
std::string to_string(IdealReason r);

/// Random element of degree <= max_deg.
template <BaseField F>
SkewPoly<F> sample_skew(Sampler<F>& rnd, CoeffRingKind kind, int max_deg) {
  std::vector<RingElem<F>> c(static_cast<std::size_t>(rnd.between(0, max_deg)) + 1);
  for (auto& e : c) e = rnd.below(3) == 0 ? RingElem<F>{} : rnd.ring_elem(kind);
  return SkewPoly<F>(std::move(c));
}

}  // namespace orelab
