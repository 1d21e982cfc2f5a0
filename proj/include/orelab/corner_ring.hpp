#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "orelab/maps.hpp"

namespace orelab {

/// a + v*m in R = A (+) vK.
template <BaseField F>
struct RingElem {
  CoeffElem<F> a;
  RatFunc<F> m;

  RingElem() = default;
  RingElem(CoeffElem<F> a_part, RatFunc<F> m_part) : a(std::move(a_part)), m(std::move(m_part)) {}

  static RingElem of_a(CoeffElem<F> a) { return {std::move(a), RatFunc<F>{}}; }
  static RingElem of_k(RatFunc<F> k) { return {CoeffElem<F>(std::move(k)), RatFunc<F>{}}; }
  static RingElem v(RatFunc<F> m = RatFunc<F>(1)) { return {CoeffElem<F>{}, std::move(m)}; }
  static RingElem one() { return of_k(RatFunc<F>(1)); }

  bool is_zero() const { return a.is_zero() && m.is_zero(); }
  bool in_vk() const { return a.is_zero(); }

  RingElem operator-() const { return {-a, -m}; }
  RingElem operator+(const RingElem& o) const { return {a + o.a, m + o.m}; }
  RingElem operator-(const RingElem& o) const { return {a - o.a, m - o.m}; }
  RingElem& operator+=(const RingElem& o) { return *this = *this + o; }
  RingElem& operator-=(const RingElem& o) { return *this = *this - o; }

  friend bool operator==(const RingElem&, const RingElem&) = default;
};

/// R = A (+) vK for a given A, phi and a finite list of field generators that
/// sampling and generator-wise checks range over.
template <BaseField F>
class CornerRing {
 public:
  CornerRing(CoeffRingKind kind, EndoSpec<F> phi, std::vector<VarId> generators);

  CoeffRingKind kind() const noexcept { return kind_; }
  const EndoSpec<F>& phi() const noexcept { return phi_; }
  const std::vector<VarId>& generators() const noexcept { return generators_; }
  /// True when R is commutative: A = K and phi = id.
  bool commutative() const { return kind_ == CoeffRingKind::Field && phi_.is_identity(); }

  RatFunc<F> phi_of(const CoeffElem<F>& a) const { return apply_phi(phi_, kind_, a); }

  /// (a + vl)(b + vm) = ab + v(phi(a)m + l*bar(b)).
  RingElem<F> mul(const RingElem<F>& r, const RingElem<F>& s) const;

  /// Generators of A as ring elements: t (when A = K[t]) followed by the field generators.
  std::vector<RingElem<F>> a_generators() const;

 private:
  CoeffRingKind kind_;
  EndoSpec<F> phi_;
  std::vector<VarId> generators_;
};

/// sigma(a + vl) = a.
template <BaseField F>
RingElem<F> sigma(const RingElem<F>& r) {
  return RingElem<F>::of_a(r.a);
}

template <BaseField F>
struct DerivationSpec {
  struct DeltaOmega {
    RatFunc<F> omega;
  };
  struct Inner {
    RingElem<F> y;
  };
  struct Sum {
    std::vector<DerivationSpec> terms;
  };
  /// delta(a + vb) = v d(a) for a derivation d of K given on generators.
  struct CommutativeField {
    std::map<VarId, RatFunc<F>> d;
  };
  /// Images of v, t and field generators; extended by the sigma-Leibniz rule.
  struct Custom {
    RingElem<F> v_image;
    std::map<VarId, RingElem<F>> images;
  };

  std::variant<DeltaOmega, Inner, Sum, CommutativeField, Custom> variant;

  static DerivationSpec delta_omega(RatFunc<F> omega) { return {DeltaOmega{std::move(omega)}}; }
  static DerivationSpec inner(RingElem<F> y) { return {Inner{std::move(y)}}; }
  static DerivationSpec sum(std::vector<DerivationSpec> terms) { return {Sum{std::move(terms)}}; }

  /// omega when the spec is DeltaOmega.
  std::optional<RatFunc<F>> as_delta_omega() const {
    if (auto* d = std::get_if<DeltaOmega>(&variant)) return d->omega;
    return std::nullopt;
  }
};

/// Throws DomainError for a CommutativeField spec on a noncommutative ring
/// and for Custom tables that cannot be evaluated on r.
template <BaseField F>
RingElem<F> apply_derivation(const CornerRing<F>& ring, const DerivationSpec<F>& spec, const RingElem<F>& r);

/// Partial derivative of a rational function.
template <BaseField F>
RatFunc<F> partial(const RatFunc<F>& f, VarId v);

template <BaseField F>
struct LeibnizReport {
  bool passed = true;
  int checked = 0;
  std::optional<std::pair<RingElem<F>, RingElem<F>>> counterexample;
  std::string failure;  // "additivity" or "leibniz"
};

/// Checks additivity and delta(rs) = sigma(r)delta(s) + delta(r)s on
/// generator pairs, then on sample_count seeded random pairs.
template <BaseField F>
LeibnizReport<F> check_sigma_derivation(const CornerRing<F>& ring, const DerivationSpec<F>& spec, int sample_count,
                                        std::uint64_t seed);

enum class DerivationKind { Zero, InnerOnly, OuterSum, CommutativeOuter, Unknown };

template <BaseField F>
struct DerivationClassification {
  DerivationKind kind = DerivationKind::Unknown;
  RatFunc<F> omega;
  RingElem<F> y;
  ImageMembershipResult<F> membership;  // of omega
  std::map<VarId, RatFunc<F>> d;        // CommutativeOuter
  bool reconstruction_verified = false;
  std::string note;

  /// The reconstructed spec: delta_omega + d_y, d_y alone, or the field derivation.
  DerivationSpec<F> reconstructed() const;
};

/// Throws DomainError when delta(v) has a nonzero A-part.
template <BaseField F>
DerivationClassification<F> classify_derivation(const CornerRing<F>& ring, const DerivationSpec<F>& spec);

template <BaseField F>
struct PrincipalMembership {
  bool member = false;
  RingElem<F> cofactor;  // r * cofactor == s when member
};

/// Decides s in rR.
template <BaseField F>
PrincipalMembership<F> principal_right_ideal_membership(const CornerRing<F>& ring, const RingElem<F>& s,
                                                        const RingElem<F>& r);

template <BaseField F>
struct DuoProbeReport {
  bool passed = true;
  int checked = 0;
  bool advisory = false;  // phi not certified injective
  std::optional<std::pair<RingElem<F>, RingElem<F>>> counterexample;  // (s, r) with s*r not in rR
};

template <BaseField F>
DuoProbeReport<F> right_duo_probe(const CornerRing<F>& ring, int sample_count, std::uint64_t seed);

template <BaseField F>
struct LeftDuoWitness {
  RingElem<F> g;
  RingElem<F> s;
  Certificate certificate;
};

/// g = v and s with g*s = v*bar(s) outside Rv = v*phi(A).
template <BaseField F>
std::optional<LeftDuoWitness<F>> left_duo_counterexample(const CornerRing<F>& ring);

template <BaseField F>
std::string to_string(const RingElem<F>& r);
std::string to_string(DerivationKind k);

}  // namespace orelab
