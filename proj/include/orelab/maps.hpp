#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orelab/substitute.hpp"
#include "orelab/unipoly.hpp"

namespace orelab {

/// Which coefficient ring A the scenario uses: K itself (P = 0) or K[t] with P = (t).
enum class CoeffRingKind { Field, PolyT };

/// Element of A, as a polynomial in t over K (degree 0 when A = K).
template <BaseField F>
using CoeffElem = KPoly<F>;

/// Polynomials over A in the Ore variable.
template <BaseField F>
using APoly = UniPoly<CoeffElem<F>>;

/// One factor x_{i+shift}^{slope*i + offset} of an indexed-family image.
struct IndexedFactor {
  long long shift = 0;
  long long slope = 0;
  long long offset = 1;
};

/// The endomorphism phi, given by rules. A rule either names a variable
/// ("t", "x", "x3") with an expression image, or is the family "x{i}" whose
/// image is a product of factors x{i+s}^{a*i+b}.
template <BaseField F>
class EndoSpec {
 public:
  struct Rule {
    std::string pattern;
    std::string image;
    friend bool operator==(const Rule&, const Rule&) = default;
  };

  EndoSpec() = default;
  /// Throws ParseError/DomainError on malformed rules or a variable with two rules.
  static EndoSpec from_rules(std::vector<Rule> rules);

  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const std::optional<std::vector<IndexedFactor>>& family() const noexcept { return family_; }
  const std::map<VarId, RatFunc<F>>& named_rules() const noexcept { return named_; }

  /// Image of a variable, or nullopt when no rule applies.
  std::optional<RatFunc<F>> image(VarId v) const;
  /// Throws DomainError("uncovered variable ...") when no rule applies.
  RatFunc<F> image_or_throw(VarId v) const;
  /// True when every rule is the identity on its variable.
  bool is_identity() const;

 private:
  std::vector<Rule> rules_;
  std::optional<std::vector<IndexedFactor>> family_;
  std::map<VarId, RatFunc<F>> named_;
};

/// phi restricted to K.
template <BaseField F>
RatFunc<F> apply_phi(const EndoSpec<F>& spec, const RatFunc<F>& k);

/// phi on A: sum phi(a_j) phi(t)^j. Throws DomainError for uncovered variables
/// or a t-dependent element when A = K.
template <BaseField F>
RatFunc<F> apply_phi(const EndoSpec<F>& spec, CoeffRingKind kind, const CoeffElem<F>& a);

/// Canonical map A -> A/P = K: identity for A = K, t -> 0 for A = K[t].
template <BaseField F>
RatFunc<F> bar(const CoeffElem<F>& a) {
  return a.coeff(0);
}

/// phi_omega: A[x] -> K, x -> omega.
template <BaseField F>
RatFunc<F> phi_omega(const EndoSpec<F>& spec, CoeffRingKind kind, const APoly<F>& f, const RatFunc<F>& omega);

enum class Injectivity { InjectiveCertified, Unknown };

struct InjectivityReport {
  Injectivity verdict = Injectivity::Unknown;
  std::string reason;
};

/// Certified when every rule image is a nonzero constant times a nonconstant
/// monomial and the supports of distinct rule images are disjoint.
template <BaseField F>
InjectivityReport check_injectivity(const EndoSpec<F>& spec);

struct Certificate {
  std::string kind;     // "fresh-variable", "exponent-lattice", "pole-in-t-image"
  std::string witness;  // human-readable detail
};

enum class MembershipVerdict { InImage, NotInImage, Unknown };
enum class TranscendenceVerdict { Transcendental, AlgebraicWitness, Unknown };

template <BaseField F>
struct ImageMembershipResult {
  MembershipVerdict verdict = MembershipVerdict::Unknown;
  CoeffElem<F> preimage;   // InImage
  Certificate certificate;  // NotInImage
  std::string note;         // Unknown
};

/// Decides k in phi(A) within the monomial-substitution class; Unknown outside it.
/// InImage preimages are verified by applying phi.
template <BaseField F>
ImageMembershipResult<F> image_membership(const EndoSpec<F>& spec, CoeffRingKind kind, const RatFunc<F>& k);

template <BaseField F>
struct TranscendenceResult {
  TranscendenceVerdict verdict = TranscendenceVerdict::Unknown;
  Certificate certificate;  // Transcendental
  int degree = 0;           // AlgebraicWitness: omega^degree lies in the field generated by phi(A)
  APoly<F> annihilator;     // phi_omega(annihilator) == 0, verified
  bool minimal_certified = false;
  std::string note;
};

/// omega over the subfield generated by phi(A). Searches pure-power
/// relations omega^d, d <= degree_bound.
template <BaseField F>
TranscendenceResult<F> transcendence_over_image(const EndoSpec<F>& spec, CoeffRingKind kind,
                                                const RatFunc<F>& omega, int degree_bound);

std::string to_string(Injectivity v);
std::string to_string(MembershipVerdict v);
std::string to_string(TranscendenceVerdict v);

}  // namespace orelab
