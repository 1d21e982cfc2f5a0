#include "orelab/maps.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

#include "orelab/errors.hpp"
#include "orelab/expr.hpp"

namespace orelab {

namespace {

constexpr std::string_view kFamilyPattern = "x{i}";

// Parser for family images such as "x{i+1}^{i+1}" or "x{i+2}*x{i}^(2*i+1)".
class FamilyImageParser {
 public:
  explicit FamilyImageParser(std::string_view s) : s_(s) {}

  std::vector<IndexedFactor> parse() {
    std::vector<IndexedFactor> out;
    out.push_back(factor());
    while (accept('*')) out.push_back(factor());
    ws();
    if (i_ != s_.size()) fail("unexpected character");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) { throw ParseError("family image: " + what, i_); }

  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool accept(char c) {
    ws();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  long long integer() {
    ws();
    std::size_t start = i_;
    long long v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + (s_[i_] - '0');
      if (v > (1LL << 40)) fail("integer too large");
      ++i_;
    }
    if (start == i_) fail("expected an integer");
    return v;
  }

  bool peek_digit() {
    ws();
    return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
  }

  // affine := term (('+'|'-') term)*,  term := INT | INT '*'? 'i' | 'i'
  std::pair<long long, long long> affine() {
    long long slope = 0;
    long long offset = 0;
    long long sign = 1;
    if (accept('-')) sign = -1;
    for (;;) {
      long long c = 1;
      bool has_int = false;
      if (peek_digit()) {
        c = integer();
        has_int = true;
      }
      accept('*');
      if (accept('i')) {
        slope += sign * c;
      } else if (has_int) {
        offset += sign * c;
      } else {
        fail("expected an integer or 'i'");
      }
      if (accept('+')) {
        sign = 1;
      } else if (accept('-')) {
        sign = -1;
      } else {
        return {slope, offset};
      }
    }
  }

  IndexedFactor factor() {
    IndexedFactor f;
    expect('x');
    expect('{');
    auto [slope, shift] = affine();
    if (slope != 1) fail("variable index must be i plus a constant");
    f.shift = shift;
    expect('}');
    f.slope = 0;
    f.offset = 1;
    if (accept('^')) {
      if (accept('{')) {
        std::tie(f.slope, f.offset) = affine();
        expect('}');
      } else if (accept('(')) {
        std::tie(f.slope, f.offset) = affine();
        expect(')');
      } else if (accept('i')) {
        f.slope = 1;
        f.offset = 0;
      } else {
        f.offset = integer();
      }
    }
    return f;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

template <class F>
RatFunc<F> family_image(const std::vector<IndexedFactor>& factors, long long i) {
  RatFunc<F> img(1);
  for (const auto& f : factors) {
    long long target = i + f.shift;
    if (target < 0 || target >= static_cast<long long>(VarId::kNamedBase)) {
      throw DomainError("family rule maps x" + std::to_string(i) + " outside x0, x1, ...");
    }
    long long e = f.slope * i + f.offset;
    img = img * RatFunc<F>::var(xvar(static_cast<std::uint32_t>(target))).pow(e);
  }
  return img;
}

// A rule image c * m with m a nonconstant monomial; the building block of the
// certified class.
template <class F>
struct Block {
  VarId source;
  F coeff;
  Monomial mono;
};

template <class F>
std::optional<Block<F>> as_block(VarId source, const RatFunc<F>& img) {
  if (!img.is_polynomial() || !img.num().is_monomial()) return std::nullopt;
  const auto& lt = img.num().leading();
  if (lt.mono.is_one()) return std::nullopt;
  return Block<F>{source, lt.coeff, lt.mono};
}

bool family_certified(const std::vector<IndexedFactor>& fam) {
  return fam.size() == 1 && fam[0].shift >= 0 && fam[0].slope >= 0 && fam[0].offset >= 1;
}

// The block decomposition of a certified spec: every target variable lies in
// at most one rule image.
template <class F>
class BlockIndex {
 public:
  explicit BlockIndex(const EndoSpec<F>& spec) : spec_(spec) {
    InjectivityReport rep = check_injectivity(spec);
    certified_ = rep.verdict == Injectivity::InjectiveCertified;
    if (!certified_) return;
    for (const auto& [src, img] : spec.named_rules()) {
      auto b = as_block(src, img);
      for (const auto& [v, e] : b->mono.entries()) named_targets_.emplace(v, *b);
    }
  }

  bool certified() const { return certified_; }

  std::optional<Block<F>> block_for(VarId target) const {
    auto it = named_targets_.find(target);
    if (it != named_targets_.end()) return it->second;
    const auto& fam = spec_.family();
    if (fam && target.is_indexed() && static_cast<long long>(target.index) >= (*fam)[0].shift) {
      long long src = static_cast<long long>(target.index) - (*fam)[0].shift;
      long long e = (*fam)[0].slope * src + (*fam)[0].offset;
      return Block<F>{xvar(static_cast<std::uint32_t>(src)), FieldTraits<F>::from_int(1),
                      Monomial::of(target, static_cast<std::uint32_t>(e))};
    }
    return std::nullopt;
  }

 private:
  const EndoSpec<F>& spec_;
  bool certified_ = false;
  std::map<VarId, Block<F>> named_targets_;
};

template <class F>
struct FieldPreimage {
  MembershipVerdict verdict = MembershipVerdict::Unknown;
  MultiPoly<F> num;  // in the domain generators; k = phi(num) / phi(den)
  MultiPoly<F> den;
  Certificate certificate;
  std::string note;
};

template <class F>
std::optional<Certificate> preimage_of_poly(const BlockIndex<F>& index, const MultiPoly<F>& p, MultiPoly<F>& out) {
  std::vector<typename MultiPoly<F>::Term> terms;
  for (const auto& t : p.terms()) {
    std::map<VarId, std::pair<std::uint32_t, Block<F>>> used;  // source -> (power, block)
    for (const auto& [v, e] : t.mono.entries()) {
      auto b = index.block_for(v);
      std::uint32_t ev = b->mono.exponent(v);
      if (e % ev != 0) {
        return Certificate{"exponent-lattice", "term " + to_string(t.mono) + ": exponent " + std::to_string(e) + " of " +
                                                   var_name(v) + " is not a multiple of " + std::to_string(ev)};
      }
      std::uint32_t n = e / ev;
      auto [it, fresh] = used.emplace(b->source, std::make_pair(n, *b));
      if (!fresh && it->second.first != n) {
        return Certificate{"exponent-lattice", "term " + to_string(t.mono) + " is not a power of " + to_string(b->mono)};
      }
    }
    F c = t.coeff;
    std::vector<Monomial::Entry> pre;
    for (const auto& [src, use] : used) {
      const auto& [n, b] = use;
      for (const auto& [v, ev] : b.mono.entries()) {
        if (t.mono.exponent(v) != n * ev) {
          return Certificate{"exponent-lattice",
                             "term " + to_string(t.mono) + " is not a power of " + to_string(b.mono)};
        }
      }
      for (std::uint32_t k = 0; k < n; ++k) c = F(c / b.coeff);
      pre.emplace_back(src, n);
    }
    terms.push_back({Monomial::from_entries(std::move(pre)), c});
  }
  out = MultiPoly<F>::from_terms(std::move(terms));
  return std::nullopt;
}

template <class F>
FieldPreimage<F> field_preimage(const EndoSpec<F>& spec, const RatFunc<F>& k) {
  FieldPreimage<F> r;
  BlockIndex<F> index(spec);
  if (!index.certified()) {
    r.note = "phi is outside the monomial-substitution class";
    return r;
  }
  for (VarId v : k.variables()) {
    auto b = index.block_for(v);
    if (!b) {
      r.verdict = MembershipVerdict::NotInImage;
      r.certificate = {"fresh-variable", var_name(v) + " occurs in no rule image"};
      return r;
    }
    if (std::uint32_t ch = FieldTraits<F>::characteristic(); ch != 0) {
      for (const auto& [w, e] : b->mono.entries()) {
        if (e % ch == 0) {
          r.note = "image exponent divisible by the characteristic";
          return r;
        }
      }
    }
  }
  if (auto cert = preimage_of_poly(index, k.num(), r.num)) {
    r.verdict = MembershipVerdict::NotInImage;
    r.certificate = *cert;
    return r;
  }
  if (auto cert = preimage_of_poly(index, k.den(), r.den)) {
    r.verdict = MembershipVerdict::NotInImage;
    r.certificate = *cert;
    return r;
  }
  r.verdict = MembershipVerdict::InImage;
  return r;
}

// A polynomial in the domain generators (possibly involving t) as an element of A.
template <class F>
CoeffElem<F> to_coeff(const MultiPoly<F>& num, const MultiPoly<F>& den) {
  std::vector<RatFunc<F>> cs;
  for (const auto& c : num.coefficients_in(tvar())) cs.push_back(RatFunc<F>::fraction(c, den));
  return CoeffElem<F>(std::move(cs));
}

}  // namespace

template <BaseField F>
EndoSpec<F> EndoSpec<F>::from_rules(std::vector<Rule> rules) {
  EndoSpec spec;
  for (const auto& rule : rules) {
    if (rule.pattern == kFamilyPattern) {
      if (spec.family_) throw DomainError("more than one x{i} family rule");
      spec.family_ = FamilyImageParser(rule.image).parse();
      continue;
    }
    if (rule.pattern.find('{') != std::string::npos) {
      throw ParseError("unsupported rule pattern '" + rule.pattern + "'", 0);
    }
    VarId v = VarRegistry::global().intern(rule.pattern);
    RatFunc<F> img = parse_expr<F>(rule.image);
    if (img.is_zero()) throw DomainError("rule image of " + rule.pattern + " is zero");
    if (!spec.named_.emplace(v, img).second) throw DomainError("two rules for " + rule.pattern);
  }
  if (spec.family_) {
    for (const auto& [v, img] : spec.named_) {
      if (v.is_indexed()) throw DomainError("two rules apply to " + var_name(v));
    }
  }
  spec.rules_ = std::move(rules);
  return spec;
}

template <BaseField F>
std::optional<RatFunc<F>> EndoSpec<F>::image(VarId v) const {
  auto it = named_.find(v);
  if (it != named_.end()) return it->second;
  if (family_ && v.is_indexed()) {
    for (const auto& f : *family_) {
      if (static_cast<long long>(v.index) + f.shift < 0) return std::nullopt;
    }
    return family_image<F>(*family_, v.index);
  }
  return std::nullopt;
}

template <BaseField F>
RatFunc<F> EndoSpec<F>::image_or_throw(VarId v) const {
  auto img = image(v);
  if (!img) throw DomainError("uncovered variable " + var_name(v) + ": no rule of phi applies");
  return *img;
}

template <BaseField F>
bool EndoSpec<F>::is_identity() const {
  if (family_) {
    if (family_->size() != 1) return false;
    const auto& f = (*family_)[0];
    if (f.shift != 0 || f.slope != 0 || f.offset != 1) return false;
  }
  for (const auto& [v, img] : named_) {
    if (img != RatFunc<F>::var(v)) return false;
  }
  return true;
}

template <BaseField F>
RatFunc<F> apply_phi(const EndoSpec<F>& spec, const RatFunc<F>& k) {
  VarImage<F> image = [&](VarId v) { return spec.image_or_throw(v); };
  return substitute(k, image);
}

template <BaseField F>
RatFunc<F> apply_phi(const EndoSpec<F>& spec, CoeffRingKind kind, const CoeffElem<F>& a) {
  if (a.degree() <= 0) return apply_phi(spec, a.coeff(0));
  if (kind == CoeffRingKind::Field) throw DomainError("element involves t but A = K");
  RatFunc<F> phit = spec.image_or_throw(tvar());
  RatFunc<F> acc;
  for (std::size_t j = a.size(); j-- > 0;) acc = acc * phit + apply_phi(spec, a.coeffs()[j]);
  return acc;
}

template <BaseField F>
RatFunc<F> phi_omega(const EndoSpec<F>& spec, CoeffRingKind kind, const APoly<F>& f, const RatFunc<F>& omega) {
  RatFunc<F> acc;
  for (std::size_t k = f.size(); k-- > 0;) acc = acc * omega + apply_phi(spec, kind, f.coeffs()[k]);
  return acc;
}

template <BaseField F>
InjectivityReport check_injectivity(const EndoSpec<F>& spec) {
  InjectivityReport rep;
  std::map<VarId, VarId> owner;  // target variable -> source
  for (const auto& [src, img] : spec.named_rules()) {
    auto b = as_block(src, img);
    if (!b) {
      rep.reason = "image of " + var_name(src) + " is not a monomial";
      return rep;
    }
    for (const auto& [v, e] : b->mono.entries()) {
      auto [it, fresh] = owner.emplace(v, src);
      if (!fresh) {
        rep.reason = "images of " + var_name(it->second) + " and " + var_name(src) + " share " + var_name(v);
        return rep;
      }
    }
  }
  if (const auto& fam = spec.family()) {
    if (!family_certified(*fam)) {
      rep.reason = "family image is not a single positive power of one shifted variable";
      return rep;
    }
    for (const auto& [v, src] : owner) {
      if (v.is_indexed() && static_cast<long long>(v.index) >= (*fam)[0].shift) {
        rep.reason = "image of " + var_name(src) + " shares " + var_name(v) + " with the family";
        return rep;
      }
    }
  }
  rep.verdict = Injectivity::InjectiveCertified;
  rep.reason = "rule images are monomials with pairwise disjoint supports";
  return rep;
}

template <BaseField F>
ImageMembershipResult<F> image_membership(const EndoSpec<F>& spec, CoeffRingKind kind, const RatFunc<F>& k) {
  ImageMembershipResult<F> r;
  FieldPreimage<F> fp = field_preimage(spec, k);
  r.verdict = fp.verdict;
  r.certificate = fp.certificate;
  r.note = fp.note;
  if (fp.verdict != MembershipVerdict::InImage) return r;
  if (fp.den.involves(tvar())) {
    // num/den coprime in the generators, so a t-dependent denominator is a
    // genuine pole in phi(t): k lies in the fraction field but not in phi(A).
    r.verdict = MembershipVerdict::NotInImage;
    r.certificate = {"pole-in-t-image", "reduced preimage has denominator " + to_string(fp.den)};
    return r;
  }
  if (kind == CoeffRingKind::Field && fp.num.involves(tvar())) {
    throw std::logic_error("image_membership: t in a preimage over A = K");
  }
  r.preimage = to_coeff(fp.num, fp.den);
  if (apply_phi(spec, kind, r.preimage) != k) throw std::logic_error("image_membership: preimage does not verify");
  return r;
}

template <BaseField F>
TranscendenceResult<F> transcendence_over_image(const EndoSpec<F>& spec, CoeffRingKind kind,
                                                const RatFunc<F>& omega, int degree_bound) {
  if (degree_bound < 1) throw DomainError("degree_bound must be at least 1");
  TranscendenceResult<F> r;
  BlockIndex<F> index(spec);
  if (!index.certified()) {
    r.note = "phi is outside the monomial-substitution class";
    return r;
  }
  for (VarId v : omega.variables()) {
    if (!index.block_for(v)) {
      r.verdict = TranscendenceVerdict::Transcendental;
      r.certificate = {"fresh-variable", var_name(v) + " occurs in no rule image, so omega is transcendental over it"};
      return r;
    }
  }
  // A monomial omega = c*y^a is algebraic iff some multiple of a lies in the
  // image exponent lattice; outside its rational span it is transcendental.
  bool monomial = omega.is_polynomial() && omega.num().is_monomial();
  if (monomial) {
    const Monomial& m = omega.num().leading().mono;
    std::map<VarId, std::pair<Rational, Block<F>>> ratio;
    for (const auto& [v, e] : m.entries()) {
      auto b = index.block_for(v);
      Rational q(static_cast<long>(e), static_cast<unsigned long>(b->mono.exponent(v)));
      q.canonicalize();
      auto [it, fresh] = ratio.emplace(b->source, std::make_pair(q, *b));
      if (!fresh && it->second.first != q) {
        r.verdict = TranscendenceVerdict::Transcendental;
        r.certificate = {"exponent-lattice", to_string(m) + " is outside the rational span of the image exponents"};
        return r;
      }
    }
    for (const auto& [src, entry] : ratio) {
      for (const auto& [v, ev] : entry.second.mono.entries()) {
        Rational q(static_cast<long>(m.exponent(v)), static_cast<unsigned long>(ev));
        q.canonicalize();
        if (q != entry.first) {
          r.verdict = TranscendenceVerdict::Transcendental;
          r.certificate = {"exponent-lattice", to_string(m) + " is outside the rational span of the image exponents"};
          return r;
        }
      }
    }
  }
  RatFunc<F> power(1);
  for (int d = 1; d <= degree_bound; ++d) {
    power = power * omega;
    FieldPreimage<F> fp = field_preimage(spec, power);
    if (fp.verdict != MembershipVerdict::InImage) continue;
    // den(pre) * X^d - num(pre), both polynomials in the generators.
    APoly<F> ann = APoly<F>::monomial(static_cast<std::size_t>(d), to_coeff(fp.den, MultiPoly<F>::constant(1)));
    ann = ann - APoly<F>(to_coeff(fp.num, MultiPoly<F>::constant(1)));
    if (!phi_omega(spec, kind, ann, omega).is_zero()) {
      throw std::logic_error("transcendence_over_image: annihilator does not vanish");
    }
    r.verdict = TranscendenceVerdict::AlgebraicWitness;
    r.degree = d;
    r.annihilator = std::move(ann);
    r.minimal_certified = monomial;
    r.note = monomial ? "omega is a monomial: d is the order of its exponent modulo the image lattice"
                      : "no smaller pure-power relation exists; minimality over other relations not certified";
    return r;
  }
  r.note = "no relation omega^d in the image field for d <= " + std::to_string(degree_bound);
  return r;
}

std::string to_string(Injectivity v) {
  return v == Injectivity::InjectiveCertified ? "InjectiveCertified" : "Unknown";
}

std::string to_string(MembershipVerdict v) {
  switch (v) {
    case MembershipVerdict::InImage:
      return "InImage";
    case MembershipVerdict::NotInImage:
      return "NotInImage";
    case MembershipVerdict::Unknown:
      return "Unknown";
  }
  return "?";
}

std::string to_string(TranscendenceVerdict v) {
  switch (v) {
    case TranscendenceVerdict::Transcendental:
      return "Transcendental";
    case TranscendenceVerdict::AlgebraicWitness:
      return "AlgebraicWitness";
    case TranscendenceVerdict::Unknown:
      return "Unknown";
  }
  return "?";
}

#define ORELAB_INSTANTIATE(F)                                                                                   \
  template class EndoSpec<F>;                                                                                   \
  template RatFunc<F> apply_phi(const EndoSpec<F>&, const RatFunc<F>&);                                         \
  template RatFunc<F> apply_phi(const EndoSpec<F>&, CoeffRingKind, const CoeffElem<F>&);                        \
  template RatFunc<F> phi_omega(const EndoSpec<F>&, CoeffRingKind, const APoly<F>&, const RatFunc<F>&);         \
  template InjectivityReport check_injectivity(const EndoSpec<F>&);                                             \
  template ImageMembershipResult<F> image_membership(const EndoSpec<F>&, CoeffRingKind, const RatFunc<F>&);     \
  template TranscendenceResult<F> transcendence_over_image(const EndoSpec<F>&, CoeffRingKind, const RatFunc<F>&, \
                                                           int);

ORELAB_INSTANTIATE(Rational)
ORELAB_INSTANTIATE(ModP)

#undef ORELAB_INSTANTIATE

}  // namespace orelab
