#include "orelab/multipoly.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <optional>
#include <type_traits>
#include <stdexcept>

#include "orelab/errors.hpp"

namespace orelab {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::of(VarId v, std::uint32_t e) {
  Monomial m;
  if (e > 0) {
    m.e_.emplace_back(v, e);
    m.deg_ = e;
  }
  return m;
}

Monomial Monomial::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  Monomial m;
  for (const auto& [v, e] : entries) {
    if (e == 0) continue;
    if (!m.e_.empty() && m.e_.back().first == v) {
      m.e_.back().second += e;
    } else {
      m.e_.emplace_back(v, e);
    }
    m.deg_ += e;
  }
  return m;
}

std::uint32_t Monomial::exponent(VarId v) const noexcept {
  auto it = std::lower_bound(e_.begin(), e_.end(), v, [](const Entry& a, VarId b) { return a.first < b; });
  return (it != e_.end() && it->first == v) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.e_.reserve(e_.size() + o.e_.size());
  auto i = e_.begin();
  auto j = o.e_.begin();
  while (i != e_.end() && j != o.e_.end()) {
    if (i->first < j->first) {
      r.e_.push_back(*i++);
    } else if (j->first < i->first) {
      r.e_.push_back(*j++);
    } else {
      r.e_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  r.e_.insert(r.e_.end(), i, e_.end());
  r.e_.insert(r.e_.end(), j, o.e_.end());
  r.deg_ = deg_ + o.deg_;
  return r;
}

bool Monomial::divides(const Monomial& o) const noexcept {
  if (deg_ > o.deg_) return false;
  auto j = o.e_.begin();
  for (const auto& [v, e] : e_) {
    while (j != o.e_.end() && j->first < v) ++j;
    if (j == o.e_.end() || j->first != v || j->second < e) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r;
  auto i = e_.begin();
  for (const auto& [v, e] : o.e_) {
    while (i != e_.end() && i->first < v) ++i;
    std::uint32_t mine = (i != e_.end() && i->first == v) ? i->second : 0;
    if (mine > e) throw std::logic_error("Monomial::quotient_of: not divisible");
    if (e > mine) r.e_.emplace_back(v, e - mine);
  }
  r.deg_ = o.deg_ - deg_;
  return r;
}

Monomial Monomial::without(VarId v) const {
  Monomial r;
  for (const auto& entry : e_) {
    if (entry.first != v) {
      r.e_.push_back(entry);
      r.deg_ += entry.second;
    }
  }
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto j = b.e_.begin();
  for (const auto& [v, e] : a.e_) {
    while (j != b.e_.end() && j->first < v) ++j;
    if (j != b.e_.end() && j->first == v) {
      std::uint32_t m = std::min(e, j->second);
      r.e_.emplace_back(v, m);
      r.deg_ += m;
    }
  }
  return r;
}

std::strong_ordering grlex(const Monomial& a, const Monomial& b) noexcept {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  const auto& x = a.entries();
  const auto& y = b.entries();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].first < y[j].first) return std::strong_ordering::greater;
    if (y[j].first < x[i].first) return std::strong_ordering::less;
    if (x[i].second != y[j].second) return x[i].second <=> y[j].second;
    ++i;
    ++j;
  }
  if (i < x.size()) return std::strong_ordering::greater;
  if (j < y.size()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

std::string to_string(const Monomial& m) {
  std::string out;
  for (const auto& [v, e] : m.entries()) {
    if (!out.empty()) out += '*';
    out += var_name(v);
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------
// MultiPoly

namespace {

template <class F>
bool coeff_is_zero(const F& c) {
  return FieldTraits<F>::is_zero(c);
}

template <class Term>
void sort_terms_desc(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex(a.mono, b.mono) == std::strong_ordering::greater; });
}

}  // namespace

template <BaseField F>
MultiPoly<F>::MultiPoly(const F& c) {
  if (!coeff_is_zero(c)) terms_.push_back(Term{Monomial{}, c});
}

template <BaseField F>
MultiPoly<F> MultiPoly<F>::var(VarId v, std::uint32_t e) {
  return monomial(Monomial::of(v, e), FieldTraits<F>::from_int(1));
}

template <BaseField F>
MultiPoly<F> MultiPoly<F>::monomial(Monomial m, const F& c) {
  MultiPoly p;
  if (!coeff_is_zero(c)) p.terms_.push_back(Term{std::move(m), c});
  return p;
}

template <BaseField F>
MultiPoly<F> MultiPoly<F>::from_terms(std::vector<Term> terms) {
  sort_terms_desc(terms);
  MultiPoly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff = F(p.terms_.back().coeff + t.coeff);
    } else {
      if (!p.terms_.empty() && coeff_is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && coeff_is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
  return p;
}

template <BaseField F>
bool MultiPoly<F>::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

template <BaseField F>
bool MultiPoly<F>::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.is_one() && FieldTraits<F>::is_one(terms_[0].coeff);
}

template <BaseField F>
F MultiPoly<F>::constant_coeff() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return FieldTraits<F>::from_int(0);
}

template <BaseField F>
std::uint32_t MultiPoly<F>::total_degree() const noexcept {
  return terms_.empty() ? 0 : terms_.front().mono.degree();
}

template <BaseField F>
std::uint32_t MultiPoly<F>::degree_in(VarId v) const noexcept {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
  return d;
}

template <BaseField F>
std::vector<VarId> MultiPoly<F>::variables() const {
  std::vector<VarId> vs;
  for (const auto& t : terms_) {
    for (const auto& [v, e] : t.mono.entries()) vs.push_back(v);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

template <BaseField F>
bool MultiPoly<F>::involves(VarId v) const noexcept {
  for (const auto& t : terms_) {
    if (t.mono.exponent(v) != 0) return true;
  }
  return false;
}

template <BaseField F>
Monomial MultiPoly<F>::monomial_content() const {
  if (terms_.empty()) return Monomial{};
  Monomial g = terms_.front().mono;
  for (std::size_t i = 1; i < terms_.size() && !g.is_one(); ++i) g = Monomial::gcd(g, terms_[i].mono);
  return g;
}

template <BaseField F>
MultiPoly<F> MultiPoly<F>::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = F(-t.coeff);
  return r;
}

template <BaseField F>
MultiPoly<F> MultiPoly<F>::operator+(const MultiPoly& o) const {
  MultiPoly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() && j != o.terms_.end()) {
    auto c = grlex(i->mono, j->mono);
    if (c == std::strong_ordering::greater) {
      r.terms_.push_back(*i++);
    } else if (c == std::strong_ordering::less) {
      r.terms_.push_back(*j++);
    } else {
      F s = F(i->coeff + j->coeff);
      if (!coeff_is_zero(s)) r.terms_.push_back(Term{i->mono, s});
      ++i;
      ++j;
    }
  }
  r.terms_.insert(r.terms_.end(), i, terms_.end());
  r.terms_.insert(r.terms_.end(), j, o.terms_.end());
  return r;
}

template <BaseField F>
MultiPoly<F> MultiPoly<F>::operator-(const MultiPoly& o) const {
  return *this + (-o);
}

template <BaseField F>
MultiPoly<F> MultiPoly<F>::operator*(const MultiPoly& o) const {
  if (terms_.empty() || o.terms_.empty()) return MultiPoly{};
  if (o.terms_.size() == 1) return times_monomial(o.terms_[0].mono, o.terms_[0].coeff);
  if (terms_.size() == 1) return o.times_monomial(terms_[0].mono, terms_[0].coeff);
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) prod.push_back(Term{a.mono * b.mono, F(a.coeff * b.coeff)});
  }
  return from_terms(std::move(prod));
}

template <BaseField F>
MultiPoly<F> MultiPoly<F>::scaled(const F& c) const {
  if (coeff_is_zero(c)) return MultiPoly{};
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = F(t.coeff * c);
  return r;
}

template <BaseField F>
MultiPoly<F> MultiPoly<F>::times_monomial(const Monomial& m, const F& c) const {
  if (coeff_is_zero(c)) return MultiPoly{};
  // Multiplying by a monomial preserves grlex order.
  MultiPoly r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{t.mono * m, F(t.coeff * c)});
  return r;
}

template <BaseField F>
MultiPoly<F> MultiPoly<F>::pow(std::uint32_t e) const {
  MultiPoly result(FieldTraits<F>::from_int(1));
  if (terms_.size() == 1) {
    std::vector<Monomial::Entry> es = terms_[0].mono.entries();
    for (auto& [v, x] : es) x *= e;
    F c = FieldTraits<F>::from_int(1);
    for (std::uint32_t i = 0; i < e; ++i) c = F(c * terms_[0].coeff);
    return monomial(Monomial::from_entries(std::move(es)), c);
  }
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

template <BaseField F>
MultiPoly<F> MultiPoly<F>::div_monomial(const Monomial& m) const {
  if (m.is_one()) return *this;
  MultiPoly r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{m.quotient_of(t.mono), t.coeff});
  return r;
}

template <BaseField F>
MultiPoly<F> MultiPoly<F>::monic() const {
  if (terms_.empty() || FieldTraits<F>::is_one(terms_.front().coeff)) return *this;
  return scaled(FieldTraits<F>::inverse(terms_.front().coeff));
}

template <BaseField F>
std::vector<MultiPoly<F>> MultiPoly<F>::coefficients_in(VarId y) const {
  std::vector<std::vector<Term>> buckets(degree_in(y) + 1);
  for (const auto& t : terms_) buckets[t.mono.exponent(y)].push_back(Term{t.mono.without(y), t.coeff});
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) {
    // Removing y from monomials of a fixed y-degree keeps the order.
    MultiPoly p;
    p.terms_ = std::move(b);
    out.push_back(std::move(p));
  }
  return out;
}

template <BaseField F>
MultiPoly<F> MultiPoly<F>::from_coefficients(VarId y, const std::vector<MultiPoly>& coeffs) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Monomial yk = Monomial::of(y, static_cast<std::uint32_t>(k));
    for (const auto& t : coeffs[k].terms_) terms.push_back(Term{t.mono * yk, t.coeff});
  }
  return from_terms(std::move(terms));
}

// ---------------------------------------------------------------------------
// Division and gcd

template <BaseField F>
std::optional<MultiPoly<F>> exact_divide(const MultiPoly<F>& p, const MultiPoly<F>& d) {
  if (d.is_zero()) throw DomainError("exact_divide: division by the zero polynomial");
  if (p.is_zero()) return MultiPoly<F>{};
  if (d.is_monomial()) {
    const auto& lt = d.leading();
    if (!lt.mono.divides(p.monomial_content())) return std::nullopt;
    return p.div_monomial(lt.mono).scaled(FieldTraits<F>::inverse(lt.coeff));
  }
  const auto& dl = d.leading();
  F inv = FieldTraits<F>::inverse(dl.coeff);
  MultiPoly<F> rem = p;
  std::vector<typename MultiPoly<F>::Term> quot;
  while (!rem.is_zero()) {
    const auto& rl = rem.leading();
    if (!dl.mono.divides(rl.mono)) return std::nullopt;
    Monomial qm = dl.mono.quotient_of(rl.mono);
    F qc = F(rl.coeff * inv);
    rem = rem - d.times_monomial(qm, qc);
    quot.push_back({std::move(qm), qc});
  }
  return MultiPoly<F>::from_terms(std::move(quot));
}

namespace {

template <class F>
using Dense = std::vector<F>;

template <class F>
void trim(Dense<F>& a) {
  while (!a.empty() && FieldTraits<F>::is_zero(a.back())) a.pop_back();
}

template <class F>
Dense<F> dense_rem(Dense<F> a, const Dense<F>& b) {
  F inv = FieldTraits<F>::inverse(b.back());
  while (a.size() >= b.size()) {
    F q = F(a.back() * inv);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = F(a[shift + i] - q * b[i]);
    a.pop_back();
    trim(a);
  }
  return a;
}

template <class F>
MultiPoly<F> univariate_gcd(const MultiPoly<F>& p, const MultiPoly<F>& q, VarId y) {
  auto to_dense = [&](const MultiPoly<F>& f) {
    Dense<F> d(f.degree_in(y) + 1, FieldTraits<F>::from_int(0));
    for (const auto& t : f.terms()) d[t.mono.exponent(y)] = t.coeff;
    return d;
  };
  Dense<F> a = to_dense(p);
  Dense<F> b = to_dense(q);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    Dense<F> r = dense_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  std::vector<typename MultiPoly<F>::Term> terms;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!FieldTraits<F>::is_zero(a[k])) terms.push_back({Monomial::of(y, static_cast<std::uint32_t>(k)), a[k]});
  }
  return MultiPoly<F>::from_terms(std::move(terms)).monic();
}

template <class F>
using Recursive = std::vector<MultiPoly<F>>;  // dense in the main variable

template <class F>
void trim(Recursive<F>& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

template <class F>
MultiPoly<F> fold_gcd(MultiPoly<F> acc, const Recursive<F>& coeffs) {
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    acc = poly_gcd(acc, c);
    if (acc.is_constant() && !acc.is_zero()) break;
  }
  return acc;
}

template <class F>
Recursive<F> divide_all(const Recursive<F>& a, const MultiPoly<F>& d) {
  if (d.is_one()) return a;
  Recursive<F> out;
  out.reserve(a.size());
  for (const auto& c : a) {
    auto q = exact_divide(c, d);
    if (!q) throw std::logic_error("poly_gcd: content does not divide coefficient");
    out.push_back(std::move(*q));
  }
  return out;
}

template <class F>
Recursive<F> primitive(const Recursive<F>& a) {
  MultiPoly<F> cont = fold_gcd(MultiPoly<F>{}, a);
  Recursive<F> out = divide_all(a, cont);
  F lead = out.back().leading().coeff;
  if (!FieldTraits<F>::is_one(lead)) {
    F inv = FieldTraits<F>::inverse(lead);
    for (auto& c : out) c = c.scaled(inv);
  }
  return out;
}

template <class F>
Recursive<F> pseudo_rem(Recursive<F> r, const Recursive<F>& b) {
  const MultiPoly<F>& lb = b.back();
  while (r.size() >= b.size()) {
    MultiPoly<F> lr = r.back();
    std::size_t shift = r.size() - b.size();
    for (auto& c : r) c = c * lb;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] = r[shift + i] - lr * b[i];
    trim(r);
  }
  return r;
}


// Images modulo a word-size prime, used to certify that a gcd is trivial.
class Residues {
 public:
  using u64 = std::uint64_t;

  explicit Residues(u64 p) : p_(p) {}
  u64 prime() const { return p_; }

  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p_); }
  u64 add(u64 a, u64 b) const { return (a + b) % p_; }
  u64 sub(u64 a, u64 b) const { return (a + p_ - b) % p_; }
  u64 inv(u64 a) const {
    u64 r = 1, e = p_ - 2;
    for (; e; e >>= 1, a = mul(a, a)) {
      if (e & 1) r = mul(r, a);
    }
    return r;
  }

  std::optional<u64> of(const Rational& c) const {
    u64 d = mpz_fdiv_ui(c.get_den_mpz_t(), p_);
    if (d == 0) return std::nullopt;
    return mul(mpz_fdiv_ui(c.get_num_mpz_t(), p_), inv(d));
  }
  std::optional<u64> of(const ModP& c) const { return c.value(); }

 private:
  u64 p_;
};

template <class F>
Residues residues_for() {
  if constexpr (std::is_same_v<F, ModP>) {
    return Residues(ModP::modulus());
  } else {
    return Residues(2305843009213693951ull);  // 2^61 - 1
  }
}

using ResDense = std::vector<std::uint64_t>;

std::size_t res_degree(ResDense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a.size();
}

// Size of gcd(a, b) as a dense vector (degree + 1).
std::size_t res_gcd_size(const Residues& r, ResDense a, ResDense b) {
  res_degree(a);
  res_degree(b);
  while (!b.empty()) {
    std::uint64_t inv = r.inv(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t q = r.mul(a.back(), inv);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = r.sub(a[shift + i], r.mul(q, b[i]));
      res_degree(a);
    }
    std::swap(a, b);
  }
  return a.size();
}

// True only when gcd(p, q) is certainly constant. For each shared variable y
// the others are sent to points where lc_y(p) survives, so the image of the
// gcd keeps its y-degree and divides the gcd of the images.
template <class F>
bool certainly_coprime(const MultiPoly<F>& p, const MultiPoly<F>& q) {
  Residues r = residues_for<F>();
  if (r.prime() < 1000) return false;
  std::vector<VarId> vp = p.variables();
  std::vector<VarId> vq = q.variables();
  std::vector<VarId> shared;
  std::set_intersection(vp.begin(), vp.end(), vq.begin(), vq.end(), std::back_inserter(shared));
  std::vector<VarId> all;
  std::set_union(vp.begin(), vp.end(), vq.begin(), vq.end(), std::back_inserter(all));

  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  auto next = [&] {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return 2 + state % (r.prime() - 3);
  };

  for (VarId y : shared) {
    bool done = false;
    for (int attempt = 0; attempt < 2 && !done; ++attempt) {
      std::map<VarId, std::uint64_t> at;
      for (VarId z : all) {
        if (z != y) at[z] = next();
      }
      auto image = [&](const MultiPoly<F>& f) -> std::optional<ResDense> {
        ResDense d(f.degree_in(y) + 1, 0);
        for (const auto& t : f.terms()) {
          auto c = r.of(t.coeff);
          if (!c) return std::nullopt;
          std::uint64_t v = *c;
          for (const auto& [z, e] : t.mono.entries()) {
            if (z == y) continue;
            for (std::uint32_t i = 0; i < e; ++i) v = r.mul(v, at[z]);
          }
          std::size_t k = t.mono.exponent(y);
          d[k] = r.add(d[k], v);
        }
        return d;
      };
      auto a = image(p);
      auto b = image(q);
      if (!a || !b) return false;
      if (a->back() == 0) continue;
      if (res_gcd_size(r, std::move(*a), std::move(*b)) != 1) return false;
      done = true;
    }
    if (!done) return false;
  }
  return true;
}

template <class F>
MultiPoly<F> gcd_without_monomial_content(const MultiPoly<F>& p, const MultiPoly<F>& q) {
  if (p.is_constant() || q.is_constant()) return MultiPoly<F>::constant(1);
  if (p.monic() == q.monic()) return p.monic();
  if (certainly_coprime(p, q)) return MultiPoly<F>::constant(1);
  std::vector<VarId> vp = p.variables();
  std::vector<VarId> vq = q.variables();
  for (VarId y : vp) {
    if (!std::binary_search(vq.begin(), vq.end(), y)) return fold_gcd(q, p.coefficients_in(y)).monic();
  }
  for (VarId y : vq) {
    if (!std::binary_search(vp.begin(), vp.end(), y)) return fold_gcd(p, q.coefficients_in(y)).monic();
  }
  if (vp.size() == 1) return univariate_gcd(p, q, vp[0]);

  VarId main = vp[0];
  std::uint32_t best = ~0u;
  for (VarId y : vp) {
    std::uint32_t cost = std::min(p.degree_in(y), q.degree_in(y));
    if (cost < best) {
      best = cost;
      main = y;
    }
  }
  Recursive<F> a = p.coefficients_in(main);
  Recursive<F> b = q.coefficients_in(main);
  MultiPoly<F> ca = fold_gcd(MultiPoly<F>{}, a);
  MultiPoly<F> cb = fold_gcd(MultiPoly<F>{}, b);
  MultiPoly<F> content = poly_gcd(ca, cb);
  a = primitive(a);
  b = primitive(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    if (b.size() == 1) {
      a = Recursive<F>{MultiPoly<F>::constant(1)};
      break;
    }
    Recursive<F> r = pseudo_rem(a, b);
    a = std::move(b);
    b = r.empty() ? Recursive<F>{} : primitive(r);
  }
  a = primitive(a);
  return (content * MultiPoly<F>::from_coefficients(main, a)).monic();
}

}  // namespace

template <BaseField F>
MultiPoly<F> poly_gcd(const MultiPoly<F>& p, const MultiPoly<F>& q) {
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();
  if (p.is_constant() || q.is_constant()) return MultiPoly<F>::constant(1);
  Monomial mp = p.monomial_content();
  Monomial mq = q.monomial_content();
  Monomial g = Monomial::gcd(mp, mq);
  const F one = FieldTraits<F>::from_int(1);
  if (p.is_monomial() || q.is_monomial()) return MultiPoly<F>::monomial(g, one);
  MultiPoly<F> core = gcd_without_monomial_content(p.div_monomial(mp), q.div_monomial(mq));
  return core.times_monomial(g, one).monic();
}

template <BaseField F>
std::string to_string(const MultiPoly<F>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool neg = FieldTraits<F>::is_negative(t.coeff);
    F mag = neg ? F(-t.coeff) : t.coeff;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      out += FieldTraits<F>::to_string(mag);
    } else if (FieldTraits<F>::is_one(mag)) {
      out += to_string(t.mono);
    } else {
      out += FieldTraits<F>::to_string(mag) + "*" + to_string(t.mono);
    }
  }
  return out;
}

#define ORELAB_INSTANTIATE(F)                                                                   \
  template class MultiPoly<F>;                                                                  \
  template std::optional<MultiPoly<F>> exact_divide(const MultiPoly<F>&, const MultiPoly<F>&); \
  template MultiPoly<F> poly_gcd(const MultiPoly<F>&, const MultiPoly<F>&);                     \
  template std::string to_string(const MultiPoly<F>&);

ORELAB_INSTANTIATE(Rational)
ORELAB_INSTANTIATE(ModP)

#undef ORELAB_INSTANTIATE

}  // namespace orelab
