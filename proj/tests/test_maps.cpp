#include <doctest.h>

#include "orelab/expr.hpp"
#include "orelab/maps.hpp"
#include "test_support.hpp"

using namespace orelab;
using Q = Rational;
using RF = RatFunc<Q>;
using A = CoeffElem<Q>;
using AX = APoly<Q>;
using Spec = EndoSpec<Q>;

namespace {

RF q(std::string_view s) { return parse_expr<Q>(s); }
RF x(std::uint32_t i) { return RF::var(xvar(i)); }
RF t() { return RF::var(tvar()); }

Spec final_example() { return Spec::from_rules({{"x{i}", "x{i+1}^{i+1}"}}); }
Spec example_one() { return Spec::from_rules({{"t", "x1"}, {"x{i}", "x{i+2}"}}); }
Spec asano() { return Spec::from_rules({{"x", "x^2"}}); }

// A in t-expanded form.
A a_of(std::initializer_list<RF> cs) { return A(std::vector<RF>(cs)); }

}  // namespace

TEST_CASE("family rules produce shifted powers") {
  Spec s = final_example();
  CHECK(apply_phi(s, x(1)) == x(2).pow(2));
  CHECK(apply_phi(s, x(0)) == x(1));
  CHECK(apply_phi(s, x(4)) == x(5).pow(5));
  CHECK(apply_phi(s, RF(1)) == RF(1));

  Spec braces = Spec::from_rules({{"x{i}", "x{i+1}^(2*i+1) * x{i+3}"}});
  CHECK(apply_phi(braces, x(2)) == x(3).pow(5) * x(5));
}

TEST_CASE("apply_phi over K[t]") {
  Spec s = example_one();
  CHECK(apply_phi(s, CoeffRingKind::PolyT, a_of({RF{}, x(0)})) == x(1) * x(2));
  CHECK(apply_phi(s, x(3)) == x(5));
  CHECK_THROWS_AS(apply_phi(s, CoeffRingKind::Field, a_of({RF{}, RF(1)})), DomainError);
  CHECK_THROWS_AS(apply_phi(final_example(), CoeffRingKind::PolyT, a_of({RF{}, RF(1)})), DomainError);
}

TEST_CASE("rule errors") {
  CHECK_THROWS_AS(Spec::from_rules({{"x0", "x1"}, {"x0", "x2"}}), DomainError);
  CHECK_THROWS_AS(Spec::from_rules({{"x{i}", "x{i+1}"}, {"x2", "x5"}}), DomainError);
  CHECK_THROWS_AS(Spec::from_rules({{"x{i}", "x{2*i}"}}), ParseError);
  CHECK_THROWS_AS(Spec::from_rules({{"x0", "x1 - x1"}}), DomainError);
  Spec partial = Spec::from_rules({{"x0", "x1"}});
  CHECK_THROWS_AS(apply_phi(partial, x(2)), DomainError);
}

TEST_CASE("check_injectivity") {
  CHECK(check_injectivity(final_example()).verdict == Injectivity::InjectiveCertified);
  CHECK(check_injectivity(example_one()).verdict == Injectivity::InjectiveCertified);
  CHECK(check_injectivity(asano()).verdict == Injectivity::InjectiveCertified);
  Spec id = Spec::from_rules({{"x{i}", "x{i}"}});
  CHECK(id.is_identity());
  CHECK(check_injectivity(id).verdict == Injectivity::InjectiveCertified);
  Spec bad = Spec::from_rules({{"x0", "x1 + x2"}, {"x1", "x1*x2"}});
  CHECK(check_injectivity(bad).verdict == Injectivity::Unknown);
  Spec overlap = Spec::from_rules({{"x0", "x1*x2"}, {"x1", "x2^3"}});
  CHECK(check_injectivity(overlap).verdict == Injectivity::Unknown);
  Spec clash = Spec::from_rules({{"t", "x3"}, {"x{i}", "x{i+2}"}});
  CHECK(check_injectivity(clash).verdict == Injectivity::Unknown);
}

TEST_CASE("bar") {
  CHECK(bar(A(x(0))) == x(0));
  CHECK(bar(a_of({x(1), x(0), RF(1)})) == x(1));
  CHECK(bar(a_of({RF{}, RF(1)})) == RF{});
}

TEST_CASE("phi_omega") {
  Spec s = final_example();
  RF omega = q("x3 + 1/x0");
  CHECK(phi_omega(s, CoeffRingKind::Field, AX::monomial(1, A(RF(1))), omega) == omega);
  CHECK(phi_omega(s, CoeffRingKind::Field, AX(A(x(2))), omega) == x(3).pow(3));
  AX f = AX::monomial(2, A(RF(1))) - AX(A(x(1)));
  CHECK(phi_omega(s, CoeffRingKind::Field, f, x(2)).is_zero());
}

TEST_CASE("image_membership") {
  Spec s = final_example();
  auto in = image_membership(s, CoeffRingKind::Field, x(1));
  REQUIRE(in.verdict == MembershipVerdict::InImage);
  CHECK(in.preimage == A(x(0)));

  auto fresh = image_membership(s, CoeffRingKind::Field, x(0));
  CHECK(fresh.verdict == MembershipVerdict::NotInImage);
  CHECK(fresh.certificate.kind == "fresh-variable");

  auto lattice = image_membership(asano(), CoeffRingKind::Field, q("x"));
  CHECK(lattice.verdict == MembershipVerdict::NotInImage);
  CHECK(lattice.certificate.kind == "exponent-lattice");

  auto frac = image_membership(s, CoeffRingKind::Field, q("(x2^4 + 3*x1)/(x3^3 - x2^2)"));
  REQUIRE(frac.verdict == MembershipVerdict::InImage);
  CHECK(frac.preimage == A(q("(x1^2 + 3*x0)/(x2 - x1)")));

  CHECK(image_membership(s, CoeffRingKind::Field, x(2)).verdict == MembershipVerdict::NotInImage);

  Spec e1 = example_one();
  auto tin = image_membership(e1, CoeffRingKind::PolyT, q("x1^2*x2 + x3"));
  REQUIRE(tin.verdict == MembershipVerdict::InImage);
  CHECK(tin.preimage == a_of({x(1), RF{}, x(0)}));
  auto pole = image_membership(e1, CoeffRingKind::PolyT, q("1/x1"));
  CHECK(pole.verdict == MembershipVerdict::NotInImage);
  CHECK(pole.certificate.kind == "pole-in-t-image");

  Spec bad = Spec::from_rules({{"x0", "x1 + x2"}});
  CHECK(image_membership(bad, CoeffRingKind::Field, x(1)).verdict == MembershipVerdict::Unknown);
}

TEST_CASE("transcendence_over_image") {
  Spec s = final_example();
  auto x0 = transcendence_over_image(s, CoeffRingKind::Field, x(0), 8);
  CHECK(x0.verdict == TranscendenceVerdict::Transcendental);
  CHECK(x0.certificate.kind == "fresh-variable");

  auto x2 = transcendence_over_image(s, CoeffRingKind::Field, x(2), 8);
  REQUIRE(x2.verdict == TranscendenceVerdict::AlgebraicWitness);
  CHECK(x2.degree == 2);
  CHECK(x2.annihilator == AX::monomial(2, A(RF(1))) - AX(A(x(1))));
  CHECK(x2.minimal_certified);

  for (std::uint32_t k = 1; k <= 5; ++k) {
    auto r = transcendence_over_image(s, CoeffRingKind::Field, x(k), 8);
    REQUIRE(r.verdict == TranscendenceVerdict::AlgebraicWitness);
    CHECK(r.degree == static_cast<int>(k));
    CHECK(phi_omega(s, CoeffRingKind::Field, r.annihilator, x(k)).is_zero());
  }

  auto one = transcendence_over_image(s, CoeffRingKind::Field, RF(1), 3);
  REQUIRE(one.verdict == TranscendenceVerdict::AlgebraicWitness);
  CHECK(one.degree == 1);
  CHECK(one.annihilator == AX::monomial(1, A(RF(1))) - AX(A(RF(1))));

  auto bounded = transcendence_over_image(s, CoeffRingKind::Field, x(5), 3);
  CHECK(bounded.verdict == TranscendenceVerdict::Unknown);

  auto mixed = transcendence_over_image(s, CoeffRingKind::Field, q("x1*x2"), 8);
  REQUIRE(mixed.verdict == TranscendenceVerdict::AlgebraicWitness);
  CHECK(mixed.degree == 2);

  Spec e1 = example_one();
  auto pt = transcendence_over_image(e1, CoeffRingKind::PolyT, q("x1 + x2"), 4);
  REQUIRE(pt.verdict == TranscendenceVerdict::AlgebraicWitness);
  CHECK(pt.degree == 1);
  CHECK(phi_omega(e1, CoeffRingKind::PolyT, pt.annihilator, q("x1 + x2")).is_zero());

  CHECK_THROWS_AS(transcendence_over_image(s, CoeffRingKind::Field, x(1), 0), DomainError);
}

TEST_CASE("phi is a homomorphism on 500 random pairs") {
  testing::RandomField rnd(7);
  Spec s = final_example();
  for (int i = 0; i < 500; ++i) {
    RF a = rnd.ratfunc();
    RF b = rnd.ratfunc();
    CHECK(apply_phi(s, a * b) == apply_phi(s, a) * apply_phi(s, b));
    CHECK(apply_phi(s, a + b) == apply_phi(s, a) + apply_phi(s, b));
  }
}

TEST_CASE("phi_omega is a homomorphism and bar kills (t)") {
  testing::RandomField rnd(11);
  Spec s = example_one();
  auto elem = [&] { return a_of({rnd.ratfunc(), rnd.ratfunc()}); };
  for (int i = 0; i < 60; ++i) {
    AX f{std::vector<A>{elem(), elem()}};
    AX g{std::vector<A>{elem(), elem()}};
    RF omega = rnd.nonzero_ratfunc();
    RF pf = phi_omega(s, CoeffRingKind::PolyT, f, omega);
    RF pg = phi_omega(s, CoeffRingKind::PolyT, g, omega);
    CHECK(phi_omega(s, CoeffRingKind::PolyT, f * g, omega) == pf * pg);
    CHECK(phi_omega(s, CoeffRingKind::PolyT, f + g, omega) == pf + pg);

    A p = a_of({RF{}, RF(1)}) * elem();
    CHECK(bar(p).is_zero());
    A a = elem(), b = elem();
    CHECK(bar(A(a * b)) == bar(a) * bar(b));
  }
}

TEST_CASE("image membership round-trips on random images") {
  testing::RandomField rnd(23);
  Spec s = final_example();
  for (int i = 0; i < 200; ++i) {
    RF k = rnd.ratfunc();
    RF img = apply_phi(s, k);
    auto r = image_membership(s, CoeffRingKind::Field, img);
    REQUIRE(r.verdict == MembershipVerdict::InImage);
    CHECK(r.preimage == A(k));
  }
}
