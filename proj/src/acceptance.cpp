#include "orelab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>

#include "orelab/scenario.hpp"

namespace orelab {

namespace {

using Q = Rational;
using SP = SkewPoly<Q>;
using E = RingElem<Q>;

struct Named {
  std::string name;
  OreRing<Q> ore;
};

Named load(std::string_view preset_name, int k = 2) {
  ScenarioConfig c = preset(preset_name, k);
  return {c.name, build_scenario<Q>(c).ore};
}

std::vector<Named> omega_presets() {
  std::vector<Named> out;
  out.push_back(load("asano"));
  out.push_back(load("example-4.1"));
  out.push_back(load("final-example", 0));
  out.push_back(load("final-example", 2));
  return out;
}

SP constant(const E& r) { return SP::constant(r); }

int slack_bound(const SP& h, const SP& f) {
  return static_cast<int>(std::max(0L, h.degree() - f.degree() + 2 * std::max(0L, f.degree())));
}

SP nonzero_skew(Sampler<Q>& rnd, CoeffRingKind kind, int max_deg) {
  for (;;) {
    SP f = sample_skew(rnd, kind, max_deg);
    if (!f.is_zero()) return f;
  }
}

using Body = std::function<bool(std::string&, json&)>;

struct Criterion {
  int id;
  std::string title;
  double limit;
  Body body;
};

bool leibniz_suite(std::uint64_t seed, std::string& detail, json& data) {
  int checked = 0;
  for (const auto& [name, ore] : omega_presets()) {
    const CornerRing<Q>& ring = ore.base();
    std::vector<DerivationSpec<Q>> specs{ore.delta()};
    Sampler<Q> rnd(seed, ring.generators());
    for (int i = 0; i < 5; ++i) specs.push_back(DerivationSpec<Q>::inner(rnd.nonzero_ring_elem(ring.kind())));
    for (std::size_t i = 0; i < specs.size(); ++i) {
      LeibnizReport<Q> r = check_sigma_derivation(ring, specs[i], 1000, seed + i);
      checked += r.checked;
      if (!r.passed) {
        detail = name + ": derivation " + std::to_string(i) + " fails " + r.failure + " at r = " +
                 to_string(r.counterexample->first) + ", s = " + to_string(r.counterexample->second);
        return false;
      }
    }
    data[name] = specs.size();
  }
  detail = std::to_string(checked) + " pairs over 4 scenarios, delta_omega and 5 inner derivations each";
  return true;
}

bool isomorphism(std::uint64_t seed, std::string& detail, json& data) {
  int n = 0;
  for (const auto& [name, ore] : omega_presets()) {
    Sampler<Q> rnd(seed, ore.base().generators());
    for (int i = 0; i < 500; ++i, ++n) {
      SP f = sample_skew(rnd, ore.base().kind(), 4);
      SP g = sample_skew(rnd, ore.base().kind(), 4);
      TOmegaElem<Q> pf = phi_iso(ore, f);
      if (phi_iso(ore, skew_mul(ore, f, g)) != tomega_mul(ore, pf, phi_iso(ore, g))) {
        detail = name + ": Phi(fg) != Phi(f)Phi(g) for f = " + to_string(f) + ", g = " + to_string(g);
        return false;
      }
      if (phi_iso_inv(ore, pf) != f) {
        detail = name + ": inverse fails on " + to_string(f);
        return false;
      }
    }
    data[name] = 500;
  }
  detail = std::to_string(n) + " pairs, degree <= 4, product law and round trip";
  return true;
}

bool d_homomorphism(std::uint64_t seed, std::string& detail, json& data) {
  int n = 0;
  for (const auto& [name, ore] : omega_presets()) {
    Sampler<Q> rnd(seed, ore.base().generators());
    for (int i = 0; i < 500; ++i, ++n) {
      SP f = sample_skew(rnd, ore.base().kind(), 4);
      SP g = sample_skew(rnd, ore.base().kind(), 4);
      RatFunc<Q> df = d_value(ore, f);
      if (skew_mul(ore, f, constant(E::v())) != constant(E::v(df))) {
        detail = name + ": f*v != v*D_f for f = " + to_string(f);
        return false;
      }
      if (d_value(ore, f + g) != df + d_value(ore, g) || d_value(ore, skew_mul(ore, f, g)) != df * d_value(ore, g)) {
        detail = name + ": D not a homomorphism at f = " + to_string(f) + ", g = " + to_string(g);
        return false;
      }
    }
    data[name] = 500;
  }
  detail = std::to_string(n) + " pairs, f*v = v*D_f, D additive and multiplicative";
  return true;
}

bool oracle_equivalence(std::uint64_t seed, std::string& detail, json& data) {
  int pairs = 0, members = 0;
  for (const auto& [name, ore] : omega_presets()) {
    CoeffRingKind kind = ore.base().kind();
    Sampler<Q> rnd(seed, ore.base().generators());
    int in = 0;
    for (int i = 0; i < 200; ++i, ++pairs) {
      SP f = nonzero_skew(rnd, kind, 3);
      SP h = rnd.below(2) ? skew_mul(ore, f, sample_skew(rnd, kind, static_cast<int>(3 - f.degree())))
                          : sample_skew(rnd, kind, 3);
      RightMembership<Q> s = right_ideal_membership(ore, h, f);
      LinearSolveResult<Q> o = linear_solve_membership(ore, h, f, slack_bound(h, f));
      bool agree = (s.member && o.outcome == ProbeOutcome::Feasible) ||
                   (!s.member && o.outcome == ProbeOutcome::Infeasible);
      if (!agree) {
        detail = name + ": structural " + (s.member ? "In" : "NotIn") + " vs oracle " + to_string(o.outcome) +
                 " for h = " + to_string(h) + ", f = " + to_string(f);
        return false;
      }
      if (s.member && (skew_mul(ore, f, s.witness) != h || skew_mul(ore, f, o.witness) != h)) {
        detail = name + ": witness fails to re-verify for h = " + to_string(h);
        return false;
      }
      in += s.member;
    }
    data[name] = {{"pairs", 200}, {"members", in}};
    members += in;
  }
  detail = std::to_string(pairs) + " pairs agree exactly (" + std::to_string(members) + " In, witnesses re-verified)";
  return true;
}

bool duo_dichotomy(std::uint64_t seed, std::string& detail, json& data) {
  Named zero = load("final-example", 0);
  auto multipliers = standard_multipliers(zero.ore);
  Sampler<Q> rnd(seed, zero.ore.base().generators());
  for (int i = 0; i < 200; ++i) {
    SP f = sample_skew(rnd, CoeffRingKind::Field, 4);
    IdealClassification<Q> c = classify_principal_ideal(zero.ore, f, seed);
    BruteProbeReport<Q> p = brute_force_two_sided_probe(zero.ore, f, multipliers);
    if (!c.two_sided || p.refuted || !p.agrees) {
      detail = "omega = x0: f = " + to_string(f) + " is refuted";
      return false;
    }
  }
  data["transcendental"] = {{"scenario", zero.name}, {"samples", 200}, {"refutations", 0}};

  json algebraic = json::array();
  std::string chosen;
  for (int k : {2, 3}) {
    Named s = load("final-example", k);
    Sampler<Q> r2(seed + static_cast<std::uint64_t>(k), s.ore.base().generators());
    for (int i = 0; i < 50; ++i) {
      SP f = sample_skew(r2, CoeffRingKind::Field, k - 1);
      if (!classify_principal_ideal(s.ore, f, seed).two_sided) {
        detail = s.name + ": f = " + to_string(f) + " of degree < k is not two-sided";
        return false;
      }
    }
    std::string ks = std::to_string(k);
    std::vector<std::string> candidates{"X^" + ks + " - x" + std::to_string(k - 1),
                                        "X^" + ks + " - x" + ks + "^" + ks};
    json row = {{"k", k}, {"low_degree_samples", 50}};
    int not_two = 0;
    for (const auto& text : candidates) {
      SP g = parse_skew(s.ore, text);
      IdealClassification<Q> c = classify_principal_ideal(s.ore, g, seed);
      json cj = {{"f", text}, {"D_f", render(c.d_f)}, {"verdict", c.two_sided ? "TwoSided" : "NotTwoSided"}};
      if (c.two_sided) {
        cj["reason"] = to_string(c.reason);
      } else {
        if (!(c.reverified && c.oracle_confirms)) {
          detail = s.name + ": witness for " + text + " is not confirmed";
          return false;
        }
        cj["multiplier"] = to_string(c.multiplier);
        ++not_two;
        if (k == 2) chosen = text;
      }
      row["candidates"].push_back(cj);
    }
    if (not_two != 1) {
      detail = s.name + ": expected exactly one non-two-sided candidate, found " + std::to_string(not_two);
      return false;
    }
    algebraic.push_back(row);
  }
  data["algebraic"] = algebraic;
  detail = "omega = x0: 200/200 TwoSided; k = 2, 3: degree < k TwoSided, generator " + chosen +
           " (k = 2) is NotTwoSided with a confirmed witness";
  return true;
}

bool corner_duo(std::uint64_t seed, std::string& detail, json& data) {
  std::vector<Named> scenarios;
  scenarios.push_back(load("asano"));
  scenarios.push_back(load("example-4.1"));
  scenarios.push_back(load("final-example", 2));
  for (const auto& [name, ore] : scenarios) {
    const CornerRing<Q>& ring = ore.base();
    DuoProbeReport<Q> d = right_duo_probe(ring, 500, seed);
    if (!d.passed) {
      detail = name + ": s*r not in rR for s = " + to_string(d.counterexample->first) +
               ", r = " + to_string(d.counterexample->second);
      return false;
    }
    auto w = left_duo_counterexample(ring);
    if (!w || ring.commutative()) {
      detail = name + ": no certified left duo counterexample";
      return false;
    }
    data[name] = {{"right_duo_pairs", d.checked}, {"left_witness_s", to_string(w->s)}, {"certificate", w->certificate.kind}};
  }
  detail = "right duo on 3 x 500 sampled pairs; each ring has a certified left duo counterexample";
  return true;
}

bool non_sufficiency(std::uint64_t seed, std::string& detail, json& data) {
  Named s = load("final-example", 2);
  MarksReport rep = verify_marks_conditions(s.ore, 200, seed);
  json checks = json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"condition", c.name}, {"checked", c.checked}, {"passed", c.passed}});
    if (!c.passed) {
      detail = s.name + ": condition " + c.name + " fails: " + c.detail;
      return false;
    }
  }
  data["marks"] = checks;
  IdealClassification<Q> c = classify_principal_ideal(s.ore, parse_skew(s.ore, "X^2 - x1"), seed);
  if (c.two_sided || !c.reverified || !c.oracle_confirms) {
    detail = s.name + ": (X^2 - x1)R is not refuted with a confirmed witness";
    return false;
  }
  data["witness"] = {{"multiplier", to_string(c.multiplier)}, {"product", to_string(c.product)}};
  detail = std::to_string(rep.checks.size()) + " Marks conditions hold, yet (X^2 - x1)R is not two-sided (witness " +
           to_string(c.multiplier) + ")";
  return true;
}

bool commutative_boundary(std::uint64_t seed, std::string& detail, json& data) {
  Named s = load("commutative");
  CommutativeVXReport<Q> vx = commutative_vx_check(s.ore, 4);
  data["vX_in_XR"] = {{"outcome", to_string(vx.outcome)}, {"bounds", vx.bounds}};
  if (vx.outcome != ProbeOutcome::Infeasible) {
    detail = "v*X in X*R[X] not excluded: " + vx.note;
    return false;
  }
  const CornerRing<Q>& ring = s.ore.base();
  Sampler<Q> rnd(seed, ring.generators());
  E y = E::of_k(RatFunc<Q>::var(ring.generators().back()));
  OreRing<Q> shifted(ring, DerivationSpec<Q>::sum({s.ore.delta(), DerivationSpec<Q>::inner(y)}));
  for (int i = 0; i < 200; ++i) {
    SP f = sample_skew(rnd, CoeffRingKind::Field, 3);
    SP g = sample_skew(rnd, CoeffRingKind::Field, 3);
    if (derivation_shift_iso(s.ore, shifted, skew_mul(shifted, f, g), y) !=
        skew_mul(s.ore, derivation_shift_iso(s.ore, shifted, f, y), derivation_shift_iso(s.ore, shifted, g, y))) {
      detail = "shift isomorphism is not multiplicative at f = " + to_string(f);
      return false;
    }
  }
  data["shift_pairs"] = 200;
  detail = "v*X not in X*R[X] (infeasible for degree bounds 0..4); X -> X + y multiplicative on 200 pairs";
  return true;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  using namespace std::placeholders;
  std::uint64_t seed = opts.seed;
  std::vector<Criterion> all{
      {1, "Leibniz suite", 30, std::bind(leibniz_suite, seed, _1, _2)},
      {2, "T_omega isomorphism", 60, std::bind(isomorphism, seed, _1, _2)},
      {3, "D homomorphism", 30, std::bind(d_homomorphism, seed, _1, _2)},
      {4, "Membership oracle equivalence", 120, std::bind(oracle_equivalence, seed, _1, _2)},
      {5, "Right duo dichotomy", 120, std::bind(duo_dichotomy, seed, _1, _2)},
      {6, "Corner ring duo properties", 30, std::bind(corner_duo, seed, _1, _2)},
      {7, "Marks conditions are not sufficient", 60, std::bind(non_sufficiency, seed, _1, _2)},
      {8, "Commutative boundary", 30, std::bind(commutative_boundary, seed, _1, _2)},
  };
  activate_base_field(preset("asano"));

  std::vector<CriterionResult> out;
  for (auto& c : all) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), c.id) == opts.only.end()) continue;
    CriterionResult r;
    r.id = c.id;
    r.title = c.title;
    r.limit_seconds = c.limit;
    r.data = json::object();
    auto start = std::chrono::steady_clock::now();
    try {
      r.passed = c.body(r.detail, r.data);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.passed && r.seconds > r.limit_seconds) {
      r.passed = false;
      r.detail += "; exceeded the time limit";
    }
    out.push_back(std::move(r));
  }
  return out;
}

json to_json(const CriterionResult& r) {
  return {{"id", r.id},           {"title", r.title},  {"passed", r.passed}, {"detail", r.detail},
          {"seconds", r.seconds}, {"limit_seconds", r.limit_seconds}, {"data", r.data}};
}

std::string format_line(const CriterionResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%.2f s / %.0f s): ", r.seconds, r.limit_seconds);
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title + buf + r.detail;
}

}  // namespace orelab
