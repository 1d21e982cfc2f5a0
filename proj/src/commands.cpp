#include "orelab/commands.hpp"

#include <chrono>

#include "orelab/acceptance.hpp"
#include "orelab/errors.hpp"

namespace orelab {

namespace {

constexpr int kTranscendenceBound = 8;

template <BaseField F>
json certificate_json(const Certificate& c) {
  return {{"kind", c.kind}, {"witness", c.witness}};
}

template <BaseField F>
json membership_json(const ImageMembershipResult<F>& m) {
  json j = {{"verdict", to_string(m.verdict)}};
  if (m.verdict == MembershipVerdict::InImage) j["preimage"] = to_string(RingElem<F>::of_a(m.preimage));
  if (m.verdict == MembershipVerdict::NotInImage) j["certificate"] = certificate_json<F>(m.certificate);
  if (!m.note.empty()) j["note"] = m.note;
  return j;
}

template <BaseField F>
int slack_bound(const SkewPoly<F>& h, const SkewPoly<F>& f) {
  return static_cast<int>(std::max(0L, h.degree() - f.degree() + 2 * std::max(0L, f.degree())));
}

template <BaseField F>
class Runner {
 public:
  Runner(Scenario<F> s, const CommandArgs& args) : s_(std::move(s)), args_(args), ore_(s_.ore), ring_(ore_.base()) {}

  CommandResult run(std::string_view command) {
    res_.report["results"] = json::object();
    if (command == "classify") {
      classify();
    } else if (command == "membership") {
      membership();
    } else if (command == "duo-report") {
      duo_report();
    } else if (command == "derivation-classify") {
      derivation_classify();
    } else if (command == "leibniz-check") {
      leibniz_check();
    } else if (command == "marks-check") {
      marks_check();
    } else {
      throw SchemaError("unknown command '" + std::string(command) + "'");
    }
    return std::move(res_);
  }

 private:
  json& results() { return res_.report["results"]; }

  void say(const std::string& line) { res_.summary += line + "\n"; }

  void fail(const std::string& line) {
    res_.exit_code = std::max<int>(res_.exit_code, kExitPropertyFailure);
    say("FAIL: " + line);
  }

  bool blocked_without_omega(const char* what) {
    if (ore_.omega()) return false;
    res_.exit_code = kExitUnknown;
    results()["blocked"] = std::string(what) + " requires delta = delta_omega";
    say(std::string(what) + ": unavailable, the scenario derivation is not delta_omega");
    return true;
  }

  const std::string& need(const std::optional<std::string>& v, const char* flag) {
    if (!v) throw SchemaError(std::string("this command needs ") + flag);
    return *v;
  }

  json classification_json(const SkewPoly<F>& f, const IdealClassification<F>& c) {
    json j = {{"f", to_string(f)}, {"D_f", render(c.d_f)}, {"verdict", c.two_sided ? "TwoSided" : "NotTwoSided"}};
    if (c.two_sided) {
      j["reason"] = to_string(c.reason);
    } else {
      j["witness"] = {{"multiplier", to_string(c.multiplier)},
                      {"product", to_string(c.product)},
                      {"refutation", c.refutation},
                      {"reverified", c.reverified},
                      {"oracle_confirms", c.oracle_confirms}};
    }
    return j;
  }

  void classify() {
    if (blocked_without_omega("classify")) return;
    SkewPoly<F> f = parse_skew(ore_, need(args_.poly, "--poly"));
    IdealClassification<F> c = classify_principal_ideal(ore_, f, s_.config.seed);
    BruteProbeReport<F> probe = brute_force_two_sided_probe(ore_, f, standard_multipliers(ore_));
    json j = classification_json(f, c);
    json entries = json::array();
    for (const auto& e : probe.entries) {
      entries.push_back({{"multiplier", to_string(e.multiplier)},
                         {"outcome", to_string(e.outcome)},
                         {"structural_member", e.structural_member}});
    }
    j["oracle"] = {{"agrees", probe.agrees}, {"refuted", probe.refuted}, {"entries", entries}};
    results() = j;
    say("classify " + to_string(f) + ": " + j["verdict"].get<std::string>() +
        (c.two_sided ? " (" + to_string(c.reason) + ")" : ", witness " + to_string(c.multiplier)));
    if (!probe.agrees) fail("linear-solve oracle disagrees with the structural membership decision");
    if (c.two_sided && probe.refuted) fail("oracle refutes a TwoSided verdict");
    if (!c.two_sided && !(c.reverified && c.oracle_confirms)) fail("NotTwoSided witness did not re-verify");
  }

  void membership() {
    if (blocked_without_omega("membership")) return;
    SkewPoly<F> h = parse_skew(ore_, need(args_.h, "--h"));
    SkewPoly<F> f = parse_skew(ore_, need(args_.f, "--f"));
    RightMembership<F> m = right_ideal_membership(ore_, h, f);
    LinearSolveResult<F> o = linear_solve_membership(ore_, h, f, slack_bound(h, f));
    bool agrees = (m.member && o.outcome == ProbeOutcome::Feasible) ||
                  (!m.member && o.outcome == ProbeOutcome::Infeasible);
    json j = {{"h", to_string(h)},  {"f", to_string(f)},     {"verdict", m.member ? "In" : "NotIn"},
              {"case", m.decision_case}, {"reason", m.reason}};
    if (m.member) j["witness"] = {{"g", to_string(m.witness)}, {"reverified", skew_mul(ore_, f, m.witness) == h}};
    j["oracle"] = {{"outcome", to_string(o.outcome)}, {"degree_bound", o.degree_bound}, {"agrees", agrees}};
    if (o.outcome == ProbeOutcome::Feasible) j["oracle"]["witness"] = to_string(o.witness);
    results() = j;
    say(std::string("membership: ") + (m.member ? "In" : "NotIn") + " (" + m.reason + ")");
    if (!agrees) fail("linear-solve oracle reports " + to_string(o.outcome));
  }

  void corner_duo(json& j) {
    DuoProbeReport<F> d = right_duo_probe(ring_, s_.config.samples, s_.config.seed);
    j["corner_ring"] = {{"right_duo_sampled", d.passed}, {"checked", d.checked}, {"advisory", d.advisory}};
    if (!d.passed) {
      j["corner_ring"]["counterexample"] = {{"s", to_string(d.counterexample->first)},
                                            {"r", to_string(d.counterexample->second)}};
      fail("R is not right duo on a sampled pair");
    }
    auto w = left_duo_counterexample(ring_);
    if (w) {
      j["corner_ring"]["left_duo_counterexample"] = {
          {"g", to_string(w->g)}, {"s", to_string(w->s)}, {"certificate", certificate_json<F>(w->certificate)}};
    } else {
      j["corner_ring"]["left_duo_counterexample"] = nullptr;
    }
  }

  void duo_report() {
    json j;
    j["degenerate"] = ring_.commutative();
    if (ring_.commutative()) say("flag: phi = id and A = K, so R is commutative (degenerate scenario)");
    corner_duo(j);

    std::optional<RatFunc<F>> omega = ore_.omega();
    if (!omega) {
      DerivationClassification<F> c = classify_derivation(ring_, ore_.delta());
      j["derivation"] = to_string(c.kind);
      if (c.kind == DerivationKind::CommutativeOuter) {
        CommutativeVXReport<F> vx = commutative_vx_check(ore_, 3);
        bool refuted = vx.outcome == ProbeOutcome::Infeasible;
        j["ore_extension"] = {{"verdict", refuted ? "not right duo" : "undetermined"},
                              {"vX_in_XR", to_string(vx.outcome)},
                              {"note", vx.note}};
        say(refuted ? "not right duo: v*X is not in X*R[X]" : "undetermined: " + vx.note);
        if (!refuted) res_.exit_code = kExitUnknown;
        results() = j;
        return;
      }
      if (!c.reconstruction_verified) {
        j["ore_extension"] = {{"verdict", "undetermined"}, {"note", c.note}};
        res_.exit_code = kExitUnknown;
        say("undetermined: " + c.note);
        results() = j;
        return;
      }
      omega = c.omega;
      j["isomorphism"] = "delta = delta_omega + d_y with y = " + to_string(c.y) + "; X -> X + y identifies the extensions";
    }

    TranscendenceResult<F> tr = transcendence_over_image(ring_.phi(), ring_.kind(), *omega, kTranscendenceBound);
    json t = {{"omega", render(*omega)}, {"verdict", to_string(tr.verdict)}};
    if (tr.verdict == TranscendenceVerdict::Transcendental) t["certificate"] = certificate_json<F>(tr.certificate);
    if (tr.verdict == TranscendenceVerdict::AlgebraicWitness) {
      t["degree"] = tr.degree;
      t["annihilator"] = to_string(phi_iso_inv(OreRing<F>(ring_, DerivationSpec<F>::delta_omega(*omega)),
                                               TOmegaElem<F>{tr.annihilator, {}}));
      t["minimal_certified"] = tr.minimal_certified;
    }
    if (!tr.note.empty()) t["note"] = tr.note;
    j["transcendence"] = t;

    OreRing<F> ore(ring_, DerivationSpec<F>::delta_omega(*omega));
    if (tr.verdict == TranscendenceVerdict::Transcendental) {
      Sampler<F> rnd(s_.config.seed, ring_.generators());
      int refutations = 0, oracle_refutations = 0, disagreements = 0;
      auto multipliers = standard_multipliers(ore);
      std::string drawn;
      for (int i = 0; i < s_.config.samples; ++i) {
        SkewPoly<F> f = sample_skew(rnd, ring_.kind(), s_.config.max_degree);
        drawn += to_string(f) + ";";
        if (!classify_principal_ideal(ore, f, s_.config.seed).two_sided) ++refutations;
        BruteProbeReport<F> p = brute_force_two_sided_probe(ore, f, multipliers);
        oracle_refutations += p.refuted;
        disagreements += !p.agrees;
      }
      j["ore_extension"] = {{"verdict", refutations == 0 ? "right duo" : "not right duo"},
                            {"samples", s_.config.samples},
                            {"refutations", refutations},
                            {"oracle_refutations", oracle_refutations},
                            {"oracle_disagreements", disagreements},
                            {"draws_digest", digest(drawn)}};
      say("right duo (sampled): " + std::to_string(refutations) + " refutations / " +
          std::to_string(s_.config.samples) + " samples; transcendence certificate attached (" + tr.certificate.kind +
          ")");
      if (refutations + oracle_refutations + disagreements > 0) fail("a sampled principal right ideal is not two-sided");
    } else if (tr.verdict == TranscendenceVerdict::AlgebraicWitness) {
      SkewPoly<F> g = phi_iso_inv(ore, TOmegaElem<F>{tr.annihilator, {}});
      IdealClassification<F> c = classify_principal_ideal(ore, g, s_.config.seed);
      SkewPoly<F> gv = g + SkewPoly<F>::constant(RingElem<F>::v());
      if (c.two_sided) {
        c = classify_principal_ideal(ore, gv, s_.config.seed);
        g = gv;
      }
      j["ore_extension"] = {{"verdict", c.two_sided ? "undetermined" : "not right duo"},
                            {"generator", classification_json(g, c)}};
      if (c.two_sided) {
        res_.exit_code = kExitUnknown;
        say("undetermined: the D = 0 generator " + to_string(g) + " classifies TwoSided");
      } else {
        say("not right duo: (" + to_string(g) + ")R is not two-sided, witness " + to_string(c.multiplier));
        if (!(c.reverified && c.oracle_confirms)) fail("NotTwoSided witness did not re-verify");
      }
    } else {
      j["ore_extension"] = {{"verdict", "undetermined"}};
      res_.exit_code = kExitUnknown;
      say("undetermined: transcendence of omega unknown (" + tr.note + ")");
    }
    results() = j;
  }

  void derivation_classify() {
    LeibnizReport<F> pre = check_sigma_derivation(ring_, ore_.delta(), s_.config.samples, s_.config.seed);
    if (!pre.passed) {
      results() = {{"precondition", "not a sigma-derivation"}, {"failure", pre.failure}};
      fail("the derivation fails the " + pre.failure + " check");
      return;
    }
    DerivationClassification<F> c = classify_derivation(ring_, ore_.delta());
    json j = {{"kind", to_string(c.kind)},
              {"omega", render(c.omega)},
              {"y", to_string(c.y)},
              {"membership", membership_json(c.membership)},
              {"reconstruction_verified", c.reconstruction_verified}};
    if (!c.d.empty()) {
      json d = json::object();
      for (const auto& [v, val] : c.d) d[var_name(v)] = render(val);
      j["d"] = d;
    }
    if (!c.note.empty()) j["note"] = c.note;
    results() = j;
    say("derivation: " + to_string(c.kind) + (c.note.empty() ? "" : " (" + c.note + ")"));
    if (c.kind == DerivationKind::Unknown) res_.exit_code = std::max<int>(res_.exit_code, kExitUnknown);
  }

  void leibniz_check() {
    LeibnizReport<F> r = check_sigma_derivation(ring_, ore_.delta(), s_.config.samples, s_.config.seed);
    json j = {{"passed", r.passed}, {"checked", r.checked}};
    if (!r.passed) {
      j["failure"] = r.failure;
      j["counterexample"] = {{"r", to_string(r.counterexample->first)}, {"s", to_string(r.counterexample->second)}};
      fail(r.failure + " fails for r = " + to_string(r.counterexample->first));
    } else {
      say("leibniz-check: pass on " + std::to_string(r.checked) + " pairs");
    }
    results() = j;
  }

  void marks_check() {
    if (blocked_without_omega("marks-check")) return;
    MarksReport rep = verify_marks_conditions(ore_, s_.config.samples, s_.config.seed);
    json checks = json::array();
    for (const auto& c : rep.checks) {
      checks.push_back({{"condition", c.name}, {"checked", c.checked}, {"passed", c.passed}, {"detail", c.detail}});
      if (!c.passed) fail(c.name + ": " + c.detail);
    }
    results() = {{"passed", rep.passed()}, {"checks", checks}};
    if (rep.passed()) say("all Marks conditions pass");
  }

  Scenario<F> s_;
  const CommandArgs& args_;
  const OreRing<F>& ore_;
  const CornerRing<F>& ring_;
  CommandResult res_;
};

}  // namespace

std::vector<std::string> command_names() {
  return {"classify", "membership", "duo-report", "derivation-classify", "leibniz-check", "marks-check", "reproduce"};
}

CommandResult run_command(const ScenarioConfig& config, std::string_view command, const CommandArgs& args) {
  auto start = std::chrono::steady_clock::now();
  ScenarioConfig c = config;
  if (args.samples) c.samples = *args.samples;
  if (args.seed) c.seed = *args.seed;
  if (c.samples < 1) throw SchemaError("samples must be positive");

  CommandResult res;
  if (command == "reproduce") {
    AcceptanceOptions opts;
    if (args.seed) opts.seed = *args.seed;
    json rows = json::array();
    bool all = true;
    for (const auto& r : run_acceptance(opts)) {
      rows.push_back(to_json(r));
      res.summary += format_line(r) + "\n";
      all = all && r.passed;
    }
    res.report["results"] = {{"criteria", rows}, {"all_passed", all}};
    res.exit_code = all ? kExitOk : kExitPropertyFailure;
  } else {
    activate_base_field(c);
    if (c.base_field == "Fp") {
      res = Runner<ModP>(build_scenario<ModP>(c), args).run(command);
      res.report["injectivity"] = {{"verdict", to_string(check_injectivity(build_scenario<ModP>(c).ore.base().phi()).verdict)}};
    } else {
      Scenario<Rational> s = build_scenario<Rational>(c);
      json inj = {{"verdict", to_string(s.injectivity.verdict)}, {"reason", s.injectivity.reason}};
      res = Runner<Rational>(std::move(s), args).run(command);
      res.report["injectivity"] = inj;
    }
  }
  res.report["schema"] = kReportSchema;
  res.report["command"] = std::string(command);
  res.report["scenario"] = {{"name", c.name}, {"digest", scenario_digest(c)}, {"seed", c.seed}, {"samples", c.samples}};
  res.report["status"] = res.exit_code == kExitOk ? "pass" : res.exit_code == kExitUnknown ? "unknown" : "property-failure";
  res.report["timing_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace orelab
