#include <doctest.h>

#include "orelab/commands.hpp"
#include "orelab/errors.hpp"

using namespace orelab;

namespace {

json without_timing(json report) {
  report.erase("timing_ms");
  return report;
}

CommandResult run(const ScenarioConfig& c, std::string_view command, CommandArgs args = {}) {
  return run_command(c, command, args);
}

CommandArgs poly(std::string text) {
  CommandArgs a;
  a.poly = std::move(text);
  return a;
}

}  // namespace

TEST_CASE("presets round trip through JSON") {
  for (const auto& name : preset_names()) {
    ScenarioConfig c = preset(name);
    CHECK(scenario_from_json(to_json(c)) == c);
    CHECK(scenario_from_json(json::parse(to_json(c).dump())) == c);
  }
  ScenarioConfig fp = preset("final-example", 3);
  fp.base_field = "Fp";
  fp.prime = 101;
  CHECK(scenario_from_json(to_json(fp)) == fp);
  CHECK(scenario_digest(fp) != scenario_digest(preset("final-example", 3)));
  CHECK(scenario_digest(preset("asano")).size() == 16);
}

TEST_CASE("preset contents") {
  ScenarioConfig e = preset("example-4.1");
  CHECK(e.coefficient_ring == CoeffRingKind::PolyT);
  auto s = build_scenario<Rational>(e);
  CHECK(s.ore.base().phi_of(CoeffElem<Rational>(std::vector<RatFunc<Rational>>{{}, RatFunc<Rational>(1)})) ==
        RatFunc<Rational>::var(xvar(1)));
  CHECK(s.ore.base().phi().image(xvar(0)) == RatFunc<Rational>::var(xvar(2)));
  CHECK(s.injectivity.verdict == Injectivity::InjectiveCertified);

  auto f = build_scenario<Rational>(preset("final-example", 3));
  CHECK(f.config.name == "final-example-k3");
  CHECK(*f.ore.omega() == RatFunc<Rational>::var(xvar(3)));
  CHECK(f.ore.base().phi().image(xvar(2)) == RatFunc<Rational>::var(xvar(3)).pow(3));

  CHECK_THROWS_AS(preset("nope"), SchemaError);
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), SchemaError);
}

TEST_CASE("schema violations are rejected") {
  json good = to_json(preset("asano"));
  auto broken = [&](auto edit) {
    json j = good;
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(scenario_from_json(json::array()), SchemaError);
  CHECK_THROWS_AS(scenario_from_json(broken([](json& j) { j["schema"] = "ore-lab.scenario/0"; })), SchemaError);
  CHECK_THROWS_AS(scenario_from_json(broken([](json& j) { j.erase("phi"); })), SchemaError);
  CHECK_THROWS_AS(scenario_from_json(broken([](json& j) { j["coefficient_ring"] = "ring"; })), SchemaError);
  CHECK_THROWS_AS(scenario_from_json(broken([](json& j) { j["base_field"] = json{{"Fp", 100}}; })), SchemaError);
  CHECK_THROWS_AS(scenario_from_json(broken([](json& j) { j["samples"] = 0; })), SchemaError);

  ScenarioConfig uncovered = preset("example-4.1");
  uncovered.phi = {{"t", "x1"}, {"x0", "x2"}};
  CHECK_THROWS(build_scenario<Rational>(uncovered));

  ScenarioConfig bad_delta = preset("asano");
  bad_delta.derivation = {{"kind", "integral"}};
  CHECK_THROWS_AS(build_scenario<Rational>(bad_delta), SchemaError);

  ScenarioConfig field_on_noncomm = preset("asano");
  field_on_noncomm.derivation = {{"kind", "commutative_field"}, {"d", {{"x", "1"}}}};
  CHECK_THROWS_AS(build_scenario<Rational>(field_on_noncomm), DomainError);
}

TEST_CASE("derivation kinds from JSON") {
  ScenarioConfig c = preset("final-example", 2);
  c.derivation = {{"kind", "sum"},
                  {"terms", json::array({{{"kind", "delta_omega"}, {"omega", "x2"}},
                                         {{"kind", "inner"}, {"y", {{"a", "x1"}, {"m", "1/x0"}}}}})}};
  auto s = build_scenario<Rational>(c);
  CHECK_FALSE(s.ore.omega());
  CommandResult r = run(c, "derivation-classify");
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["results"]["kind"] == "OuterSum");
  // d_y for y in A equals delta_{phi(y)}, so x1 folds into omega
  CHECK(r.report["results"]["omega"] == "x2^2 + x2");
  CHECK(r.report["results"]["y"] == "v*((1)/(x0))");

  c.derivation = {{"kind", "custom"}, {"images", {{"v", {{"m", "x0"}}}}}};
  r = run(c, "derivation-classify");
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["results"]["omega"] == "x0");
}

TEST_CASE("CLI examples") {
  ScenarioConfig k2 = preset("final-example", 2);
  CommandResult c = run(k2, "classify", poly("X^2 - x1"));
  CHECK(c.exit_code == kExitOk);
  CHECK(c.report["results"]["verdict"] == "NotTwoSided");
  CHECK(c.report["results"]["witness"]["multiplier"] == "(v*(1))");
  CHECK(c.report["results"]["witness"]["reverified"] == true);
  CHECK(c.report["results"]["witness"]["oracle_confirms"] == true);
  CHECK(c.report["schema"] == kReportSchema);
  CHECK(c.report["status"] == "pass");

  ScenarioConfig k0 = preset("final-example", 0);
  k0.samples = 40;
  CommandResult d = run(k0, "duo-report");
  CHECK(d.exit_code == kExitOk);
  CHECK(d.summary.find("right duo (sampled): 0 refutations / 40 samples; transcendence certificate attached") !=
        std::string::npos);
  CHECK(d.report["results"]["transcendence"]["verdict"] == "Transcendental");

  for (const auto& name : preset_names()) {
    CommandResult l = run(preset(name), "leibniz-check");
    CHECK(l.exit_code == kExitOk);
    CHECK(l.report["results"]["passed"] == true);
  }

  CommandArgs m;
  m.h = "X^3 - x1*X";
  m.f = "X^2 - x1";
  CommandResult mem = run(k2, "membership", m);
  CHECK(mem.exit_code == kExitOk);
  CHECK(mem.report["results"]["verdict"] == "In");
  CHECK(mem.report["results"]["oracle"]["agrees"] == true);
}

TEST_CASE("exit codes") {
  CHECK(run(preset("commutative"), "classify", poly("X")).exit_code == kExitUnknown);
  CHECK(run(preset("commutative"), "marks-check").exit_code == kExitUnknown);
  CHECK_THROWS_AS(run(preset("asano"), "classify", poly("X + *")), ParseError);
  CHECK_THROWS_AS(run(preset("asano"), "classify"), SchemaError);
  CHECK_THROWS_AS(run(preset("asano"), "frobnicate"), SchemaError);

  ScenarioConfig not_derivation = preset("asano");
  not_derivation.derivation = {{"kind", "custom"}, {"images", {{"x", {{"a", "1"}}}}}};
  CommandResult r = run(not_derivation, "leibniz-check");
  CHECK(r.exit_code == kExitPropertyFailure);
  CHECK(r.report["results"]["passed"] == false);
  CHECK(r.report["results"].contains("counterexample"));
}

TEST_CASE("commutative scenario") {
  CommandResult d = run(preset("commutative"), "duo-report");
  CHECK(d.exit_code == kExitOk);
  CHECK(d.report["results"]["degenerate"] == true);
  CHECK(d.report["results"]["ore_extension"]["verdict"] == "not right duo");
  CHECK(run(preset("commutative"), "derivation-classify").report["results"]["kind"] == "CommutativeOuter");
}

TEST_CASE("reports are deterministic") {
  ScenarioConfig c = preset("final-example", 0);
  c.samples = 25;
  for (std::string_view cmd : {"duo-report", "leibniz-check", "marks-check", "derivation-classify"}) {
    CHECK(without_timing(run(c, cmd).report) == without_timing(run(c, cmd).report));
  }
}

TEST_CASE("seed change keeps verdicts and changes draws") {
  ScenarioConfig c = preset("final-example", 0);
  c.samples = 25;
  CommandArgs s2;
  s2.seed = 2;
  json a = run(c, "duo-report").report;
  json b = run(c, "duo-report", s2).report;
  CHECK(a["results"]["ore_extension"]["verdict"] == b["results"]["ore_extension"]["verdict"]);
  CHECK(a["results"]["ore_extension"]["draws_digest"] != b["results"]["ore_extension"]["draws_digest"]);
  CHECK(a["scenario"]["seed"] == 1);
  CHECK(b["scenario"]["seed"] == 2);

  ScenarioConfig k2 = preset("final-example", 2);
  CHECK(run(k2, "marks-check").exit_code == run(k2, "marks-check", s2).exit_code);
}

TEST_CASE("corrupted phi: marks-check passes, duo-report is flagged degenerate") {
  ScenarioConfig c = preset("final-example", 2);
  c.phi = {{"x{i}", "x{i}"}};
  CommandResult m = run(c, "marks-check");
  CHECK(m.exit_code == kExitOk);
  CHECK(m.report["results"]["passed"] == true);
  CommandResult d = run(c, "duo-report");
  CHECK(d.report["results"]["degenerate"] == true);
  CHECK(d.summary.find("degenerate") != std::string::npos);
  CHECK(d.report["results"]["corner_ring"]["left_duo_counterexample"].is_null());
}

TEST_CASE("prime base field") {
  ScenarioConfig c = preset("final-example", 2);
  c.base_field = "Fp";
  c.prime = 101;
  CommandResult r = run(c, "classify", poly("X^2 - x1"));
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["results"]["verdict"] == "NotTwoSided");
  CHECK(run(c, "marks-check").exit_code == kExitOk);
  activate_base_field(preset("asano"));
  ModP::set_modulus(2147483647u);
}
