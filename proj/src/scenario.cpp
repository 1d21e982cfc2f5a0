#include "orelab/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "orelab/errors.hpp"
#include "orelab/expr.hpp"

namespace orelab {

namespace {

std::vector<std::string> xnames(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw SchemaError(std::string("field '") + key + "' has the wrong type");
  }
}

template <BaseField F>
RingElem<F> ring_elem_from_json(const json& j, CoeffRingKind kind) {
  if (!j.is_object()) throw SchemaError("ring element must be an object with 'a' and 'm'");
  std::string a = j.value("a", "0");
  std::string m = j.value("m", "0");
  return {parse_coeff<F>(a, kind), parse_expr<F>(m)};
}

}  // namespace

std::vector<std::string> preset_names() { return {"example-4.1", "asano", "final-example", "commutative"}; }

ScenarioConfig preset(std::string_view name, int k) {
  ScenarioConfig c;
  c.name = std::string(name);
  if (name == "example-4.1") {
    c.coefficient_ring = CoeffRingKind::PolyT;
    c.generators = xnames(4);
    c.phi = {{"t", "x1"}, {"x{i}", "x{i+2}"}};
    c.derivation = {{"kind", "delta_omega"}, {"omega", "x0"}};
  } else if (name == "asano") {
    c.generators = {"x"};
    c.phi = {{"x", "x^2"}};
    c.derivation = {{"kind", "delta_omega"}, {"omega", "x"}};
  } else if (name == "final-example") {
    if (k < 0) throw SchemaError("final-example needs k >= 0");
    c.name += "-k" + std::to_string(k);
    c.generators = xnames(std::max(k + 2, 3));
    c.phi = {{"x{i}", "x{i+1}^{i+1}"}};
    c.derivation = {{"kind", "delta_omega"}, {"omega", "x" + std::to_string(k)}};
  } else if (name == "commutative") {
    c.generators = xnames(2);
    c.phi = {{"x{i}", "x{i}"}};
    c.derivation = {{"kind", "commutative_field"}, {"d", {{"x0", "1"}}}};
  } else {
    throw SchemaError("unknown preset '" + std::string(name) + "'");
  }
  return c;
}

json to_json(const ScenarioConfig& c) {
  json phi = json::array();
  for (const auto& [p, img] : c.phi) phi.push_back({{"pattern", p}, {"image", img}});
  json base = c.base_field == "Fp" ? json{{"Fp", c.prime}} : json("Q");
  return {{"schema", kScenarioSchema},
          {"name", c.name},
          {"base_field", base},
          {"coefficient_ring", c.coefficient_ring == CoeffRingKind::PolyT ? "poly(t)" : "field"},
          {"generators", c.generators},
          {"phi", phi},
          {"derivation", c.derivation},
          {"seed", c.seed},
          {"samples", c.samples},
          {"max_degree", c.max_degree}};
}

ScenarioConfig scenario_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("scenario must be a JSON object");
  if (field<std::string>(j, "schema") != kScenarioSchema) {
    throw SchemaError("unsupported schema '" + j.at("schema").get<std::string>() + "'");
  }
  ScenarioConfig c;
  c.name = j.value("name", "scenario");
  const json& base = j.contains("base_field") ? j.at("base_field") : json("Q");
  if (base == "Q") {
    c.base_field = "Q";
  } else if (base.is_object() && base.contains("Fp") && base.at("Fp").is_number_unsigned()) {
    c.base_field = "Fp";
    c.prime = base.at("Fp").get<std::uint32_t>();
    if (!is_prime(c.prime)) throw SchemaError("Fp modulus must be a prime below 2^31");
  } else {
    throw SchemaError("base_field must be \"Q\" or {\"Fp\": p}");
  }
  std::string ring = field<std::string>(j, "coefficient_ring");
  if (ring == "field") {
    c.coefficient_ring = CoeffRingKind::Field;
  } else if (ring == "poly(t)") {
    c.coefficient_ring = CoeffRingKind::PolyT;
  } else {
    throw SchemaError("coefficient_ring must be \"field\" or \"poly(t)\"");
  }
  c.generators = field<std::vector<std::string>>(j, "generators");
  for (const auto& rule : field<json>(j, "phi")) {
    c.phi.emplace_back(field<std::string>(rule, "pattern"), field<std::string>(rule, "image"));
  }
  c.derivation = field<json>(j, "derivation");
  c.seed = j.value("seed", std::uint64_t{1});
  c.samples = j.value("samples", 200);
  c.max_degree = j.value("max_degree", 3);
  if (c.samples < 1) throw SchemaError("samples must be positive");
  if (c.max_degree < 0 || c.max_degree > 8) throw SchemaError("max_degree must lie in [0, 8]");
  return c;
}

ScenarioConfig load_scenario(std::string_view path_or_preset, std::optional<int> k) {
  for (const auto& name : preset_names()) {
    if (name == path_or_preset) return preset(name, k.value_or(2));
  }
  std::ifstream in{std::string(path_or_preset)};
  if (!in) throw SchemaError("no preset or readable file named '" + std::string(path_or_preset) + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("scenario file is not valid JSON: ") + e.what());
  }
  return scenario_from_json(j);
}

std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string scenario_digest(const ScenarioConfig& c) { return digest(to_json(c).dump()); }

void activate_base_field(const ScenarioConfig& c) {
  if (c.base_field == "Fp") ModP::set_modulus(c.prime);
}

template <BaseField F>
CoeffElem<F> parse_coeff(std::string_view text, CoeffRingKind kind) {
  RatFunc<F> f = parse_expr<F>(text);
  if (!f.num().involves(tvar()) && !f.den().involves(tvar())) return CoeffElem<F>(f);
  if (kind == CoeffRingKind::Field) throw DomainError("'" + std::string(text) + "' involves t but A = K");
  if (f.den().involves(tvar())) throw DomainError("'" + std::string(text) + "' is not a polynomial in t");
  std::vector<RatFunc<F>> cs;
  for (const auto& c : f.num().coefficients_in(tvar())) cs.push_back(RatFunc<F>::fraction(c, f.den()));
  return CoeffElem<F>(std::move(cs));
}

template <BaseField F>
DerivationSpec<F> derivation_from_json(const json& j, CoeffRingKind kind) {
  using S = DerivationSpec<F>;
  if (!j.is_object()) throw SchemaError("derivation must be an object");
  std::string k = field<std::string>(j, "kind");
  if (k == "delta_omega") return S::delta_omega(parse_expr<F>(field<std::string>(j, "omega")));
  if (k == "inner") return S::inner(ring_elem_from_json<F>(field<json>(j, "y"), kind));
  if (k == "sum") {
    std::vector<S> terms;
    for (const auto& t : field<json>(j, "terms")) terms.push_back(derivation_from_json<F>(t, kind));
    return S::sum(std::move(terms));
  }
  if (k == "commutative_field") {
    typename S::CommutativeField d;
    const json table = field<json>(j, "d");
    for (const auto& [name, img] : table.items()) {
      d.d[VarRegistry::global().intern(name)] = parse_expr<F>(img.template get<std::string>());
    }
    return S{d};
  }
  if (k == "custom") {
    typename S::Custom table;
    const json images = field<json>(j, "images");
    for (const auto& [name, img] : images.items()) {
      RingElem<F> r = ring_elem_from_json<F>(img, kind);
      if (name == "v") {
        table.v_image = r;
      } else {
        table.images[VarRegistry::global().intern(name)] = r;
      }
    }
    return S{table};
  }
  throw SchemaError("unknown derivation kind '" + k + "'");
}

template <BaseField F>
Scenario<F> build_scenario(const ScenarioConfig& c) {
  std::vector<typename EndoSpec<F>::Rule> rules;
  for (const auto& [p, img] : c.phi) rules.push_back({p, img});
  EndoSpec<F> phi = EndoSpec<F>::from_rules(std::move(rules));
  std::vector<VarId> gens;
  for (const auto& g : c.generators) gens.push_back(VarRegistry::global().intern(g));
  CornerRing<F> ring(c.coefficient_ring, phi, gens);
  DerivationSpec<F> delta = derivation_from_json<F>(c.derivation, c.coefficient_ring);
  if (std::holds_alternative<typename DerivationSpec<F>::CommutativeField>(delta.variant) && !ring.commutative()) {
    throw DomainError("commutative_field derivation requires coefficient_ring = field and phi = id");
  }
  InjectivityReport inj = check_injectivity(phi);
  return {c, OreRing<F>(std::move(ring), std::move(delta)), inj};
}

#define ORELAB_INSTANTIATE(F)                                                       \
  template CoeffElem<F> parse_coeff(std::string_view, CoeffRingKind);               \
  template DerivationSpec<F> derivation_from_json(const json&, CoeffRingKind);      \
  template Scenario<F> build_scenario(const ScenarioConfig&);

ORELAB_INSTANTIATE(Rational)
ORELAB_INSTANTIATE(ModP)

#undef ORELAB_INSTANTIATE

}  // namespace orelab
