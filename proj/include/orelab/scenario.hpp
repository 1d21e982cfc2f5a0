#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "orelab/ore_poly.hpp"

namespace orelab {

using json = nlohmann::json;

inline constexpr std::string_view kScenarioSchema = "ore-lab.scenario/1";
inline constexpr std::string_view kReportSchema = "ore-lab.report/1";

/// A runnable context: base field, A, phi, delta, field generators and sampling bounds.
struct ScenarioConfig {
  std::string name;
  std::string base_field = "Q";  // "Q" or "Fp"
  std::uint32_t prime = 0;       // Fp only
  CoeffRingKind coefficient_ring = CoeffRingKind::Field;
  std::vector<std::string> generators;
  std::vector<std::pair<std::string, std::string>> phi;  // (pattern, image)
  json derivation;
  std::uint64_t seed = 1;
  int samples = 200;
  int max_degree = 3;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

std::vector<std::string> preset_names();
/// Throws SchemaError for an unknown name. k is used by final-example only.
ScenarioConfig preset(std::string_view name, int k = 2);

json to_json(const ScenarioConfig& c);
/// Throws SchemaError on a malformed document.
ScenarioConfig scenario_from_json(const json& j);
/// A preset name, or a path to a scenario file.
ScenarioConfig load_scenario(std::string_view path_or_preset, std::optional<int> k = std::nullopt);
/// FNV-1a 64 as 16 hex digits.
std::string digest(std::string_view text);
/// digest of the canonical JSON.
std::string scenario_digest(const ScenarioConfig& c);

/// Makes the base field current (sets the process-wide modulus for Fp).
void activate_base_field(const ScenarioConfig& c);

template <BaseField F>
struct Scenario {
  ScenarioConfig config;
  OreRing<F> ore;
  InjectivityReport injectivity;
};

/// Validates and builds. Throws SchemaError, ParseError or DomainError.
template <BaseField F>
Scenario<F> build_scenario(const ScenarioConfig& c);

/// A polynomial in t over K, written in the expression grammar.
template <BaseField F>
CoeffElem<F> parse_coeff(std::string_view text, CoeffRingKind kind);

template <BaseField F>
DerivationSpec<F> derivation_from_json(const json& j, CoeffRingKind kind);

}  // namespace orelab
