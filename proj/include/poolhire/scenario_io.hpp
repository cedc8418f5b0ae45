#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "poolhire/model.hpp"
#include "poolhire/multi.hpp"

namespace poolhire {

// Scenario documents:
//   {"workers": [{"id", "score"?, "minority"?, "gender"?, "open_score"?,
//                 "disability_score"?, "pools"?: ["open", "disability"]}],
//    "policy": {"rule", "m", "k"?}, "sequence": [ints], "prior_hires": [ids]}
// Rationals are written as plain integers or [numerator, denominator]; on
// input "n/d" strings and finite decimals are accepted too.
// Parse errors throw Error(ParseError) naming the offending JSON path.

Rational rational_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json rational_to_json(const Rational& r);

Worker worker_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json worker_to_json(const Worker& w);

Policy policy_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json policy_to_json(const Policy& p);

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

/// Reads and parses a JSON file; missing or malformed files throw ParseError.
nlohmann::json read_json_file(const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

/// SHA-256 (hex) of the canonical serialization.
std::string sha256_hex(const std::string& bytes);
std::string scenario_digest(const Scenario& s);

// Plural scenarios add `institutions` ([{id, policy}]) and `plural_sequence`
// ([[institution_id, count], ...]). An optional `ranking` (array of worker
// ids) makes every institution follow that single priority.
struct PluralScenario {
  std::vector<Worker> workers;
  std::vector<Institution> institutions;
  PluralSequence steps;
  std::vector<std::string> ranking;

  bool operator==(const PluralScenario&) const = default;
};

PluralScenario plural_scenario_from_json(const nlohmann::json& j);
nlohmann::json plural_scenario_to_json(const PluralScenario& s);
PluralScenario load_plural_scenario(const std::filesystem::path& path);
std::string plural_scenario_digest(const PluralScenario& s);

/// Unique ids, valid counts, strict main scores and a total ranking when one
/// is given. Throws Error.
void validate_plural_scenario(const PluralScenario& s);

/// The rule set the scenario describes (single priority when `ranking` is
/// present, otherwise one institutional rule per policy).
RuleSet plural_rules(const PluralScenario& s);

}  // namespace poolhire
