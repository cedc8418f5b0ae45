#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "poolhire/model.hpp"
#include "poolhire/multi.hpp"
#include "poolhire/oracle.hpp"
#include "poolhire/properties.hpp"

namespace poolhire {

inline constexpr int kReportFormatVersion = 1;

nlohmann::json ids_json(std::span<const Worker> workers, std::span<const WorkerIndex> set);

/// Empty fields are omitted. `institution_ids` names plural steps when given.
nlohmann::json witness_json(const Witness& witness, std::span<const Worker> workers,
                            std::span<const std::string> institution_ids = {});

nlohmann::json verdict_json(const PropertyVerdict& verdict, std::span<const Worker> workers,
                            std::span<const std::string> institution_ids = {});

/// Hires, round ledger, sufficiency flag and the Brazilian partition if any.
nlohmann::json selection_json(const ValidatedScenario& scenario, const Selection& selection);

/// One row per hire: round,phase,worker,score,minority.
std::string ledger_csv(const ValidatedScenario& scenario, const Selection& selection);

nlohmann::json matching_json(const Matching& matching, std::span<const Worker> workers,
                             std::span<const Institution> institutions);

/// One line-delimited record of an equivalence run.
nlohmann::json trial_json(const TrialRecord& record);

/// Pretty-printed with sorted keys and a trailing newline.
std::string render(const nlohmann::json& report);

}  // namespace poolhire
