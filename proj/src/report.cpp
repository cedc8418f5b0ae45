#include "poolhire/report.hpp"

#include <sstream>

#include "poolhire/scenario_io.hpp"

namespace poolhire {

using nlohmann::json;

json ids_json(std::span<const Worker> workers, std::span<const WorkerIndex> set) {
  json out = json::array();
  for (auto w : set) out.push_back(workers[w].id);
  return out;
}

json witness_json(const Witness& witness, std::span<const Worker> workers,
                  std::span<const std::string> institution_ids) {
  json j;
  j["code"] = std::string(to_string(witness.code));
  j["explanation"] = witness.explanation;
  if (!witness.workers.empty()) j["workers"] = ids_json(workers, witness.workers);
  if (witness.prefix_rounds > 0) j["prefix_rounds"] = witness.prefix_rounds;
  if (!witness.composition.empty()) j["composition"] = witness.composition;
  if (!witness.reference_set.empty() || !witness.witness_set.empty()) {
    j["reference_set"] = ids_json(workers, witness.reference_set);
    j["witness_set"] = ids_json(workers, witness.witness_set);
  }
  if (!witness.steps.empty()) {
    json steps = json::array();
    for (const auto& [inst, count] : witness.steps) {
      json name = inst < institution_ids.size() ? json(institution_ids[inst]) : json(inst);
      steps.push_back(json::array({name, count}));
    }
    j["steps"] = std::move(steps);
  }
  if (witness.code == ViolationCode::MultiAiSplit) {
    j["start_own"] = ids_json(workers, witness.start_own);
    j["start_other"] = ids_json(workers, witness.start_other);
  }
  return j;
}

json verdict_json(const PropertyVerdict& verdict, std::span<const Worker> workers,
                  std::span<const std::string> institution_ids) {
  json j;
  j["holds"] = verdict.holds;
  if (verdict.witness) j["witness"] = witness_json(*verdict.witness, workers, institution_ids);
  return j;
}

json selection_json(const ValidatedScenario& scenario, const Selection& selection) {
  const auto workers = scenario.workers();
  json j;
  j["rule"] = std::string(to_string(scenario.policy().rule));
  j["sequence"] = std::vector<std::int64_t>(scenario.sequence().begin(), scenario.sequence().end());
  j["hired"] = ids_json(workers, selection.hired);
  j["sufficient"] = scenario.sufficient();
  json ledger = json::array();
  for (const auto& r : selection.ledger) {
    ledger.push_back({{"round", r.round_index},
                      {"q", r.q},
                      {"reserve_size", r.reserve_size},
                      {"reserved_hires", ids_json(workers, r.reserved_hires)},
                      {"open_hires", ids_json(workers, r.open_hires)},
                      {"cumulative_minority_count", r.cumulative_minority_count},
                      {"cumulative_total", r.cumulative_total}});
  }
  j["ledger"] = std::move(ledger);
  if (selection.partition) {
    j["brazil_partition"] = {{"tm", ids_json(workers, selection.partition->tm)},
                             {"o", ids_json(workers, selection.partition->o)}};
  }
  return j;
}

namespace {

struct PhaseNames {
  const char* reserved;
  const char* open;
};

PhaseNames phase_names(RuleKind rule) {
  switch (rule) {
    case RuleKind::Brazil: return {"tm", "o"};
    case RuleKind::FrenchP1:
    case RuleKind::FrenchP2: return {"disability", "open"};
    default: return {"reserved", "open"};
  }
}

std::string csv_score(const Worker& w, RuleKind rule, bool reserved) {
  std::optional<Rational> s;
  if (rule == RuleKind::FrenchP1 || rule == RuleKind::FrenchP2) {
    s = reserved ? w.disability_score : w.open_score;
  } else {
    s = w.score;
  }
  return s ? to_string(*s) : "";
}

}  // namespace

std::string ledger_csv(const ValidatedScenario& scenario, const Selection& selection) {
  const auto rule = scenario.policy().rule;
  const auto names = phase_names(rule);
  std::ostringstream out;
  out << "round,phase,worker,score,minority\n";
  for (const auto& r : selection.ledger) {
    const auto emit = [&](WorkerIndex w, bool reserved) {
      const auto& worker = scenario.worker(w);
      std::string phase = reserved ? names.reserved : names.open;
      if (rule == RuleKind::NSW && worker.gender) {
        phase = *worker.gender == Gender::Female ? "female" : "male";
      }
      out << r.round_index << ',' << phase << ',' << worker.id << ','
          << csv_score(worker, rule, reserved) << ',' << (worker.counts_as_minority() ? 1 : 0) << '\n';
    };
    for (auto w : r.reserved_hires) emit(w, true);
    for (auto w : r.open_hires) emit(w, false);
  }
  return out.str();
}

json matching_json(const Matching& matching, std::span<const Worker> workers,
                   std::span<const Institution> institutions) {
  json j = json::object();
  for (std::size_t i = 0; i < institutions.size(); ++i) {
    j[institutions[i].id] = ids_json(workers, matching.members(i));
  }
  return j;
}

json trial_json(const TrialRecord& record) {
  json j;
  j["seed"] = record.seed;
  j["trial"] = record.trial;
  j["digest"] = record.digest;
  j["verdict"] = record.match ? "match" : "mismatch";
  j["extension_semantics"] = record.extension_semantics;
  if (!record.match) {
    const auto& workers = record.scenario.workers;
    j["failing_prefix"] = record.failing_prefix;
    j["rule_set"] = ids_json(workers, record.rule_set);
    j["oracle_set"] = ids_json(workers, record.oracle_set);
    j["scenario"] = scenario_to_json(record.scenario);
    if (record.witness) j["witness"] = witness_json(*record.witness, workers);
  }
  return j;
}

std::string render(const json& report) { return report.dump(2) + "\n"; }

}  // namespace poolhire
