#pragma once

#include <algorithm>
#include <filesystem>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include "poolhire/model.hpp"
#include "poolhire/scenario_io.hpp"

namespace fixtures {

using namespace poolhire;

inline std::filesystem::path scenario_path(const std::string& name) {
  return std::filesystem::path(POOLHIRE_SCENARIO_DIR) / name;
}

inline Scenario load(const std::string& name) { return load_scenario(scenario_path(name)); }

// Workers w1..wn with the given main scores; `minority` lists 1-based ids.
inline std::vector<Worker> workers(std::initializer_list<std::int64_t> scores,
                                   std::set<std::string> minority = {}) {
  std::vector<Worker> out;
  int i = 1;
  for (auto s : scores) {
    Worker w;
    w.id = "w" + std::to_string(i++);
    w.score = Rational(s);
    w.minority = minority.contains(w.id);
    out.push_back(std::move(w));
  }
  return out;
}

inline Scenario scenario(std::vector<Worker> ws, RuleKind rule, Rational m,
                         std::vector<std::int64_t> sequence) {
  Scenario s;
  s.workers = std::move(ws);
  s.policy.rule = rule;
  s.policy.m = m;
  s.sequence = std::move(sequence);
  return s;
}

inline std::set<std::string> ids(std::span<const Worker> ws, std::span<const WorkerIndex> set) {
  std::set<std::string> out;
  for (auto w : set) out.insert(ws[w].id);
  return out;
}

inline std::set<std::string> ids(const ValidatedScenario& s, std::span<const WorkerIndex> set) {
  return ids(s.workers(), set);
}

inline std::vector<std::string> ordered_ids(std::span<const Worker> ws, std::span<const WorkerIndex> set) {
  std::vector<std::string> out;
  for (auto w : set) out.push_back(ws[w].id);
  return out;
}

using Ids = std::set<std::string>;

}  // namespace fixtures
