#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "poolhire/model.hpp"

namespace poolhire {

enum class Horizon { EveryPrefix, FirstRoundOnly };

enum class ViolationCode {
  FairPair,       // hired worker scores below an unhired one
  MrRatio,        // minority share below m although M is large enough
  MrExcluded,     // M too small for m, yet some minority left unhired
  MfClauseI,      // within-group score order broken
  MfClauseII,     // non-minority hired over a higher-scoring minority
  MfClauseIII,    // minority displaces a non-minority while the share exceeds m
  AiSplit,        // a split of Q hires differs from hiring Q at once
  PiPermutation,  // reordering a plural sequence changes the hired union
  CommonTop,      // institutions disagree on their first hire
  MultiAiSplit,   // an institution's split hire differs from its block hire
};

std::string_view to_string(ViolationCode code);
std::string_view to_string(Horizon horizon);

struct Witness {
  ViolationCode code = ViolationCode::FairPair;
  // Pair checks: (hired worker, unhired worker). Common top: one pick per
  // institution.
  std::vector<WorkerIndex> workers;
  // Number of rounds in the prefix that fails (pair and ratio checks).
  std::size_t prefix_rounds = 0;
  // Split checks: the offending composition.
  std::vector<std::int64_t> composition;
  // Split / permutation checks: the reference hires and the differing hires.
  std::vector<WorkerIndex> reference_set;
  std::vector<WorkerIndex> witness_set;
  // Permutation / multi-AI checks: (institution index, count) steps.
  std::vector<std::pair<std::size_t, std::int64_t>> steps;
  // Multi-AI: start state (this institution's hires, other institutions' hires).
  std::vector<WorkerIndex> start_own;
  std::vector<WorkerIndex> start_other;
  std::string explanation;

  bool operator==(const Witness&) const = default;
};

struct PropertyVerdict {
  bool holds = true;
  std::optional<Witness> witness;  // present exactly when !holds

  static PropertyVerdict pass() { return {}; }
  static PropertyVerdict fail(Witness w) { return {false, std::move(w)}; }
};

// Set-level predicates. `pool` is the candidate set (W \ A), `hired` a subset
// of it. Each returns the first violation found, or nullopt.

std::optional<Witness> fairness_violation(std::span<const Worker> workers,
                                          std::span<const WorkerIndex> pool,
                                          std::span<const WorkerIndex> hired);

/// |M| >= m|H| requires omega(H) >= m|H| exactly; otherwise M must lie in H.
std::optional<Witness> minority_rights_violation(std::span<const Worker> workers,
                                                 std::span<const WorkerIndex> pool,
                                                 std::span<const WorkerIndex> hired,
                                                 const Rational& m);

/// Clauses (i), (ii), (iii) in that order. Clause (iii) tolerates a minority
/// count up to ceil(m|H|), which is the ratio bound omega/|H| <= m whenever
/// m|H| is integral and the count every ceiling-based reserve produces
/// otherwise.
std::optional<Witness> minority_fair_violation(std::span<const Worker> workers,
                                               std::span<const WorkerIndex> pool,
                                               std::span<const WorkerIndex> hired,
                                               const Rational& m);

// Rule-level checks over a selection produced from the scenario.

/// Fairness after every round prefix.
PropertyVerdict check_fairness(const Selection& selection, const ValidatedScenario& scenario);

PropertyVerdict check_minority_rights(const Selection& selection, const ValidatedScenario& scenario,
                                      Horizon horizon);

PropertyVerdict check_minority_fair(const Selection& selection, const ValidatedScenario& scenario,
                                    Horizon horizon);

/// True when the witness still describes a violation of `selection`.
bool witness_replays(const Witness& witness, const Selection& selection,
                     const ValidatedScenario& scenario);

using CompositionFilter = std::function<bool(std::span<const std::int64_t>)>;

inline constexpr std::int64_t kDefaultCompositionCap = 16;

/// All 2^(total-1) compositions of total, in canonical order: fewer rounds
/// first, then smaller largest round, then lexicographic. Throws
/// BudgetExceeded above cap.
std::vector<std::vector<std::int64_t>> compositions(std::int64_t total,
                                                    std::int64_t cap = kDefaultCompositionCap);

/// Parts with integral m*q (the Brazilian rule's split-invariance domain).
CompositionFilter integral_reserve_filter(const Rational& m);

/// Compares every admissible composition of the scenario's total against the
/// single-round run. The witness is the first differing composition in
/// canonical order. NSW scenarios only consider even parts.
PropertyVerdict check_aggregation_independence(const ValidatedScenario& scenario, RuleKind rule,
                                               std::int64_t cap = kDefaultCompositionCap,
                                               const CompositionFilter& admissible = {});

bool witness_replays_split(const Witness& witness, const ValidatedScenario& scenario, RuleKind rule);

/// First composition of total_q (canonical order) under which target is
/// hired, or nullopt if none exists.
std::optional<std::vector<std::int64_t>> find_manipulation(const ValidatedScenario& scenario,
                                                           RuleKind rule, std::string_view target,
                                                           std::int64_t total_q,
                                                           std::int64_t cap = kDefaultCompositionCap);

}  // namespace poolhire
