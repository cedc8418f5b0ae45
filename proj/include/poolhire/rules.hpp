#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "poolhire/model.hpp"

namespace poolhire {

enum class FrenchPolicy { P1, P2 };

/// What an engine sees: the worker table, which of those workers form the
/// pool W, the prior hires A (a subset of W) and the policy. Scenario-backed
/// runs and institutional rules both reduce to this.
struct HiringInput {
  std::span<const Worker> workers;
  std::vector<bool> in_pool;
  std::vector<WorkerIndex> prior;
  Policy policy;
};

HiringInput hiring_input(const ValidatedScenario& scenario);

/// Runs policy.rule over the sequence. Reserved slots that cannot be filled
/// roll into the open phase of the same round.
Selection run_rule(const HiringInput& input, std::span<const std::int64_t> sequence);

/// Dispatches on the scenario's own rule and sequence.
Selection run(const ValidatedScenario& scenario);

// Each engine requires the scenario's rule to match and throws
// Error(InvalidValue) otherwise; use ValidatedScenario::with_rule to switch.

/// Sequential priority: every round hires the top q_r remaining by score.
Selection run_sp(const ValidatedScenario& scenario);

/// Sequential minority reserves: ceil(m*q_r) top minorities, then the top
/// remaining overall. Has no memory of earlier rounds.
Selection run_sm(const ValidatedScenario& scenario);

/// Sequential adjusted minority reserves. The round-r reserve is
///   min(max(ceil(m*T_r) - omega_{r-1}, 0), q_r, minorities left)
/// where T_r counts every hire through round r (prior hires included) and
/// omega_{r-1} the minorities hired before round r (prior hires included).
Selection run_sa(const ValidatedScenario& scenario);

/// Brazilian rule: the TM/O partition is fixed up front from the top
/// min(ceil(m*k), |M|) minorities and the top k-|TM| of the rest; each round
/// then draws ceil(m*q_r) from TM and the remainder from O.
Selection run_brazil(const ValidatedScenario& scenario);

/// NSW: q_r/2 top women and q_r/2 top men; slots a gender cannot fill go to
/// the best remaining workers of either gender.
Selection run_nsw(const ValidatedScenario& scenario);

/// French policies over the open (W*) and disability (M*) competitions.
/// P1 opens round 1 to W* only; P2 reserves ceil(m*q_1) for M* in round 1.
/// Later rounds top up M* hires to ceil(m * hires so far).
Selection run_french(const ValidatedScenario& scenario, FrenchPolicy policy);

BrazilPartition brazil_partition(const HiringInput& input);

}  // namespace poolhire
