#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "poolhire/rational.hpp"

namespace poolhire {

// Position of a worker in its scenario's worker list.
using WorkerIndex = std::size_t;

enum class Gender { Female, Male };

enum class RuleKind { SP, SM, SA, Brazil, FrenchP1, FrenchP2, NSW };

// Which score a rule ranks by. French rules use the two competition scores.
enum class ScoreProfile { Main, Open, Disability };

std::string_view to_string(RuleKind rule);
std::string_view to_string(ScoreProfile profile);
std::string_view to_string(Gender gender);

/// Accepts the canonical names ("SP", "FRENCH_P1", ...) case-insensitively,
/// with '-' and '_' interchangeable.
std::optional<RuleKind> parse_rule_kind(std::string_view text);

enum class ErrorCode {
  DuplicateScore,
  MissingField,
  OddNswRound,
  DuplicateId,
  UnknownWorker,
  InvalidValue,
  KTooSmall,
  BudgetExceeded,
  ParseError,
  ContractViolation,
  NoFairSet,
  MultipleFairSets,
  UnsupportedRule,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::vector<std::string> subjects = {});

  ErrorCode code() const noexcept { return code_; }
  // Ids, field names or round numbers the error refers to.
  const std::vector<std::string>& subjects() const noexcept { return subjects_; }

 private:
  ErrorCode code_;
  std::vector<std::string> subjects_;
};

struct Worker {
  std::string id;
  std::optional<Rational> score;
  bool minority = false;
  std::optional<Gender> gender;
  std::optional<Rational> open_score;
  std::optional<Rational> disability_score;
  bool in_open_pool = false;
  bool in_disability_pool = false;

  // Membership in M. Applicants to the disability competition are minority
  // workers whether or not the flag is set explicitly.
  bool counts_as_minority() const { return minority || in_disability_pool; }

  std::optional<Rational> score_in(ScoreProfile profile) const;

  bool operator==(const Worker&) const = default;
};

struct Policy {
  RuleKind rule = RuleKind::SP;
  Rational m{0};
  std::optional<std::int64_t> k;

  bool operator==(const Policy&) const = default;
};

struct Scenario {
  std::vector<Worker> workers;
  Policy policy;
  std::vector<std::int64_t> sequence;
  std::vector<std::string> prior_hires;

  bool operator==(const Scenario&) const = default;
};

/// A scenario that passed validate_scenario. Immutable; the only way to get
/// one is through validation, so engines can rely on its invariants.
class ValidatedScenario {
 public:
  const Scenario& raw() const { return raw_; }
  std::span<const Worker> workers() const { return raw_.workers; }
  const Worker& worker(WorkerIndex w) const { return raw_.workers[w]; }
  std::size_t size() const { return raw_.workers.size(); }
  const Policy& policy() const { return raw_.policy; }
  std::span<const std::int64_t> sequence() const { return raw_.sequence; }

  // Indices of prior hires, ascending.
  std::span<const WorkerIndex> prior() const { return prior_; }
  std::optional<WorkerIndex> find(std::string_view id) const;

  // Sum of the hire sequence.
  std::int64_t total_hires() const { return total_hires_; }
  // total_hires() <= |W \ A|.
  bool sufficient() const { return sufficient_; }

  ValidatedScenario with_sequence(std::vector<std::int64_t> sequence) const;
  ValidatedScenario with_rule(RuleKind rule) const;

 private:
  friend ValidatedScenario validate_scenario(Scenario raw);
  ValidatedScenario() = default;

  Scenario raw_;
  std::vector<WorkerIndex> prior_;
  std::int64_t total_hires_ = 0;
  bool sufficient_ = false;
};

/// Enforces the standing assumptions: unique ids, strict scores in every
/// profile the rule reads, the fields each rule needs, and even NSW rounds.
/// Throws Error on the first violation found.
ValidatedScenario validate_scenario(Scenario raw);

/// Score profiles consumed by a rule.
std::vector<ScoreProfile> profiles_used(RuleKind rule);

/// The min(q, |pool|) highest-scoring members of pool under profile, best
/// first. Members without a score in the profile are ignored.
std::vector<WorkerIndex> top_q(std::span<const WorkerIndex> pool, std::span<const Worker> workers,
                               ScoreProfile profile, std::int64_t q);

struct RoundRecord {
  std::size_t round_index = 0;  // 1-based
  std::int64_t q = 0;
  std::int64_t reserve_size = 0;
  std::vector<WorkerIndex> reserved_hires;
  std::vector<WorkerIndex> open_hires;
  // Both cumulative counts include prior hires.
  std::int64_t cumulative_minority_count = 0;
  std::int64_t cumulative_total = 0;

  bool operator==(const RoundRecord&) const = default;
};

struct BrazilPartition {
  std::vector<WorkerIndex> tm;  // top minority, best first
  std::vector<WorkerIndex> o;   // others, best first

  bool operator==(const BrazilPartition&) const = default;
};

struct Selection {
  std::vector<WorkerIndex> hired;  // ascending, prior hires excluded
  std::vector<RoundRecord> ledger;
  std::optional<BrazilPartition> partition;

  /// Hires made in the first `rounds` rounds, ascending.
  std::vector<WorkerIndex> hired_through(std::size_t rounds) const;

  bool operator==(const Selection&) const = default;
};

}  // namespace poolhire
