#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "poolhire/model.hpp"
#include "poolhire/properties.hpp"

namespace poolhire {

struct Institution {
  std::string id;
  Policy policy;

  bool operator==(const Institution&) const = default;
};

struct PluralStep {
  std::size_t institution = 0;  // index into the institution list
  std::int64_t count = 0;

  bool operator==(const PluralStep&) const = default;
  auto operator<=>(const PluralStep&) const = default;
};

using PluralSequence = std::vector<PluralStep>;

/// Assignment of workers to institutions. Stored in both directions; every
/// mutation keeps the two views consistent.
class Matching {
 public:
  Matching(std::size_t workers, std::size_t institutions);

  std::size_t worker_count() const { return of_worker_.size(); }
  std::size_t institution_count() const { return members_.size(); }

  std::optional<std::size_t> institution_of(WorkerIndex w) const { return of_worker_[w]; }
  // Ascending.
  const std::vector<WorkerIndex>& members(std::size_t institution) const { return members_[institution]; }
  std::vector<WorkerIndex> matched() const;
  std::vector<WorkerIndex> unmatched() const;

  /// Throws ContractViolation if w is already matched.
  void assign(WorkerIndex w, std::size_t institution);

  /// mu(w) = i  <=>  w in mu(i).
  bool consistent() const;

  bool operator==(const Matching&) const = default;

 private:
  std::vector<std::optional<std::size_t>> of_worker_;
  std::vector<std::vector<WorkerIndex>> members_;
};

/// Everything an institutional rule may look at: the worker table, who is
/// still unmatched and whom this institution hired before. Other
/// institutions' hires are not visible.
struct HiringView {
  std::span<const Worker> workers;
  std::span<const WorkerIndex> unmatched;  // ascending
  std::span<const WorkerIndex> own;        // ascending
};

using InstitutionalRule = std::function<std::vector<WorkerIndex>(const HiringView&, std::int64_t q)>;
using RuleSet = std::vector<InstitutionalRule>;

/// Wraps a single-institution engine: the pool is unmatched plus own hires,
/// own hires play the role of prior hires. Supports SP, SM, SA and NSW; the
/// Brazilian and French rules carry state a view cannot reconstruct and are
/// rejected with UnsupportedRule.
InstitutionalRule institutional_rule(const Policy& policy);

/// Hires the top q unmatched workers by `ranking` (best first).
InstitutionalRule priority_rule(std::vector<WorkerIndex> ranking);

/// Every institution hires by the same strict ranking.
RuleSet single_priority_rule(const std::vector<WorkerIndex>& ranking, std::size_t institutions);

/// Workers ordered by main score, best first.
std::vector<WorkerIndex> score_ranking(std::span<const Worker> workers);

/// Matchings after each step. Throws ContractViolation if a rule hires a
/// matched worker, hires twice, or hires more than requested.
std::vector<Matching> apply_plural_sequence(std::span<const Worker> workers, const RuleSet& rules,
                                            const PluralSequence& steps,
                                            std::optional<Matching> seed = std::nullopt);

inline constexpr std::size_t kDefaultPermutationCap = 8;

/// Hired union must be identical under every distinct reordering of steps.
PropertyVerdict check_permutation_independence(std::span<const Worker> workers, const RuleSet& rules,
                                               const PluralSequence& steps,
                                               std::size_t cap = kDefaultPermutationCap);

/// Every institution's first single hire from the full pool must coincide.
PropertyVerdict check_common_top(std::span<const Worker> workers, const RuleSet& rules);

/// Compares hiring q at once against every two-part split for one
/// institution, from start states that assign each worker to unmatched, this
/// institution, or another institution. All 3^|W| states are enumerated for
/// |W| <= 8; larger pools use a fixed-seed sample of the same size.
PropertyVerdict check_multi_aggregation_independence(std::span<const Worker> workers,
                                                     const RuleSet& rules, std::size_t institution,
                                                     std::int64_t q,
                                                     std::int64_t cap = kDefaultCompositionCap);

/// Ranking implied by an institution's single hires: ask for one hire from
/// the full pool, remove that worker as if another institution took it, and
/// repeat until the pool is empty.
std::vector<WorkerIndex> reconstruct_ranking(std::span<const Worker> workers,
                                             const InstitutionalRule& rule);

}  // namespace poolhire
