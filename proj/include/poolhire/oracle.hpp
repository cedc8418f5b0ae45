#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "poolhire/model.hpp"
#include "poolhire/properties.hpp"

namespace poolhire {

/// Portable seeded generator. Bounded draws use rejection sampling on the raw
/// 64-bit output, so streams agree across standard libraries.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return uniform(0, 1) == 1; }

 private:
  std::mt19937_64 engine_;
};

inline constexpr std::size_t kOracleMaxPool = 20;

struct FairSetResult {
  std::vector<WorkerIndex> set;  // ascending
  std::uint64_t subsets_examined = 0;
};

/// Brute force: every size-q subset of pool is tested against minority rights
/// and the three minority-fair clauses; exactly one must survive. Subsets are
/// visited in lexicographic order of sorted ids. Throws NoFairSet or
/// MultipleFairSets (with the first two survivors), and InvalidValue when
/// |pool| > kOracleMaxPool or q > |pool|.
FairSetResult unique_fair_set(std::span<const Worker> workers, std::span<const WorkerIndex> pool,
                              const Rational& m, std::int64_t q);

/// Subset-level acceptance used by the oracle, written independently of the
/// property checkers.
bool oracle_accepts(std::span<const Worker> workers, std::span<const WorkerIndex> pool,
                    std::span<const WorkerIndex> subset, const Rational& m);

struct InstanceConfig {
  std::int64_t min_workers = 1;
  std::int64_t max_workers = 12;
  std::vector<Rational> m_choices{Rational(0), Rational(1, 4), Rational(1, 3),
                                  Rational(1, 2), Rational(2, 3), Rational(1)};
  // Largest total hires; 0 means up to |W|.
  std::int64_t max_total = 0;
  // Only single-round sequences.
  bool single_round = false;
};

/// Distinct integer scores (a shuffled 10..10n in steps of 10), fair-coin
/// minority status topped up until |M| >= ceil(m*Q), and a random composition
/// of Q as the sequence.
Scenario random_instance(const InstanceConfig& config, RuleKind rule, Rng& rng);

/// Random composition of total: every gap is cut with probability 1/2.
std::vector<std::int64_t> random_composition(std::int64_t total, Rng& rng);

struct TrialRecord {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::string digest;
  bool match = true;
  // m*T is fractional at some prefix T.
  bool extension_semantics = false;
  std::size_t failing_prefix = 0;  // 0 when match
  std::vector<WorkerIndex> rule_set;
  std::vector<WorkerIndex> oracle_set;
  std::optional<Witness> witness;
  Scenario scenario;
};

struct EquivalenceReport {
  std::uint64_t seed = 0;
  std::vector<TrialRecord> trials;
  std::uint64_t failures = 0;
  std::uint64_t subsets_examined = 0;
};

/// For each trial the rule's hires after every prefix must equal the oracle's
/// unique fair set of that size.
EquivalenceReport oracle_equivalence(RuleKind rule, const InstanceConfig& config,
                                     std::uint64_t trials, std::uint64_t seed);

/// Orderings of `ground` (as worker index lists, best first) whose sequential
/// priority respects minority rights and is minority fair under the original
/// scores, for every q on every subpool. |ground| <= 8.
std::vector<std::vector<WorkerIndex>> transform_search(std::span<const Worker> workers,
                                                       std::span<const WorkerIndex> ground,
                                                       const Rational& m,
                                                       const std::vector<std::vector<WorkerIndex>>& subpools);

/// Instance on which the French P2 policy and SA should agree: every worker
/// applies to the open competition with open_score = score, minorities also
/// apply to the disability competition with disability_score = 2*score + 1.
Scenario french_consistent_instance(std::int64_t max_workers, Rng& rng);

}  // namespace poolhire
