#include "poolhire/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "poolhire/rules.hpp"
#include "poolhire/scenario_io.hpp"

namespace poolhire {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return lo + static_cast<std::int64_t>(engine_());
  const auto limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return lo + static_cast<std::int64_t>(x % span);
}

bool oracle_accepts(std::span<const Worker> workers, std::span<const WorkerIndex> pool,
                    std::span<const WorkerIndex> subset, const Rational& m) {
  std::vector<bool> chosen(workers.size(), false);
  for (auto w : subset) chosen[w] = true;
  const auto size = static_cast<std::int64_t>(subset.size());
  std::int64_t omega = 0;
  std::int64_t minorities = 0;
  for (auto w : pool) {
    if (!workers[w].counts_as_minority()) continue;
    ++minorities;
    if (chosen[w]) ++omega;
  }

  // Minority rights, as exact rationals.
  const Rational share_needed = m * Rational(size);
  if (Rational(minorities) >= share_needed) {
    if (Rational(omega) < share_needed) return false;
  } else if (omega != minorities) {
    return false;
  }

  // Minority fairness, pair by pair.
  const bool share_at_most_m = omega <= ceil_times(m, size);
  for (auto h : subset) {
    for (auto u : pool) {
      if (chosen[u] || !(*workers[u].score > *workers[h].score)) continue;
      const bool h_min = workers[h].counts_as_minority();
      const bool u_min = workers[u].counts_as_minority();
      if (h_min == u_min) return false;
      if (u_min) return false;
      if (!share_at_most_m) return false;
    }
  }
  return true;
}

FairSetResult unique_fair_set(std::span<const Worker> workers, std::span<const WorkerIndex> pool,
                              const Rational& m, std::int64_t q) {
  const auto n = static_cast<std::int64_t>(pool.size());
  if (pool.size() > kOracleMaxPool) {
    throw Error(ErrorCode::InvalidValue,
                "oracle pool of " + std::to_string(n) + " exceeds " + std::to_string(kOracleMaxPool),
                {std::to_string(n)});
  }
  if (q < 0 || q > n) {
    throw Error(ErrorCode::InvalidValue, "q = " + std::to_string(q) + " outside [0, " + std::to_string(n) + "]",
                {std::to_string(q)});
  }
  for (auto w : pool) {
    if (!workers[w].score) {
      throw Error(ErrorCode::MissingField, "oracle needs 'score' for worker " + workers[w].id,
                  {"score", workers[w].id});
    }
  }
  std::vector<WorkerIndex> by_id(pool.begin(), pool.end());
  std::sort(by_id.begin(), by_id.end(),
            [&](WorkerIndex a, WorkerIndex b) { return workers[a].id < workers[b].id; });

  FairSetResult result;
  std::optional<std::vector<WorkerIndex>> found;
  std::vector<std::size_t> pick(static_cast<std::size_t>(q));
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<WorkerIndex> subset(pick.size());
  while (true) {
    for (std::size_t i = 0; i < pick.size(); ++i) subset[i] = by_id[pick[i]];
    ++result.subsets_examined;
    if (oracle_accepts(workers, pool, subset, m)) {
      auto sorted = subset;
      std::sort(sorted.begin(), sorted.end());
      if (found) {
        std::vector<std::string> ids;
        for (const auto* set : {&*found, &sorted}) {
          std::string s = "{";
          for (std::size_t i = 0; i < set->size(); ++i) s += (i ? "," : "") + workers[(*set)[i]].id;
          ids.push_back(s + "}");
        }
        throw Error(ErrorCode::MultipleFairSets, "both " + ids[0] + " and " + ids[1] + " qualify", ids);
      }
      found = std::move(sorted);
    }
    // Next combination in lexicographic order.
    auto i = static_cast<std::int64_t>(q) - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == static_cast<std::size_t>(n - q + i)) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (auto j = static_cast<std::size_t>(i) + 1; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
  }
  if (!found) {
    throw Error(ErrorCode::NoFairSet, "no subset of size " + std::to_string(q) + " qualifies",
                {std::to_string(q)});
  }
  result.set = std::move(*found);
  return result;
}

std::vector<std::int64_t> random_composition(std::int64_t total, Rng& rng) {
  std::vector<std::int64_t> parts;
  std::int64_t run = 1;
  for (std::int64_t g = 1; g < total; ++g) {
    if (rng.coin()) {
      parts.push_back(run);
      run = 1;
    } else {
      ++run;
    }
  }
  if (total > 0) parts.push_back(run);
  return parts;
}

namespace {

std::vector<std::int64_t> shuffled_scores(std::int64_t n, Rng& rng) {
  std::vector<std::int64_t> scores(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) scores[static_cast<std::size_t>(i)] = 10 * (i + 1);
  for (auto i = n - 1; i > 0; --i) {
    std::swap(scores[static_cast<std::size_t>(i)], scores[static_cast<std::size_t>(rng.uniform(0, i))]);
  }
  return scores;
}

}  // namespace

Scenario random_instance(const InstanceConfig& config, RuleKind rule, Rng& rng) {
  Scenario s;
  const auto n = rng.uniform(config.min_workers, config.max_workers);
  const auto scores = shuffled_scores(n, rng);
  for (std::int64_t i = 0; i < n; ++i) {
    Worker w;
    w.id = "w" + std::to_string(i + 1);
    w.score = Rational(scores[static_cast<std::size_t>(i)]);
    w.minority = rng.coin();
    s.workers.push_back(std::move(w));
  }
  s.policy.rule = rule;
  s.policy.m = config.m_choices[static_cast<std::size_t>(
      rng.uniform(0, static_cast<std::int64_t>(config.m_choices.size()) - 1))];
  const auto cap = config.max_total > 0 ? std::min(config.max_total, n) : n;
  const auto total = rng.uniform(1, cap);
  s.sequence = config.single_round ? std::vector<std::int64_t>{total} : random_composition(total, rng);

  // Sufficiency: convert workers in index order until |M| >= ceil(m*Q).
  auto minorities = std::count_if(s.workers.begin(), s.workers.end(),
                                  [](const Worker& w) { return w.minority; });
  for (auto& w : s.workers) {
    if (minorities >= ceil_times(s.policy.m, total)) break;
    if (!w.minority) {
      w.minority = true;
      ++minorities;
    }
  }
  return s;
}

EquivalenceReport oracle_equivalence(RuleKind rule, const InstanceConfig& config,
                                     std::uint64_t trials, std::uint64_t seed) {
  EquivalenceReport report;
  report.seed = seed;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(seed, t);
    TrialRecord rec;
    rec.seed = seed;
    rec.trial = t;
    rec.scenario = random_instance(config, rule, rng);
    rec.digest = scenario_digest(rec.scenario);
    const auto scenario = validate_scenario(rec.scenario);
    const auto selection = run(scenario);
    std::vector<WorkerIndex> pool(scenario.size());
    std::iota(pool.begin(), pool.end(), 0);

    std::int64_t prefix_total = 0;
    for (std::size_t r = 1; r <= selection.ledger.size(); ++r) {
      prefix_total += scenario.sequence()[r - 1];
      if ((scenario.policy().m * Rational(prefix_total)).denominator() != 1) rec.extension_semantics = true;
      auto fair = unique_fair_set(scenario.workers(), pool, scenario.policy().m, prefix_total);
      report.subsets_examined += fair.subsets_examined;
      auto hired = selection.hired_through(r);
      if (rec.match && hired != fair.set) {
        rec.match = false;
        rec.failing_prefix = r;
        rec.rule_set = std::move(hired);
        rec.oracle_set = std::move(fair.set);
      }
    }
    if (!rec.match) {
      ++report.failures;
      auto verdict = check_minority_fair(selection, scenario, Horizon::EveryPrefix);
      if (verdict.holds) verdict = check_minority_rights(selection, scenario, Horizon::EveryPrefix);
      rec.witness = verdict.witness;
    }
    report.trials.push_back(std::move(rec));
  }
  return report;
}

std::vector<std::vector<WorkerIndex>> transform_search(std::span<const Worker> workers,
                                                       std::span<const WorkerIndex> ground,
                                                       const Rational& m,
                                                       const std::vector<std::vector<WorkerIndex>>& subpools) {
  if (ground.size() > 8) {
    throw Error(ErrorCode::InvalidValue,
                "transform search is limited to 8 workers, got " + std::to_string(ground.size()),
                {std::to_string(ground.size())});
  }
  std::vector<WorkerIndex> order(ground.begin(), ground.end());
  std::sort(order.begin(), order.end());
  std::vector<std::vector<WorkerIndex>> qualifying;
  do {
    std::vector<std::size_t> rank(workers.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
    bool ok = true;
    for (const auto& sub : subpools) {
      auto ranked = sub;
      std::sort(ranked.begin(), ranked.end(), [&](WorkerIndex a, WorkerIndex b) { return rank[a] < rank[b]; });
      for (std::size_t q = 1; ok && q <= ranked.size(); ++q) {
        const std::span<const WorkerIndex> top(ranked.data(), q);
        ok = oracle_accepts(workers, sub, top, m);
      }
      if (!ok) break;
    }
    if (ok) qualifying.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return qualifying;
}

Scenario french_consistent_instance(std::int64_t max_workers, Rng& rng) {
  Scenario s;
  const auto n = rng.uniform(1, max_workers);
  const auto scores = shuffled_scores(n, rng);
  for (std::int64_t i = 0; i < n; ++i) {
    Worker w;
    w.id = "w" + std::to_string(i + 1);
    const auto score = scores[static_cast<std::size_t>(i)];
    w.score = Rational(score);
    w.open_score = Rational(score);
    w.in_open_pool = true;
    w.minority = rng.coin();
    if (w.minority) {
      w.in_disability_pool = true;
      w.disability_score = Rational(2 * score + 1);
    }
    s.workers.push_back(std::move(w));
  }
  static const std::vector<Rational> ms{Rational(0), Rational(1, 4), Rational(1, 3),
                                        Rational(1, 2), Rational(2, 3), Rational(1)};
  s.policy.rule = RuleKind::FrenchP2;
  s.policy.m = ms[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(ms.size()) - 1))];
  s.sequence = random_composition(rng.uniform(1, n), rng);
  return s;
}

}  // namespace poolhire
