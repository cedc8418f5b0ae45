#include "poolhire/properties.hpp"

#include <algorithm>

#include "poolhire/rules.hpp"

namespace poolhire {

std::string_view to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::FairPair: return "FAIR_PAIR";
    case ViolationCode::MrRatio: return "MR_RATIO";
    case ViolationCode::MrExcluded: return "MR_EXCLUDED";
    case ViolationCode::MfClauseI: return "MF_CLAUSE_I";
    case ViolationCode::MfClauseII: return "MF_CLAUSE_II";
    case ViolationCode::MfClauseIII: return "MF_CLAUSE_III";
    case ViolationCode::AiSplit: return "AI_SPLIT";
    case ViolationCode::PiPermutation: return "PI_PERMUTATION";
    case ViolationCode::CommonTop: return "COMMON_TOP";
    case ViolationCode::MultiAiSplit: return "MULTI_AI_SPLIT";
  }
  return "?";
}

std::string_view to_string(Horizon horizon) {
  return horizon == Horizon::EveryPrefix ? "every-prefix" : "first-round";
}

namespace {

const Rational& main_score(const Worker& w) {
  if (!w.score) {
    throw Error(ErrorCode::MissingField, "property checks need 'score' for worker " + w.id,
                {"score", w.id});
  }
  return *w.score;
}

// Membership mask over the worker table for a sorted or unsorted index list.
std::vector<bool> mask_of(std::size_t n, std::span<const WorkerIndex> members) {
  std::vector<bool> mask(n, false);
  for (auto w : members) mask[w] = true;
  return mask;
}

// Tracks the lowest-scoring hired and highest-scoring unhired member of one
// group of workers.
struct Extremes {
  std::optional<WorkerIndex> lowest_hired;
  std::optional<WorkerIndex> highest_unhired;

  void add(std::span<const Worker> workers, WorkerIndex w, bool hired) {
    const auto& s = main_score(workers[w]);
    if (hired) {
      if (!lowest_hired || s < main_score(workers[*lowest_hired])) lowest_hired = w;
    } else {
      if (!highest_unhired || s > main_score(workers[*highest_unhired])) highest_unhired = w;
    }
  }
};

bool beats(std::span<const Worker> workers, std::optional<WorkerIndex> high,
           std::optional<WorkerIndex> low) {
  return high && low && main_score(workers[*high]) > main_score(workers[*low]);
}

std::string describe_pair(std::span<const Worker> workers, WorkerIndex hired, WorkerIndex unhired) {
  return workers[hired].id + " hired with " + to_string(main_score(workers[hired])) + ", " +
         workers[unhired].id + " unhired with " + to_string(main_score(workers[unhired]));
}

std::vector<WorkerIndex> pool_of(const ValidatedScenario& scenario) {
  auto prior = mask_of(scenario.size(), scenario.prior());
  std::vector<WorkerIndex> pool;
  for (WorkerIndex w = 0; w < scenario.size(); ++w) {
    if (!prior[w]) pool.push_back(w);
  }
  return pool;
}

std::vector<std::size_t> prefixes(const Selection& selection, Horizon horizon) {
  std::vector<std::size_t> out;
  const auto rounds = selection.ledger.size();
  if (rounds == 0) return out;
  if (horizon == Horizon::FirstRoundOnly) return {1};
  for (std::size_t r = 1; r <= rounds; ++r) out.push_back(r);
  return out;
}

template <typename SetCheck>
PropertyVerdict check_prefixes(const Selection& selection, const ValidatedScenario& scenario,
                               const std::vector<std::size_t>& rounds, SetCheck&& check) {
  const auto pool = pool_of(scenario);
  for (auto r : rounds) {
    if (auto w = check(pool, selection.hired_through(r))) {
      w->prefix_rounds = r;
      return PropertyVerdict::fail(std::move(*w));
    }
  }
  return PropertyVerdict::pass();
}

std::int64_t minority_count(std::span<const Worker> workers, std::span<const WorkerIndex> set) {
  return std::count_if(set.begin(), set.end(),
                       [&](WorkerIndex w) { return workers[w].counts_as_minority(); });
}

}  // namespace

std::optional<Witness> fairness_violation(std::span<const Worker> workers,
                                          std::span<const WorkerIndex> pool,
                                          std::span<const WorkerIndex> hired) {
  const auto in_h = mask_of(workers.size(), hired);
  Extremes all;
  for (auto w : pool) all.add(workers, w, in_h[w]);
  if (beats(workers, all.highest_unhired, all.lowest_hired)) {
    Witness wit;
    wit.code = ViolationCode::FairPair;
    wit.workers = {*all.lowest_hired, *all.highest_unhired};
    wit.explanation = describe_pair(workers, *all.lowest_hired, *all.highest_unhired);
    return wit;
  }
  return std::nullopt;
}

std::optional<Witness> minority_rights_violation(std::span<const Worker> workers,
                                                 std::span<const WorkerIndex> pool,
                                                 std::span<const WorkerIndex> hired,
                                                 const Rational& m) {
  if (hired.empty()) return std::nullopt;
  const auto size = static_cast<std::int64_t>(hired.size());
  const auto target = m * Rational(size);
  const auto pool_minorities = minority_count(workers, pool);
  const auto omega = minority_count(workers, hired);
  if (Rational(pool_minorities) >= target) {
    if (Rational(omega) >= target) return std::nullopt;
    Witness wit;
    wit.code = ViolationCode::MrRatio;
    wit.explanation = std::to_string(omega) + " of " + std::to_string(size) +
                      " hires are minorities, below m = " + to_string(m);
    return wit;
  }
  const auto in_h = mask_of(workers.size(), hired);
  for (auto w : pool) {
    if (workers[w].counts_as_minority() && !in_h[w]) {
      Witness wit;
      wit.code = ViolationCode::MrExcluded;
      wit.workers = {w};
      wit.explanation = "only " + std::to_string(pool_minorities) + " minorities for a target of " +
                        to_string(target) + ", yet " + workers[w].id + " is not hired";
      return wit;
    }
  }
  return std::nullopt;
}

std::optional<Witness> minority_fair_violation(std::span<const Worker> workers,
                                               std::span<const WorkerIndex> pool,
                                               std::span<const WorkerIndex> hired,
                                               const Rational& m) {
  const auto in_h = mask_of(workers.size(), hired);
  Extremes minority;
  Extremes majority;
  for (auto w : pool) {
    (workers[w].counts_as_minority() ? minority : majority).add(workers, w, in_h[w]);
  }

  const auto pair_witness = [&](ViolationCode code, WorkerIndex h, WorkerIndex u) {
    Witness wit;
    wit.code = code;
    wit.workers = {h, u};
    wit.explanation = describe_pair(workers, h, u);
    return wit;
  };

  for (const auto* group : {&minority, &majority}) {
    if (beats(workers, group->highest_unhired, group->lowest_hired)) {
      return pair_witness(ViolationCode::MfClauseI, *group->lowest_hired, *group->highest_unhired);
    }
  }
  if (beats(workers, minority.highest_unhired, majority.lowest_hired)) {
    return pair_witness(ViolationCode::MfClauseII, *majority.lowest_hired, *minority.highest_unhired);
  }
  if (beats(workers, majority.highest_unhired, minority.lowest_hired)) {
    const auto size = static_cast<std::int64_t>(hired.size());
    const auto omega = minority_count(workers, hired);
    if (omega > ceil_times(m, size)) {
      auto wit = pair_witness(ViolationCode::MfClauseIII, *minority.lowest_hired,
                              *majority.highest_unhired);
      wit.explanation += "; minority share " + std::to_string(omega) + "/" + std::to_string(size) +
                         " exceeds m = " + to_string(m);
      return wit;
    }
  }
  return std::nullopt;
}

PropertyVerdict check_fairness(const Selection& selection, const ValidatedScenario& scenario) {
  return check_prefixes(selection, scenario, prefixes(selection, Horizon::EveryPrefix),
                        [&](const auto& pool, const auto& hired) {
                          return fairness_violation(scenario.workers(), pool, hired);
                        });
}

PropertyVerdict check_minority_rights(const Selection& selection, const ValidatedScenario& scenario,
                                      Horizon horizon) {
  return check_prefixes(selection, scenario, prefixes(selection, horizon),
                        [&](const auto& pool, const auto& hired) {
                          return minority_rights_violation(scenario.workers(), pool, hired,
                                                           scenario.policy().m);
                        });
}

PropertyVerdict check_minority_fair(const Selection& selection, const ValidatedScenario& scenario,
                                    Horizon horizon) {
  return check_prefixes(selection, scenario, prefixes(selection, horizon),
                        [&](const auto& pool, const auto& hired) {
                          return minority_fair_violation(scenario.workers(), pool, hired,
                                                         scenario.policy().m);
                        });
}

bool witness_replays(const Witness& witness, const Selection& selection,
                     const ValidatedScenario& scenario) {
  if (witness.prefix_rounds == 0 || witness.prefix_rounds > selection.ledger.size()) return false;
  const auto workers = scenario.workers();
  const auto pool = pool_of(scenario);
  const auto hired = selection.hired_through(witness.prefix_rounds);
  const auto in_h = mask_of(workers.size(), hired);
  const auto in_pool = mask_of(workers.size(), pool);
  const auto& m = scenario.policy().m;
  const auto size = static_cast<std::int64_t>(hired.size());
  const auto omega = minority_count(workers, hired);
  const auto pool_minorities = minority_count(workers, pool);

  const auto pair_ok = [&]() {
    if (witness.workers.size() != 2) return false;
    const auto h = witness.workers[0];
    const auto u = witness.workers[1];
    return h < workers.size() && u < workers.size() && in_h[h] && in_pool[u] && !in_h[u] &&
           main_score(workers[u]) > main_score(workers[h]);
  };
  const auto minority = [&](std::size_t i) { return workers[witness.workers[i]].counts_as_minority(); };

  switch (witness.code) {
    case ViolationCode::FairPair:
      return pair_ok();
    case ViolationCode::MrRatio:
      return Rational(pool_minorities) >= m * Rational(size) && Rational(omega) < m * Rational(size);
    case ViolationCode::MrExcluded:
      return witness.workers.size() == 1 && Rational(pool_minorities) < m * Rational(size) &&
             workers[witness.workers[0]].counts_as_minority() && in_pool[witness.workers[0]] &&
             !in_h[witness.workers[0]];
    case ViolationCode::MfClauseI:
      return pair_ok() && minority(0) == minority(1);
    case ViolationCode::MfClauseII:
      return pair_ok() && !minority(0) && minority(1);
    case ViolationCode::MfClauseIII:
      return pair_ok() && minority(0) && !minority(1) && omega > ceil_times(m, size);
    default:
      return false;
  }
}

std::vector<std::vector<std::int64_t>> compositions(std::int64_t total, std::int64_t cap) {
  if (total > cap) {
    throw Error(ErrorCode::BudgetExceeded,
                std::to_string(total) + " total hires exceeds the enumeration cap of " +
                    std::to_string(cap),
                {std::to_string(total), std::to_string(cap)});
  }
  std::vector<std::vector<std::int64_t>> out;
  if (total <= 0) return out;
  const std::uint64_t gaps = static_cast<std::uint64_t>(total - 1);
  out.reserve(std::size_t{1} << gaps);
  for (std::uint64_t cuts = 0; cuts < (std::uint64_t{1} << gaps); ++cuts) {
    std::vector<std::int64_t> parts;
    std::int64_t run = 1;
    for (std::uint64_t g = 0; g < gaps; ++g) {
      if (cuts & (std::uint64_t{1} << g)) {
        parts.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    parts.push_back(run);
    out.push_back(std::move(parts));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    const auto ma = *std::max_element(a.begin(), a.end());
    const auto mb = *std::max_element(b.begin(), b.end());
    if (ma != mb) return ma < mb;
    return a < b;
  });
  return out;
}

CompositionFilter integral_reserve_filter(const Rational& m) {
  return [m](std::span<const std::int64_t> parts) {
    return std::all_of(parts.begin(), parts.end(),
                       [&](std::int64_t q) { return (m * Rational(q)).denominator() == 1; });
  };
}

namespace {

bool admissible_for(RuleKind rule, const CompositionFilter& admissible,
                    std::span<const std::int64_t> parts) {
  if (rule == RuleKind::NSW &&
      std::any_of(parts.begin(), parts.end(), [](std::int64_t q) { return q % 2 != 0; })) {
    return false;
  }
  return !admissible || admissible(parts);
}

std::string format_composition(std::span<const std::int64_t> parts) {
  std::string s = "<";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i]);
  }
  return s + ">";
}

}  // namespace

PropertyVerdict check_aggregation_independence(const ValidatedScenario& scenario, RuleKind rule,
                                               std::int64_t cap, const CompositionFilter& admissible) {
  const auto total = scenario.total_hires();
  const auto all = compositions(total, cap);
  if (total <= 0) return PropertyVerdict::pass();
  const auto configured = scenario.with_rule(rule).with_sequence({total});
  const auto input = hiring_input(configured);
  const std::vector<std::int64_t> single{total};
  const auto reference = run_rule(input, single).hired;
  for (const auto& parts : all) {
    if (parts.size() == 1 || !admissible_for(rule, admissible, parts)) continue;
    auto hired = run_rule(input, parts).hired;
    if (hired != reference) {
      Witness wit;
      wit.code = ViolationCode::AiSplit;
      wit.composition = parts;
      wit.reference_set = reference;
      wit.witness_set = std::move(hired);
      wit.explanation = format_composition(parts) + " hires a different set than " +
                        format_composition(single);
      return PropertyVerdict::fail(std::move(wit));
    }
  }
  return PropertyVerdict::pass();
}

bool witness_replays_split(const Witness& witness, const ValidatedScenario& scenario, RuleKind rule) {
  if (witness.code != ViolationCode::AiSplit || witness.composition.empty()) return false;
  std::int64_t total = 0;
  for (auto q : witness.composition) total += q;
  const auto configured = scenario.with_rule(rule).with_sequence({total});
  const auto input = hiring_input(configured);
  const std::vector<std::int64_t> single{total};
  const auto reference = run_rule(input, single).hired;
  const auto split = run_rule(input, witness.composition).hired;
  return reference != split && reference == witness.reference_set && split == witness.witness_set;
}

std::optional<std::vector<std::int64_t>> find_manipulation(const ValidatedScenario& scenario,
                                                           RuleKind rule, std::string_view target,
                                                           std::int64_t total_q, std::int64_t cap) {
  const auto who = scenario.find(target);
  if (!who) {
    throw Error(ErrorCode::UnknownWorker, "no worker with id '" + std::string(target) + "'",
                {std::string(target)});
  }
  const auto all = compositions(total_q, cap);
  if (total_q <= 0) return std::nullopt;
  const auto configured = scenario.with_rule(rule).with_sequence({total_q});
  const auto input = hiring_input(configured);
  for (const auto& parts : all) {
    if (!admissible_for(rule, {}, parts)) continue;
    const auto hired = run_rule(input, parts).hired;
    if (std::binary_search(hired.begin(), hired.end(), *who)) return parts;
  }
  return std::nullopt;
}

}  // namespace poolhire
