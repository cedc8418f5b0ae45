#include "poolhire/multi.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "poolhire/rules.hpp"

namespace poolhire {

Matching::Matching(std::size_t workers, std::size_t institutions)
    : of_worker_(workers), members_(institutions) {}

std::vector<WorkerIndex> Matching::matched() const {
  std::vector<WorkerIndex> out;
  for (WorkerIndex w = 0; w < of_worker_.size(); ++w) {
    if (of_worker_[w]) out.push_back(w);
  }
  return out;
}

std::vector<WorkerIndex> Matching::unmatched() const {
  std::vector<WorkerIndex> out;
  for (WorkerIndex w = 0; w < of_worker_.size(); ++w) {
    if (!of_worker_[w]) out.push_back(w);
  }
  return out;
}

void Matching::assign(WorkerIndex w, std::size_t institution) {
  if (w >= of_worker_.size() || institution >= members_.size()) {
    throw Error(ErrorCode::ContractViolation, "assignment out of range");
  }
  if (of_worker_[w]) {
    throw Error(ErrorCode::ContractViolation,
                "worker " + std::to_string(w) + " is already matched to institution " +
                    std::to_string(*of_worker_[w]),
                {std::to_string(w)});
  }
  of_worker_[w] = institution;
  auto& m = members_[institution];
  m.insert(std::upper_bound(m.begin(), m.end(), w), w);
}

bool Matching::consistent() const {
  std::size_t listed = 0;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    for (auto w : members_[i]) {
      if (w >= of_worker_.size() || of_worker_[w] != i) return false;
    }
    listed += members_[i].size();
  }
  const auto assigned =
      std::count_if(of_worker_.begin(), of_worker_.end(), [](const auto& i) { return i.has_value(); });
  return listed == static_cast<std::size_t>(assigned);
}

InstitutionalRule institutional_rule(const Policy& policy) {
  switch (policy.rule) {
    case RuleKind::SP:
    case RuleKind::SM:
    case RuleKind::SA:
    case RuleKind::NSW:
      break;
    default:
      throw Error(ErrorCode::UnsupportedRule,
                  "rule " + std::string(to_string(policy.rule)) +
                      " cannot act as an institutional rule",
                  {std::string(to_string(policy.rule))});
  }
  return [policy](const HiringView& view, std::int64_t q) {
    HiringInput input;
    input.workers = view.workers;
    input.in_pool.assign(view.workers.size(), false);
    for (auto w : view.unmatched) input.in_pool[w] = true;
    for (auto w : view.own) input.in_pool[w] = true;
    input.prior.assign(view.own.begin(), view.own.end());
    input.policy = policy;
    const std::int64_t sequence[] = {q};
    return run_rule(input, sequence).hired;
  };
}

InstitutionalRule priority_rule(std::vector<WorkerIndex> ranking) {
  return [ranking = std::move(ranking)](const HiringView& view, std::int64_t q) {
    std::vector<WorkerIndex> out;
    for (auto w : ranking) {
      if (static_cast<std::int64_t>(out.size()) >= q) break;
      if (std::binary_search(view.unmatched.begin(), view.unmatched.end(), w)) out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
}

RuleSet single_priority_rule(const std::vector<WorkerIndex>& ranking, std::size_t institutions) {
  return RuleSet(institutions, priority_rule(ranking));
}

std::vector<WorkerIndex> score_ranking(std::span<const Worker> workers) {
  std::vector<WorkerIndex> all(workers.size());
  for (WorkerIndex w = 0; w < workers.size(); ++w) all[w] = w;
  return top_q(all, workers, ScoreProfile::Main, static_cast<std::int64_t>(workers.size()));
}

namespace {

std::vector<WorkerIndex> checked_hire(const InstitutionalRule& rule, const HiringView& view,
                                      std::int64_t q, std::size_t institution) {
  auto hires = rule(view, q);
  std::sort(hires.begin(), hires.end());
  const auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::ContractViolation,
                "institution " + std::to_string(institution) + " " + what,
                {std::to_string(institution)});
  };
  if (std::adjacent_find(hires.begin(), hires.end()) != hires.end()) fail("hired a worker twice");
  if (static_cast<std::int64_t>(hires.size()) > q) fail("hired more workers than requested");
  for (auto w : hires) {
    if (!std::binary_search(view.unmatched.begin(), view.unmatched.end(), w)) {
      fail("hired worker " + std::to_string(w) + " who is not unmatched");
    }
  }
  return hires;
}

std::vector<WorkerIndex> hired_union(std::span<const Worker> workers, const RuleSet& rules,
                                     const PluralSequence& steps) {
  auto matchings = apply_plural_sequence(workers, rules, steps);
  if (matchings.empty()) return {};
  return matchings.back().matched();
}

std::string describe_steps(const PluralSequence& steps) {
  std::string s = "<";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) s += ",";
    s += "(" + std::to_string(steps[i].institution) + "," + std::to_string(steps[i].count) + ")";
  }
  return s + ">";
}

std::vector<std::pair<std::size_t, std::int64_t>> as_pairs(const PluralSequence& steps) {
  std::vector<std::pair<std::size_t, std::int64_t>> out;
  for (const auto& s : steps) out.emplace_back(s.institution, s.count);
  return out;
}

}  // namespace

std::vector<Matching> apply_plural_sequence(std::span<const Worker> workers, const RuleSet& rules,
                                            const PluralSequence& steps, std::optional<Matching> seed) {
  Matching current = seed ? std::move(*seed) : Matching(workers.size(), rules.size());
  if (current.worker_count() != workers.size() || current.institution_count() != rules.size()) {
    throw Error(ErrorCode::InvalidValue, "seed matching does not fit the pool and institutions");
  }
  std::vector<Matching> out;
  out.reserve(steps.size());
  for (const auto& step : steps) {
    if (step.institution >= rules.size()) {
      throw Error(ErrorCode::InvalidValue,
                  "plural step names institution " + std::to_string(step.institution));
    }
    const auto unmatched = current.unmatched();
    const auto& own = current.members(step.institution);
    const HiringView view{workers, unmatched, own};
    for (auto w : checked_hire(rules[step.institution], view, step.count, step.institution)) {
      current.assign(w, step.institution);
    }
    out.push_back(current);
  }
  return out;
}

PropertyVerdict check_permutation_independence(std::span<const Worker> workers, const RuleSet& rules,
                                               const PluralSequence& steps, std::size_t cap) {
  if (steps.size() > cap) {
    throw Error(ErrorCode::BudgetExceeded,
                std::to_string(steps.size()) + " plural steps exceed the permutation cap of " +
                    std::to_string(cap),
                {std::to_string(steps.size()), std::to_string(cap)});
  }
  const auto reference = hired_union(workers, rules, steps);
  auto perm = steps;
  std::sort(perm.begin(), perm.end());
  do {
    if (perm == steps) continue;
    auto hired = hired_union(workers, rules, perm);
    if (hired != reference) {
      Witness wit;
      wit.code = ViolationCode::PiPermutation;
      wit.steps = as_pairs(perm);
      wit.reference_set = reference;
      wit.witness_set = std::move(hired);
      wit.explanation = describe_steps(perm) + " hires a different union than " + describe_steps(steps);
      return PropertyVerdict::fail(std::move(wit));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return PropertyVerdict::pass();
}

PropertyVerdict check_common_top(std::span<const Worker> workers, const RuleSet& rules) {
  std::vector<WorkerIndex> all(workers.size());
  for (WorkerIndex w = 0; w < workers.size(); ++w) all[w] = w;
  std::vector<WorkerIndex> picks;
  std::optional<std::set<WorkerIndex>> common;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const HiringView view{workers, all, {}};
    auto hires = checked_hire(rules[i], view, 1, i);
    std::set<WorkerIndex> mine(hires.begin(), hires.end());
    if (!common) {
      common = mine;
    } else {
      std::set<WorkerIndex> both;
      std::set_intersection(common->begin(), common->end(), mine.begin(), mine.end(),
                            std::inserter(both, both.end()));
      common = std::move(both);
    }
    picks.push_back(hires.empty() ? workers.size() : hires.front());
  }
  if (!common || !common->empty()) return PropertyVerdict::pass();
  Witness wit;
  wit.code = ViolationCode::CommonTop;
  wit.workers = std::move(picks);
  wit.explanation = "institutions pick different first hires";
  return PropertyVerdict::fail(std::move(wit));
}

PropertyVerdict check_multi_aggregation_independence(std::span<const Worker> workers,
                                                     const RuleSet& rules, std::size_t institution,
                                                     std::int64_t q, std::int64_t cap) {
  if (institution >= rules.size()) {
    throw Error(ErrorCode::InvalidValue, "unknown institution " + std::to_string(institution));
  }
  if (q > cap) {
    throw Error(ErrorCode::BudgetExceeded,
                std::to_string(q) + " hires exceeds the enumeration cap of " + std::to_string(cap),
                {std::to_string(q), std::to_string(cap)});
  }
  // Two-part splits in canonical order (smaller largest part first).
  std::vector<std::vector<std::int64_t>> splits;
  for (const auto& parts : compositions(q, cap)) {
    if (parts.size() == 2) splits.push_back(parts);
  }
  if (splits.empty()) return PropertyVerdict::pass();

  const auto n = workers.size();
  constexpr std::size_t kEnumerateUpTo = 8;
  std::uint64_t state_count = 1;
  for (std::size_t i = 0; i < std::min(n, kEnumerateUpTo); ++i) state_count *= 3;
  const bool exhaustive = n <= kEnumerateUpTo;
  std::mt19937_64 rng(0x5eed5eedULL);

  const auto& rule = rules[institution];
  std::vector<std::uint8_t> state(n, 0);  // 0 unmatched, 1 own, 2 other
  for (std::uint64_t s = 0; s < state_count; ++s) {
    if (exhaustive) {
      auto code = s;
      for (std::size_t w = 0; w < n; ++w) {
        state[w] = static_cast<std::uint8_t>(code % 3);
        code /= 3;
      }
    } else if (s > 0) {
      for (std::size_t w = 0; w < n; ++w) state[w] = static_cast<std::uint8_t>(rng() % 3);
    }
    std::vector<WorkerIndex> unmatched, own, other;
    for (WorkerIndex w = 0; w < n; ++w) {
      (state[w] == 0 ? unmatched : state[w] == 1 ? own : other).push_back(w);
    }
    const HiringView view{workers, unmatched, own};
    const auto block = checked_hire(rule, view, q, institution);
    for (const auto& parts : splits) {
      auto first = checked_hire(rule, view, parts[0], institution);
      std::vector<WorkerIndex> unmatched2, own2;
      std::set_difference(unmatched.begin(), unmatched.end(), first.begin(), first.end(),
                          std::back_inserter(unmatched2));
      std::set_union(own.begin(), own.end(), first.begin(), first.end(), std::back_inserter(own2));
      const HiringView view2{workers, unmatched2, own2};
      auto second = checked_hire(rule, view2, parts[1], institution);
      std::vector<WorkerIndex> split;
      std::set_union(first.begin(), first.end(), second.begin(), second.end(),
                     std::back_inserter(split));
      if (split != block) {
        Witness wit;
        wit.code = ViolationCode::MultiAiSplit;
        wit.composition = parts;
        wit.steps = {{institution, parts[0]}, {institution, parts[1]}};
        wit.reference_set = block;
        wit.witness_set = std::move(split);
        wit.start_own = own;
        wit.start_other = other;
        wit.explanation = "split <" + std::to_string(parts[0]) + "," + std::to_string(parts[1]) +
                          "> differs from hiring " + std::to_string(q) + " at once";
        return PropertyVerdict::fail(std::move(wit));
      }
    }
  }
  return PropertyVerdict::pass();
}

std::vector<WorkerIndex> reconstruct_ranking(std::span<const Worker> workers,
                                             const InstitutionalRule& rule) {
  std::vector<WorkerIndex> remaining(workers.size());
  for (WorkerIndex w = 0; w < workers.size(); ++w) remaining[w] = w;
  std::vector<WorkerIndex> ranking;
  while (!remaining.empty()) {
    const HiringView view{workers, remaining, {}};
    auto pick = checked_hire(rule, view, 1, 0);
    if (pick.empty()) break;
    ranking.push_back(pick.front());
    remaining.erase(std::find(remaining.begin(), remaining.end(), pick.front()));
  }
  return ranking;
}

}  // namespace poolhire
