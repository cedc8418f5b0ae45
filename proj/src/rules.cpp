#include "poolhire/rules.hpp"

#include <algorithm>
#include <functional>

namespace poolhire {

namespace {

// Remaining pool and running counts shared by all engines.
class RoundState {
 public:
  explicit RoundState(const HiringInput& input)
      : workers_(input.workers), available_(input.in_pool) {
    available_.resize(workers_.size(), false);
    for (auto w : input.prior) {
      available_[w] = false;
      ++total_;
      if (workers_[w].counts_as_minority()) ++minorities_;
    }
  }

  std::vector<WorkerIndex> remaining(const std::function<bool(const Worker&)>& keep) const {
    std::vector<WorkerIndex> out;
    for (WorkerIndex w = 0; w < workers_.size(); ++w) {
      if (available_[w] && keep(workers_[w])) out.push_back(w);
    }
    return out;
  }

  std::vector<WorkerIndex> remaining() const {
    return remaining([](const Worker&) { return true; });
  }

  std::vector<WorkerIndex> remaining_minorities() const {
    return remaining([](const Worker& w) { return w.counts_as_minority(); });
  }

  void hire(const std::vector<WorkerIndex>& hires) {
    for (auto w : hires) {
      available_[w] = false;
      ++total_;
      if (workers_[w].counts_as_minority()) ++minorities_;
      hired_.push_back(w);
    }
  }

  // Minority count and total hires so far, prior hires included.
  std::int64_t minorities() const { return minorities_; }
  std::int64_t total() const { return total_; }

  void close_round(std::int64_t q, std::vector<WorkerIndex> reserved, std::vector<WorkerIndex> open) {
    RoundRecord rec;
    rec.round_index = ledger_.size() + 1;
    rec.q = q;
    rec.reserve_size = static_cast<std::int64_t>(reserved.size());
    rec.reserved_hires = std::move(reserved);
    rec.open_hires = std::move(open);
    rec.cumulative_minority_count = minorities_;
    rec.cumulative_total = total_;
    ledger_.push_back(std::move(rec));
  }

  Selection finish() && {
    Selection s;
    s.hired = std::move(hired_);
    std::sort(s.hired.begin(), s.hired.end());
    s.ledger = std::move(ledger_);
    return s;
  }

  std::span<const Worker> workers() const { return workers_; }

 private:
  std::span<const Worker> workers_;
  std::vector<bool> available_;
  std::vector<WorkerIndex> hired_;
  std::vector<RoundRecord> ledger_;
  std::int64_t minorities_ = 0;
  std::int64_t total_ = 0;
};

std::int64_t count(const std::vector<WorkerIndex>& v) { return static_cast<std::int64_t>(v.size()); }

// Reserve phase then open phase, both by the main score.
void reserve_then_open(RoundState& state, std::int64_t q, std::int64_t reserve) {
  auto reserved = top_q(state.remaining_minorities(), state.workers(), ScoreProfile::Main,
                        std::min(reserve, q));
  state.hire(reserved);
  auto open = top_q(state.remaining(), state.workers(), ScoreProfile::Main, q - count(reserved));
  state.hire(open);
  state.close_round(q, std::move(reserved), std::move(open));
}

Selection run_sp_impl(const HiringInput& input, std::span<const std::int64_t> sequence) {
  RoundState state(input);
  for (auto q : sequence) reserve_then_open(state, q, 0);
  return std::move(state).finish();
}

Selection run_sm_impl(const HiringInput& input, std::span<const std::int64_t> sequence) {
  RoundState state(input);
  for (auto q : sequence) reserve_then_open(state, q, ceil_times(input.policy.m, q));
  return std::move(state).finish();
}

Selection run_sa_impl(const HiringInput& input, std::span<const std::int64_t> sequence) {
  RoundState state(input);
  for (auto q : sequence) {
    const auto target = ceil_times(input.policy.m, state.total() + q);
    reserve_then_open(state, q, std::max<std::int64_t>(target - state.minorities(), 0));
  }
  return std::move(state).finish();
}

Selection run_brazil_impl(const HiringInput& input, std::span<const std::int64_t> sequence) {
  auto partition = brazil_partition(input);
  RoundState state(input);
  // Queues are kept best first; hiring pops from the front.
  std::size_t tm_next = 0;
  std::size_t o_next = 0;
  for (auto q : sequence) {
    const auto want = std::min(ceil_times(input.policy.m, q), q);
    std::vector<WorkerIndex> reserved;
    while (count(reserved) < want && tm_next < partition.tm.size()) {
      reserved.push_back(partition.tm[tm_next++]);
    }
    state.hire(reserved);
    std::vector<WorkerIndex> open;
    while (count(reserved) + count(open) < q && o_next < partition.o.size()) {
      open.push_back(partition.o[o_next++]);
    }
    state.hire(open);
    state.close_round(q, std::move(reserved), std::move(open));
  }
  auto selection = std::move(state).finish();
  selection.partition = std::move(partition);
  return selection;
}

Selection run_nsw_impl(const HiringInput& input, std::span<const std::int64_t> sequence) {
  RoundState state(input);
  const auto& workers = state.workers();
  for (auto q : sequence) {
    const auto half = q / 2;
    auto women = top_q(state.remaining([](const Worker& w) { return w.gender == Gender::Female; }),
                       workers, ScoreProfile::Main, half);
    auto men = top_q(state.remaining([](const Worker& w) { return w.gender == Gender::Male; }),
                     workers, ScoreProfile::Main, half);
    state.hire(women);
    state.hire(men);
    // Exhausted-gender fallback and any odd remainder: best remaining overall.
    auto rest = top_q(state.remaining(), workers, ScoreProfile::Main, q - count(women) - count(men));
    state.hire(rest);
    men.insert(men.end(), rest.begin(), rest.end());
    state.close_round(q, std::move(women), std::move(men));
  }
  return std::move(state).finish();
}

Selection run_french_impl(const HiringInput& input, std::span<const std::int64_t> sequence,
                          FrenchPolicy policy) {
  RoundState state(input);
  const auto& workers = state.workers();
  const auto open_pool = [](const Worker& w) { return w.in_open_pool; };
  const auto disability_pool = [](const Worker& w) { return w.in_disability_pool; };
  const auto& m = input.policy.m;
  for (std::size_t r = 0; r < sequence.size(); ++r) {
    const auto q = sequence[r];
    std::int64_t reserve = 0;
    if (r == 0) {
      reserve = policy == FrenchPolicy::P1 ? 0 : ceil_times(m, q);
    } else {
      reserve = std::max<std::int64_t>(ceil_times(m, state.total() + q) - state.minorities(), 0);
    }
    auto reserved = top_q(state.remaining(disability_pool), workers, ScoreProfile::Disability,
                          std::min(reserve, q));
    state.hire(reserved);
    auto open = top_q(state.remaining(open_pool), workers, ScoreProfile::Open, q - count(reserved));
    state.hire(open);
    state.close_round(q, std::move(reserved), std::move(open));
  }
  return std::move(state).finish();
}

void require_rule(const ValidatedScenario& scenario, std::initializer_list<RuleKind> allowed,
                  std::string_view engine) {
  if (std::find(allowed.begin(), allowed.end(), scenario.policy().rule) == allowed.end()) {
    throw Error(ErrorCode::InvalidValue,
                std::string(engine) + " called on a scenario configured for " +
                    std::string(to_string(scenario.policy().rule)),
                {std::string(to_string(scenario.policy().rule))});
  }
}

}  // namespace

HiringInput hiring_input(const ValidatedScenario& scenario) {
  HiringInput input;
  input.workers = scenario.workers();
  input.in_pool.assign(scenario.size(), true);
  input.prior.assign(scenario.prior().begin(), scenario.prior().end());
  input.policy = scenario.policy();
  return input;
}

BrazilPartition brazil_partition(const HiringInput& input) {
  RoundState state(input);
  const auto k = input.policy.k.value_or(0);
  BrazilPartition p;
  p.tm = top_q(state.remaining_minorities(), input.workers, ScoreProfile::Main,
               std::min(ceil_times(input.policy.m, k), k));
  state.hire(p.tm);
  p.o = top_q(state.remaining(), input.workers, ScoreProfile::Main, k - count(p.tm));
  return p;
}

Selection run_rule(const HiringInput& input, std::span<const std::int64_t> sequence) {
  switch (input.policy.rule) {
    case RuleKind::SP: return run_sp_impl(input, sequence);
    case RuleKind::SM: return run_sm_impl(input, sequence);
    case RuleKind::SA: return run_sa_impl(input, sequence);
    case RuleKind::Brazil: return run_brazil_impl(input, sequence);
    case RuleKind::NSW: return run_nsw_impl(input, sequence);
    case RuleKind::FrenchP1: return run_french_impl(input, sequence, FrenchPolicy::P1);
    case RuleKind::FrenchP2: return run_french_impl(input, sequence, FrenchPolicy::P2);
  }
  throw Error(ErrorCode::UnsupportedRule, "unknown rule");
}

Selection run(const ValidatedScenario& scenario) {
  return run_rule(hiring_input(scenario), scenario.sequence());
}

Selection run_sp(const ValidatedScenario& scenario) {
  require_rule(scenario, {RuleKind::SP}, "run_sp");
  return run(scenario);
}

Selection run_sm(const ValidatedScenario& scenario) {
  require_rule(scenario, {RuleKind::SM}, "run_sm");
  return run(scenario);
}

Selection run_sa(const ValidatedScenario& scenario) {
  require_rule(scenario, {RuleKind::SA}, "run_sa");
  return run(scenario);
}

Selection run_brazil(const ValidatedScenario& scenario) {
  require_rule(scenario, {RuleKind::Brazil}, "run_brazil");
  return run(scenario);
}

Selection run_nsw(const ValidatedScenario& scenario) {
  require_rule(scenario, {RuleKind::NSW}, "run_nsw");
  return run(scenario);
}

Selection run_french(const ValidatedScenario& scenario, FrenchPolicy policy) {
  require_rule(scenario, {RuleKind::FrenchP1, RuleKind::FrenchP2}, "run_french");
  return run_french_impl(hiring_input(scenario), scenario.sequence(), policy);
}

}  // namespace poolhire
