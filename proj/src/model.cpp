#include "poolhire/model.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

namespace poolhire {

std::string_view to_string(RuleKind rule) {
  switch (rule) {
    case RuleKind::SP: return "SP";
    case RuleKind::SM: return "SM";
    case RuleKind::SA: return "SA";
    case RuleKind::Brazil: return "BRAZIL";
    case RuleKind::FrenchP1: return "FRENCH_P1";
    case RuleKind::FrenchP2: return "FRENCH_P2";
    case RuleKind::NSW: return "NSW";
  }
  return "?";
}

std::string_view to_string(ScoreProfile profile) {
  switch (profile) {
    case ScoreProfile::Main: return "score";
    case ScoreProfile::Open: return "open_score";
    case ScoreProfile::Disability: return "disability_score";
  }
  return "?";
}

std::string_view to_string(Gender gender) { return gender == Gender::Female ? "F" : "M"; }

std::optional<RuleKind> parse_rule_kind(std::string_view text) {
  std::string norm;
  for (char c : text) {
    norm.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  static const std::map<std::string, RuleKind, std::less<>> names = {
      {"SP", RuleKind::SP},
      {"SM", RuleKind::SM},
      {"SA", RuleKind::SA},
      {"BRAZIL", RuleKind::Brazil},
      {"B", RuleKind::Brazil},
      {"FRENCH_P1", RuleKind::FrenchP1},
      {"F1", RuleKind::FrenchP1},
      {"FRENCH_P2", RuleKind::FrenchP2},
      {"F2", RuleKind::FrenchP2},
      {"NSW", RuleKind::NSW},
  };
  if (auto it = names.find(norm); it != names.end()) return it->second;
  return std::nullopt;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateScore: return "DuplicateScore";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::OddNswRound: return "OddNswRound";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownWorker: return "UnknownWorker";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ContractViolation: return "ContractViolation";
    case ErrorCode::NoFairSet: return "NoFairSet";
    case ErrorCode::MultipleFairSets: return "MultipleFairSets";
    case ErrorCode::UnsupportedRule: return "UnsupportedRule";
  }
  return "?";
}

Error::Error(ErrorCode code, std::string message, std::vector<std::string> subjects)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      subjects_(std::move(subjects)) {}

std::optional<Rational> Worker::score_in(ScoreProfile profile) const {
  switch (profile) {
    case ScoreProfile::Main: return score;
    case ScoreProfile::Open: return open_score;
    case ScoreProfile::Disability: return disability_score;
  }
  return std::nullopt;
}

std::vector<ScoreProfile> profiles_used(RuleKind rule) {
  switch (rule) {
    case RuleKind::FrenchP1:
    case RuleKind::FrenchP2:
      return {ScoreProfile::Open, ScoreProfile::Disability};
    default:
      return {ScoreProfile::Main};
  }
}

std::optional<WorkerIndex> ValidatedScenario::find(std::string_view id) const {
  for (WorkerIndex w = 0; w < raw_.workers.size(); ++w) {
    if (raw_.workers[w].id == id) return w;
  }
  return std::nullopt;
}

ValidatedScenario ValidatedScenario::with_sequence(std::vector<std::int64_t> sequence) const {
  Scenario copy = raw_;
  copy.sequence = std::move(sequence);
  return validate_scenario(std::move(copy));
}

ValidatedScenario ValidatedScenario::with_rule(RuleKind rule) const {
  Scenario copy = raw_;
  copy.policy.rule = rule;
  return validate_scenario(std::move(copy));
}

namespace {

bool in_profile(const Worker& w, ScoreProfile profile) {
  switch (profile) {
    case ScoreProfile::Main: return true;
    case ScoreProfile::Open: return w.in_open_pool;
    case ScoreProfile::Disability: return w.in_disability_pool;
  }
  return false;
}

void require_distinct_scores(const std::vector<Worker>& workers, ScoreProfile profile) {
  std::map<Rational, std::vector<std::string>> by_score;
  for (const auto& w : workers) {
    if (!in_profile(w, profile)) continue;
    if (auto s = w.score_in(profile)) by_score[*s].push_back(w.id);
  }
  for (const auto& [score, ids] : by_score) {
    if (ids.size() > 1) {
      std::string msg = std::string(to_string(profile)) + " " + to_string(score) + " shared by";
      for (const auto& id : ids) msg += " " + id;
      std::vector<std::string> subjects{std::string(to_string(profile))};
      subjects.insert(subjects.end(), ids.begin(), ids.end());
      throw Error(ErrorCode::DuplicateScore, msg, std::move(subjects));
    }
  }
}

void require_field(bool present, RuleKind rule, std::string_view field, const std::string& id) {
  if (!present) {
    throw Error(ErrorCode::MissingField,
                "rule " + std::string(to_string(rule)) + " needs '" + std::string(field) +
                    "' for worker " + id,
                {std::string(to_string(rule)), std::string(field), id});
  }
}

}  // namespace

ValidatedScenario validate_scenario(Scenario raw) {
  const auto& workers = raw.workers;
  const auto& policy = raw.policy;

  std::set<std::string_view> ids;
  for (const auto& w : workers) {
    if (w.id.empty()) throw Error(ErrorCode::InvalidValue, "worker with empty id", {"id"});
    if (!ids.insert(w.id).second) {
      throw Error(ErrorCode::DuplicateId, "worker id '" + w.id + "' appears twice", {w.id});
    }
    if (w.in_disability_pool) {
      require_field(w.disability_score.has_value(), policy.rule, "disability_score", w.id);
    }
    if (w.in_open_pool) require_field(w.open_score.has_value(), policy.rule, "open_score", w.id);
  }

  if (policy.m < Rational(0) || policy.m > Rational(1)) {
    throw Error(ErrorCode::InvalidValue, "m must lie in [0,1], got " + to_string(policy.m), {"m"});
  }
  for (std::size_t r = 0; r < raw.sequence.size(); ++r) {
    if (raw.sequence[r] <= 0) {
      throw Error(ErrorCode::InvalidValue,
                  "round " + std::to_string(r + 1) + " hires " + std::to_string(raw.sequence[r]) +
                      " workers; counts must be positive",
                  {"sequence", std::to_string(r + 1)});
    }
  }

  ValidatedScenario v;
  std::set<std::string_view> prior_seen;
  for (const auto& id : raw.prior_hires) {
    if (!ids.contains(id)) {
      throw Error(ErrorCode::UnknownWorker, "prior hire '" + id + "' is not in the pool", {id});
    }
    if (!prior_seen.insert(id).second) {
      throw Error(ErrorCode::DuplicateId, "prior hire '" + id + "' listed twice", {id});
    }
  }

  switch (policy.rule) {
    case RuleKind::FrenchP1:
    case RuleKind::FrenchP2:
      break;
    default:
      for (const auto& w : workers) require_field(w.score.has_value(), policy.rule, "score", w.id);
  }
  if (policy.rule == RuleKind::NSW) {
    for (const auto& w : workers) require_field(w.gender.has_value(), policy.rule, "gender", w.id);
    for (std::size_t r = 0; r < raw.sequence.size(); ++r) {
      if (raw.sequence[r] % 2 != 0) {
        throw Error(ErrorCode::OddNswRound,
                    "NSW round " + std::to_string(r + 1) + " hires an odd number (" +
                        std::to_string(raw.sequence[r]) + ")",
                    {std::to_string(r + 1)});
      }
    }
  }

  const std::int64_t total = std::accumulate(raw.sequence.begin(), raw.sequence.end(), std::int64_t{0});
  if (policy.k) {
    if (*policy.k <= 0 || *policy.k > static_cast<std::int64_t>(workers.size())) {
      throw Error(ErrorCode::InvalidValue,
                  "k must lie in [1, |W|], got " + std::to_string(*policy.k), {"k"});
    }
  }
  if (policy.rule == RuleKind::Brazil) {
    if (!policy.k) throw Error(ErrorCode::MissingField, "rule BRAZIL needs 'k'", {"BRAZIL", "k"});
    if (*policy.k < total) {
      throw Error(ErrorCode::KTooSmall,
                  "k = " + std::to_string(*policy.k) + " is below the " + std::to_string(total) +
                      " planned hires",
                  {std::to_string(*policy.k), std::to_string(total)});
    }
  }

  for (auto profile : profiles_used(policy.rule)) require_distinct_scores(workers, profile);

  for (const auto& id : raw.prior_hires) {
    for (WorkerIndex w = 0; w < workers.size(); ++w) {
      if (workers[w].id == id) v.prior_.push_back(w);
    }
  }
  std::sort(v.prior_.begin(), v.prior_.end());
  v.total_hires_ = total;
  v.sufficient_ = total <= static_cast<std::int64_t>(workers.size() - v.prior_.size());
  v.raw_ = std::move(raw);
  return v;
}

std::vector<WorkerIndex> top_q(std::span<const WorkerIndex> pool, std::span<const Worker> workers,
                               ScoreProfile profile, std::int64_t q) {
  std::vector<std::pair<Rational, WorkerIndex>> ranked;
  ranked.reserve(pool.size());
  for (auto w : pool) {
    if (auto s = workers[w].score_in(profile)) ranked.emplace_back(*s, w);
  }
  const auto take = static_cast<std::size_t>(std::clamp<std::int64_t>(q, 0, static_cast<std::int64_t>(ranked.size())));
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take), ranked.end(),
                    [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return a.second < b.second;
                    });
  std::vector<WorkerIndex> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(ranked[i].second);
  return out;
}

std::vector<WorkerIndex> Selection::hired_through(std::size_t rounds) const {
  std::vector<WorkerIndex> out;
  for (std::size_t r = 0; r < rounds && r < ledger.size(); ++r) {
    out.insert(out.end(), ledger[r].reserved_hires.begin(), ledger[r].reserved_hires.end());
    out.insert(out.end(), ledger[r].open_hires.begin(), ledger[r].open_hires.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace poolhire
