#include "poolhire/scenario_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <openssl/evp.h>

namespace poolhire {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, path + ": " + what, {path});
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) parse_fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(path, std::string("missing field '") + key + "'");
  return *it;
}

std::int64_t int_from_json(const json& j, const std::string& path) {
  if (!j.is_number_integer()) parse_fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::string string_from_json(const json& j, const std::string& path) {
  if (!j.is_string()) parse_fail(path, "expected a string");
  return j.get<std::string>();
}

bool bool_from_json(const json& j, const std::string& path) {
  if (!j.is_boolean()) parse_fail(path, "expected true or false");
  return j.get<bool>();
}

}  // namespace

Rational rational_from_json(const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number_float()) {
      // Shortest round-trip text, so 0.3 reads as 3/10 rather than the
      // binary double.
      std::array<char, 64> buf{};
      auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), j.get<double>());
      if (ec != std::errc()) parse_fail(path, "unreadable number");
      const std::string_view text(buf.data(), static_cast<std::size_t>(end - buf.data()));
      if (text.find('e') != std::string_view::npos) parse_fail(path, "exponent notation not supported");
      return parse_rational(text);
    }
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
      const auto den = j[1].get<std::int64_t>();
      if (den == 0) parse_fail(path, "zero denominator");
      return Rational(j[0].get<std::int64_t>(), den);
    }
  } catch (const std::invalid_argument& e) {
    parse_fail(path, e.what());
  }
  parse_fail(path, "expected an integer, [numerator, denominator] or \"n/d\"");
}

json rational_to_json(const Rational& r) {
  if (r.denominator() == 1) return r.numerator();
  return json::array({r.numerator(), r.denominator()});
}

Worker worker_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) parse_fail(path, "expected an object");
  static const std::set<std::string> known = {"id", "score", "minority", "gender",
                                              "open_score", "disability_score", "pools"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) parse_fail(path, "unknown field '" + key + "'");
  }
  Worker w;
  w.id = string_from_json(require(j, "id", path), path + ".id");
  if (j.contains("score")) w.score = rational_from_json(j["score"], path + ".score");
  if (j.contains("minority")) w.minority = bool_from_json(j["minority"], path + ".minority");
  if (j.contains("gender")) {
    const auto g = string_from_json(j["gender"], path + ".gender");
    if (g == "F") {
      w.gender = Gender::Female;
    } else if (g == "M") {
      w.gender = Gender::Male;
    } else {
      parse_fail(path + ".gender", "expected \"F\" or \"M\"");
    }
  }
  if (j.contains("open_score")) w.open_score = rational_from_json(j["open_score"], path + ".open_score");
  if (j.contains("disability_score")) {
    w.disability_score = rational_from_json(j["disability_score"], path + ".disability_score");
  }
  if (j.contains("pools")) {
    const auto& pools = j["pools"];
    if (!pools.is_array()) parse_fail(path + ".pools", "expected an array");
    for (std::size_t i = 0; i < pools.size(); ++i) {
      const auto name = string_from_json(pools[i], path + ".pools[" + std::to_string(i) + "]");
      if (name == "open") {
        w.in_open_pool = true;
      } else if (name == "disability") {
        w.in_disability_pool = true;
      } else {
        parse_fail(path + ".pools[" + std::to_string(i) + "]", "expected \"open\" or \"disability\"");
      }
    }
  }
  return w;
}

json worker_to_json(const Worker& w) {
  json j;
  j["id"] = w.id;
  if (w.score) j["score"] = rational_to_json(*w.score);
  j["minority"] = w.minority;
  if (w.gender) j["gender"] = std::string(to_string(*w.gender));
  if (w.open_score) j["open_score"] = rational_to_json(*w.open_score);
  if (w.disability_score) j["disability_score"] = rational_to_json(*w.disability_score);
  if (w.in_open_pool || w.in_disability_pool) {
    json pools = json::array();
    if (w.in_open_pool) pools.push_back("open");
    if (w.in_disability_pool) pools.push_back("disability");
    j["pools"] = std::move(pools);
  }
  return j;
}

Policy policy_from_json(const json& j, const std::string& path) {
  Policy p;
  const auto name = string_from_json(require(j, "rule", path), path + ".rule");
  auto rule = parse_rule_kind(name);
  if (!rule) parse_fail(path + ".rule", "unknown rule '" + name + "'");
  p.rule = *rule;
  if (j.contains("m")) p.m = rational_from_json(j["m"], path + ".m");
  if (j.contains("k") && !j["k"].is_null()) p.k = int_from_json(j["k"], path + ".k");
  return p;
}

json policy_to_json(const Policy& p) {
  json j;
  j["rule"] = std::string(to_string(p.rule));
  j["m"] = rational_to_json(p.m);
  if (p.k) j["k"] = *p.k;
  return j;
}

namespace {

std::vector<Worker> workers_from_json(const json& j) {
  const auto& arr = require(j, "workers", "$");
  if (!arr.is_array()) parse_fail("$.workers", "expected an array");
  std::vector<Worker> workers;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    workers.push_back(worker_from_json(arr[i], "$.workers[" + std::to_string(i) + "]"));
  }
  return workers;
}

json workers_to_json(const std::vector<Worker>& workers) {
  json arr = json::array();
  for (const auto& w : workers) arr.push_back(worker_to_json(w));
  return arr;
}

}  // namespace

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) parse_fail("$", "expected an object");
  Scenario s;
  s.workers = workers_from_json(j);
  s.policy = policy_from_json(require(j, "policy", "$"), "$.policy");
  if (j.contains("sequence")) {
    const auto& seq = j["sequence"];
    if (!seq.is_array()) parse_fail("$.sequence", "expected an array");
    for (std::size_t i = 0; i < seq.size(); ++i) {
      s.sequence.push_back(int_from_json(seq[i], "$.sequence[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("prior_hires")) {
    const auto& prior = j["prior_hires"];
    if (!prior.is_array()) parse_fail("$.prior_hires", "expected an array");
    for (std::size_t i = 0; i < prior.size(); ++i) {
      s.prior_hires.push_back(string_from_json(prior[i], "$.prior_hires[" + std::to_string(i) + "]"));
    }
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["workers"] = workers_to_json(s.workers);
  j["policy"] = policy_to_json(s.policy);
  j["sequence"] = s.sequence;
  j["prior_hires"] = s.prior_hires;
  return j;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail(path.string(), "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    parse_fail(path.string(), e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(read_json_file(path));
}

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string scenario_digest(const Scenario& s) { return sha256_hex(scenario_to_json(s).dump()); }

PluralScenario plural_scenario_from_json(const json& j) {
  if (!j.is_object()) parse_fail("$", "expected an object");
  PluralScenario s;
  s.workers = workers_from_json(j);
  const auto& insts = require(j, "institutions", "$");
  if (!insts.is_array()) parse_fail("$.institutions", "expected an array");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < insts.size(); ++i) {
    const auto path = "$.institutions[" + std::to_string(i) + "]";
    Institution inst;
    inst.id = string_from_json(require(insts[i], "id", path), path + ".id");
    inst.policy = policy_from_json(require(insts[i], "policy", path), path + ".policy");
    index.emplace(inst.id, i);
    s.institutions.push_back(std::move(inst));
  }
  const auto& steps = require(j, "plural_sequence", "$");
  if (!steps.is_array()) parse_fail("$.plural_sequence", "expected an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto path = "$.plural_sequence[" + std::to_string(i) + "]";
    const auto& step = steps[i];
    if (!step.is_array() || step.size() != 2) parse_fail(path, "expected [institution_id, count]");
    const auto id = string_from_json(step[0], path + "[0]");
    auto it = index.find(id);
    if (it == index.end()) parse_fail(path + "[0]", "unknown institution '" + id + "'");
    s.steps.push_back({it->second, int_from_json(step[1], path + "[1]")});
  }
  if (j.contains("ranking")) {
    const auto& ranking = j["ranking"];
    if (!ranking.is_array()) parse_fail("$.ranking", "expected an array");
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      s.ranking.push_back(string_from_json(ranking[i], "$.ranking[" + std::to_string(i) + "]"));
    }
  }
  return s;
}

json plural_scenario_to_json(const PluralScenario& s) {
  json j;
  j["workers"] = workers_to_json(s.workers);
  json insts = json::array();
  for (const auto& inst : s.institutions) {
    insts.push_back({{"id", inst.id}, {"policy", policy_to_json(inst.policy)}});
  }
  j["institutions"] = std::move(insts);
  json steps = json::array();
  for (const auto& step : s.steps) {
    steps.push_back(json::array({s.institutions.at(step.institution).id, step.count}));
  }
  j["plural_sequence"] = std::move(steps);
  if (!s.ranking.empty()) j["ranking"] = s.ranking;
  return j;
}

PluralScenario load_plural_scenario(const std::filesystem::path& path) {
  return plural_scenario_from_json(read_json_file(path));
}

std::string plural_scenario_digest(const PluralScenario& s) {
  return sha256_hex(plural_scenario_to_json(s).dump());
}

void validate_plural_scenario(const PluralScenario& s) {
  // Reuse single-scenario validation for ids and strict main scores.
  Scenario as_single;
  as_single.workers = s.workers;
  as_single.policy.rule = RuleKind::SP;
  validate_scenario(as_single);

  std::set<std::string> inst_ids;
  for (const auto& inst : s.institutions) {
    if (!inst_ids.insert(inst.id).second) {
      throw Error(ErrorCode::DuplicateId, "institution id '" + inst.id + "' appears twice", {inst.id});
    }
    if (inst.policy.m < Rational(0) || inst.policy.m > Rational(1)) {
      throw Error(ErrorCode::InvalidValue, "institution " + inst.id + ": m must lie in [0,1]", {inst.id});
    }
    if (s.ranking.empty()) institutional_rule(inst.policy);  // rejects unsupported rules
    if (inst.policy.rule == RuleKind::NSW) {
      for (const auto& w : s.workers) {
        if (!w.gender) {
          throw Error(ErrorCode::MissingField, "rule NSW needs 'gender' for worker " + w.id,
                      {"NSW", "gender", w.id});
        }
      }
    }
  }
  std::int64_t total = 0;
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    if (s.steps[i].count <= 0) {
      throw Error(ErrorCode::InvalidValue,
                  "plural step " + std::to_string(i + 1) + " has a non-positive count",
                  {std::to_string(i + 1)});
    }
    if (s.steps[i].institution >= s.institutions.size()) {
      throw Error(ErrorCode::InvalidValue, "plural step " + std::to_string(i + 1) +
                                               " names an unknown institution");
    }
    total += s.steps[i].count;
  }
  (void)total;
  if (!s.ranking.empty()) {
    std::set<std::string> seen;
    std::set<std::string> ids;
    for (const auto& w : s.workers) ids.insert(w.id);
    for (const auto& id : s.ranking) {
      if (!ids.contains(id)) throw Error(ErrorCode::UnknownWorker, "ranking names '" + id + "'", {id});
      if (!seen.insert(id).second) throw Error(ErrorCode::DuplicateId, "ranking lists '" + id + "' twice", {id});
    }
    if (seen.size() != ids.size()) {
      throw Error(ErrorCode::InvalidValue, "ranking must order every worker", {"ranking"});
    }
  }
}

RuleSet plural_rules(const PluralScenario& s) {
  if (!s.ranking.empty()) {
    std::vector<WorkerIndex> ranking;
    for (const auto& id : s.ranking) {
      for (WorkerIndex w = 0; w < s.workers.size(); ++w) {
        if (s.workers[w].id == id) ranking.push_back(w);
      }
    }
    return single_priority_rule(ranking, s.institutions.size());
  }
  RuleSet rules;
  for (const auto& inst : s.institutions) rules.push_back(institutional_rule(inst.policy));
  return rules;
}

}  // namespace poolhire
