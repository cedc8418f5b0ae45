#include "poolhire/cli.hpp"

#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "poolhire/multi.hpp"
#include "poolhire/oracle.hpp"
#include "poolhire/properties.hpp"
#include "poolhire/report.hpp"
#include "poolhire/rules.hpp"
#include "poolhire/scenario_io.hpp"

namespace poolhire {

using nlohmann::json;

namespace {

// Resolved settings of one invocation. Reports embed them so a replay does
// not depend on flags or environment.
struct Options {
  std::string command;
  std::string scenario;
  std::string rule;
  std::string property;
  std::string horizon = "every-prefix";
  std::optional<std::int64_t> budget;
  bool integral_reserves = false;
  std::string target;
  std::optional<std::int64_t> total;
  std::optional<std::int64_t> q;
  std::string mode;
  std::string corpus;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::vector<std::string> subpools;
  std::string check;
  std::string institution;
};

json options_json(const Options& o) {
  json j;
  j["command"] = o.command;
  const auto put = [&](const char* key, const std::string& v) {
    if (!v.empty()) j[key] = v;
  };
  put("scenario", o.scenario);
  put("rule", o.rule);
  put("property", o.property);
  put("target", o.target);
  put("mode", o.mode);
  put("corpus", o.corpus);
  put("check", o.check);
  put("institution", o.institution);
  if (o.command == "check") j["horizon"] = o.horizon;
  if (o.budget) j["budget"] = *o.budget;
  if (o.integral_reserves) j["integral_reserves"] = true;
  if (o.total) j["total"] = *o.total;
  if (o.q) j["q"] = *o.q;
  if (o.mode == "equivalence") {
    j["trials"] = o.trials;
    j["seed"] = o.seed;
  }
  if (!o.subpools.empty()) j["subpools"] = o.subpools;
  return j;
}

Options options_from_json(const json& j) {
  Options o;
  o.command = j.at("command").get<std::string>();
  const auto get = [&](const char* key, std::string& v) {
    if (j.contains(key)) v = j[key].get<std::string>();
  };
  get("scenario", o.scenario);
  get("rule", o.rule);
  get("property", o.property);
  get("target", o.target);
  get("mode", o.mode);
  get("corpus", o.corpus);
  get("check", o.check);
  get("institution", o.institution);
  get("horizon", o.horizon);
  if (j.contains("budget")) o.budget = j["budget"].get<std::int64_t>();
  o.integral_reserves = j.value("integral_reserves", false);
  if (j.contains("total")) o.total = j["total"].get<std::int64_t>();
  if (j.contains("q")) o.q = j["q"].get<std::int64_t>();
  o.trials = j.value("trials", std::uint64_t{1000});
  o.seed = j.value("seed", std::uint64_t{1});
  if (j.contains("subpools")) o.subpools = j["subpools"].get<std::vector<std::string>>();
  return o;
}

struct Outcome {
  int code = 0;
  std::string document;
  std::string csv;
  std::string summary;
};

json base_report(const Options& o) {
  json j;
  j["format_version"] = kReportFormatVersion;
  j["command"] = o.command;
  j["invocation"] = options_json(o);
  return j;
}

// The file's scenario, or the copy embedded in a report being replayed.
json scenario_document(const Options& o, const std::optional<json>& embedded) {
  if (embedded) return *embedded;
  if (o.scenario.empty()) throw Error(ErrorCode::MissingField, "a scenario file is required", {"scenario"});
  return read_json_file(o.scenario);
}

RuleKind rule_or(const Options& o, RuleKind fallback) {
  if (o.rule.empty()) return fallback;
  auto rule = parse_rule_kind(o.rule);
  if (!rule) throw Error(ErrorCode::InvalidValue, "unknown rule '" + o.rule + "'", {o.rule});
  return *rule;
}

struct Loaded {
  Scenario raw;
  ValidatedScenario scenario;
  json report;
};

Loaded load(const Options& o, const std::optional<json>& embedded) {
  const auto doc = scenario_document(o, embedded);
  auto raw = scenario_from_json(doc);
  auto configured = raw;
  configured.policy.rule = rule_or(o, raw.policy.rule);
  auto scenario = validate_scenario(configured);
  auto report = base_report(o);
  report["scenario"] = scenario_to_json(raw);
  report["scenario_digest"] = scenario_digest(raw);
  return {std::move(raw), std::move(scenario), std::move(report)};
}

std::string set_text(std::span<const Worker> workers, std::span<const WorkerIndex> set) {
  std::string s = "{";
  for (std::size_t i = 0; i < set.size(); ++i) s += (i ? "," : "") + workers[set[i]].id;
  return s + "}";
}

std::string composition_text(std::span<const std::int64_t> parts) {
  std::string s = "<";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
  return s + ">";
}

Outcome cmd_run(const Options& o, const std::optional<json>& embedded) {
  auto [raw, scenario, report] = load(o, embedded);
  const auto selection = run(scenario);
  report["result"] = selection_json(scenario, selection);
  return {0, render(report), ledger_csv(scenario, selection),
          std::string(to_string(scenario.policy().rule)) + " hires " +
              set_text(scenario.workers(), selection.hired)};
}

Outcome cmd_check(const Options& o, const std::optional<json>& embedded) {
  auto [raw, scenario, report] = load(o, embedded);
  Horizon horizon;
  if (o.horizon == "every-prefix") {
    horizon = Horizon::EveryPrefix;
  } else if (o.horizon == "first-round") {
    horizon = Horizon::FirstRoundOnly;
  } else {
    throw Error(ErrorCode::InvalidValue, "unknown horizon '" + o.horizon + "'", {o.horizon});
  }
  const auto selection = run(scenario);
  report["result"] = selection_json(scenario, selection);
  report["property"] = o.property;
  PropertyVerdict verdict;
  if (o.property == "fairness") {
    verdict = check_fairness(selection, scenario);
  } else if (o.property == "minority-rights") {
    report["horizon"] = std::string(to_string(horizon));
    verdict = check_minority_rights(selection, scenario, horizon);
  } else if (o.property == "minority-fair") {
    report["horizon"] = std::string(to_string(horizon));
    verdict = check_minority_fair(selection, scenario, horizon);
  } else if (o.property == "aggregation-independence") {
    const CompositionFilter filter =
        o.integral_reserves ? integral_reserve_filter(scenario.policy().m) : CompositionFilter{};
    verdict = check_aggregation_independence(scenario, scenario.policy().rule,
                                             o.budget.value_or(kDefaultCompositionCap), filter);
  } else {
    throw Error(ErrorCode::InvalidValue, "unknown property '" + o.property + "'", {o.property});
  }
  report["verdict"] = verdict_json(verdict, scenario.workers());
  std::string summary = o.property + (verdict.holds ? " holds" : " violated");
  if (verdict.witness) summary += ": " + verdict.witness->explanation;
  return {verdict.holds ? 0 : 1, render(report), ledger_csv(scenario, selection), summary};
}

Outcome cmd_manipulate(const Options& o, const std::optional<json>& embedded) {
  auto [raw, scenario, report] = load(o, embedded);
  if (o.target.empty()) throw Error(ErrorCode::MissingField, "--target is required", {"target"});
  const auto total = o.total.value_or(scenario.total_hires());
  const auto rule = scenario.policy().rule;
  const auto found =
      find_manipulation(scenario, rule, o.target, total, o.budget.value_or(kDefaultCompositionCap));
  report["target"] = o.target;
  report["total"] = total;
  report["rule"] = std::string(to_string(rule));
  if (!found) {
    report["composition"] = nullptr;
    return {1, render(report), "", "no composition of " + std::to_string(total) + " hires " + o.target};
  }
  const auto split = scenario.with_sequence(*found);
  const auto selection = run(split);
  report["composition"] = *found;
  report["result"] = selection_json(split, selection);
  return {0, render(report), ledger_csv(split, selection),
          composition_text(*found) + " hires " + o.target};
}

std::vector<WorkerIndex> resolve_ids(const ValidatedScenario& scenario, const std::vector<std::string>& ids) {
  std::vector<WorkerIndex> out;
  for (const auto& id : ids) {
    auto w = scenario.find(id);
    if (!w) throw Error(ErrorCode::UnknownWorker, "no worker with id '" + id + "'", {id});
    out.push_back(*w);
  }
  return out;
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string id;
  while (std::getline(in, id, ',')) {
    if (!id.empty()) out.push_back(id);
  }
  return out;
}

Outcome cmd_oracle_equivalence(const Options& o) {
  InstanceConfig config;
  if (o.corpus == "m0") {
    config.m_choices = {Rational(0)};
  } else if (o.corpus != "default") {
    throw Error(ErrorCode::InvalidValue, "unknown corpus '" + o.corpus + "' (use default or m0)", {o.corpus});
  }
  const auto rule = rule_or(o, RuleKind::SA);
  if (rule != RuleKind::SP && rule != RuleKind::SM && rule != RuleKind::SA) {
    throw Error(ErrorCode::UnsupportedRule, "equivalence corpora cover SP, SM and SA only",
                {std::string(to_string(rule))});
  }
  const auto report = oracle_equivalence(rule, config, o.trials, o.seed);
  std::string doc;
  std::optional<std::uint64_t> first_failure;
  std::uint64_t extension = 0;
  for (const auto& rec : report.trials) {
    doc += trial_json(rec).dump() + "\n";
    if (!rec.match && !first_failure) first_failure = rec.trial;
    if (rec.extension_semantics) ++extension;
  }
  auto summary = base_report(o);
  summary["rule"] = std::string(to_string(rule));
  summary["trials"] = report.trials.size();
  summary["failures"] = report.failures;
  summary["seed"] = report.seed;
  summary["extension_semantics_trials"] = extension;
  summary["subsets_examined"] = report.subsets_examined;
  summary["first_failure"] = first_failure ? json(*first_failure) : json(nullptr);
  doc += summary.dump() + "\n";
  return {report.failures == 0 ? 0 : 1, doc, "",
          std::to_string(report.trials.size()) + " trials, " + std::to_string(report.failures) +
              " failures, seed " + std::to_string(report.seed)};
}

Outcome cmd_oracle(const Options& o, const std::optional<json>& embedded) {
  if (o.mode == "equivalence") {
    if (o.corpus.empty()) throw Error(ErrorCode::MissingField, "equivalence mode needs --corpus", {"corpus"});
    return cmd_oracle_equivalence(o);
  }
  const auto doc = scenario_document(o, embedded);
  auto [raw, scenario, report] = load(o, std::optional<json>(std::in_place, doc));
  report["mode"] = o.mode;
  const auto workers = scenario.workers();
  std::vector<WorkerIndex> pool;
  {
    std::vector<bool> prior(scenario.size(), false);
    for (auto w : scenario.prior()) prior[w] = true;
    for (WorkerIndex w = 0; w < scenario.size(); ++w) {
      if (!prior[w]) pool.push_back(w);
    }
  }
  if (o.mode == "unique-set") {
    const auto q = o.q.value_or(scenario.total_hires());
    const auto fair = unique_fair_set(workers, pool, scenario.policy().m, q);
    report["q"] = q;
    report["m"] = rational_to_json(scenario.policy().m);
    report["set"] = ids_json(workers, fair.set);
    report["subsets_examined"] = fair.subsets_examined;
    return {0, render(report), "",
            set_text(workers, fair.set) + " after " + std::to_string(fair.subsets_examined) + " subsets"};
  }
  if (o.mode == "transform") {
    std::vector<std::vector<WorkerIndex>> subpools;
    if (!o.subpools.empty()) {
      for (const auto& s : o.subpools) subpools.push_back(resolve_ids(scenario, split_ids(s)));
    } else if (doc.contains("subpools")) {
      for (const auto& s : doc["subpools"]) subpools.push_back(resolve_ids(scenario, s.get<std::vector<std::string>>()));
      // Keep them with the embedded scenario so a replay searches the same pools.
      report["scenario"]["subpools"] = doc["subpools"];
    } else {
      subpools.push_back(pool);
    }
    const auto orderings = transform_search(workers, pool, scenario.policy().m, subpools);
    json subs = json::array();
    for (const auto& s : subpools) subs.push_back(ids_json(workers, s));
    json list = json::array();
    for (const auto& ord : orderings) list.push_back(ids_json(workers, ord));
    report["subpools"] = std::move(subs);
    report["m"] = rational_to_json(scenario.policy().m);
    report["orderings"] = std::move(list);
    return {orderings.empty() ? 1 : 0, render(report), "",
            std::to_string(orderings.size()) + " qualifying orderings"};
  }
  throw Error(ErrorCode::InvalidValue, "unknown oracle mode '" + o.mode + "'", {o.mode});
}

Outcome cmd_plural(const Options& o, const std::optional<json>& embedded) {
  const auto doc = scenario_document(o, embedded);
  const auto plural = plural_scenario_from_json(doc);
  validate_plural_scenario(plural);
  const auto rules = plural_rules(plural);
  std::vector<std::string> inst_ids;
  for (const auto& inst : plural.institutions) inst_ids.push_back(inst.id);
  const std::span<const Worker> workers = plural.workers;

  auto report = base_report(o);
  report["scenario"] = plural_scenario_to_json(plural);
  report["scenario_digest"] = plural_scenario_digest(plural);

  const auto matchings = apply_plural_sequence(workers, rules, plural.steps);
  json steps = json::array();
  for (const auto& mu : matchings) steps.push_back(matching_json(mu, workers, plural.institutions));
  report["matchings"] = std::move(steps);
  const auto hired = matchings.empty() ? std::vector<WorkerIndex>{} : matchings.back().matched();
  report["hired"] = ids_json(workers, hired);

  if (o.check.empty()) return {0, render(report), "", "hired " + set_text(workers, hired)};

  PropertyVerdict verdict;
  if (o.check == "permutation") {
    verdict = check_permutation_independence(
        workers, rules, plural.steps,
        static_cast<std::size_t>(o.budget.value_or(static_cast<std::int64_t>(kDefaultPermutationCap))));
  } else if (o.check == "common-top") {
    verdict = check_common_top(workers, rules);
  } else if (o.check == "aggregation") {
    auto it = std::find(inst_ids.begin(), inst_ids.end(), o.institution);
    if (it == inst_ids.end()) {
      throw Error(ErrorCode::InvalidValue, "--institution must name an institution", {o.institution});
    }
    if (!o.q) throw Error(ErrorCode::MissingField, "--q is required", {"q"});
    verdict = check_multi_aggregation_independence(workers, rules,
                                                   static_cast<std::size_t>(it - inst_ids.begin()), *o.q,
                                                   o.budget.value_or(kDefaultCompositionCap));
  } else {
    throw Error(ErrorCode::InvalidValue, "unknown plural check '" + o.check + "'", {o.check});
  }
  report["check"] = o.check;
  report["verdict"] = verdict_json(verdict, workers, inst_ids);
  std::string summary = o.check + (verdict.holds ? " holds" : " violated");
  if (verdict.witness) summary += ": " + verdict.witness->explanation;
  return {verdict.holds ? 0 : 1, render(report), "", summary};
}

Outcome execute(const Options& o, const std::optional<json>& embedded = std::nullopt) {
  if (o.command == "run") return cmd_run(o, embedded);
  if (o.command == "check") return cmd_check(o, embedded);
  if (o.command == "manipulate") return cmd_manipulate(o, embedded);
  if (o.command == "oracle") return cmd_oracle(o, embedded);
  if (o.command == "plural") return cmd_plural(o, embedded);
  throw Error(ErrorCode::InvalidValue, "unknown command '" + o.command + "'", {o.command});
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidValue, "cannot write " + path, {path});
  f << text;
}

int replay(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: ParseError: cannot open " << path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const auto text = buf.str();
  json report;
  try {
    report = json::parse(text);
  } catch (const json::parse_error&) {
    // Line-delimited reports end with a summary record.
    const auto trimmed = text.substr(0, text.find_last_not_of('\n') + 1);
    const auto start = trimmed.find_last_of('\n');
    try {
      report = json::parse(start == std::string::npos ? trimmed : trimmed.substr(start + 1));
    } catch (const json::parse_error& e) {
      err << "error: ParseError: " << path << ": " << e.what() << "\n";
      return 2;
    }
  }
  if (!report.is_object() || !report.contains("invocation") ||
      report.value("format_version", 0) != kReportFormatVersion) {
    err << "error: ParseError: " << path << " is not a version " << kReportFormatVersion << " report\n";
    return 2;
  }
  try {
    const auto options = options_from_json(report["invocation"]);
    std::optional<json> embedded;
    if (report.contains("scenario")) {
      embedded = report["scenario"];
      const auto digest = options.command == "plural"
                              ? plural_scenario_digest(plural_scenario_from_json(*embedded))
                              : scenario_digest(scenario_from_json(*embedded));
      if (digest != report.value("scenario_digest", "")) {
        err << "replay diverged: embedded scenario does not match its digest\n";
        return 1;
      }
    }
    const auto outcome = execute(options, embedded);
    if (outcome.document != text) {
      err << "replay diverged: re-executed report differs from " << path << "\n";
      return 1;
    }
    out << "replay identical: " << outcome.summary << "\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "error: ParseError: " << path << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential hiring rules with minority reserves", "poolhire"};
  app.require_subcommand(0, 1);
  std::string replay_path;
  app.add_option("--replay", replay_path, "Re-execute a report and compare byte for byte")
      ->envname("POOLHIRE_REPLAY");

  Options o;
  std::string output;
  std::string csv;

  const auto common = [&](CLI::App* sub, bool scenario_required) {
    auto* opt = sub->add_option("scenario", o.scenario, "Scenario file");
    if (scenario_required) opt->required();
    sub->add_option("--rule", o.rule, "Override the scenario's rule")->envname("POOLHIRE_RULE");
    sub->add_option("--output", output, "Write the report here instead of stdout")
        ->envname("POOLHIRE_OUTPUT");
    sub->add_option("--csv", csv, "Also write the hire ledger as CSV")->envname("POOLHIRE_CSV");
    sub->add_option("--budget", o.budget, "Enumeration cap")->envname("POOLHIRE_BUDGET");
  };

  auto* run_cmd = app.add_subcommand("run", "Execute the scenario's rule");
  common(run_cmd, true);

  auto* check_cmd = app.add_subcommand("check", "Audit a property of the rule on the scenario");
  common(check_cmd, true);
  check_cmd->add_option("--property", o.property)
      ->required()
      ->check(CLI::IsMember({"fairness", "minority-rights", "minority-fair", "aggregation-independence"}))
      ->envname("POOLHIRE_PROPERTY");
  check_cmd->add_option("--horizon", o.horizon)
      ->check(CLI::IsMember({"every-prefix", "first-round"}))
      ->envname("POOLHIRE_HORIZON");
  check_cmd->add_flag("--integral-reserves", o.integral_reserves,
                      "Only splits whose rounds have integral m*q")
      ->envname("POOLHIRE_INTEGRAL_RESERVES");

  auto* manip_cmd = app.add_subcommand("manipulate", "Search for a split that hires a target worker");
  common(manip_cmd, true);
  manip_cmd->add_option("--target", o.target)->required()->envname("POOLHIRE_TARGET");
  manip_cmd->add_option("--total", o.total, "Total hires (default: the scenario's)")
      ->envname("POOLHIRE_TOTAL");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force ground truth");
  common(oracle_cmd, false);
  oracle_cmd->add_option("--mode", o.mode)
      ->required()
      ->check(CLI::IsMember({"unique-set", "equivalence", "transform"}))
      ->envname("POOLHIRE_MODE");
  oracle_cmd->add_option("--q", o.q)->envname("POOLHIRE_Q");
  oracle_cmd->add_option("--corpus", o.corpus, "default or m0")->envname("POOLHIRE_CORPUS");
  oracle_cmd->add_option("--trials", o.trials)->envname("POOLHIRE_TRIALS");
  oracle_cmd->add_option("--seed", o.seed)->envname("POOLHIRE_SEED");
  oracle_cmd->add_option("--subpool", o.subpools, "Comma-separated worker ids; repeatable");

  auto* plural_cmd = app.add_subcommand("plural", "Run or audit a plural sequence of hires");
  common(plural_cmd, true);
  plural_cmd->add_option("--check", o.check)
      ->check(CLI::IsMember({"permutation", "common-top", "aggregation"}))
      ->envname("POOLHIRE_CHECK");
  plural_cmd->add_option("--institution", o.institution)->envname("POOLHIRE_INSTITUTION");
  plural_cmd->add_option("--q", o.q)->envname("POOLHIRE_Q");

  std::vector<std::string> argv_store{"poolhire"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return 2;
  }

  if (!replay_path.empty()) return replay(replay_path, out, err);
  const auto subs = app.get_subcommands();
  if (subs.empty()) {
    err << app.help();
    return 2;
  }
  o.command = subs.front()->get_name();

  try {
    const auto outcome = execute(o);
    if (!csv.empty()) write_file(csv, outcome.csv);
    if (output.empty()) {
      out << outcome.document;
    } else {
      write_file(output, outcome.document);
      out << outcome.summary << "\n";
    }
    return outcome.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace poolhire
