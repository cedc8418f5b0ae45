#pragma once

#include <string>
#include <vector>

// CLI invocations whose reports are checked in under tests/golden. Paths are
// relative to the source tree.
struct Golden {
  std::string name;
  std::vector<std::string> args;
  int code;
};

inline const std::vector<Golden>& golden_cases() {
  static const std::vector<Golden> list = {
      {"run_example1_sm", {"run", "scenarios/example1.json"}, 0},
      {"run_example1_sa", {"run", "scenarios/example1.json", "--rule", "sa"}, 0},
      {"run_example2_sm", {"run", "scenarios/example2.json"}, 0},
      {"run_example2_sa", {"run", "scenarios/example2.json", "--rule", "sa"}, 0},
      {"run_example3_brazil", {"run", "scenarios/example3_brazil.json"}, 0},
      {"run_example4_nsw", {"run", "scenarios/example4_nsw.json"}, 0},
      {"run_brazil6", {"run", "scenarios/brazil6.json"}, 0},
      {"run_french_example", {"run", "scenarios/french_example.json"}, 0},
      {"run_french_prop2_split", {"run", "scenarios/french_prop2_split.json"}, 0},
      {"check_example1_ai_sm",
       {"check", "scenarios/example1.json", "--property", "aggregation-independence", "--rule", "sm"}, 1},
      {"check_example1_rights_sm", {"check", "scenarios/example1.json", "--property", "minority-rights", "--rule", "sm"}, 0},
      {"check_example1_fair_sm", {"check", "scenarios/example1.json", "--property", "minority-fair"}, 1},
      {"check_example3_fair", {"check", "scenarios/example3_brazil.json", "--property", "minority-fair"}, 1},
      {"check_example4_fairness", {"check", "scenarios/example4_nsw.json", "--property", "fairness", "--rule", "nsw"}, 1},
      {"check_french_rights", {"check", "scenarios/french_prop2_rights.json", "--property", "minority-rights"}, 1},
      {"manipulate_example1_w5", {"manipulate", "scenarios/example1.json", "--rule", "sm", "--target", "w5", "--total", "4"}, 0},
      {"manipulate_example1_sp", {"manipulate", "scenarios/example1.json", "--rule", "sp", "--target", "w5", "--total", "4"}, 1},
      {"oracle_unique_example1", {"oracle", "scenarios/example1.json", "--mode", "unique-set", "--q", "4"}, 0},
      {"oracle_transform4", {"oracle", "scenarios/transform4.json", "--mode", "transform"}, 1},
      {"plural_example6", {"plural", "scenarios/example6_plural.json"}, 0},
      {"plural_mixed_ratio_permutation", {"plural", "scenarios/mixed_ratio_plural.json", "--check", "permutation"}, 1},
  };
  return list;
}

