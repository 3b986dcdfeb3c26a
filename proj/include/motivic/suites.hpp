#pragma once
#include <string>
#include <vector>

namespace motivic {

struct SuiteResult {
  int id = 0;
  std::string name;
  int checks = 0;
  std::vector<std::string> failures;
  // informational lines (subcases run, known discrepancies)
  std::vector<std::string> notes;
  double seconds = 0;
  bool pass() const { return failures.empty() && checks > 0; }
};

// the nine end-to-end comparison suites; quick shrinks every window for smoke runs
int suite_count();
std::string suite_name(int id);
SuiteResult run_suite(int id, bool quick = false);
std::string suite_json(const std::vector<SuiteResult>& results);

}  // namespace motivic
