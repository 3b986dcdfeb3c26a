// one PASS/FAIL line per acceptance criterion; --quick shrinks the windows
#include <cstdio>
#include <cstring>
#include <string>

#include "motivic/suites.hpp"

using namespace motivic;

int main(int argc, char** argv) {
  bool quick = false;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--quick"))
      quick = true;
    else
      ids.push_back(std::stoi(argv[i]));
  }
  if (ids.empty())
    for (int id = 1; id <= suite_count(); ++id) ids.push_back(id);
  int failed = 0;
  for (int id : ids) {
    auto r = run_suite(id, quick);
    std::printf("CRITERION %d %s: %s (%d checks, %.1fs)\n", r.id, r.pass() ? "PASS" : "FAIL",
                r.name.c_str(), r.checks, r.seconds);
    for (size_t i = 0; i < r.failures.size() && i < 12; ++i)
      std::printf("  failure: %s\n", r.failures[i].c_str());
    if (r.failures.size() > 12) std::printf("  ... %zu failures\n", r.failures.size());
    for (auto& n : r.notes) std::printf("  note: %s\n", n.c_str());
    std::fflush(stdout);
    failed += !r.pass();
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(ids.size()) - failed, ids.size());
  return failed ? 1 : 0;
}
