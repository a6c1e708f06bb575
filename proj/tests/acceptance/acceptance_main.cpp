#include <cstdio>
#include <cstdlib>
#include <string>

#include "flaglyap/verify.hpp"

// Prints one PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
int main(int argc, char** argv) {
  flaglyap::VerifyOptions opts;
  if (argc > 1) opts.seed = std::strtoull(argv[1], nullptr, 10);
  opts.progress = [](const flaglyap::CriterionResult& r) {
    std::printf("%s\n", flaglyap::format_line(r).c_str());
    std::fflush(stdout);
  };
  const auto results = flaglyap::run_acceptance(opts);
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::printf("%zu/%zu criteria passed\n", results.size() - failed, results.size());
  return failed == 0 ? 0 : 1;
}
