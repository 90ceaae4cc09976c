// Runs the ten acceptance criteria and prints one verdict line per criterion.
// Exit status is 0 once every criterion has run; --strict turns any FAIL into 1.
#include <cstdio>
#include <cstring>
#include <string>

#include "hp/verify.hpp"

int main(int argc, char** argv) {
  bool strict = false, verbose = true;
  hp::VerifyOptions opt;
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--strict")) strict = true;
    else if (!std::strcmp(argv[i], "--quiet")) verbose = false;
    else if (!std::strcmp(argv[i], "--quick")) opt.contour = false;
    else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only.push_back(std::atoi(argv[++i]));
    else {
      std::fprintf(stderr, "usage: acceptance [--strict] [--quiet] [--quick] [--only N]...\n");
      return 2;
    }
  }
  if (only.empty())
    for (int id = 1; id <= hp::kCriteria; ++id) only.push_back(id);
  int passed = 0, failed = 0, skipped = 0;
  for (int id : only) {
    const hp::CriterionReport rep = hp::run_criterion(id, opt);
    const char* verdict = rep.skipped ? "SKIP" : rep.pass() ? "PASS" : "FAIL";
    std::printf("criterion %2d %s  %s (%.2f s)\n", id, verdict, rep.title.c_str(), rep.seconds);
    if (verbose)
      for (const auto& l : rep.lines)
        std::printf("    [%s] %s%s%s\n", l.info ? "info" : l.pass ? "ok" : "FAIL", l.name.c_str(),
                    l.detail.empty() ? "" : ": ", l.detail.c_str());
    std::fflush(stdout);
    (rep.skipped ? skipped : rep.pass() ? passed : failed)++;
  }
  std::printf("summary: %d passed, %d failed, %d skipped\n", passed, failed, skipped);
  return strict && failed ? 1 : 0;
}
