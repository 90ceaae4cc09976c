#pragma once

#include <string>
#include <vector>

#include "hp/dirichlet.hpp"

namespace hp {

struct CheckLine {
  std::string name;
  bool pass = true;
  bool info = false;  // reported, does not decide the criterion
  std::string detail;
};

struct CriterionReport {
  int id = 0;
  std::string title;
  std::vector<CheckLine> lines;
  bool skipped = false;
  double seconds = 0;
  bool pass() const;
};

struct VerifyOptions {
  EvalConfig eval;
  std::uint64_t seed = 1;
  std::uint64_t sweep_t_max = 1u << 20;
  bool contour = true;  // criteria 5 and 6 integrate along two lines, about a minute
};

constexpr int kCriteria = 10;
const char* criterion_title(int id);
CriterionReport run_criterion(int id, const VerifyOptions& opt);

}  // namespace hp
