#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "hp/dirichlet.hpp"

namespace hp::cli {

// Exit codes
constexpr int kOk = 0, kCheckFailed = 1, kUsage = 2;

struct RunConfig {
  std::string command;
  std::vector<std::uint64_t> p{3};
  std::uint64_t t_max = 14;
  std::uint64_t n = 1;  // coefficient index, digit count, or level, per command
  std::uint64_t steps = 200;
  std::uint64_t kappa = 3;
  std::uint64_t M = 10;
  std::uint64_t K = 64;
  std::uint64_t depth = 40;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  std::uint64_t k_max = 6;
  unsigned threads = 0;
  double omega = 1;
  double b = 2;
  double s_re = 2, s_im = 0;
  double tol = 1e-12;
  std::string method = "auto";
  std::string x = "1", w = "1/2", z = "-1", s = "0", t = "1", j = "1";
  bool quick = false;
  std::string format = "pretty";
  std::string output;
  EvalConfig eval;

  void validate() const;  // throws DomainError naming the violated precondition
};

RunConfig config_from_json(const std::string& text);
std::string config_to_json(const RunConfig& c);

using Cell = std::variant<std::string, std::int64_t, double, bool>;

struct Column {
  std::string name;
  enum class Type { string, integer, number, boolean } type = Type::string;
};

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct Report {
  std::string command;
  int schema_version = 1;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<Check> checks;
  bool ok() const;
  void validate() const;  // every row matches the column list
};

Report execute(const RunConfig& c);

std::string emit_csv(const Report& r);
std::string emit_json(const Report& r, const RunConfig& c);
std::string emit_pretty(const Report& r);

// Parses argv, runs, writes the artifact; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hp::cli
