#include "doctest.h"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hp/cli.hpp"

using namespace hp;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hpmap");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("table1 csv reproduces the table") {
  const auto r = run({"table1", "--p", "3", "--p", "5", "--t-max", "14", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,#1,lambda,chi_p,chi_p_B,r_p,chi_3_B,chi_5_B\r");
  std::vector<std::string> rows;
  while (std::getline(is, line)) rows.push_back(line);
  REQUIRE(rows.size() == 15);
  CHECK(rows[7] == "7,3,3,(4+2p+p^2)/8,(4+2p+p^2)/(8-p^3),p^3/8,-1,-1/3\r");
  CHECK(rows[11] == "11,3,4,(8+4p+p^2)/16,(8+4p+p^2)/(16-p^3),p^3/16,-29/11,-53/109\r");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"perron", "--n", "0"}).code == cli::kUsage);
  CHECK(run({"table1", "--p", "4"}).code == cli::kUsage);
  CHECK(run({"nosuch"}).code == cli::kUsage);
  CHECK(run({"table1", "--format", "xml"}).code == cli::kUsage);
  CHECK(run({"l1", "--kappa", "2"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
  const auto r = run({"tau", "--z", "1/2"});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("json schema") {
  const auto r = run({"sweep", "--p", "3", "--t-max", "1048576", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "hpmap/sweep/v1");
  CHECK(j["schema_version"] == 1);
  CHECK(j["ok"] == true);
  std::set<std::string> omegas;
  for (const auto& row : j["rows"]) {
    CHECK(row.size() == j["columns"].size());
    omegas.insert(row[2].get<std::string>());
  }
  for (const char* w : {"1", "-1", "-5", "-7"}) CHECK(omegas.count(w));
}

TEST_CASE("deterministic output") {
  const std::vector<std::string> a = {"fp", "--n", "2", "--method", "montecarlo", "--samples", "50000",
                                      "--seed", "9", "--format", "json"};
  CHECK(run(a).out == run(a).out);
  auto b = a;
  b.push_back("--threads");
  b.push_back("3");
  CHECK(run(a).out.substr(0, 200) == run(b).out.substr(0, 200));
}

TEST_CASE("config file, flags override") {
  const std::string path = "hpmap_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"command": "table1", "p": [5], "t_max": 3, "format": "csv"})";
  }
  auto r = run({"table1", "--config", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("chi_5_B") != std::string::npos);
  CHECK(r.out.find("\r\n3,") != std::string::npos);
  CHECK(r.out.find("\r\n4,") == std::string::npos);
  r = run({"table1", "--config", path, "--t-max", "4"});
  CHECK(r.out.find("\r\n4,") != std::string::npos);
  std::remove(path.c_str());
  CHECK(run({"table1", "--config", "missing.json"}).code == cli::kUsage);
}

TEST_CASE("csv quoting") {
  cli::Report rep;
  rep.command = "x";
  rep.columns = {{"a", cli::Column::Type::string}, {"b", cli::Column::Type::integer}};
  rep.rows = {{std::string("x,\"y\""), std::int64_t(3)}};
  CHECK(cli::emit_csv(rep) == "a,b\r\n\"x,\"\"y\"\"\",3\r\n");
  rep.rows = {{std::int64_t(1), std::int64_t(3)}};
  CHECK_THROWS(cli::emit_csv(rep));
}

TEST_CASE("subcommands run") {
  CHECK(run({"perron", "--n", "2", "--omega", "1"}).code == 0);
  CHECK(run({"summatory", "--n", "8"}).code == 0);
  CHECK(run({"bayes", "--x", "1", "--j", "01", "--n", "2"}).code == 0);
  CHECK(run({"l1", "--M", "8"}).code == 0);
  CHECK(run({"lipschitz", "--s", "1", "--t", "4"}).code == 0);
  CHECK(run({"fourier", "--n", "5"}).code == 0);
  CHECK(run({"phi", "--n", "2", "--p", "5"}).code == 0);
  CHECK(run({"fp", "--n", "2", "--method", "enumerate", "--depth", "30"}).code == 0);
  CHECK(run({"quadcheck"}).code == 0);
  CHECK(run({"vdp", "--t-max", "20"}).code == 0);
  CHECK(run({"orbit", "--x", "-17", "--steps", "50"}).code == 0);
  CHECK(run({"takagi", "--w", "1/4", "--x", "3/8"}).code == 0);
  CHECK(run({"blancmange", "--t-max", "40"}).code == 0);
  CHECK(run({"tau", "--z", "-1/3", "--kappa", "3"}).code == 0);
  CHECK(run({"dirichlet-eval", "--s-re", "0.5", "--s-im", "14"}).code == 0);
  const auto t = run({"tau", "--z", "-1", "--kappa", "3"});
  CHECK(t.out.find("4/5") != std::string::npos);
}
