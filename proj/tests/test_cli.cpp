#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

// GSP4_CLI_PATH and GSP4_TABLES_DIR come from the build.

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(GSP4_CLI_PATH) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
  const int st = pclose(f);
  return {WEXITSTATUS(st), out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json jparse(const std::string& s) {
  return nlohmann::json::parse(s);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("tables match the checked-in goldens byte for byte") {
  CHECK(run("tables --q B").out == slurp(std::string(GSP4_TABLES_DIR) +
                                         "/borel.tsv"));
  CHECK(run("tables --q P").out == slurp(std::string(GSP4_TABLES_DIR) +
                                         "/siegel.tsv"));
  CHECK(run("tables --q 'P*'").out == slurp(std::string(GSP4_TABLES_DIR) +
                                            "/klingen.tsv"));
}

TEST_CASE("tables json variant") {
  const auto r = run("tables --q B --format json");
  CHECK(r.exit_code == 0);
  const auto j = jparse(r.out);
  CHECK(j["schema"] == "gsp4/1");
  CHECK(j["q"] == "B");
  REQUIRE(j["tables"].size() == 3);
  CHECK(j["tables"][0]["sigma"] == "P");
  CHECK(j["tables"][0]["rows"][0]["w"] == "id");
  CHECK(j["tables"][0]["rows"][0]["q_prime"] == 3);
  CHECK(j["tables"][2]["rows"].size() == 8);
}

TEST_CASE("unknown parabolic is a usage error") {
  const auto r = run("tables --q X", true);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("unknown parabolic") != std::string::npos);
  CHECK(r.out.find("\"error\":\"config\"") != std::string::npos);
}

TEST_CASE("help and bad subcommands") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("frobnicate", true).exit_code == 2);
  CHECK(run("", true).exit_code == 2);  // a subcommand is required
}

TEST_CASE("verify contract") {
  const auto r = run("verify contract --p 3 --r 2 --s 1 --q B");
  CHECK(r.exit_code == 0);
  const auto j = jparse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["points"] == 2916);
  CHECK(j["schema"] == "gsp4/1");
  // out-of-scope prime refused with the dedicated exit code
  CHECK(run("verify contract --p 7 --r 2 --s 1 --q B", true).exit_code == 3);
}

TEST_CASE("verify hecke") {
  const auto r = run("verify hecke --p 3 --r 1 --q B");
  CHECK(r.exit_code == 0);
  const auto j = jparse(r.out);
  CHECK(j["pass"] == true);
  REQUIRE(j["generators"].size() == 3);
  CHECK(j["generators"][2]["degree"] == 2187);
  CHECK(j["commute"].size() == 3);
  for (const auto& c : j["commute"]) CHECK(c["ok"] == true);
  bool saw_formula_route = false;
  for (const auto& p : j["products"]) {
    CHECK(p["degreeMultiplicative"] == true);
    if (p["route"] == "degree-formula") saw_formula_route = true;
  }
  CHECK(saw_formula_route);  // the heavy pair goes through the degree identity
}

TEST_CASE("verify kernel") {
  const auto r = run("verify kernel --p 3 --r 2 --s 2 --q B");
  CHECK(r.exit_code == 0);
  const auto j = jparse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["dim"] == 81);
  // congruence level above the precision is a config error
  CHECK(run("verify kernel --p 3 --r 2 --s 3 --q B", true).exit_code == 2);
}

TEST_CASE("verify spherical") {
  const auto r = run("verify spherical --p 3 --q P");
  CHECK(r.exit_code == 0);
  const auto j = jparse(r.out);
  CHECK(j["total"] == 40);
  CHECK(j["lagrangianCount"] == 40);
  CHECK(j["pass"] == true);
}

TEST_CASE("polygon verdicts") {
  const auto rb = run("polygon --weight 5,3,8 --q B --field 1,1");
  CHECK(rb.exit_code == 0);
  const auto jb = jparse(rb.out);
  CHECK(jb["verdict"]["dualParabolic"] == "B");
  CHECK(jb["alpha"][1] == "4");
  CHECK(jb["newton"] == jb["hodge"]);
  const auto rp = run("polygon --weight 5,3,8 --q P --field 1,1");
  const auto jp = jparse(rp.out);
  CHECK(jp["verdict"]["dualParabolic"] == "P*");
  CHECK(jp["alpha"][1].is_null());
  CHECK(jp["newton"].is_null());
  const auto rk = run("polygon --weight 5,3,8 --q 'P*' --field 1,1");
  const auto jk = jparse(rk.out);
  CHECK(jk["verdict"]["dualParabolic"] == "P");
  CHECK(jk["sum01"] == "4");
  // odd-parity weight rejected
  CHECK(run("polygon --weight 5,3,9 --q B --field 1,1", true).exit_code == 2);
  // polygon dump
  CHECK(run("polygon --weight 5,3,8 --q B --field 1,1 --tsv hodge").out ==
        "0\t0\n1\t0\n2\t4\n3\t11\n4\t22\n");
  // a newton dump needs resolvable slopes
  CHECK(run("polygon --weight 5,3,8 --q P --field 1,1 --tsv newton", true)
            .exit_code == 2);
}

TEST_CASE("polygon quadratic place") {
  const auto r =
      run("polygon --weight 5,3,12 --weight 7,5,12 --q B --field 1,2");
  CHECK(r.exit_code == 0);
  const auto j = jparse(r.out);
  CHECK(j["pairing"] == "30");
  CHECK(j["verdict"]["dualParabolic"] == "B");
  REQUIRE(j["inducedNewton"].is_array());
  CHECK(j["inducedNewton"][1][0] == "2");
  CHECK(j["inducedNewton"][1][1] == "2");
  // mismatched similitude components across embeddings
  CHECK(run("polygon --weight 5,3,12 --weight 7,5,10 --q B --field 1,2", true)
            .exit_code == 2);
}

TEST_CASE("kostant modes") {
  const auto r = run("kostant --u B --weight 0,0");
  CHECK(r.exit_code == 0);
  const auto j = jparse(r.out);
  CHECK(j["mode"] == "nilradical");
  CHECK(j["entries"].size() == 8);
  const auto rs = run("kostant --sigma P --w s2s1 --q B --weight 1,1");
  const auto js = jparse(rs.out);
  CHECK(js["mode"] == "stratum");
  CHECK(js["w"] == "s2");  // canonicalized to the class representative
  CHECK(run("kostant --u B --sigma P --w id --q B --weight 0,0", true)
            .exit_code == 2);
  CHECK(run("kostant --weight 0,0", true).exit_code == 2);
}

TEST_CASE("boundary summands and skeletons") {
  const auto r = run("boundary --q B --degree 2");
  CHECK(r.exit_code == 0);
  const auto j = jparse(r.out);
  REQUIRE(j["summands"].size() == 2);
  CHECK(j["summands"][0]["stratum"] == "P");
  CHECK(j["summands"][1]["stratum"] == "P*");
  const auto rs = run("boundary --skeleton 3");
  const auto js = jparse(rs.out);
  CHECK(js["fieldDegree"] == 3);
  REQUIRE(js["skeletons"].size() == 2);
  CHECK(js["skeletons"][0]["leviDegree"] == 3);
  CHECK(js["skeletons"][0]["lIndex"] == 6);
}

TEST_CASE("charpoly") {
  const auto r = run("charpoly --T 1 --R 0 --S 1 --q 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "X^4 - X^3 + 10X^2 - 8X + 64\n");
  CHECK(run("charpoly --T 0 --R 0 --S 1 --q 1").out ==
        "X^4 + 2X^2 + 1\n");
  CHECK(run("charpoly --T 1 --R 0 --S 1 --q 0", true).exit_code == 2);
  const auto sweep = run("charpoly --sweep 100");
  CHECK(sweep.exit_code == 0);
  CHECK(jparse(sweep.out)["pass"] == true);
}

TEST_CASE("hida-rank") {
  CHECK(run("hida-rank --d 1 --delta 0 --types B").out == "3\n");
  CHECK(run("hida-rank --d 5 --delta 1 --types B,B,B,B,B").out == "12\n");
  CHECK(run("hida-rank --d 2 --delta 0 --types P --degrees 2").out == "3\n");
  CHECK(run("hida-rank --d 2 --delta 0 --types B", true).exit_code == 2);
}

TEST_CASE("bruhat sweep") {
  const auto r = run("bruhat --count 200");
  CHECK(r.exit_code == 0);
  const auto j = jparse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["bruhatLeq"] == 200);
  CHECK(j["dropClause"] == 200);
  CHECK(j["seed"] == 20260818);
}

TEST_CASE("byte-stable output for a fixed configuration") {
  const std::string a = run("polygon --weight 5,3,8 --q B --field 1,1").out;
  const std::string b = run("polygon --weight 5,3,8 --q B --field 1,1").out;
  CHECK(a == b);
  CHECK(run("verify spherical --p 3 --q P").out ==
        run("verify spherical --p 3 --q P").out);
}

TEST_CASE("config file with flag override") {
  const std::string cfg = "/tmp/gsp4_test_cfg.ini";
  {
    std::ofstream out(cfg);
    out << "[tables]\nq=P\n";
  }
  const auto r = run("--config " + cfg + " tables");
  CHECK(r.exit_code == 0);
  CHECK(r.out == slurp(std::string(GSP4_TABLES_DIR) + "/siegel.tsv"));
  // explicit flag wins over the file
  const auto r2 = run("--config " + cfg + " tables --q B");
  CHECK(r2.out == slurp(std::string(GSP4_TABLES_DIR) + "/borel.tsv"));
  std::remove(cfg.c_str());
}

}  // TEST_SUITE
