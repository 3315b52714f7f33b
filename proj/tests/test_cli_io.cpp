#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "bethe/io.hpp"

using namespace bethe;

TEST_CASE("floats print at 17 significant digits") {
  CHECK(fmt17(0.1) == "0.10000000000000001");
  CHECK(fmt17(1.0) == "1");
  CHECK(fmt17(-3.5e-11) == "-3.5000000000000002e-11");
}

TEST_CASE("root set JSON is deterministic") {
  BetheRootSet rs;
  rs.case_name = "appA_MxRest";
  rs.L = 4;
  rs.counts = {4};
  rs.roots = {{cx(0.1, 0.5), cx(0.1, -0.5)}};
  rs.residual_norm = 1e-12;
  rs.branch_integers = {0, 0};
  std::string a = to_json(rs);
  std::string b = to_json(rs);
  CHECK(a == b);
  CHECK(a.find("\"case\":\"appA_MxRest\"") != std::string::npos);
  CHECK(a.find("\"re\":0.10000000000000001") != std::string::npos);
}

TEST_CASE("residual report JSON round structure") {
  ResidualReport rep;
  rep.equation_id = "BYBE";
  rep.seed = 20240817u;
  rep.add({{cx(0.3, 0.1)}, 1e-13, 2.0});
  std::string s = to_json(rep);
  CHECK(s.find("\"equation_id\":\"BYBE\"") != std::string::npos);
  CHECK(s.find("\"max_relative_residual\"") != std::string::npos);
}

TEST_CASE("dedup sort: lexicographic order and collision merge") {
  std::vector<std::vector<cx>> fams = {
      {cx(0.2, 0.1), cx(0.1, 0.3), cx(0.1, 0.3 + 1e-10), cx(0.1, -0.2)}};
  dedup_sort(fams);
  REQUIRE(fams[0].size() == 3);
  CHECK(fams[0][0] == cx(0.1, -0.2));
  CHECK(fams[0][2] == cx(0.2, 0.1));
}

TEST_CASE("config file parsing: sections, comments, CLI precedence") {
  std::string path = "test_cfg.tmp";
  {
    std::ofstream f(path);
    f << "# comment\nL = 5\n[solve]\ntol = 1e-10\nmagnons = 4 # inline\n";
  }
  RunConfig cfg;
  cfg.kv["L"] = "7";  // pre-set, as if from the command line
  parse_config_file(path, cfg);
  CHECK(cfg.geti("L", 0) == 7);  // command line wins
  CHECK(cfg.getd("solve.tol", 0) == 1e-10);
  CHECK(cfg.geti("solve.magnons", 0) == 4);
  std::remove(path.c_str());
}
