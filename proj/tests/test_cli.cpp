#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "test_support.hpp"

using hilbert::testing::fixture;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = hilbert::cli::cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, Distance) {
  const CliRun r = run({"distance", "--polytope", fixture("interval.json"), "--p", "0", "--q", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.json()["distance"].get<double>(), 0.5493061443340549, 1e-12);
}

TEST(Cli, Finsler) {
  const CliRun r = run({"finsler", "--polytope", fixture("square.json"), "--p", "0.5,0.5", "--v", "1,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(r.json()["finsler_norm"].get<double>(), 2.0);
}

TEST(Cli, HalfspaceInputMatchesVertices) {
  const CliRun a = run({"subdivide", "--polytope", fixture("square.json")});
  const CliRun b = run({"subdivide", "--polytope", fixture("square_halfspaces.json")});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, Subdivide) {
  const CliRun r = run({"subdivide", "--polytope", fixture("square.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["cell_count"].get<int>(), 8);
  EXPECT_EQ(j["cells"].size(), 8u);
  EXPECT_EQ(j["barycenter"], nlohmann::json::parse("[0.5, 0.5]"));
}

TEST(Cli, FlattenAndUnflattenRoundTrip) {
  const CliRun f = run({"flatten", "--polytope", fixture("pentagon.json"), "--x", "0.1,0.2"});
  ASSERT_EQ(f.code, 0) << f.err;
  const auto image = f.json()["image"];
  const std::string y = hilbert::io::format_double(image[0].get<double>()) + "," +
                        hilbert::io::format_double(image[1].get<double>());
  const CliRun u = run({"unflatten", "--polytope", fixture("pentagon.json"), "--y", y});
  ASSERT_EQ(u.code, 0) << u.err;
  const auto x = u.json()["point"];
  EXPECT_NEAR(x[0].get<double>(), 0.1, 1e-12);
  EXPECT_NEAR(x[1].get<double>(), 0.2, 1e-12);
}

TEST(Cli, CheckIsometry) {
  const CliRun r = run({"check-isometry", "--dim", "3", "--samples", "2000", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LE(r.json()["max_deviation"].get<double>(), 1e-9);
}

TEST(Cli, ExitCodes) {
  // Validation failures.
  EXPECT_EQ(run({"distance", "--polytope", fixture("square.json"), "--p", "0,0.5", "--q", "0.5,0.5"}).code, 1);
  EXPECT_EQ(run({"distance", "--polytope", fixture("square.json"), "--p", "0.5", "--q", "0.5,0.5"}).code, 1);
  EXPECT_EQ(run({"subdivide", "--polytope", fixture("missing.json")}).code, 1);
  EXPECT_EQ(run({"estimate-lipschitz", "--polytope", fixture("square.json"), "--samples", "0"}).code, 1);
  EXPECT_EQ(run({"nested-ratio", "--inner", fixture("nested2d_c1.json"), "--c1", fixture("nested2d_s.json"), "--c2",
                 fixture("nested2d_c2.json")})
                .code,
            1);
  EXPECT_EQ(run({"bogus"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  // Numeric failure: the preimage underflows.
  const CliRun r = run({"unflatten", "--polytope", fixture("square.json"), "--y", "1000,0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Overflow"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, Deterministic) {
  for (const char* cmd : {"estimate-lipschitz", "estimate-cells"}) {
    const std::vector<std::string> args{cmd, "--polytope", fixture("pentagon.json"), "--samples", "300", "--seed", "11"};
    const CliRun a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out) << cmd;
  }
  const CliRun c = run({"estimate-lipschitz", "--polytope", fixture("pentagon.json"), "--samples", "300", "--seed", "12"});
  EXPECT_NE(c.out, run({"estimate-lipschitz", "--polytope", fixture("pentagon.json"), "--samples", "300", "--seed",
                        "11"})
                       .out);
}

TEST(Cli, NestedRatio) {
  const CliRun r = run({"nested-ratio", "--inner", fixture("nested2d_s.json"), "--c1", fixture("nested2d_c1.json"), "--c2",
                     fixture("nested2d_c2.json"), "--samples", "500"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GE(r.json()["report"]["min_ratio"].get<double>(), 1.0 - 1e-12);
}

TEST(Cli, CsvOutput) {
  const std::string path = ::testing::TempDir() + "cells.csv";
  const CliRun r = run({"estimate-cells", "--polytope", fixture("square.json"), "--samples", "50", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 9u);
  EXPECT_EQ(lines[0].rfind("label,requested,", 0), 0u);
  EXPECT_EQ(lines[1].rfind("cell0,50,", 0), 0u);

  const std::string grid = ::testing::TempDir() + "grid.csv";
  ASSERT_EQ(run({"emit-grid", "--polytope", fixture("square.json"), "--resolution", "3", "--out", grid}).code, 0);
  std::ifstream g(grid);
  lines.clear();
  while (std::getline(g, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 10u);
  // Centre row: the barycenter flattens to the origin.
  std::vector<double> centre;
  std::stringstream row(lines[5]);
  for (std::string cell; std::getline(row, cell, ',');) centre.push_back(std::stod(cell));
  ASSERT_EQ(centre.size(), 4u);
  EXPECT_NEAR(centre[0], 0.5, 1e-15);
  EXPECT_NEAR(centre[1], 0.5, 1e-15);
  EXPECT_LE(std::hypot(centre[2], centre[3]), 1e-15);
}

TEST(Cli, EpsFromEnvironment) {
  // A square whose bottom edge carries an extra point 1e-8 below its midpoint:
  // a genuine vertex at the default tolerance, collinear at a coarser one.
  const std::string path = ::testing::TempDir() + "near_square.json";
  std::ofstream(path) << R"({"dimension": 2, "vertices": [[0, 0], [0.5, -1e-8], [1, 0], [1, 1], [0, 1]]})";
  const auto cells = [&] {
    const CliRun r = run({"subdivide", "--polytope", path});
    return r.code == 0 ? r.json()["cell_count"].get<int>() : -r.code;
  };
  ::unsetenv("HILBERT_EPS");
  EXPECT_EQ(cells(), 10);
  ::setenv("HILBERT_EPS", "1e-6", 1);
  EXPECT_EQ(cells(), 8);
  ::setenv("HILBERT_EPS", "not-a-number", 1);
  EXPECT_EQ(cells(), -1);
  ::setenv("HILBERT_EPS", "-1", 1);
  EXPECT_EQ(cells(), -1);
  ::unsetenv("HILBERT_EPS");
}
