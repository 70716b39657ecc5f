// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "wrep/cli/commands.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace wrep {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "wrep");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("wrep_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const auto p = (dir_ / name).string();
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

const char* kExampleProblem = R"({"N": 2, "d": 3, "weights": [0.7, 0.3], "fixed": {"1": [1, 0.6, 0.4]}})";
const char* kChiProblem = R"({"N": 2, "d": 3, "weights": [0.6, 0.4], "fixed": {"1": [1, 1, 0]}})";
const char* kSkewProblem = R"({"N": 2, "d": 3, "weights": [0.6, 0.4], "fixed": {"1": [0.8, 0.7, 0.5]}})";
const char* kUniformProblem = R"({"N": 2, "d": 3, "weights": [0.7, 0.3], "fixed": {"1": [0.6666666666666666, 0.6666666666666667, 0.6666666666666667]}})";

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::map<std::string, Polygon> polygons(const std::string& csv) {
  std::map<std::string, Polygon> m;
  const auto rows = csv_rows(csv);
  for (std::size_t i = 1; i < rows.size(); ++i) m[rows[i][1]].push_back({std::stod(rows[i][3]), std::stod(rows[i][4])});
  return m;
}

TEST_F(CliTest, ExitCodes) {
  const auto p = file("p.json", kExampleProblem);
  EXPECT_EQ(run({"check", "--problem", p, "--spectrum", "1,0.6,0.4"}).code, 0);
  const auto miss = run({"check", "--problem", p, "--spectrum", "0.6666666666666666,0.6666666666666667,0.6666666666666667"});
  EXPECT_EQ(miss.code, 1);
  EXPECT_NE(miss.out.find("A5:row4"), std::string::npos);

  EXPECT_EQ(run({"check", "--problem", file("bad.json", R"({"N": 2, "d": 3, "weights": [1], "extra": 1})"),
                 "--spectrum", "1,1,0"})
                .code,
            2);
  EXPECT_EQ(run({"gen", "sigma_w"}).code, 2);
  EXPECT_EQ(run({"gen", "nope", "--problem", p}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"check", "--problem", p, "--spectrum", "1,1"}).code, 2);
  EXPECT_EQ(run({"gen", "sigma_w", "--problem", file("missing_dir/none.json", "")}).code, 2);

  const auto d4 = file("d4.json", R"({"N": 2, "d": 4, "weights": [0.7, 0.3], "fixed": {"1": [1, 1, 0, 0]}})");
  EXPECT_EQ(run({"gen", "lambda_h", "--problem", d4}).code, 3);
  EXPECT_EQ(run({"figure", "fig3", "--problem", d4}).code, 3);
  const auto r3 = file("r3.json", R"({"N": 2, "d": 3, "weights": [0.5, 0.3, 0.2]})");
  EXPECT_EQ(run({"gen", "xi", "--problem", r3}).code, 3);
  EXPECT_EQ(run({"--version"}).code, 0);
}

TEST_F(CliTest, GenIsByteStableAndRoundTrips) {
  const auto p = file("p.json", kExampleProblem);
  for (const char* body : {"sigma_w", "lambda_h", "lambda_down", "xi", "sigma_w_lambda1"}) {
    const auto a = run({"gen", body, "--problem", p});
    const auto b = run({"gen", body, "--problem", p});
    ASSERT_EQ(a.code, 0) << body << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << body;
    const auto reparsed = hrep_json_text(hrep_from_json(parse_json(a.out, "HRep")));
    EXPECT_EQ(reparsed, a.out) << body;
    const auto path = (dir_ / (std::string(body) + ".json")).string();
    ASSERT_EQ(run({"gen", body, "--problem", p, "--out", path}).code, 0);
    EXPECT_EQ(read_text_file(path), a.out) << body;
  }
  const auto lam = run({"gen", "lambda_down", "--problem", p});
  EXPECT_EQ(hrep_from_json(parse_json(lam.out, "HRep")).rows.size(), 9u);
}

TEST_F(CliTest, GenCheckAgreesWithMembership) {
  const auto p = file("p.json", kExampleProblem);
  const auto g = run({"gen", "lambda_down", "--problem", p});
  ASSERT_EQ(g.code, 0);
  const auto hpath = file("lambda.json", g.out);
  const auto h = lambda_down_hrep(0.7, OccupationVector::make({1, 0.6, 0.4}, 2), 2, 3);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int members = 0;
  for (int i = 0; i < 1000; ++i) {
    const double a = 2.0 / 3.0 + u(rng) / 3.0, b = 0.5 + u(rng) / 2.0;
    const std::vector<double> x{a, b, 2 - a - b};
    const std::string text = format_double(x[0]) + "," + format_double(x[1]) + "," + format_double(x[2]);
    const bool expect = membership(h, x).member;
    members += expect;
    const auto r = run({"check", "--hrep", hpath, "--spectrum=" + text});
    ASSERT_EQ(r.code, expect ? 0 : 1) << text;
    const auto via_problem = run({"check", "--problem", p, "--body", "lambda_down", "--spectrum=" + text});
    ASSERT_EQ(via_problem.code, r.code) << text;
  }
  EXPECT_GT(members, 0);
  EXPECT_LT(members, 1000);
}

TEST_F(CliTest, SpectrumFileAndLattice) {
  const auto p = file("p.json", kExampleProblem);
  EXPECT_EQ(run({"check", "--problem", p, "--spectrum-file", file("s.json", R"({"spectrum": [1, 0.6, 0.4]})")}).code, 0);
  const auto f6 = file("f6.json", kSkewProblem);
  const auto lat = run({"check", "--problem", f6, "--lattice", "--spectrum", "0.5,1,0.5"});
  EXPECT_EQ(lat.code, 1);
  EXPECT_NE(lat.out.find("Eq33:k=1"), std::string::npos);
  EXPECT_EQ(run({"check", "--problem", f6, "--lattice", "--spectrum", "0.8,0.7,0.5"}).code, 0);
  EXPECT_EQ(run({"check", "--problem", p, "--spectrum", "1,0.6,0.4", "--spectrum-file", "x"}).code, 2);
}

TEST_F(CliTest, OrbitHullIsTheUnionForUniformSpectrum) {
  const auto r = run({"figure", "fig2", "--problem", file("u.json", kUniformProblem)});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(csv_rows(r.out).front(), (std::vector<std::string>{"figure", "body", "vertex", "lambda1", "lambda2"}));
  const auto polys = polygons(r.out);
  double pieces = 0;
  for (int i = 0; i < 6; ++i) pieces += std::abs(polygon_area(polys.at("lambda_orbit_" + std::to_string(i))));
  EXPECT_NEAR(std::abs(polygon_area(polys.at("lambda_orbit_hull"))), pieces, 1e-9);

  const auto r2 = run({"figure", "fig2", "--problem", file("p.json", kExampleProblem)});
  const auto polys2 = polygons(r2.out);
  double pieces2 = 0;
  for (int i = 0; i < 6; ++i) pieces2 += std::abs(polygon_area(polys2.at("lambda_orbit_" + std::to_string(i))));
  EXPECT_GT(std::abs(polygon_area(polys2.at("lambda_orbit_hull"))), pieces2 + 1e-6);
}

TEST_F(CliTest, DrawnBodiesNest) {
  for (const char* prob : {kExampleProblem, kSkewProblem}) {
    const auto r = run({"figure", "fig3", "--problem", file("p.json", prob)});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto polys = polygons(r.out);
    const std::vector<std::string> chain{"lambda", "xi", "sigma_w", "pauli"};
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      auto outer = polys.at(chain[i + 1]);
      if (polygon_area(outer) < 0) std::reverse(outer.begin(), outer.end());
      for (const auto& v : polys.at(chain[i])) {
        EXPECT_GE(inside_margin(outer, v), -1e-9) << chain[i] << " vertex outside " << chain[i + 1];
      }
    }
  }
}

TEST_F(CliTest, VertexOfFixedSpectrumBody) {
  const auto r = run({"figure", "fig6", "--problem", file("p.json", kSkewProblem)});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto polys = polygons(r.out);
  ASSERT_EQ(polys.at("vertex").size(), 1u);
  EXPECT_NEAR(polys.at("vertex")[0].x, 0.88, 1e-12);
  EXPECT_NEAR(polys.at("vertex")[0].y, 0.72, 1e-12);
  for (const auto& v : polys.at("sigma_w_lambda1")) EXPECT_LE(v.x, 0.88 + 1e-12);
}

TEST_F(CliTest, ScanColumns) {
  const std::vector<std::string> header{"param", "R_N", "lower_triv", "lower_refined", "upper_triv", "upper_refined",
                                        "crossing"};
  const auto h = run({"scan", "--kind", "hubbard", "--grid", "0:10:11", "--w", "0.75"});
  ASSERT_EQ(h.code, 0) << h.err;
  const auto rows = csv_rows(h.out);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[0], header);
  EXPECT_EQ(rows[1][6], "false");
  EXPECT_EQ(rows[11][6], "true");
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_NE(rows[i][1], "nan");

  const auto p = file("p.json", kExampleProblem);
  const auto w = run({"scan", "--kind", "w", "--grid", "0.5,0.75,1", "--problem", p});
  ASSERT_EQ(w.code, 0) << w.err;
  const auto wr = csv_rows(w.out);
  ASSERT_EQ(wr.size(), 4u);
  EXPECT_EQ(wr[0], header);
  EXPECT_EQ(wr[1][1], "nan");
  EXPECT_EQ(wr[3][3], wr[3][5]);
  EXPECT_EQ(run({"scan", "--kind", "w", "--grid", "0.2", "--problem", p}).code, 2);
  EXPECT_EQ(run({"scan", "--kind", "hubbard", "--grid", "0:1:2", "--sites", "6"}).code, 3);
}

TEST_F(CliTest, AuditChiExample) {
  const auto p = file("chi.json", kChiProblem);
  const auto r = run({"audit", "--problem", p, "--samples", "2000", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse_json(r.out, "audit");
  EXPECT_TRUE(j["clean"].get<bool>());
  EXPECT_GT(j["families"]["xi_paper"]["violations"].get<std::size_t>(), 0u);
  EXPECT_FALSE(j["families"]["xi_paper"]["gates_exit"].get<bool>());
  EXPECT_EQ(j["families"]["xi_validated"]["violations"].get<std::size_t>(), 0u);
  EXPECT_EQ(j["families"]["sigma_w"]["violations"].get<std::size_t>(), 0u);
  const auto again = run({"audit", "--problem", p, "--samples", "2000", "--seed", "5", "--workers", "3"});
  EXPECT_EQ(again.out, r.out);
}

}  // namespace
}  // namespace wrep
