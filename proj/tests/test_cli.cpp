#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = curvtri::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Compute, RightTriangle) {
  const auto r = run({"compute", "--geometry", "euclidean", "3", "4", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["R"].get<double>(), 2.5, 1e-14);
  EXPECT_NEAR(j["r"].get<double>(), 1.0, 1e-14);
  for (const char* key : {"s", "rho_R", "rho_r", "J", "Jbar"}) EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Compute, OctantTriangle) {
  const auto r = run({"compute", "--geometry", "spherical", "1.5707963", "1.5707963", "1.5707963"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["rho_R"].get<double>(), 1.4142136, 1e-6);
  EXPECT_NEAR(j["rho_r"].get<double>(), 0.7071068, 1e-6);
}

TEST(Compute, InvalidTriangleExitsTwo) {
  const auto r = run({"compute", "--geometry", "euclidean", "1", "1", "3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("TriangleInequalityViolated"), std::string::npos);
}

TEST(Usage, MalformedFlagsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"compute", "--geometry", "flat", "1", "1", "1"}).code, 2);
  EXPECT_EQ(run({"compute", "--geometry", "euclidean", "1", "1"}).code, 2);
  EXPECT_EQ(run({"verify", "--samples", "ten", "--all"}).code, 2);
  EXPECT_EQ(run({"search", "--geometry", "hyperbolic"}).code, 2);
}

TEST(Usage, InconsistentVerifyConfigExitsTwo) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"verify"},
           {"verify", "--all", "--inequality", "euler"},
           {"verify", "--inequality", "nonexistent"},
           {"verify", "--inequality", "euler", "--dimension", "3"},
           {"verify", "--inequality", "simplex-euler", "--dimension", "1"},
           {"verify", "--inequality", "simplex-euler", "--geometry", "hyperbolic"}}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 2) << args.back();
    EXPECT_TRUE(r.out.empty());
  }
}

TEST(Usage, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Sample, JsonAndCsv) {
  const auto j = run({"sample", "--geometry", "hyperbolic", "--samples", "5", "--seed", "3"});
  ASSERT_EQ(j.code, 0) << j.err;
  const json report = json::parse(j.out);
  EXPECT_EQ(report["schema_version"], 1);
  ASSERT_EQ(report["triangles"].size(), 5u);
  EXPECT_EQ(report["triangles"][0]["vertices"].size(), 3u);

  const auto c = run({"sample", "--geometry", "spherical", "--samples", "4", "--format", "csv"});
  ASSERT_EQ(c.code, 0);
  const auto rows = lines(c.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], "stream_index,a,b,c,rho_R,rho_r");
}

TEST(Verify, ChainPerLinkGaps) {
  const auto r = run({"verify", "--inequality", "eq4-spherical-chain", "--samples", "1000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j["results"].size(), 2u);
  for (const auto& res : j["results"]) {
    ASSERT_EQ(res["links"].size(), 4u);
    for (const auto& link : res["links"]) EXPECT_GE(link["min_gap"].get<double>(), 0.0);
  }
}

TEST(Verify, SimplexDimensionFour) {
  const auto r = run({"verify", "--inequality", "simplex-euler", "--dimension", "4", "--samples",
                      "500"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j["simplex_results"].size(), 2u);
  for (const auto& res : j["simplex_results"]) {
    EXPECT_EQ(res["dimension"], 4);
    EXPECT_EQ(res["violations"], 0);
  }
}

TEST(Verify, UnclaimedGeometryIsReportedButNotFailed) {
  const auto r = run({"verify", "--inequality", "eq4-spherical-chain", "--geometry", "hyperbolic",
                      "--samples", "2000"});
  EXPECT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_FALSE(j["results"][0]["claimed"].get<bool>());
  EXPECT_GT(j["results"][0]["violations"].get<int>(), 0);
  EXPECT_FALSE(j["counterexamples"].empty());
}

TEST(Verify, CsvFormat) {
  const auto r = run({"verify", "--inequality", "euler", "--samples", "100", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], "inequality,geometry,dimension,claimed,samples,violations,min_gap,pass");
}

TEST(Verify, DeterministicModuloTiming) {
  const std::vector<std::string> args = {"verify", "--all", "--samples", "300", "--seed", "42"};
  json a = json::parse(run(args).out);
  json b = json::parse(run(args).out);
  EXPECT_NE(a.dump().find("wall_time_s"), std::string::npos);
  auto strip = [](json j) {
    std::function<void(json&)> go = [&](json& x) {
      if (x.is_object()) {
        x.erase("wall_time_s");
        for (auto& [k, v] : x.items()) go(v);
      } else if (x.is_array()) {
        for (auto& v : x) go(v);
      }
    };
    go(j);
    return j.dump();
  };
  EXPECT_EQ(strip(a), strip(b));
}

TEST(Verify, WorkerCountDoesNotChangeReport) {
  const std::vector<std::string> args = {"verify", "--all", "--samples", "200", "--seed", "9"};
  auto stripped = [&](const char* threads) {
    ::setenv("CURVTRI_THREADS", threads, 1);
    json j = json::parse(run(args).out);
    ::unsetenv("CURVTRI_THREADS");
    j.erase("wall_time_s");
    for (auto* list : {&j["results"], &j["simplex_results"]}) {
      for (auto& r : *list) r.erase("wall_time_s");
    }
    return j.dump();
  };
  EXPECT_EQ(stripped("1"), stripped("4"));
}

TEST(Verify, WritesToOutPath) {
  const auto path = std::filesystem::temp_directory_path() / "curvtri_cli_test_report.json";
  std::filesystem::remove(path);
  const auto r = run({"verify", "--inequality", "euler", "--samples", "50", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  EXPECT_EQ(json::parse(f)["pass"], true);
  std::filesystem::remove(path);
}

TEST(Verify, NoReportOnUsageError) {
  const auto path = std::filesystem::temp_directory_path() / "curvtri_cli_test_missing.json";
  std::filesystem::remove(path);
  EXPECT_EQ(run({"verify", "--inequality", "bogus", "--out", path.string()}).code, 2);
  EXPECT_FALSE(std::filesystem::exists(path));
}

TEST(Search, HyperbolicChainExpectedViolation) {
  const auto r = run({"search", "--inequality", "eq4-spherical-chain", "--geometry", "hyperbolic",
                      "--expect-violation"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["found"].get<bool>());
  EXPECT_LT(j["counterexamples"][0]["gap"].get<double>(), 0.0);
}

TEST(Search, EulerSphericalNotFound) {
  const auto r = run({"search", "--inequality", "euler", "--geometry", "spherical", "--budget",
                      "10000"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(json::parse(r.out)["found"].get<bool>());
  EXPECT_EQ(run({"search", "--inequality", "euler", "--geometry", "spherical", "--budget", "2000",
                 "--expect-violation"})
                .code,
            1);
}

TEST(Simplex, PerSampleRecords) {
  const auto r = run({"simplex", "--dimension", "3", "--samples", "20"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["geometry"], "spherical");
  ASSERT_EQ(j["samples"].size(), 20u);
  for (const auto& s : j["samples"]) EXPECT_TRUE(s["holds"].get<bool>());
  EXPECT_EQ(run({"simplex", "--dimension", "3", "--geometry", "hyperbolic"}).code, 2);
}

TEST(Plotdata, EulerSphericalSweep) {
  const auto r = run({"plotdata", "--inequality", "euler", "--geometry", "spherical", "--samples",
                      "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows[0], "lambda,lhs,rhs,gap");
  double gap_near_one = -1, gap_far = -1;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].starts_with("#")) continue;
    double lambda, lhs, rhs, gap;
    ASSERT_EQ(std::sscanf(rows[i].c_str(), "%lf,%lf,%lf,%lf", &lambda, &lhs, &rhs, &gap), 4);
    EXPECT_GE(gap, 0);
    if (lambda == 1.0) gap_near_one = gap;
    if (std::abs(lambda - 0.5) < 1e-12) gap_far = gap;
  }
  EXPECT_GE(gap_near_one, 0);
  EXPECT_LE(gap_near_one, 1e-10);
  EXPECT_GT(gap_far, 1e-3);
}

TEST(Plotdata, OmittedRowsAreNoted) {
  const auto r = run({"plotdata", "--inequality", "euler", "--geometry", "hyperbolic", "--samples",
                      "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  EXPECT_EQ(rows[0], "lambda,lhs,rhs,gap");
  EXPECT_TRUE(rows.back().starts_with("# omitted")) << rows.back();
}
