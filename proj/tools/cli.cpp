#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"

#include "curvtri/geometry.hpp"
#include "curvtri/inequality.hpp"
#include "curvtri/oracle.hpp"
#include "curvtri/report.hpp"
#include "curvtri/simplex.hpp"

namespace curvtri::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kGeometryNames = {"euclidean", "spherical", "hyperbolic"};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GeometryKind geometry_of(const std::string& name) {
  if (auto k = parse_geometry(name)) return *k;
  throw UsageError("unknown geometry " + name);
}

std::string csv_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json triangle_record(const Triangle& t) {
  const GeometryKind k = t.kind();
  const auto big = circumradius_functional(t);
  const auto small = inradius_functional(t);
  const JPair jp = j_invariants(t);
  return {{"geometry", to_string(k)},
          {"a", t.a()},
          {"b", t.b()},
          {"c", t.c()},
          {"s", {s_func(k, t.a()), s_func(k, t.b()), s_func(k, t.c())}},
          {"rho_R", big.value},
          {"rho_r", small.value},
          {"R", big.radius()},
          {"r", small.radius()},
          {"J", jp.j},
          {"Jbar", jp.jbar}};
}

json vertices_json(const Eigen::MatrixXd& v) {
  json out = json::array();
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    json col = json::array();
    for (Eigen::Index i = 0; i < v.rows(); ++i) col.push_back(v(i, j));
    out.push_back(col);
  }
  return out;
}

// Buffered output: nothing is written unless the command completes.
struct Output {
  std::string path;
  std::ostream& fallback;

  void write(const std::string& text) const {
    if (path.empty()) {
      fallback << text;
      return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot open " + path);
    f << text;
  }
};

int cmd_compute(const std::string& geometry, const std::vector<double>& sides, const Output& out) {
  const Triangle t = validate_triangle(geometry_of(geometry), sides[0], sides[1], sides[2]);
  out.write(triangle_record(t).dump(2) + "\n");
  return kExitPass;
}

int cmd_sample(const std::string& geometry, std::int64_t count, std::uint64_t seed,
               const std::string& format, const Output& out) {
  const GeometryKind kind = geometry_of(geometry);
  SamplerConfig cfg = SamplerConfig::defaults(kind);
  cfg.seed = seed;
  cfg.count = count;
  check_config(kind, cfg);
  std::ostringstream os;
  json triangles = json::array();
  if (format == "csv") os << "stream_index,a,b,c,rho_R,rho_r\n";
  for (std::int64_t i = 0; i < count; ++i) {
    const EmbeddedTriangle e = sample_triangle(kind, cfg, static_cast<std::uint64_t>(i));
    json rec = triangle_record(e.sides);
    if (format == "csv") {
      os << i << ',' << csv_number(e.sides.a()) << ',' << csv_number(e.sides.b()) << ','
         << csv_number(e.sides.c()) << ',' << csv_number(rec["rho_R"].get<double>()) << ','
         << csv_number(rec["rho_r"].get<double>()) << '\n';
    } else {
      rec["stream_index"] = i;
      rec["vertices"] = vertices_json(e.vertices);
      triangles.push_back(rec);
    }
  }
  if (format != "csv") {
    json report = {{"schema_version", kSchemaVersion}, {"tool_version", kToolVersion},
                   {"command", "sample"},              {"geometry", geometry},
                   {"seed", seed},                     {"triangles", triangles}};
    os << report.dump(2) << '\n';
  }
  out.write(os.str());
  return kExitPass;
}

std::string verify_csv(const json& report) {
  std::ostringstream os;
  os << "inequality,geometry,dimension,claimed,samples,violations,min_gap,pass\n";
  for (const auto& r : report["results"]) {
    os << r["inequality"].get<std::string>() << ',' << r["geometry"].get<std::string>() << ",,"
       << r["claimed"].get<bool>() << ',' << r["samples"].get<std::int64_t>() << ','
       << r["violations"].get<std::int64_t>() << ',' << csv_number(r["min_gap"].get<double>())
       << ',' << r["pass"].get<bool>() << '\n';
  }
  for (const auto& r : report["simplex_results"]) {
    os << r["inequality"].get<std::string>() << ',' << r["geometry"].get<std::string>() << ','
       << r["dimension"].get<int>() << ",1," << r["samples"].get<std::int64_t>() << ','
       << r["violations"].get<std::int64_t>() << ',' << csv_number(r["min_gap"].get<double>())
       << ',' << r["pass"].get<bool>() << '\n';
  }
  return os.str();
}

int cmd_verify(const SuiteConfig& cfg, const std::string& format, const Output& out) {
  const json report = run_verification(cfg);
  out.write(format == "csv" ? verify_csv(report) : report.dump(2) + "\n");
  return report["pass"].get<bool>() ? kExitPass : kExitViolation;
}

int cmd_search(const std::string& name, const std::string& geometry, std::int64_t budget,
               std::uint64_t seed, bool expect_violation, double tolerance, const Output& out) {
  const GeometryKind kind = geometry_of(geometry);
  registry_builtin().at(name);
  if (budget < 1) throw UsageError("--budget must be positive");
  SamplerConfig cfg = SamplerConfig::defaults(kind);
  cfg.seed = seed;
  const SearchResult res = search_counterexample(name, kind, budget, cfg, tolerance);
  const bool found = res.counterexample.has_value();
  const bool pass = found == expect_violation;
  json report = {{"schema_version", kSchemaVersion},
                 {"tool", "curvtri"},
                 {"tool_version", kToolVersion},
                 {"command", "search"},
                 {"config",
                  {{"inequality", name},
                   {"geometry", geometry},
                   {"budget", budget},
                   {"seed", seed},
                   {"expect_violation", expect_violation},
                   {"tolerance", tolerance}}},
                 {"found", found},
                 {"evaluations", res.evaluations},
                 {"best_gap", res.best_gap},
                 {"counterexamples", json::array()},
                 {"pass", pass}};
  if (found) report["counterexamples"].push_back(to_json(*res.counterexample));
  out.write(report.dump(2) + "\n");
  return pass ? kExitPass : kExitViolation;
}

int cmd_simplex(int n, const std::string& geometry, std::int64_t count, std::uint64_t seed,
                const Output& out) {
  const GeometryKind kind = geometry_of(geometry);
  if (kind == GeometryKind::Hyperbolic) throw UsageError("simplex supports euclidean and spherical");
  if (n < 2) throw UsageError("--dimension must be at least 2");
  json samples = json::array();
  bool pass = true;
  for (std::int64_t i = 0; i < count; ++i) {
    const auto stream = static_cast<std::uint64_t>(i);
    json rec = {{"stream_index", i}};
    if (kind == GeometryKind::Euclidean) {
      const auto s = sample_euclidean_simplex(n, seed, stream);
      const double big = euclidean_circumradius(s).radius;
      const double small = euclidean_inradius(s).radius;
      const auto e = euclidean_euler_check(s);
      rec.update({{"R", big}, {"r", small}, {"ratio", e.lhs}, {"bound", n}, {"holds", e.holds}});
      pass = pass && e.holds;
    } else {
      const auto s = sample_spherical_simplex(n, seed, stream);
      const double big = spherical_circumradius(s).radius;
      const double small = spherical_inradius(s).radius;
      const auto e = transfer_check(euler_edge_bound, s);
      const double projected = euclidean_inradius(gnomonic_project(s)).radius;
      rec.update({{"R", big},
                  {"r", small},
                  {"tan_R", std::tan(big)},
                  {"tan_r", std::tan(small)},
                  {"ratio", e.lhs},
                  {"bound", n},
                  {"holds", e.holds},
                  {"projected_inradius", projected}});
      pass = pass && e.holds && projected - std::tan(small) >= -1e-10;
    }
    samples.push_back(rec);
  }
  json report = {{"schema_version", kSchemaVersion}, {"tool_version", kToolVersion},
                 {"command", "simplex"},             {"geometry", geometry},
                 {"dimension", n},                   {"seed", seed},
                 {"samples", samples},               {"pass", pass}};
  out.write(report.dump(2) + "\n");
  return pass ? kExitPass : kExitViolation;
}

int cmd_plotdata(const std::string& name, const std::string& geometry, std::int64_t steps,
                 const Output& out) {
  const GeometryKind kind = geometry_of(geometry);
  const Inequality& ineq = registry_builtin().at(name);
  if (steps < 2) throw UsageError("--samples must be at least 2 for plotdata");
  std::ostringstream os;
  os << "lambda,lhs,rhs,gap\n";
  std::vector<double> omitted;
  for (std::int64_t i = 1; i < steps; ++i) {
    const double lambda = 2.0 * static_cast<double>(i) / static_cast<double>(steps);
    if (triangle_violation(kind, 1.0, 1.0, lambda)) {
      omitted.push_back(lambda);
      continue;
    }
    const auto evals = ineq.evaluate(validate_triangle(kind, 1.0, 1.0, lambda));
    // Chains report their tightest link.
    const auto& e = *std::ranges::min_element(
        evals, {}, [](const InequalityEvaluation& x) { return x.normalized_gap(); });
    os << csv_number(lambda) << ',' << csv_number(e.lhs) << ',' << csv_number(e.rhs) << ','
       << csv_number(e.gap) << '\n';
  }
  if (!omitted.empty()) {
    os << "# omitted " << omitted.size() << " rows outside the " << geometry << " domain:";
    for (double l : omitted) os << ' ' << csv_number(l);
    os << '\n';
  }
  out.write(os.str());
  return kExitPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constant-curvature triangle and simplex inequality verifier", "curvtri"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string geometry;
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 42;
  std::int64_t samples = 10000;
  std::vector<std::string> inequalities;
  std::string inequality;
  double tolerance = kHoldsFloor;
  auto geometry_check = CLI::IsMember(kGeometryNames);

  auto* compute = app.add_subcommand("compute", "Radii, s-values and J invariants of one triangle");
  std::vector<double> sides;
  compute->add_option("--geometry", geometry)->required()->check(geometry_check);
  compute->add_option("sides", sides, "a b c")->expected(3)->required();
  compute->add_option("--out", out_path);

  auto* sample = app.add_subcommand("sample", "Draw random triangles");
  std::int64_t sample_count = 10;
  sample->add_option("--geometry", geometry)->required()->check(geometry_check);
  sample->add_option("--samples", sample_count)->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed);
  sample->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  sample->add_option("--out", out_path);

  auto* verify = app.add_subcommand("verify", "Verify registered inequalities on random samples");
  bool all = false;
  std::optional<int> dimension;
  verify->add_flag("--all", all);
  verify->add_option("--inequality", inequalities);
  verify->add_option("--geometry", geometry)->check(geometry_check);
  verify->add_option("--samples", samples)->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed);
  verify->add_option("--dimension", dimension);
  verify->add_option("--tolerance", tolerance)->check(CLI::NonNegativeNumber);
  verify->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", out_path);

  auto* search = app.add_subcommand("search", "Search for a counterexample");
  std::int64_t budget = 100000;
  bool expect_violation = false;
  search->add_option("--inequality", inequality)->required();
  search->add_option("--geometry", geometry)->required()->check(geometry_check);
  search->add_option("--budget", budget)->check(CLI::PositiveNumber);
  search->add_option("--seed", seed);
  search->add_flag("--expect-violation", expect_violation);
  search->add_option("--tolerance", tolerance)->check(CLI::NonNegativeNumber);
  search->add_option("--out", out_path);

  auto* simplex = app.add_subcommand("simplex", "Euler inequality on random n-simplices");
  int simplex_dim = 3;
  std::string simplex_geometry = "spherical";
  std::int64_t simplex_count = 10;
  simplex->add_option("--dimension", simplex_dim)->required();
  simplex->add_option("--geometry", simplex_geometry)->check(geometry_check);
  simplex->add_option("--samples", simplex_count)->check(CLI::PositiveNumber);
  simplex->add_option("--seed", seed);
  simplex->add_option("--out", out_path);

  auto* plotdata = app.add_subcommand("plotdata", "Gap along the family a = b = 1, c = lambda");
  std::int64_t steps = 200;
  plotdata->add_option("--inequality", inequality)->required();
  plotdata->add_option("--geometry", geometry)->required()->check(geometry_check);
  plotdata->add_option("--samples", steps, "number of lambda steps over (0, 2)");
  plotdata->add_option("--out", out_path);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  const Output output{out_path, out};
  try {
    if (*compute) return cmd_compute(geometry, sides, output);
    if (*sample) return cmd_sample(geometry, sample_count, seed, format, output);
    if (*verify) {
      SuiteConfig cfg;
      cfg.all = all;
      cfg.inequalities = inequalities;
      if (!geometry.empty()) cfg.geometry = geometry_of(geometry);
      cfg.seed = seed;
      cfg.samples = samples;
      cfg.dimension = dimension;
      cfg.tolerance = tolerance;
      return cmd_verify(cfg, format, output);
    }
    if (*search) {
      return cmd_search(inequality, geometry, budget, seed, expect_violation, tolerance, output);
    }
    if (*simplex) return cmd_simplex(simplex_dim, simplex_geometry, simplex_count, seed, output);
    if (*plotdata) return cmd_plotdata(inequality, geometry, steps, output);
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace curvtri::cli
