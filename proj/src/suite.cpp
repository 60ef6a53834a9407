#include "curvtri/report.hpp"

#include <chrono>
#include <cmath>
#include <map>

namespace curvtri {

using nlohmann::json;

namespace {

bool selects_simplex(const SuiteConfig& cfg) {
  return cfg.all || std::ranges::find(cfg.inequalities, kSimplexEulerName) != cfg.inequalities.end();
}

std::vector<GeometryKind> geometries_for(const Inequality& ineq, const SuiteConfig& cfg) {
  if (cfg.geometry) return {*cfg.geometry};
  std::vector<GeometryKind> out;
  for (GeometryKind k : kAllGeometries) {
    if (ineq.claimed_in(k)) out.push_back(k);
  }
  return out;
}

}  // namespace

void check_suite_config(const SuiteConfig& cfg) {
  auto fail = [](const std::string& what) { throw GeometryError(ErrorCode::InvalidInput, what); };
  if (cfg.all && !cfg.inequalities.empty()) fail("--all and --inequality are exclusive");
  if (!cfg.all && cfg.inequalities.empty()) fail("select --all or at least one --inequality");
  if (cfg.samples < 1) fail("--samples must be positive");
  if (!(cfg.tolerance >= 0)) fail("--tolerance must be non-negative");
  for (const auto& name : cfg.inequalities) {
    if (name != kSimplexEulerName && !registry_builtin().find(name)) {
      throw GeometryError(ErrorCode::UnknownInequality, name);
    }
  }
  if (cfg.dimension) {
    if (!selects_simplex(cfg)) fail("--dimension requires simplex-euler");
    if (*cfg.dimension < 2) fail("--dimension must be at least 2");
  }
  if (selects_simplex(cfg) && !cfg.all && cfg.geometry == GeometryKind::Hyperbolic) {
    fail("simplex-euler has no hyperbolic variant");
  }
}

json to_json(const Triangle& t) {
  return {{"geometry", to_string(t.kind())}, {"a", t.a()}, {"b", t.b()}, {"c", t.c()}};
}

json to_json(const CounterexampleRecord& c) {
  return {{"inequality", c.inequality},
          {"geometry", to_string(c.kind)},
          {"triangle", to_json(c.triangle)},
          {"link", c.link},
          {"lhs", c.lhs},
          {"rhs", c.rhs},
          {"gap", c.gap},
          {"seed", c.seed},
          {"stream_index", c.stream_index},
          {"refined", c.refined}};
}

json to_json(const VerificationResult& r) {
  json links = json::array();
  for (const auto& l : r.links) {
    links.push_back({{"link", l.label},
                     {"min_gap", l.min_gap},
                     {"raw_gap_at_min", l.raw_gap_at_min},
                     {"most_equilateral_gap", l.most_equilateral_gap}});
  }
  json probes = json::array();
  for (const auto& p : r.probes) probes.push_back({{"side", p.side}, {"max_abs_gap", p.max_abs_gap}});
  json spread = json::array();
  for (const auto& p : r.spread_probes) spread.push_back({{"sides", p.sides}, {"min_gap", p.min_gap}});
  return {{"inequality", r.name},
          {"geometry", to_string(r.kind)},
          {"claimed", r.claimed},
          {"samples", r.samples},
          {"violations", r.violations},
          {"min_gap", r.min_gap},
          {"min_gap_spread", std::isnan(r.min_gap_spread) ? json(nullptr) : json(r.min_gap_spread)},
          {"most_equilateral_spread", r.most_equilateral_spread},
          {"links", links},
          {"equality_probes", probes},
          {"spread_probes", spread},
          {"pass", r.passed()},
          {"wall_time_s", r.wall_time_s}};
}

json to_json(const SimplexVerification& r) {
  json j = {{"inequality", kSimplexEulerName},
            {"geometry", to_string(r.kind)},
            {"dimension", r.dimension},
            {"samples", r.samples},
            {"violations", r.violations},
            {"min_gap", r.min_gap},
            {"equality_probe_gap", r.equality_probe_gap},
            {"pass", r.passed()},
            {"wall_time_s", r.wall_time_s}};
  if (r.kind == GeometryKind::Spherical) {
    j["projection_violations"] = r.projection_violations;
    j["min_projection_margin"] = r.min_projection_margin;
    j["min_projected_volume"] = r.min_projected_volume;
  }
  return j;
}

json to_json(const SuiteConfig& cfg) {
  json j = {{"all", cfg.all},
            {"inequalities", cfg.inequalities},
            {"seed", cfg.seed},
            {"samples", cfg.samples},
            {"tolerance", cfg.tolerance}};
  j["geometry"] = cfg.geometry ? json(to_string(*cfg.geometry)) : json(nullptr);
  j["dimension"] = cfg.dimension ? json(*cfg.dimension) : json(nullptr);
  return j;
}

json run_verification(const SuiteConfig& cfg) {
  check_suite_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  const Registry& reg = registry_builtin();

  std::vector<const Inequality*> selected;
  for (const auto& ineq : reg.entries()) {
    if (cfg.all || std::ranges::find(cfg.inequalities, ineq.name) != cfg.inequalities.end()) {
      selected.push_back(&ineq);
    }
  }

  // One batch per geometry, shared by every inequality.
  std::map<GeometryKind, std::vector<Triangle>> batches;
  auto batch_for = [&](GeometryKind kind) -> const std::vector<Triangle>& {
    auto it = batches.find(kind);
    if (it == batches.end()) {
      SamplerConfig sc = SamplerConfig::defaults(kind);
      sc.seed = cfg.seed;
      sc.count = cfg.samples;
      it = batches.emplace(kind, sample_batch(kind, sc)).first;
    }
    return it->second;
  };

  VerificationOptions vopts;
  vopts.floor = cfg.tolerance;
  bool pass = true;
  json results = json::array();
  json counterexamples = json::array();
  for (const Inequality* ineq : selected) {
    for (GeometryKind kind : geometries_for(*ineq, cfg)) {
      const VerificationResult r = verify_on(*ineq, kind, batch_for(kind), cfg.seed, vopts);
      pass = pass && r.passed();
      results.push_back(to_json(r));
      for (const auto& c : r.counterexamples) counterexamples.push_back(to_json(c));
    }
  }

  json simplex_results = json::array();
  if (selects_simplex(cfg)) {
    std::vector<GeometryKind> kinds = {GeometryKind::Euclidean, GeometryKind::Spherical};
    if (cfg.geometry && *cfg.geometry != GeometryKind::Hyperbolic) kinds = {*cfg.geometry};
    std::vector<int> dims = {2, 3, 4, 5};
    if (cfg.dimension) dims = {*cfg.dimension};
    for (GeometryKind kind : kinds) {
      for (int n : dims) {
        const SimplexVerification r =
            verify_simplex_euler(n, kind, cfg.seed, cfg.samples, cfg.tolerance);
        pass = pass && r.passed();
        simplex_results.push_back(to_json(r));
      }
    }
  }

  return {{"schema_version", kSchemaVersion},
          {"tool", "curvtri"},
          {"tool_version", kToolVersion},
          {"command", "verify"},
          {"config", to_json(cfg)},
          {"results", results},
          {"simplex_results", simplex_results},
          {"counterexamples", counterexamples},
          {"pass", pass},
          {"wall_time_s",
           std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
}

json strip_timing(json report) {
  if (report.is_object()) {
    report.erase("wall_time_s");
    for (auto& [key, value] : report.items()) value = strip_timing(value);
  } else if (report.is_array()) {
    for (auto& value : report) value = strip_timing(value);
  }
  return report;
}

}  // namespace curvtri
