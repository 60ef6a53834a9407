#include "curvtri/inequality.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "curvtri/parallel.hpp"

namespace curvtri {

namespace {

double scale_of(double lhs, double rhs) {
  return std::max({std::abs(lhs), std::abs(rhs), std::numeric_limits<double>::min()});
}

double relative_spread(const Triangle& t) {
  const auto [lo, hi] = std::ranges::minmax(t.sides());
  return (hi - lo) / hi;
}

bool need_class(GeometryKind kind, Monotonicity m) {
  if (m == Monotonicity::Constant) return true;
  return kind == GeometryKind::Spherical ? m == Monotonicity::DecreasingOnM
                                         : m == Monotonicity::IncreasingOnM;
}

}  // namespace

std::string_view to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::DecreasingOnM: return "decreasing";
    case Monotonicity::IncreasingOnM: return "increasing";
    case Monotonicity::Constant: return "constant";
    case Monotonicity::Neither: return "neither";
  }
  return "neither";
}

double InequalityEvaluation::normalized_gap() const { return gap / scale_of(lhs, rhs); }

InequalityEvaluation make_evaluation(double lhs, double rhs, std::optional<Triangle> t,
                                     double floor) {
  const double gap = lhs - rhs;
  const bool holds = std::isfinite(gap) && gap >= -floor * scale_of(lhs, rhs);
  return {lhs, rhs, gap, holds, std::move(t)};
}

Monotonicity classify_monotonicity(const RadiusExpr& f, int degree,
                                   const MonotonicityOptions& opts) {
  if (opts.grid_size < 64) {
    throw GeometryError(ErrorCode::InvalidInput, "monotonicity grid needs at least 64 points");
  }
  const int n = opts.grid_size;
  auto profile = [&](double m) {
    std::vector<double> h(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double x = m * std::pow(opts.epsilon, 1.0 - static_cast<double>(i) / (n - 1));
      h[static_cast<std::size_t>(i)] = f(2 * m * m / x, x);
      if (!std::isfinite(h[static_cast<std::size_t>(i)])) {
        throw GeometryError(ErrorCode::EvaluationError, "non-finite f on the monotonicity grid");
      }
    }
    return h;
  };

  const std::vector<double> unit = profile(1.0);
  std::optional<Monotonicity> result;
  for (double m : opts.scales) {
    const std::vector<double> h = profile(m);
    // Homogeneity: the profile at M is M^n times the profile at 1.
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double expected = std::pow(m, degree) * unit[i];
      if (std::abs(h[i] - expected) > 1e-9 * std::max(std::abs(expected), 1e-300)) {
        throw GeometryError(ErrorCode::EvaluationError, "f is not homogeneous of the stated degree");
      }
    }
    bool up = false, down = false;
    for (std::size_t i = 0; i + 1 < h.size(); ++i) {
      const double d = h[i + 1] - h[i];
      const double tol = 1e-12 * std::max(std::abs(h[i]), std::abs(h[i + 1]));
      up |= d > tol;
      down |= d < -tol;
    }
    const Monotonicity cls = up && down ? Monotonicity::Neither
                             : down     ? Monotonicity::DecreasingOnM
                             : up       ? Monotonicity::IncreasingOnM
                                        : Monotonicity::Constant;
    if (result && *result != cls) return Monotonicity::Neither;
    result = cls;
  }
  return result.value_or(Monotonicity::Neither);
}

InequalityEvaluation evaluate_transported(const HomogeneousPair& p, const Triangle& t,
                                          double floor) {
  const GeometryKind k = t.kind();
  const double sa = half_chord(k, t.a()), sb = half_chord(k, t.b()), sc = half_chord(k, t.c());
  const double lhs = p.f(circumradius_value(k, t.a(), t.b(), t.c()),
                         inradius_value(k, t.a(), t.b(), t.c()));
  const double base = (sa + sb + sc) / half_chord(k, t.a() + t.b() + t.c());
  const double rhs = std::ldexp(p.g(sa, sb, sc), p.degree) * std::exp(0.5 * p.degree * std::log(base));
  return make_evaluation(lhs, rhs, t, floor);
}

InequalityEvaluation TransportedInequality::operator()(const Triangle& t, double floor) const {
  if (t.kind() != kind_) {
    throw GeometryError(ErrorCode::InvalidInput, "triangle geometry differs from the transport target");
  }
  return evaluate_transported(pair_, t, floor);
}

TransportedInequality generalize(const HomogeneousPair& p, GeometryKind kind,
                                 const MonotonicityOptions& opts) {
  if (kind == GeometryKind::Euclidean) {
    throw GeometryError(ErrorCode::TheoremPreconditionError,
                        p.name + ": transport targets spherical or hyperbolic geometry");
  }
  const Monotonicity cls = classify_monotonicity(p.f, p.degree, opts);
  if (!need_class(kind, cls)) {
    throw GeometryError(ErrorCode::TheoremPreconditionError,
                        p.name + ": f(2M^2/x, x) is " + std::string(to_string(cls)) + ", " +
                            std::string(to_string(kind)) + " transport needs " +
                            (kind == GeometryKind::Spherical ? "decreasing" : "increasing"));
  }
  return TransportedInequality(p, kind, cls);
}

std::vector<InequalityEvaluation> evaluate_chain(std::span<const ChainTerm> chain, const Triangle& t,
                                                 double floor) {
  std::vector<InequalityEvaluation> out;
  if (chain.size() < 2) return out;
  out.reserve(chain.size() - 1);
  double prev = chain[0].value(t);
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const double next = chain[i].value(t);
    out.push_back(make_evaluation(prev, next, t, floor));
    prev = next;
  }
  return out;
}

bool Inequality::claimed_in(GeometryKind kind) const {
  return std::ranges::find(claimed, kind) != claimed.end();
}

std::vector<std::string> Inequality::link_labels() const {
  if (pair) return {name};
  std::vector<std::string> labels;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    labels.push_back(chain[i].label + " >= " + chain[i + 1].label);
  }
  return labels;
}

std::vector<InequalityEvaluation> Inequality::evaluate(const Triangle& t, double floor) const {
  if (pair) return {evaluate_transported(*pair, t, floor)};
  return evaluate_chain(chain, t, floor);
}

std::vector<InequalityEvaluation> equilateral_probe(const Inequality& ineq, GeometryKind kind,
                                                    double side, double floor) {
  return ineq.evaluate(validate_triangle(kind, side, side, side), floor);
}

std::vector<Triangle> sample_batch(GeometryKind kind, const SamplerConfig& cfg) {
  check_config(kind, cfg);
  std::vector<std::optional<Triangle>> slots(static_cast<std::size_t>(cfg.count));
  parallel_for(cfg.count, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      slots[static_cast<std::size_t>(i)] =
          sample_triangle(kind, cfg, static_cast<std::uint64_t>(i)).sides;
    }
  });
  std::vector<Triangle> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(*s);
  return out;
}

VerificationResult verify_on(const Inequality& ineq, GeometryKind kind,
                             std::span<const Triangle> triangles, std::uint64_t seed,
                             const VerificationOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t links = ineq.link_count();
  const auto labels = ineq.link_labels();

  VerificationResult res{.name = ineq.name,
                         .kind = kind,
                         .claimed = ineq.claimed_in(kind),
                         .min_gap = inf,
                         .most_equilateral_spread = inf,
                         .min_gap_spread = inf};
  for (std::size_t l = 0; l < links; ++l) res.links.push_back({labels[l], inf, 0, 0});

  for (std::size_t i = 0; i < triangles.size(); ++i) {
    const Triangle& t = triangles[i];
    if (t.kind() != kind) throw GeometryError(ErrorCode::InvalidInput, "mixed geometries in batch");
    const auto evals = ineq.evaluate(t, opts.floor);
    ++res.samples;

    const double spread = relative_spread(t);
    const bool most_equilateral = spread < res.most_equilateral_spread;
    if (most_equilateral) res.most_equilateral_spread = spread;

    bool violated = false;
    std::size_t worst = 0;
    for (std::size_t l = 0; l < links; ++l) {
      const double g = evals[l].normalized_gap();
      if (!(g >= res.links[l].min_gap)) {
        res.links[l].min_gap = g;
        res.links[l].raw_gap_at_min = evals[l].gap;
      }
      if (most_equilateral) res.links[l].most_equilateral_gap = g;
      res.min_gap = std::min(res.min_gap, g);
      if (spread >= opts.spread_threshold) res.min_gap_spread = std::min(res.min_gap_spread, g);
      if (!evals[l].holds) violated = true;
      if (g < evals[worst].normalized_gap()) worst = l;
    }
    if (violated) {
      ++res.violations;
      if (res.counterexamples.size() < opts.max_counterexamples) {
        const auto& e = evals[worst];
        res.counterexamples.push_back({ineq.name, kind, t, worst, e.lhs, e.rhs, e.gap, seed,
                                       static_cast<std::uint64_t>(i), false});
      }
    }
  }
  if (res.min_gap_spread == inf) res.min_gap_spread = std::numeric_limits<double>::quiet_NaN();

  for (double side : opts.probe_scales) {
    if (triangle_violation(kind, side, side, side)) continue;
    double worst = 0;
    for (const auto& e : equilateral_probe(ineq, kind, side, opts.floor)) {
      worst = std::max(worst, std::abs(e.normalized_gap()));
    }
    res.probes.push_back({side, worst});
  }
  for (double side : opts.probe_scales) {
    for (const auto& shape : opts.spread_shapes) {
      const std::array<double, 3> sides = {side * shape[0], side * shape[1], side * shape[2]};
      if (triangle_violation(kind, sides[0], sides[1], sides[2])) continue;
      double least = inf;
      for (const auto& e : ineq.evaluate(validate_triangle(kind, sides[0], sides[1], sides[2]),
                                         opts.floor)) {
        least = std::min(least, e.normalized_gap());
      }
      res.spread_probes.push_back({side, sides, least});
    }
  }
  res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

VerificationResult verify_inequality(std::string_view name, GeometryKind kind,
                                     const SamplerConfig& cfg, const VerificationOptions& opts) {
  const Inequality& ineq = registry_builtin().at(name);
  const auto start = std::chrono::steady_clock::now();
  const auto batch = sample_batch(kind, cfg);
  VerificationResult res = verify_on(ineq, kind, batch, cfg.seed, opts);
  res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

SearchResult search_counterexample(std::string_view name, GeometryKind kind, std::int64_t budget,
                                   const SamplerConfig& cfg, double floor) {
  const Inequality& ineq = registry_builtin().at(name);
  check_config(kind, cfg);
  SearchResult out{std::nullopt, 0, std::numeric_limits<double>::infinity()};

  struct Scored {
    double score;
    std::size_t link;
    bool violated;
  };
  auto score = [&](const Triangle& t) {
    ++out.evaluations;
    const auto evals = ineq.evaluate(t, floor);
    Scored s{std::numeric_limits<double>::infinity(), 0, false};
    for (std::size_t l = 0; l < evals.size(); ++l) {
      const double g = evals[l].normalized_gap();
      if (g < s.score || std::isnan(g)) s = {g, l, false};
      if (!evals[l].holds) s.violated = true;
    }
    return s;
  };
  // Re-evaluates from the raw sides so a record is never produced from stale state.
  auto confirm = [&](const std::array<double, 3>& sides, std::uint64_t stream,
                     bool refined) -> std::optional<CounterexampleRecord> {
    const Triangle t = validate_triangle(kind, sides[0], sides[1], sides[2]);
    const auto evals = ineq.evaluate(t, floor);
    for (std::size_t l = 0; l < evals.size(); ++l) {
      if (!evals[l].holds) {
        return CounterexampleRecord{ineq.name, kind, t, l, evals[l].lhs, evals[l].rhs,
                                    evals[l].gap, cfg.seed, stream, refined};
      }
    }
    return std::nullopt;
  };

  const std::int64_t random_budget = std::max<std::int64_t>(1, budget / 2);
  std::optional<Triangle> best;
  std::uint64_t best_stream = 0;
  for (std::int64_t i = 0; i < random_budget && out.evaluations < budget; ++i) {
    const auto stream = static_cast<std::uint64_t>(i);
    const Triangle t = sample_triangle(kind, cfg, stream).sides;
    const Scored s = score(t);
    if (s.violated) {
      if (auto rec = confirm(t.sides(), stream, false)) {
        out.counterexample = rec;
        out.best_gap = s.score;
        return out;
      }
    }
    if (s.score < out.best_gap) {
      out.best_gap = s.score;
      best = t;
      best_stream = stream;
    }
  }
  if (!best) return out;

  // Coordinate descent on (a, b, c).
  std::array<double, 3> x = best->sides();
  double step = 0.1 * std::ranges::max(x);
  while (out.evaluations < budget && step > 1e-12) {
    bool improved = false;
    for (int k = 0; k < 3 && out.evaluations < budget; ++k) {
      for (double dir : {1.0, -1.0}) {
        std::array<double, 3> y = x;
        y[static_cast<std::size_t>(k)] += dir * step;
        if (triangle_violation(kind, y[0], y[1], y[2])) continue;
        const Triangle t = validate_triangle(kind, y[0], y[1], y[2]);
        const Scored s = score(t);
        if (s.violated) {
          if (auto rec = confirm(y, best_stream, true)) {
            out.counterexample = rec;
            out.best_gap = s.score;
            return out;
          }
        }
        if (s.score < out.best_gap) {
          out.best_gap = s.score;
          x = y;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return out;
}

}  // namespace curvtri
