#include <algorithm>
#include <cmath>

#include "curvtri/inequality.hpp"
#include "curvtri/random.hpp"

namespace curvtri {

namespace {

using G = GeometryKind;

struct Halves {
  double x, y, z;
};

Halves halves(const Triangle& t) {
  const G k = t.kind();
  return {half_chord(k, t.a()), half_chord(k, t.b()), half_chord(k, t.c())};
}

double cyclic_ratio_sum(const Triangle& t) {
  const auto [x, y, z] = halves(t);
  return x / y + y / z + z / x;
}

std::vector<ChainTerm> strengthened_euler_chain() {
  return {
      {"rho(R)/rho(r)", radius_ratio},
      {"(xyz+x^3+y^3+z^3)/(2xyz)",
       [](const Triangle& t) {
         const auto [x, y, z] = halves(t);
         return (x * y * z + x * x * x + y * y * y + z * z * z) / (2 * x * y * z);
       }},
      {"x/y+y/z+z/x-1", [](const Triangle& t) { return cyclic_ratio_sum(t) - 1; }},
      {"(2/3)(x/y+y/z+z/x)", [](const Triangle& t) { return 2.0 / 3.0 * cyclic_ratio_sum(t); }},
      {"2", [](const Triangle&) { return 2.0; }},
  };
}

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

double radius_ratio(const Triangle& t) {
  return circumradius_value(t.kind(), t.a(), t.b(), t.c()) /
         inradius_value(t.kind(), t.a(), t.b(), t.c());
}

double half_sum_ratio(const Triangle& t) {
  const G k = t.kind();
  const auto [x, y, z] = halves(t);
  return 2 * half_chord(k, (t.a() + t.b()) / 2) * half_chord(k, (t.b() + t.c()) / 2) *
         half_chord(k, (t.a() + t.c()) / 2) / (x * y * z);
}

void check_registration(const Inequality& ineq, const RegistrationOptions& opts) {
  auto fail = [&](const std::string& what) {
    throw GeometryError(ErrorCode::EvaluationError, ineq.name + ": " + what);
  };
  if (ineq.name.empty()) fail("empty name");
  if (!ineq.pair && ineq.chain.size() < 2) fail("needs a homogeneous pair or a chain of >= 2 terms");

  auto eng = make_stream(opts.seed, 0, 99);
  if (ineq.pair) {
    const HomogeneousPair& p = *ineq.pair;
    const Monotonicity cls = classify_monotonicity(p.f, p.degree);
    if (cls != p.claimed_class) {
      fail("claimed monotonicity " + std::string(to_string(p.claimed_class)) + " but classified " +
           std::string(to_string(cls)));
    }
    for (int i = 0; i < opts.homogeneity_trials; ++i) {
      const double lambda = uniform(eng, 0.1, 10);
      const double scale = std::pow(lambda, p.degree);
      const double x = uniform(eng, 0.1, 5), y = uniform(eng, 0.1, 5);
      if (rel_diff(p.f(lambda * x, lambda * y), scale * p.f(x, y)) > 1e-9) {
        fail("f is not homogeneous of degree " + std::to_string(p.degree));
      }
      const double a = uniform(eng, 0.1, 5), b = uniform(eng, 0.1, 5), c = uniform(eng, 0.1, 5);
      if (rel_diff(p.g(lambda * a, lambda * b, lambda * c), scale * p.g(a, b, c)) > 1e-9) {
        fail("g is not homogeneous of degree " + std::to_string(p.degree));
      }
    }
  }

  if (ineq.claimed_in(G::Euclidean)) {
    SamplerConfig cfg = SamplerConfig::defaults(G::Euclidean);
    cfg.seed = opts.seed;
    for (int i = 0; i < opts.euclidean_samples; ++i) {
      const Triangle t = sample_triangle(G::Euclidean, cfg, static_cast<std::uint64_t>(i)).sides;
      for (const auto& e : ineq.evaluate(t)) {
        if (!e.holds) fail("Euclidean base fails on a random triangle");
      }
    }
  }
}

void Registry::add(Inequality ineq, const RegistrationOptions& opts) {
  if (find(ineq.name)) {
    throw GeometryError(ErrorCode::InvalidInput, "duplicate inequality name " + ineq.name);
  }
  check_registration(ineq, opts);
  entries_.push_back(std::move(ineq));
}

const Inequality* Registry::find(std::string_view name) const {
  auto it = std::ranges::find(entries_, name, &Inequality::name);
  return it == entries_.end() ? nullptr : &*it;
}

const Inequality& Registry::at(std::string_view name) const {
  if (const Inequality* p = find(name)) return *p;
  throw GeometryError(ErrorCode::UnknownInequality, std::string(name));
}

namespace {

Inequality from_pair(std::string statement, std::vector<G> claimed, HomogeneousPair p) {
  Inequality ineq;
  ineq.name = p.name;
  ineq.statement = std::move(statement);
  ineq.claimed = std::move(claimed);
  ineq.equality_iff_equilateral = p.equality_iff_equilateral;
  ineq.pair = std::move(p);
  return ineq;
}

Registry build_builtin() {
  Registry reg;
  const auto decreasing = Monotonicity::DecreasingOnM;

  reg.add(from_pair("rho(R) >= 2 rho(r)", {G::Euclidean, G::Spherical, G::Hyperbolic},
                    {"euler", [](double x, double y) { return x / y; },
                     [](double, double, double) { return 2.0; }, 0, decreasing}));

  Inequality chain;
  chain.name = "eq4-spherical-chain";
  chain.statement =
      "rho(R)/rho(r) >= (xyz+x^3+y^3+z^3)/(2xyz) >= x/y+y/z+z/x-1 >= (2/3)(x/y+y/z+z/x) >= 2, "
      "x,y,z = s(a),s(b),s(c)";
  chain.claimed = {G::Euclidean, G::Spherical};
  chain.chain = strengthened_euler_chain();
  // Only the two ends are known to be tight exactly at equilateral triangles.
  chain.equality_iff_equilateral = false;
  reg.add(std::move(chain));

  const ChainTerm half_sum{"2 s((a+b)/2) s((b+c)/2) s((a+c)/2) / (s(a)s(b)s(c))", half_sum_ratio};
  Inequality lower;
  lower.name = "eq5-lower";
  lower.statement = "2 s((a+b)/2) s((b+c)/2) s((a+c)/2) / (s(a)s(b)s(c)) >= 2";
  lower.claimed = {G::Euclidean, G::Spherical, G::Hyperbolic};
  lower.chain = {half_sum, {"2", [](const Triangle&) { return 2.0; }}};
  reg.add(std::move(lower));

  Inequality upper;
  upper.name = "eq5-upper";
  upper.statement = "rho(R)/rho(r) >= 2 s((a+b)/2) s((b+c)/2) s((a+c)/2) / (s(a)s(b)s(c))";
  upper.claimed = {G::Euclidean, G::Spherical, G::Hyperbolic};
  upper.chain = {{"rho(R)/rho(r)", radius_ratio}, half_sum};
  reg.add(std::move(upper));

  reg.add(from_pair("R/r >= 2 (a+b+c)(a^3+b^3+c^3)/(ab+bc+ca)^2",
                    {G::Euclidean, G::Spherical},
                    {"ratio-power-sum", [](double x, double y) { return x / y; },
                     [](double a, double b, double c) {
                       const double q = a * b + b * c + c * a;
                       return 2 * (a + b + c) * (a * a * a + b * b * b + c * c * c) / (q * q);
                     },
                     0, decreasing}));

  reg.add(from_pair("2R^2 + r^2 >= (a^2+b^2+c^2)/4", {G::Euclidean, G::Spherical},
                    {"square-sum-upper", [](double x, double y) { return 2 * x * x + y * y; },
                     [](double a, double b, double c) { return (a * a + b * b + c * c) / 4; }, 2,
                     decreasing}));

  reg.add(from_pair("(a^2+b^2+c^2)/4 >= 3r(2R - r)", {G::Euclidean, G::Hyperbolic},
                    {"square-sum-lower", [](double x, double y) { return -3 * y * (2 * x - y); },
                     [](double a, double b, double c) { return -(a * a + b * b + c * c) / 4; }, 2,
                     Monotonicity::IncreasingOnM}));

  reg.add(from_pair("1/(4r^2) >= 1/a^2 + 1/b^2 + 1/c^2", {G::Euclidean, G::Spherical},
                    {"inverse-square-inradius", [](double, double y) { return 1 / (4 * y * y); },
                     [](double a, double b, double c) {
                       return 1 / (a * a) + 1 / (b * b) + 1 / (c * c);
                     },
                     -2, decreasing}));

  reg.add(from_pair("(1/a + 1/b + 1/c)^2 / 3 >= 1/(2rR)",
                    {G::Euclidean, G::Spherical, G::Hyperbolic},
                    {"harmonic-product", [](double x, double y) { return -1 / (2 * x * y); },
                     [](double a, double b, double c) {
                       const double h = 1 / a + 1 / b + 1 / c;
                       return -h * h / 3;
                     },
                     -2, Monotonicity::Constant}));
  return reg;
}

}  // namespace

const Registry& registry_builtin() {
  static const Registry reg = build_builtin();
  return reg;
}

}  // namespace curvtri
