#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvtri/geometry.hpp"
#include "curvtri/oracle.hpp"

using namespace curvtri;
using std::numbers::pi;

namespace {

constexpr auto E = GeometryKind::Euclidean;
constexpr auto S = GeometryKind::Spherical;
constexpr auto H = GeometryKind::Hyperbolic;

double rel(double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); }

// Brute force: golden-section minimum of the distance along the chord.
double distance_to_chord_by_search(const Eigen::Vector2d& x, const Eigen::Vector2d& a,
                                   const Eigen::Vector2d& b) {
  const auto [lo, hi] = chord_endpoints(a, b);
  auto along = [&](double t) { return klein_distance(x, lo + t * (hi - lo)); };
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double l = 1e-6, h = 1 - 1e-6;
  double t1 = h - inv_phi * (h - l), t2 = l + inv_phi * (h - l);
  double f1 = along(t1), f2 = along(t2);
  while (h - l > 1e-12) {
    if (f1 < f2) {
      h = t2, t2 = t1, f2 = f1, t1 = h - inv_phi * (h - l), f1 = along(t1);
    } else {
      l = t1, t1 = t2, f1 = f2, t2 = l + inv_phi * (h - l), f2 = along(t2);
    }
  }
  return std::min(f1, f2);
}

}  // namespace

TEST(Sampler, Deterministic) {
  for (GeometryKind k : kAllGeometries) {
    const SamplerConfig cfg = SamplerConfig::defaults(k);
    for (std::uint64_t i = 0; i < 50; ++i) {
      const auto a = sample_triangle(k, cfg, i);
      const auto b = sample_triangle(k, cfg, i);
      EXPECT_EQ(a.sides, b.sides);
      EXPECT_EQ(a.vertices, b.vertices);
    }
    EXPECT_NE(sample_triangle(k, cfg, 0).sides, sample_triangle(k, cfg, 1).sides);
  }
}

TEST(Sampler, SeedsChangeTheStream) {
  SamplerConfig a = SamplerConfig::defaults(E);
  SamplerConfig b = a;
  b.seed = a.seed + 1;
  EXPECT_NE(sample_triangle(E, a, 0).sides, sample_triangle(E, b, 0).sides);
}

TEST(Sampler, RespectsRangesAndValidates) {
  for (GeometryKind k : kAllGeometries) {
    const SamplerConfig cfg = SamplerConfig::defaults(k);
    for (std::uint64_t i = 0; i < 1000; ++i) {
      const auto e = sample_triangle(k, cfg, i);
      for (double side : e.sides.sides()) {
        EXPECT_GE(side, cfg.min_side);
        EXPECT_LE(side, cfg.max_side);
      }
      EXPECT_NO_THROW(validate_triangle(k, e.sides.a(), e.sides.b(), e.sides.c()));
      EXPECT_EQ(side_lengths_from_vertices(k, e.vertices), e.sides);
    }
  }
}

TEST(Sampler, RespectsSlackFloor) {
  for (GeometryKind k : kAllGeometries) {
    SamplerConfig cfg = SamplerConfig::defaults(k);
    cfg.min_relative_slack = 0.05;
    for (std::uint64_t i = 0; i < 500; ++i) {
      const auto [a, b, c] = sample_triangle(k, cfg, i).sides.sides();
      EXPECT_GE(std::min({a + b - c, a + c - b, b + c - a}), 0.05 * std::max({a, b, c}));
    }
  }
}

TEST(Sampler, SphericalStaysInHemisphere) {
  const SamplerConfig cfg = SamplerConfig::defaults(S);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    EXPECT_LT(circumradius_functional(sample_triangle(S, cfg, i).sides).radius(), pi / 2);
  }
}

TEST(Sampler, RejectsInconsistentConfig) {
  SamplerConfig cfg = SamplerConfig::defaults(S);
  cfg.max_side = 4;
  EXPECT_THROW(check_config(S, cfg), GeometryError);
  cfg = SamplerConfig::defaults(H);
  cfg.max_side = 25;
  EXPECT_THROW(check_config(H, cfg), GeometryError);
  cfg = SamplerConfig::defaults(E);
  cfg.min_side = 2;
  cfg.max_side = 1;
  EXPECT_THROW(check_config(E, cfg), GeometryError);
}

TEST(Sampler, ImpossibleRangeExhaustsBudget) {
  SamplerConfig cfg = SamplerConfig::defaults(H);
  cfg.min_side = 2.99;
  cfg.max_side = 3.0;
  try {
    sample_triangle(H, cfg, 0);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::RejectionBudgetExceeded);
  }
}

TEST(Circumcenter, Examples) {
  const auto s = embed(S, Eigen::Matrix3d::Identity());
  const auto cs = circumcenter_oracle(s);
  EXPECT_TRUE(cs.center.isApprox(Eigen::Vector3d::Constant(1 / std::sqrt(3.0)), 1e-14));
  EXPECT_NEAR(cs.rho, std::sqrt(2.0), 1e-14);

  Eigen::MatrixXd ev(2, 3);
  ev << 0, 3, 0, 0, 0, 4;
  const auto ce = circumcenter_oracle(embed(E, ev));
  EXPECT_TRUE(ce.center.isApprox(Eigen::Vector2d(1.5, 2), 1e-14));
  EXPECT_NEAR(ce.rho, 2.5, 1e-14);
}

TEST(Incenter, Examples) {
  const auto is = incenter_oracle(embed(S, Eigen::Matrix3d::Identity()));
  EXPECT_TRUE(is.center.isApprox(Eigen::Vector3d::Constant(1 / std::sqrt(3.0)), 1e-12));
  EXPECT_NEAR(is.rho, 1 / std::sqrt(2.0), 1e-12);

  Eigen::MatrixXd ev(2, 3);
  ev << 0, 3, 0, 0, 0, 4;
  const auto ie = incenter_oracle(embed(E, ev));
  EXPECT_TRUE(ie.center.isApprox(Eigen::Vector2d(1, 1), 1e-14));
  EXPECT_NEAR(ie.rho, 1.0, 1e-14);
}

TEST(Oracles, HyperbolicCentersAreEquidistant) {
  const SamplerConfig cfg = SamplerConfig::defaults(H);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto e = sample_triangle(H, cfg, i);
    const auto cc = circumcenter_oracle(e);
    const Eigen::Vector2d c = cc.center;
    const double d0 = klein_distance(c, Eigen::Vector2d(e.vertices.col(0)));
    for (int j = 1; j < 3; ++j) {
      EXPECT_NEAR(klein_distance(c, Eigen::Vector2d(e.vertices.col(j))), d0, 1e-9 * (1 + d0));
    }
    const auto ic = incenter_oracle(e);
    const Eigen::Vector2d x = ic.center;
    const Eigen::Vector2d v0 = e.vertices.col(0), v1 = e.vertices.col(1), v2 = e.vertices.col(2);
    const double r0 = klein_distance_to_line(x, v1, v2);
    EXPECT_NEAR(klein_distance_to_line(x, v0, v2), r0, 1e-8 * (1 + r0));
    EXPECT_NEAR(klein_distance_to_line(x, v0, v1), r0, 1e-8 * (1 + r0));
  }
}

TEST(Oracles, AgreeWithClosedFormRadii) {
  for (GeometryKind k : kAllGeometries) {
    const SamplerConfig cfg = SamplerConfig::defaults(k);
    for (std::uint64_t i = 0; i < 1000; ++i) {
      const auto e = sample_triangle(k, cfg, i);
      EXPECT_LE(rel(circumcenter_oracle(e).rho, circumradius_functional(e.sides).value), 1e-8)
          << to_string(k) << " stream " << i;
      EXPECT_LE(rel(incenter_oracle(e).rho, inradius_functional(e.sides).value), 1e-8)
          << to_string(k) << " stream " << i;
    }
  }
}

TEST(Projection, OctantScaling) {
  const auto e = embed(S, Eigen::Matrix3d::Identity());
  const auto p = tangent_projection(e);
  const double k = 2 / std::cos(std::acos(1 / std::sqrt(3.0)));
  for (double side : p.sides.sides()) EXPECT_NEAR(side, k * std::sin(pi / 4), 1e-12);
}

TEST(Projection, SidesScaleByTwoOverCosR) {
  const SamplerConfig cfg = SamplerConfig::defaults(S);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto e = sample_triangle(S, cfg, i);
    const auto p = tangent_projection(e);
    const double k = 2 / std::cos(circumradius_functional(e.sides).radius());
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(p.sides.sides()[j] / s_func(S, e.sides.sides()[j]) / k, 1.0, 1e-10);
    }
  }
}

TEST(Projection, EquilateralStaysEquilateral) {
  const double a = 1.2;
  Eigen::Matrix3d v;
  const double h = std::cos(circumradius_functional(validate_triangle(S, a, a, a)).radius());
  const double rho = std::sqrt(1 - h * h);
  for (int j = 0; j < 3; ++j) {
    const double t = 2 * pi * j / 3;
    v.col(j) << rho * std::cos(t), rho * std::sin(t), h;
  }
  const auto p = tangent_projection(embed(S, v));
  EXPECT_NEAR(p.sides.a(), p.sides.b(), 1e-12);
  EXPECT_NEAR(p.sides.a(), p.sides.c(), 1e-12);
}

TEST(Projection, RejectsNonSpherical) {
  Eigen::MatrixXd ev(2, 3);
  ev << 0, 3, 0, 0, 0, 4;
  EXPECT_THROW(tangent_projection(embed(E, ev)), GeometryError);
}

TEST(KleinShadow, CenteredTrianglesScaleByTwoOverCoshR) {
  const SamplerConfig cfg = SamplerConfig::defaults(H);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto e = sample_centered_hyperbolic(cfg, i);
    const Triangle flat = side_lengths_from_vertices(E, e.vertices);
    const double big = circumradius_functional(e.sides).radius();
    const double k = 2 / std::cosh(big);
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(flat.sides()[j] / s_func(H, e.sides.sides()[j]) / k, 1.0, 1e-8);
    }
  }
}

TEST(Klein, ChordEndpointsLieOnTheCircle) {
  const auto [u, v] = chord_endpoints({0.1, 0.2}, {-0.4, 0.3});
  EXPECT_NEAR(u.norm(), 1.0, 1e-14);
  EXPECT_NEAR(v.norm(), 1.0, 1e-14);
}

TEST(Klein, DistanceToLineThroughOrigin) {
  // Geodesic along the x axis; the point (0, y) lies at distance artanh(y).
  EXPECT_NEAR(klein_distance_to_line({0, 0.4}, {-0.5, 0}, {0.5, 0}), std::atanh(0.4), 1e-14);
}

TEST(Klein, DistanceToLineMatchesSearch) {
  const SamplerConfig cfg = SamplerConfig::defaults(H);
  for (std::uint64_t i = 0; i < 300; ++i) {
    const auto e = sample_triangle(H, cfg, i);
    const Eigen::Vector2d x = e.vertices.col(0), a = e.vertices.col(1), b = e.vertices.col(2);
    const double d = klein_distance_to_line(x, a, b);
    EXPECT_NEAR(d, distance_to_chord_by_search(x, a, b), 1e-9 * (1 + d));
  }
}
