#include <gtest/gtest.h>

#include <cmath>

#include "curvtri/inequality.hpp"
#include "curvtri/oracle.hpp"
#include "curvtri/simplex.hpp"

using namespace curvtri;

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

Mat right_triangle() {
  Mat v(2, 3);
  v << 0, 3, 0, 0, 0, 4;
  return v;
}

}  // namespace

TEST(CayleyMenger, KnownVolumes) {
  EXPECT_NEAR(cayley_menger_volume<double>(right_triangle()), 6.0, 1e-12);
  Mat tet(3, 4);
  tet << 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1;
  EXPECT_NEAR(cayley_menger_volume<double>(tet), 1.0 / 6, 1e-14);
  for (int n = 2; n <= 6; ++n) {
    const auto reg = regular_simplex<double>(n);
    EXPECT_NEAR(reg.volume() / regular_simplex_volume<double>(n, 1.0), 1.0, 1e-10);
  }
}

TEST(EuclideanSimplex, RejectsBadInput) {
  EXPECT_THROW(EuclideanSimplex<double>(Mat::Zero(2, 2)), GeometryError);
  Mat flat(2, 3);
  flat << 0, 1, 2, 0, 1, 2;
  try {
    EuclideanSimplex<double> s(flat);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConditioningError);
  }
}

TEST(EuclideanSimplex, RightTriangleRadii) {
  const EuclideanSimplex<double> s(right_triangle());
  const auto big = euclidean_circumradius(s);
  EXPECT_NEAR(big.radius, 2.5, 1e-14);
  EXPECT_TRUE(big.center.isApprox(Eigen::Vector2d(1.5, 2), 1e-14));
  const auto small = euclidean_inradius(s);
  EXPECT_NEAR(small.radius, 1.0, 1e-14);
  EXPECT_TRUE(small.center.isApprox(Eigen::Vector2d(1, 1), 1e-14));
}

TEST(EuclideanSimplex, RegularRadii) {
  for (int n = 2; n <= 6; ++n) {
    const auto s = regular_simplex<double>(n);
    const double big = euclidean_circumradius(s).radius;
    EXPECT_NEAR(big, std::sqrt(n / (2.0 * (n + 1))), 1e-12);
    EXPECT_NEAR(euclidean_inradius(s).radius, big / n, 1e-12);
  }
}

TEST(EuclideanSimplex, CentersAreEquidistant) {
  for (int n = 2; n <= 5; ++n) {
    for (std::uint64_t i = 0; i < 50; ++i) {
      const auto s = sample_euclidean_simplex(n, 3, i);
      const auto big = euclidean_circumradius(s);
      for (Eigen::Index j = 0; j <= n; ++j) {
        EXPECT_NEAR((s.vertices().col(j) - big.center).norm(), big.radius, 1e-10 * big.radius);
      }
      const auto small = euclidean_inradius(s);
      const Vec d = facet_distances(s, small.center);
      EXPECT_GT(small.radius, 0);
      EXPECT_LT(small.radius, big.radius);
      for (Eigen::Index j = 0; j <= n; ++j) EXPECT_NEAR(d(j), small.radius, 1e-10 * big.radius);
    }
  }
}

TEST(SphericalSimplex, RejectsBadInput) {
  EXPECT_THROW(SphericalSimplex<double>(Mat::Identity(3, 3) * 2), GeometryError);
  Mat dependent(3, 3);
  dependent << 1, 0, std::sqrt(0.5), 0, 1, std::sqrt(0.5), 0, 0, 0;
  EXPECT_THROW(SphericalSimplex<double>{dependent}, GeometryError);
}

TEST(SphericalSimplex, OrthantRadii) {
  for (int n = 2; n <= 6; ++n) {
    const auto s = orthant_simplex<double>(n);
    const auto big = spherical_circumradius(s);
    const auto small = spherical_inradius(s);
    const Vec c = Vec::Constant(n + 1, 1 / std::sqrt(n + 1.0));
    EXPECT_TRUE(big.center.isApprox(c, 1e-14));
    EXPECT_TRUE(small.center.isApprox(c, 1e-14));
    EXPECT_NEAR(std::tan(big.radius), std::sqrt(double(n)), 1e-12);
    EXPECT_NEAR(std::tan(small.radius), 1 / std::sqrt(double(n)), 1e-12);
  }
}

TEST(SphericalSimplex, CentersAreEquidistant) {
  for (int n = 2; n <= 5; ++n) {
    for (std::uint64_t i = 0; i < 50; ++i) {
      const auto s = sample_spherical_simplex(n, 3, i);
      const auto big = spherical_circumradius(s);
      EXPECT_NEAR(big.center.norm(), 1.0, 1e-14);
      const Vec dots = s.vertices().transpose() * big.center;
      EXPECT_LT(dots.maxCoeff() - dots.minCoeff(), 1e-12);
      EXPECT_LT(big.radius, std::numbers::pi / 2);

      const auto small = spherical_inradius(s);
      const Vec m = inward_facet_normals(s) * small.center;
      for (Eigen::Index j = 0; j <= n; ++j) EXPECT_NEAR(std::asin(m(j)), small.radius, 1e-9);
      // Inward: each normal is positive on the opposite vertex only.
      const Mat nv = inward_facet_normals(s) * s.vertices();
      for (Eigen::Index j = 0; j <= n; ++j) EXPECT_GT(nv(j, j), 0);
    }
  }
}

TEST(SphericalSimplex, TwoDimensionalCaseMatchesTriangleOracles) {
  const SamplerConfig cfg = SamplerConfig::defaults(GeometryKind::Spherical);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto e = sample_triangle(GeometryKind::Spherical, cfg, i);
    const SphericalSimplex<double> s(e.vertices);
    EXPECT_NEAR(std::tan(spherical_circumradius(s).radius), circumcenter_oracle(e).rho,
                1e-9 * circumcenter_oracle(e).rho);
    EXPECT_NEAR(std::tan(spherical_inradius(s).radius), incenter_oracle(e).rho,
                1e-9 * incenter_oracle(e).rho);
  }
}

TEST(Gnomonic, OrthantTriangle) {
  const auto p = gnomonic_project(orthant_simplex<double>(2));
  EXPECT_NEAR(euclidean_circumradius(p).radius, std::sqrt(2.0), 1e-12);
  const auto edges = edge_lengths(p);
  for (double d : edges) EXPECT_NEAR(d, edges.front(), 1e-12);
}

TEST(Gnomonic, EdgesScaleWithHalfChords) {
  for (int n = 2; n <= 5; ++n) {
    for (std::uint64_t i = 0; i < 50; ++i) {
      const auto s = sample_spherical_simplex(n, 8, i);
      const auto p = gnomonic_project(s);
      const double big = spherical_circumradius(s).radius;
      EXPECT_NEAR(euclidean_circumradius(p).radius, std::tan(big), 1e-10 * std::tan(big));
      const auto sph = edge_lengths(s);
      const auto flat = edge_lengths(p);
      const double k = 2 / std::cos(big);
      for (std::size_t j = 0; j < sph.size(); ++j) {
        EXPECT_NEAR(flat[j] / std::sin(sph[j] / 2) / k, 1.0, 1e-10);
      }
      EXPECT_GT(p.volume(), 0);
      EXPECT_GE(euclidean_inradius(p).radius - std::tan(spherical_inradius(s).radius), -1e-10);
    }
  }
}

TEST(Transfer, OrthantIsEquality) {
  for (int n = 2; n <= 6; ++n) {
    const auto e = transfer_check(euler_edge_bound, orthant_simplex<double>(n));
    EXPECT_NEAR(e.lhs, e.rhs, 1e-9 * e.rhs);
    EXPECT_TRUE(e.holds);
  }
}

TEST(Transfer, TwoDimensionalMatchesTriangleEngine) {
  const Inequality& ratio = registry_builtin().at("ratio-power-sum");
  const EdgeFunction g = [&](const std::vector<double>& s, int) {
    // Edges come as (01, 02, 12); side a is opposite vertex 0.
    return ratio.pair->g(s[2], s[1], s[0]);
  };
  const SamplerConfig cfg = SamplerConfig::defaults(GeometryKind::Spherical);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto e = sample_triangle(GeometryKind::Spherical, cfg, i);
    const auto simplex = transfer_check(g, SphericalSimplex<double>(e.vertices));
    const auto triangle = ratio.evaluate(e.sides).front();
    EXPECT_NEAR(simplex.lhs, triangle.lhs, 1e-9 * triangle.lhs);
    EXPECT_NEAR(simplex.rhs, triangle.rhs, 1e-9 * triangle.rhs);
  }
}

TEST(Verify, EulerInEveryDimension) {
  for (GeometryKind k : {GeometryKind::Euclidean, GeometryKind::Spherical}) {
    for (int n = 2; n <= 5; ++n) {
      const auto r = verify_simplex_euler(n, k, 42, 1000);
      EXPECT_EQ(r.violations, 0);
      EXPECT_EQ(r.projection_violations, 0);
      EXPECT_LE(r.equality_probe_gap, 1e-9);
      EXPECT_TRUE(r.passed());
    }
  }
}

TEST(Verify, RejectsUnsupportedRequests) {
  EXPECT_THROW(verify_simplex_euler(1, GeometryKind::Euclidean, 1, 10), GeometryError);
  EXPECT_THROW(verify_simplex_euler(3, GeometryKind::Hyperbolic, 1, 10), GeometryError);
}

TEST(Sampler, SimplicesAreDeterministic) {
  EXPECT_EQ(sample_euclidean_simplex(3, 1, 4).vertices(), sample_euclidean_simplex(3, 1, 4).vertices());
  EXPECT_EQ(sample_spherical_simplex(3, 1, 4).vertices(), sample_spherical_simplex(3, 1, 4).vertices());
}
