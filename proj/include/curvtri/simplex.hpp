#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "curvtri/errors.hpp"
#include "curvtri/geometry.hpp"
#include "curvtri/inequality.hpp"

namespace curvtri {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// k-volume of the simplex spanned by the k+1 columns of `points`, from the
/// Cayley-Menger determinant of their squared pairwise distances.
template <typename Scalar>
Scalar cayley_menger_volume(const MatrixX<Scalar>& points) {
  using std::sqrt;
  const Eigen::Index m = points.cols();
  const Eigen::Index k = m - 1;
  if (k < 1) return Scalar(0);
  MatrixX<Scalar> cm = MatrixX<Scalar>::Ones(m + 1, m + 1);
  cm(0, 0) = Scalar(0);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      cm(i + 1, j + 1) = (points.col(i) - points.col(j)).squaredNorm();
    }
  }
  Scalar factorial = Scalar(1);
  for (Eigen::Index i = 2; i <= k; ++i) factorial *= Scalar(i);
  const Scalar sign = (k + 1) % 2 == 0 ? Scalar(1) : Scalar(-1);
  const Scalar v2 = sign * cm.determinant() /
                    (std::pow(Scalar(2), static_cast<int>(k)) * factorial * factorial);
  return v2 > Scalar(0) ? sqrt(v2) : Scalar(0);
}

/// Volume of the regular k-simplex with edge `edge`.
template <typename Scalar>
Scalar regular_simplex_volume(int k, Scalar edge) {
  using std::pow;
  using std::sqrt;
  Scalar factorial = Scalar(1);
  for (int i = 2; i <= k; ++i) factorial *= Scalar(i);
  return sqrt(Scalar(k + 1)) / (factorial * pow(Scalar(2), Scalar(k) / 2)) * pow(edge, Scalar(k));
}

/// n+1 affinely independent points of R^n, stored as columns.
template <typename Scalar>
class EuclideanSimplex {
 public:
  explicit EuclideanSimplex(MatrixX<Scalar> vertices) : vertices_(std::move(vertices)) {
    const Eigen::Index n = vertices_.rows();
    if (n < 2 || vertices_.cols() != n + 1) {
      throw GeometryError(ErrorCode::InvalidInput, "an n-simplex needs n+1 points in R^n, n >= 2");
    }
    Scalar longest = Scalar(0);
    for (Eigen::Index i = 0; i <= n; ++i) {
      for (Eigen::Index j = i + 1; j <= n; ++j) {
        longest = std::max(longest, (vertices_.col(i) - vertices_.col(j)).norm());
      }
    }
    using std::pow;
    if (!(cayley_menger_volume(vertices_) > Scalar(1e-12) * pow(longest, Scalar(n)))) {
      throw GeometryError(ErrorCode::ConditioningError, "affinely dependent simplex vertices");
    }
  }

  int dimension() const { return static_cast<int>(vertices_.rows()); }
  const MatrixX<Scalar>& vertices() const { return vertices_; }
  Scalar volume() const { return cayley_menger_volume(vertices_); }

  /// Vertices with column `j` removed.
  MatrixX<Scalar> facet(Eigen::Index j) const {
    MatrixX<Scalar> f(vertices_.rows(), vertices_.cols() - 1);
    for (Eigen::Index i = 0, c = 0; i < vertices_.cols(); ++i) {
      if (i != j) f.col(c++) = vertices_.col(i);
    }
    return f;
  }

 private:
  MatrixX<Scalar> vertices_;
};

/// n+1 unit vectors of R^{n+1} forming a simplex inside an open hemisphere.
template <typename Scalar>
class SphericalSimplex {
 public:
  explicit SphericalSimplex(MatrixX<Scalar> vertices) : vertices_(std::move(vertices)) {
    using std::abs;
    const Eigen::Index m = vertices_.rows();
    if (m < 3 || vertices_.cols() != m) {
      throw GeometryError(ErrorCode::InvalidInput,
                          "a spherical n-simplex needs n+1 unit vectors of R^{n+1}, n >= 2");
    }
    for (Eigen::Index i = 0; i < m; ++i) {
      if (abs(vertices_.col(i).norm() - Scalar(1)) > Scalar(1e-12)) {
        throw GeometryError(ErrorCode::InvalidInput, "spherical vertex is not a unit vector");
      }
    }
    if (!(abs(vertices_.determinant()) > Scalar(1e-12))) {
      throw GeometryError(ErrorCode::ConditioningError, "linearly dependent spherical vertices");
    }
    // Equal inner products with the circumcenter must be positive.
    const VectorX<Scalar> c = vertices_.transpose().partialPivLu().solve(VectorX<Scalar>::Ones(m));
    if (!(Scalar(1) / c.norm() > Scalar(1e-12))) {
      throw GeometryError(ErrorCode::HemisphereViolation, "circumradius is not below pi/2");
    }
  }

  int dimension() const { return static_cast<int>(vertices_.rows()) - 1; }
  const MatrixX<Scalar>& vertices() const { return vertices_; }

 private:
  MatrixX<Scalar> vertices_;
};

template <typename Scalar>
struct Ball {
  VectorX<Scalar> center;
  Scalar radius;
};

template <typename Scalar>
Ball<Scalar> euclidean_circumradius(const EuclideanSimplex<Scalar>& s) {
  const auto& v = s.vertices();
  const Eigen::Index n = v.rows();
  // 2 (v_i - v_0) . y = |v_i - v_0|^2 with y = center - v_0.
  MatrixX<Scalar> a(n, n);
  VectorX<Scalar> rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const VectorX<Scalar> d = v.col(i + 1) - v.col(0);
    a.row(i) = Scalar(2) * d.transpose();
    rhs(i) = d.squaredNorm();
  }
  auto qr = a.colPivHouseholderQr();
  if (qr.rank() < n) throw GeometryError(ErrorCode::ConditioningError, "singular circumcenter system");
  const VectorX<Scalar> y = qr.solve(rhs);
  return {v.col(0) + y, y.norm()};
}

/// Distances from `point` to each facet hyperplane; entry j is for the facet
/// opposite vertex j.
template <typename Scalar>
VectorX<Scalar> facet_distances(const EuclideanSimplex<Scalar>& s, const VectorX<Scalar>& point) {
  using std::abs;
  const Eigen::Index n = s.dimension();
  VectorX<Scalar> out(n + 1);
  for (Eigen::Index j = 0; j <= n; ++j) {
    const MatrixX<Scalar> f = s.facet(j);
    MatrixX<Scalar> spans(n, n - 1);
    for (Eigen::Index k = 1; k < n; ++k) spans.col(k - 1) = f.col(k) - f.col(0);
    const MatrixX<Scalar> q = spans.householderQr().householderQ();
    out(j) = abs(q.col(n - 1).dot(point - f.col(0)));
  }
  return out;
}

/// Incenter as the facet-volume weighted vertex average; the radius is its
/// distance to the first facet hyperplane.
template <typename Scalar>
Ball<Scalar> euclidean_inradius(const EuclideanSimplex<Scalar>& s) {
  const auto& v = s.vertices();
  const Eigen::Index n = s.dimension();
  VectorX<Scalar> weights(n + 1);
  for (Eigen::Index j = 0; j <= n; ++j) weights(j) = cayley_menger_volume<Scalar>(s.facet(j));
  if (!(weights.minCoeff() > Scalar(0))) {
    throw GeometryError(ErrorCode::ConditioningError, "degenerate facet");
  }
  const VectorX<Scalar> center = v * weights / weights.sum();
  return {center, facet_distances(s, center)(0)};
}

/// Circumcenter c on the sphere with c.v_i equal for all i, on the side of
/// the vertices; radius is the common arc length.
template <typename Scalar>
Ball<Scalar> spherical_circumradius(const SphericalSimplex<Scalar>& s) {
  using std::atan2;
  const auto& v = s.vertices();
  const Eigen::Index m = v.rows();
  auto lu = v.transpose().fullPivLu();
  if (!lu.isInvertible()) throw GeometryError(ErrorCode::ConditioningError, "singular vertex matrix");
  VectorX<Scalar> c = lu.solve(VectorX<Scalar>::Ones(m)).normalized();
  const Scalar cos_r = c.dot(v.col(0));
  if (!(cos_r > Scalar(1e-12))) {
    throw GeometryError(ErrorCode::HemisphereViolation, "circumradius is not below pi/2");
  }
  const Scalar sin_r = (v.col(0) - cos_r * c).norm();
  return {c, atan2(sin_r, cos_r)};
}

/// Inward unit normals of the facet hyperplanes (rows). Row j of V^{-1} is
/// orthogonal to every vertex except v_j and has positive product with it.
template <typename Scalar>
MatrixX<Scalar> inward_facet_normals(const SphericalSimplex<Scalar>& s) {
  auto lu = s.vertices().fullPivLu();
  if (!lu.isInvertible()) throw GeometryError(ErrorCode::ConditioningError, "singular vertex matrix");
  MatrixX<Scalar> normals = lu.inverse();
  normals.rowwise().normalize();
  return normals;
}

/// Incenter c on the sphere with arcsin(c.m_j) equal over all facets. The
/// equal-value conditions are linear in c, so c is proportional to M^{-1} 1.
template <typename Scalar>
Ball<Scalar> spherical_inradius(const SphericalSimplex<Scalar>& s) {
  using std::asin;
  const MatrixX<Scalar> normals = inward_facet_normals(s);
  const Eigen::Index m = normals.rows();
  auto lu = normals.fullPivLu();
  if (!lu.isInvertible()) throw GeometryError(ErrorCode::ConditioningError, "singular facet normals");
  VectorX<Scalar> c = lu.solve(VectorX<Scalar>::Ones(m)).normalized();
  if ((normals * c).mean() < Scalar(0)) c = -c;
  const VectorX<Scalar> sines = normals * c;
  if (!(sines.minCoeff() > Scalar(0))) {
    throw GeometryError(ErrorCode::ConditioningError, "incenter outside the simplex");
  }
  return {c, asin(sines.mean())};
}

/// Reflects the circumcenter to the north pole e_{n+1} and projects
/// centrally onto the tangent hyperplane x_{n+1} = 1.
template <typename Scalar>
EuclideanSimplex<Scalar> gnomonic_project(const SphericalSimplex<Scalar>& s) {
  const auto& v = s.vertices();
  const Eigen::Index m = v.rows();
  const VectorX<Scalar> c = spherical_circumradius(s).center;
  VectorX<Scalar> pole = VectorX<Scalar>::Zero(m);
  pole(m - 1) = Scalar(1);
  VectorX<Scalar> u = c - pole;
  MatrixX<Scalar> rotated = v;
  if (u.norm() > Scalar(1e-15)) {
    u.normalize();
    rotated = v - Scalar(2) * u * (u.transpose() * v);
  }
  MatrixX<Scalar> projected(m - 1, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Scalar height = rotated(m - 1, i);
    if (!(height > Scalar(1e-12))) {
      throw GeometryError(ErrorCode::ProjectionDomainError, "vertex not above the tangent hyperplane");
    }
    projected.col(i) = rotated.col(i).head(m - 1) / height;
  }
  return EuclideanSimplex<Scalar>(std::move(projected));
}

/// Arc lengths d_ij for i < j in lexicographic order.
template <typename Scalar>
std::vector<Scalar> edge_lengths(const SphericalSimplex<Scalar>& s) {
  using std::atan2;
  const auto& v = s.vertices();
  std::vector<Scalar> out;
  for (Eigen::Index i = 0; i < v.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < v.cols(); ++j) {
      const VectorX<Scalar> p = v.col(i), q = v.col(j);
      // |p - q| and |p + q| give the half-angle without cancellation.
      out.push_back(Scalar(2) * atan2((p - q).norm(), (p + q).norm()));
    }
  }
  return out;
}

template <typename Scalar>
std::vector<Scalar> edge_lengths(const EuclideanSimplex<Scalar>& s) {
  const auto& v = s.vertices();
  std::vector<Scalar> out;
  for (Eigen::Index i = 0; i < v.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < v.cols(); ++j) out.push_back((v.col(i) - v.col(j)).norm());
  }
  return out;
}

/// Standard basis of R^{n+1}: the symmetric spherical simplex with
/// tan R = n tan r.
template <typename Scalar>
SphericalSimplex<Scalar> orthant_simplex(int n) {
  return SphericalSimplex<Scalar>(MatrixX<Scalar>::Identity(n + 1, n + 1));
}

/// Regular n-simplex with unit edges, centered at the origin.
template <typename Scalar>
EuclideanSimplex<Scalar> regular_simplex(int n) {
  using std::sqrt;
  // Orthonormal basis of the hyperplane orthogonal to (1, ..., 1).
  MatrixX<Scalar> seed = MatrixX<Scalar>::Identity(n + 1, n + 1);
  seed.col(0).setOnes();
  const MatrixX<Scalar> q = seed.householderQr().householderQ();
  const MatrixX<Scalar> basis = q.rightCols(n);
  const MatrixX<Scalar> centered =
      MatrixX<Scalar>::Identity(n + 1, n + 1).array() - Scalar(1) / Scalar(n + 1);
  return EuclideanSimplex<Scalar>(basis.transpose() * centered / sqrt(Scalar(2)));
}

// ---------------------------------------------------------------------------
// Euler inequality checks (double precision).
// ---------------------------------------------------------------------------

/// f({s(d_ij)}, n) on half-chord edge values.
using EdgeFunction = std::function<double(const std::vector<double>&, int)>;

/// tan R / tan r >= f({s(d_ij)}) on a spherical simplex.
InequalityEvaluation transfer_check(const EdgeFunction& f, const SphericalSimplex<double>& s,
                                    double floor = kHoldsFloor);

/// R / r >= n on a Euclidean simplex.
InequalityEvaluation euclidean_euler_check(const EuclideanSimplex<double>& s,
                                           double floor = kHoldsFloor);

inline double euler_edge_bound(const std::vector<double>&, int n) { return n; }

/// Standard normal vertices, rejected when the volume is below 1e-4 of the
/// regular simplex on the longest edge.
EuclideanSimplex<double> sample_euclidean_simplex(int n, std::uint64_t seed,
                                                  std::uint64_t stream_index);

struct SphericalSamplerConfig {
  double cap_angle = std::numbers::pi / 2 - 0.1;
  double max_circumradius = std::numbers::pi / 2 - 0.05;
};

/// n+1 uniform points of a cap of S^n (randomly rotated), rejected unless the
/// circumradius is below `max_circumradius`.
SphericalSimplex<double> sample_spherical_simplex(int n, std::uint64_t seed,
                                                  std::uint64_t stream_index,
                                                  const SphericalSamplerConfig& cfg = {});

struct SimplexVerification {
  int dimension;
  GeometryKind kind;
  std::int64_t samples = 0;
  std::int64_t violations = 0;
  double min_gap;             // normalized gap of R/r - n (or tan R / tan r - n)
  double equality_probe_gap;  // |R - n r| / R on the regular (orthant) simplex
  // Spherical only: r' - tan r for the projected simplex's inradius r'.
  std::int64_t projection_violations = 0;
  double min_projection_margin = 0;
  double min_projected_volume = 0;
  double wall_time_s = 0;

  bool passed() const { return violations == 0 && projection_violations == 0; }
};

/// Euler inequality over `count` random simplices of dimension n, in
/// Euclidean (R >= n r) or spherical (tan R >= n tan r) geometry.
SimplexVerification verify_simplex_euler(int n, GeometryKind kind, std::uint64_t seed,
                                         std::int64_t count, double floor = kHoldsFloor);

}  // namespace curvtri
