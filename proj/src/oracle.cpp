#include <algorithm>
#include <numbers>

#include <Eigen/Geometry>

#include "curvtri/oracle.hpp"

namespace curvtri {

namespace {

// Minkowski form diag(1, 1, -1) on the hyperboloid model.
double minkowski(const Eigen::Vector3d& u, const Eigen::Vector3d& v) {
  return u.x() * v.x() + u.y() * v.y() - u.z() * v.z();
}

// Hyperboloid lift of a Klein point.
Eigen::Vector3d lift(const Eigen::Vector2d& p) {
  const double n = p.norm();
  return Eigen::Vector3d(p.x(), p.y(), 1) / std::sqrt((1 - n) * (1 + n));
}

// Klein point of a future timelike vector.
Eigen::Vector2d klein_of(const Eigen::Vector3d& w) {
  if (!(minkowski(w, w) < 0) || w.z() == 0) {
    throw GeometryError(ErrorCode::ConditioningError, "center is not a point of the hyperbolic plane");
  }
  return Eigen::Vector2d(w.x(), w.y()) / w.z();
}

double tan_from_cos(const Eigen::Vector3d& center, const Eigen::Vector3d& v) {
  return center.cross(v).norm() / center.dot(v);
}

CenterEstimate euclidean_circumcenter(const Eigen::MatrixXd& v) {
  const Eigen::Vector2d p0 = v.col(0), p1 = v.col(1), p2 = v.col(2);
  Eigen::Matrix2d m;
  m.row(0) = (p1 - p0).transpose();
  m.row(1) = (p2 - p0).transpose();
  const double scale = std::max((p1 - p0).squaredNorm(), (p2 - p0).squaredNorm());
  if (std::abs(m.determinant()) <= 1e-14 * scale) {
    throw GeometryError(ErrorCode::ConditioningError, "near-collinear Euclidean vertices");
  }
  const Eigen::Vector2d rhs(0.5 * (p1.squaredNorm() - p0.squaredNorm()),
                            0.5 * (p2.squaredNorm() - p0.squaredNorm()));
  const Eigen::Vector2d c = m.partialPivLu().solve(rhs);
  return {c, (c - p0).norm()};
}

CenterEstimate spherical_circumcenter(const Eigen::MatrixXd& v) {
  const Eigen::Vector3d p0 = v.col(0), p1 = v.col(1), p2 = v.col(2);
  Eigen::Vector3d c = (p1 - p0).cross(p2 - p0);
  if (c.norm() <= 1e-14) throw GeometryError(ErrorCode::ConditioningError, "coincident vertices");
  c.normalize();
  if (c.dot(p0) < 0) c = -c;
  if (c.dot(p0) <= 1e-12) {
    throw GeometryError(ErrorCode::ConditioningError, "circumcenter on the vertices' great circle");
  }
  return {c, tan_from_cos(c, p0)};
}

// Equal Minkowski products with the lifted vertices: <W, X_i> = -1, so
// J W solves X^T (J W) = -1.
CenterEstimate hyperbolic_circumcenter(const Eigen::MatrixXd& v) {
  Eigen::Matrix3d lifted;
  for (int j = 0; j < 3; ++j) lifted.col(j) = lift(v.col(j));
  auto lu = lifted.transpose().fullPivLu();
  if (!lu.isInvertible()) throw GeometryError(ErrorCode::ConditioningError, "collinear Klein vertices");
  Eigen::Vector3d w = lu.solve(-Eigen::Vector3d::Ones());
  w.z() = -w.z();
  if (w.z() < 0) w = -w;
  const Eigen::Vector2d c = klein_of(w);
  return {c, std::tanh(klein_distance(c, Eigen::Vector2d(v.col(0))))};
}

CenterEstimate euclidean_incenter(const Eigen::MatrixXd& v) {
  const Eigen::Vector2d A = v.col(0), B = v.col(1), C = v.col(2);
  const double a = (B - C).norm(), b = (A - C).norm(), c = (A - B).norm();
  const Eigen::Vector2d center = (a * A + b * B + c * C) / (a + b + c);
  const Eigen::Vector2d ab = B - A, ai = center - A;
  return {center, std::abs(ab.x() * ai.y() - ab.y() * ai.x()) / ab.norm()};
}

// Unit normals of the three side planes, oriented toward the opposite vertex.
Eigen::Matrix3d inward_side_normals(const Eigen::MatrixXd& v) {
  Eigen::Matrix3d normals;
  for (int j = 0; j < 3; ++j) {
    const Eigen::Vector3d p = v.col((j + 1) % 3), q = v.col((j + 2) % 3);
    Eigen::Vector3d n = p.cross(q);
    if (n.norm() <= 1e-14) throw GeometryError(ErrorCode::ConditioningError, "degenerate side");
    n.normalize();
    if (n.dot(v.col(j)) < 0) n = -n;
    normals.row(j) = n.transpose();
  }
  return normals;
}

CenterEstimate spherical_incenter(const Eigen::MatrixXd& v) {
  const Eigen::Matrix3d normals = inward_side_normals(v);
  // n_j . c equal for all j: c is proportional to N^{-1} 1.
  auto lu = normals.fullPivLu();
  if (!lu.isInvertible()) throw GeometryError(ErrorCode::ConditioningError, "singular side normals");
  Eigen::Vector3d c = lu.solve(Eigen::Vector3d::Ones()).normalized();
  if ((normals * c).minCoeff() < 0) c = -c;
  const double sin_r = (normals * c).mean();
  return {c, sin_r / std::sqrt((1 - sin_r) * (1 + sin_r))};
}

// Signed distance to side j is asinh(X . m_j) with m_j the side plane's
// normal scaled to unit Minkowski length and oriented toward vertex j, so
// equal distances mean X is proportional to M^{-1} 1.
CenterEstimate hyperbolic_incenter(const Eigen::MatrixXd& v) {
  Eigen::Matrix3d normals;
  for (int j = 0; j < 3; ++j) {
    const Eigen::Vector2d p = v.col((j + 1) % 3), q = v.col((j + 2) % 3);
    Eigen::Vector3d m = Eigen::Vector3d(p.x(), p.y(), 1).cross(Eigen::Vector3d(q.x(), q.y(), 1));
    const double spacelike = m.x() * m.x() + m.y() * m.y() - m.z() * m.z();
    if (!(spacelike > 0)) throw GeometryError(ErrorCode::ConditioningError, "degenerate side");
    m /= std::sqrt(spacelike);
    if (m.dot(lift(v.col(j))) < 0) m = -m;
    normals.row(j) = m.transpose();
  }
  auto lu = normals.fullPivLu();
  if (!lu.isInvertible()) throw GeometryError(ErrorCode::ConditioningError, "singular side normals");
  Eigen::Vector3d w = lu.solve(Eigen::Vector3d::Ones());
  if (w.z() < 0) w = -w;
  const Eigen::Vector2d c = klein_of(w);
  return {c, std::tanh(klein_distance_to_line(c, v.col(1), v.col(2)))};
}

}  // namespace

EmbeddedTriangle embed(GeometryKind kind, const Eigen::MatrixXd& vertices,
                       const ValidationOptions& opts) {
  return {kind, vertices, side_lengths_from_vertices(kind, vertices, opts)};
}

std::pair<Eigen::Vector2d, Eigen::Vector2d> chord_endpoints(const Eigen::Vector2d& p,
                                                            const Eigen::Vector2d& q) {
  const Eigen::Vector2d d = (q - p).normalized();
  const double pd = p.dot(d);
  const double disc = std::sqrt(pd * pd - p.squaredNorm() + 1);
  return {p + (-pd - disc) * d, p + (-pd + disc) * d};
}

double klein_distance_cross_ratio(const Eigen::Vector2d& p, const Eigen::Vector2d& q) {
  if (p.norm() >= 1 || q.norm() >= 1) {
    throw GeometryError(ErrorCode::InvalidInput, "Klein point outside the open unit disk");
  }
  if (p == q) return 0;
  const auto [a, b] = chord_endpoints(p, q);
  return 0.5 * std::log(((a - q).norm() * (p - b).norm()) / ((a - p).norm() * (q - b).norm()));
}

double klein_line_side(const Eigen::Vector2d& x, const Eigen::Vector2d& a,
                       const Eigen::Vector2d& b) {
  const Eigen::Vector3d m = Eigen::Vector3d(a.x(), a.y(), 1).cross(Eigen::Vector3d(b.x(), b.y(), 1));
  return m.dot(Eigen::Vector3d(x.x(), x.y(), 1));
}

double klein_distance_to_line(const Eigen::Vector2d& x, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
  if (!(x.norm() < 1) || !(a.norm() < 1) || !(b.norm() < 1)) {
    throw GeometryError(ErrorCode::InvalidInput, "Klein point outside the open unit disk");
  }
  // Hyperboloid model: the geodesic is the plane through 0, (a,1), (b,1) with
  // Euclidean normal m; its unit Minkowski normal is diag(1,1,-1) m / norm.
  const Eigen::Vector3d m = Eigen::Vector3d(a.x(), a.y(), 1).cross(Eigen::Vector3d(b.x(), b.y(), 1));
  const double spacelike = m.x() * m.x() + m.y() * m.y() - m.z() * m.z();
  if (!(spacelike > 0)) throw GeometryError(ErrorCode::ConditioningError, "degenerate Klein chord");
  const double lift = std::sqrt((1 - x.norm()) * (1 + x.norm()));
  return std::asinh(std::abs(klein_line_side(x, a, b)) / (lift * std::sqrt(spacelike)));
}

CenterEstimate circumcenter_oracle(const EmbeddedTriangle& e) {
  switch (e.kind) {
    case GeometryKind::Euclidean: return euclidean_circumcenter(e.vertices);
    case GeometryKind::Spherical: return spherical_circumcenter(e.vertices);
    case GeometryKind::Hyperbolic: return hyperbolic_circumcenter(e.vertices);
  }
  throw GeometryError(ErrorCode::InvalidInput, "unknown geometry");
}

CenterEstimate incenter_oracle(const EmbeddedTriangle& e) {
  switch (e.kind) {
    case GeometryKind::Euclidean: return euclidean_incenter(e.vertices);
    case GeometryKind::Spherical: return spherical_incenter(e.vertices);
    case GeometryKind::Hyperbolic: return hyperbolic_incenter(e.vertices);
  }
  throw GeometryError(ErrorCode::InvalidInput, "unknown geometry");
}

EmbeddedTriangle tangent_projection(const EmbeddedTriangle& e) {
  if (e.kind != GeometryKind::Spherical) {
    throw GeometryError(ErrorCode::InvalidInput, "tangent projection needs a spherical triangle");
  }
  const Eigen::Vector3d center = spherical_circumcenter(e.vertices).center;
  const Eigen::Quaterniond to_pole =
      Eigen::Quaterniond::FromTwoVectors(center, Eigen::Vector3d::UnitZ());
  Eigen::MatrixXd plane(2, 3);
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector3d p = to_pole * Eigen::Vector3d(e.vertices.col(i));
    if (p.z() <= 1e-12) {
      throw GeometryError(ErrorCode::ProjectionDomainError, "vertex not above the tangent plane");
    }
    plane.col(i) = p.head<2>() / p.z();
  }
  return embed(GeometryKind::Euclidean, plane);
}

}  // namespace curvtri
