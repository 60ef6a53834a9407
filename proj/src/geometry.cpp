#include "curvtri/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

namespace curvtri {

std::optional<GeometryKind> parse_geometry(std::string_view name) {
  for (GeometryKind kind : kAllGeometries) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::optional<ErrorCode> triangle_violation(GeometryKind kind, double a, double b, double c,
                                            const ValidationOptions& opts) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) return ErrorCode::InvalidInput;
  if (a <= 0 || b <= 0 || c <= 0) return ErrorCode::NonPositiveSide;

  const double longest = std::max({a, b, c});
  if (kind == GeometryKind::Hyperbolic && longest > opts.hyperbolic_side_cap) {
    return ErrorCode::SideLengthCapExceeded;
  }
  if (kind == GeometryKind::Spherical && longest >= std::numbers::pi) {
    return ErrorCode::SphericalDomainViolated;
  }

  const double floor = opts.degenerate_slack * longest;
  if (a + b - c <= floor || a + c - b <= floor || b + c - a <= floor) {
    return ErrorCode::TriangleInequalityViolated;
  }

  if (kind == GeometryKind::Spherical) {
    if (a + b + c >= 2 * std::numbers::pi) return ErrorCode::SphericalDomainViolated;
    // tan R must be finite and positive, i.e. R < pi/2.
    const double tan_r = circumradius_value(kind, a, b, c);
    if (!std::isfinite(tan_r) || tan_r <= 0) return ErrorCode::SphericalDomainViolated;
  }
  if (kind == GeometryKind::Hyperbolic) {
    // Not every hyperbolic triangle has a circumscribed circle. When it does
    // not, the closed form returns a value >= 1 that is not a tanh.
    const double tanh_r = circumradius_value(kind, a, b, c);
    if (!std::isfinite(tanh_r) || tanh_r >= 1) return ErrorCode::NoCircumcircle;
  }
  return std::nullopt;
}

Triangle validate_triangle(GeometryKind kind, double a, double b, double c,
                           const ValidationOptions& opts) {
  if (auto code = triangle_violation(kind, a, b, c, opts)) {
    std::ostringstream os;
    os.precision(17);
    os << to_string(kind) << " sides (" << a << ", " << b << ", " << c << ")";
    throw GeometryError(*code, os.str());
  }
  return Triangle(kind, a, b, c);
}

double s_func(GeometryKind kind, double x) {
  if (!(x >= 0)) throw GeometryError(ErrorCode::InvalidInput, "s-function of a negative length");
  if (kind == GeometryKind::Spherical && x > 2 * std::numbers::pi) {
    throw GeometryError(ErrorCode::InvalidInput, "spherical length exceeds 2*pi");
  }
  return half_chord(kind, x);
}

Triangle euclidean_shadow(const Triangle& t) {
  return validate_triangle(GeometryKind::Euclidean, half_chord(t.kind(), t.a()),
                           half_chord(t.kind(), t.b()), half_chord(t.kind(), t.c()));
}

double RadiusFunctional::radius() const { return radius_from_functional(kind, value); }

RadiusFunctional circumradius_functional(const Triangle& t) {
  return {t.kind(), circumradius_value(t.kind(), t.a(), t.b(), t.c())};
}

RadiusFunctional inradius_functional(const Triangle& t) {
  return {t.kind(), inradius_value(t.kind(), t.a(), t.b(), t.c())};
}

double radius_from_functional(GeometryKind kind, double value) {
  if (!(value > 0)) throw GeometryError(ErrorCode::InvalidInput, "radius functional must be positive");
  if (kind == GeometryKind::Hyperbolic && value >= 1) {
    throw GeometryError(ErrorCode::InvalidInput, "tanh value must be below 1");
  }
  return radius_from_value(kind, value);
}

JPair j_invariants(const Triangle& t) {
  const GeometryKind k = t.kind();
  const double sa = half_chord(k, t.a());
  const double sb = half_chord(k, t.b());
  const double sc = half_chord(k, t.c());
  return {std::sqrt(slack_product(k, t.a(), t.b(), t.c())),
          std::sqrt((sa + sb - sc) * (sa + sc - sb) * (sb + sc - sa))};
}

double geodesic_distance(GeometryKind kind, const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  switch (kind) {
    case GeometryKind::Euclidean:
      return (p - q).norm();
    case GeometryKind::Spherical: {
      const Eigen::Vector3d u = p.head<3>();
      const Eigen::Vector3d v = q.head<3>();
      return arc_distance(u, v);
    }
    case GeometryKind::Hyperbolic: {
      const Eigen::Vector2d u = p.head<2>();
      const Eigen::Vector2d v = q.head<2>();
      return klein_distance(u, v);
    }
  }
  return 0;
}

Triangle side_lengths_from_vertices(GeometryKind kind, const Eigen::MatrixXd& vertices,
                                    const ValidationOptions& opts) {
  const Eigen::Index dim = kind == GeometryKind::Spherical ? 3 : 2;
  if (vertices.rows() != dim || vertices.cols() != 3) {
    throw GeometryError(ErrorCode::InvalidInput, "expected three vertices as matrix columns");
  }
  if (kind == GeometryKind::Spherical) {
    for (Eigen::Index i = 0; i < 3; ++i) {
      if (std::abs(vertices.col(i).norm() - 1) > 1e-12) {
        throw GeometryError(ErrorCode::InvalidInput, "spherical vertex is not a unit vector");
      }
    }
    Eigen::Matrix3d m = vertices;
    if (std::abs(m.determinant()) <= 1e-14) {
      throw GeometryError(ErrorCode::DegenerateTriangle, "vertices lie on one great circle");
    }
  } else {
    const Eigen::Vector2d e1 = vertices.col(1) - vertices.col(0);
    const Eigen::Vector2d e2 = vertices.col(2) - vertices.col(0);
    const double scale = std::max({e1.squaredNorm(), e2.squaredNorm(),
                                   (vertices.col(2) - vertices.col(1)).squaredNorm()});
    if (scale == 0 || std::abs(e1.x() * e2.y() - e1.y() * e2.x()) <= 1e-14 * scale) {
      throw GeometryError(ErrorCode::DegenerateTriangle, "vertices are collinear");
    }
  }
  const Eigen::VectorXd v0 = vertices.col(0), v1 = vertices.col(1), v2 = vertices.col(2);
  return validate_triangle(kind, geodesic_distance(kind, v1, v2), geodesic_distance(kind, v0, v2),
                           geodesic_distance(kind, v0, v1), opts);
}

}  // namespace curvtri
