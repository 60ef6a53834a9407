#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "curvtri/errors.hpp"

namespace curvtri {

/// Constant-curvature model selector. The underlying value is the Gaussian
/// curvature K.
enum class GeometryKind : int { Euclidean = 0, Spherical = 1, Hyperbolic = -1 };

inline constexpr std::array<GeometryKind, 3> kAllGeometries = {
    GeometryKind::Euclidean, GeometryKind::Spherical, GeometryKind::Hyperbolic};

constexpr int curvature(GeometryKind kind) { return static_cast<int>(kind); }

constexpr std::string_view to_string(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::Euclidean: return "euclidean";
    case GeometryKind::Spherical: return "spherical";
    case GeometryKind::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

std::optional<GeometryKind> parse_geometry(std::string_view name);

// ---------------------------------------------------------------------------
// Scalar formulas. These do no validation and are usable with any real scalar
// type that provides the usual math overloads.
// ---------------------------------------------------------------------------

/// The s-function: x/2, sin(x/2) or sinh(x/2). Geometrically it is half the
/// chord length subtending a geodesic segment of length x.
template <typename Scalar>
Scalar half_chord(GeometryKind kind, Scalar x) {
  using std::sin;
  using std::sinh;
  switch (kind) {
    case GeometryKind::Euclidean: return x / Scalar(2);
    case GeometryKind::Spherical: return sin(x / Scalar(2));
    case GeometryKind::Hyperbolic: return sinh(x / Scalar(2));
  }
  return Scalar(0);
}

/// Slack product s(a+b-c) s(a+c-b) s(b+c-a); its square root is J.
template <typename Scalar>
Scalar slack_product(GeometryKind kind, Scalar a, Scalar b, Scalar c) {
  return half_chord(kind, a + b - c) * half_chord(kind, a + c - b) *
         half_chord(kind, b + c - a);
}

/// R, tan R or tanh R from the side lengths.
template <typename Scalar>
Scalar circumradius_value(GeometryKind kind, Scalar a, Scalar b, Scalar c) {
  using std::sqrt;
  const Scalar num = Scalar(2) * half_chord(kind, a) * half_chord(kind, b) * half_chord(kind, c);
  return num / sqrt(slack_product(kind, a, b, c) * half_chord(kind, a + b + c));
}

/// r, tan r or tanh r from the side lengths.
template <typename Scalar>
Scalar inradius_value(GeometryKind kind, Scalar a, Scalar b, Scalar c) {
  using std::sqrt;
  return sqrt(slack_product(kind, a, b, c) / half_chord(kind, a + b + c));
}

/// Inverse of the radius wrapper: identity, arctan or artanh.
template <typename Scalar>
Scalar radius_from_value(GeometryKind kind, Scalar v) {
  using std::atan;
  using std::atanh;
  switch (kind) {
    case GeometryKind::Euclidean: return v;
    case GeometryKind::Spherical: return atan(v);
    case GeometryKind::Hyperbolic: return atanh(v);
  }
  return v;
}

/// Wrapper applied to a geodesic radius: identity, tan or tanh.
template <typename Scalar>
Scalar radius_to_value(GeometryKind kind, Scalar radius) {
  using std::tan;
  using std::tanh;
  switch (kind) {
    case GeometryKind::Euclidean: return radius;
    case GeometryKind::Spherical: return tan(radius);
    case GeometryKind::Hyperbolic: return tanh(radius);
  }
  return radius;
}

/// Hyperbolic distance between two points of the Klein disk.
///
/// Evaluated through inner products rather than through the boundary points of
/// the chord:
///   sinh^2 d = (|q-p|^2 - (p x (q-p))^2) / ((1-|p|^2)(1-|q|^2)),
/// which is free of cancellation for nearby points and for chords close to a
/// diameter. Throws InvalidInput when a point is not inside the open disk.
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar klein_distance(const Eigen::MatrixBase<DerivedP>& p,
                                         const Eigen::MatrixBase<DerivedQ>& q) {
  using Scalar = typename DerivedP::Scalar;
  using std::asinh;
  using std::sqrt;
  const Scalar np = p.norm();
  const Scalar nq = q.norm();
  if (!(np < Scalar(1)) || !(nq < Scalar(1))) {
    throw GeometryError(ErrorCode::InvalidInput, "Klein point outside the open unit disk");
  }
  const Scalar dx = q(0) - p(0);
  const Scalar dy = q(1) - p(1);
  const Scalar cross = p(0) * dy - p(1) * dx;
  const Scalar num = dx * dx + dy * dy - cross * cross;
  const Scalar den = (Scalar(1) - np) * (Scalar(1) + np) * (Scalar(1) - nq) * (Scalar(1) + nq);
  return asinh(sqrt(std::max(num, Scalar(0)) / den));
}

/// Great-circle distance between unit vectors, via atan2 so that short arcs
/// keep full relative precision.
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar arc_distance(const Eigen::MatrixBase<DerivedP>& p,
                                       const Eigen::MatrixBase<DerivedQ>& q) {
  using std::atan2;
  return atan2(p.cross(q).norm(), p.dot(q));
}

// ---------------------------------------------------------------------------
// Validated triangles.
// ---------------------------------------------------------------------------

struct ValidationOptions {
  double hyperbolic_side_cap = 20.0;
  /// Minimum triangle-inequality slack relative to the longest side.
  double degenerate_slack = 1e-14;
};

/// Side-length triple known to describe a triangle in its geometry. The only
/// way to obtain one is through `validate_triangle`.
class Triangle {
 public:
  GeometryKind kind() const { return kind_; }
  double a() const { return sides_[0]; }
  double b() const { return sides_[1]; }
  double c() const { return sides_[2]; }
  const std::array<double, 3>& sides() const { return sides_; }

  bool operator==(const Triangle&) const = default;

 private:
  friend Triangle validate_triangle(GeometryKind, double, double, double,
                                    const ValidationOptions&);
  Triangle(GeometryKind kind, double a, double b, double c) : kind_(kind), sides_{a, b, c} {}

  GeometryKind kind_;
  std::array<double, 3> sides_;
};

/// First violated invariant for the given sides, or nullopt if they form a
/// valid triangle. Non-throwing counterpart of `validate_triangle`.
std::optional<ErrorCode> triangle_violation(GeometryKind kind, double a, double b, double c,
                                            const ValidationOptions& opts = {});

Triangle validate_triangle(GeometryKind kind, double a, double b, double c,
                           const ValidationOptions& opts = {});

/// s(x) with domain checking.
double s_func(GeometryKind kind, double x);

/// The Euclidean triangle with sides s(a), s(b), s(c).
Triangle euclidean_shadow(const Triangle& t);

/// rho(R) or rho(r): R, tan R or tanh R depending on the geometry.
struct RadiusFunctional {
  GeometryKind kind;
  double value;

  /// The geodesic radius the functional wraps.
  double radius() const;
};

RadiusFunctional circumradius_functional(const Triangle& t);
RadiusFunctional inradius_functional(const Triangle& t);
double radius_from_functional(GeometryKind kind, double value);

struct JPair {
  double j;
  double jbar;
};

JPair j_invariants(const Triangle& t);

/// Pairwise geodesic distances of three vertices given as the columns of
/// `vertices` (2 rows for the plane and the Klein disk, 3 rows of unit
/// vectors for the sphere). Sides are returned as (|v2 v3|, |v1 v3|, |v1 v2|).
Triangle side_lengths_from_vertices(GeometryKind kind, const Eigen::MatrixXd& vertices,
                                    const ValidationOptions& opts = {});

/// Geodesic distance in the model used by `side_lengths_from_vertices`.
double geodesic_distance(GeometryKind kind, const Eigen::VectorXd& p, const Eigen::VectorXd& q);

}  // namespace curvtri
