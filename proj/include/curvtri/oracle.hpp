#pragma once

#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "curvtri/geometry.hpp"

namespace curvtri {

/// A triangle together with concrete vertices in the geometry's model:
/// columns are unit 3-vectors (sphere), Klein-disk points (hyperbolic) or
/// plane points (Euclidean).
struct EmbeddedTriangle {
  GeometryKind kind;
  Eigen::MatrixXd vertices;
  Triangle sides;
};

/// Builds an EmbeddedTriangle from vertex columns, measuring and validating
/// its sides.
EmbeddedTriangle embed(GeometryKind kind, const Eigen::MatrixXd& vertices,
                       const ValidationOptions& opts = {});

struct SamplerConfig {
  std::uint64_t seed = 42;
  double min_side = 0.01;
  double max_side = 10.0;
  std::int64_t count = 1000;
  /// Half-angle of the spherical cap vertices are drawn from.
  double cap_angle = std::numbers::pi / 2 - 0.05;
  /// Smallest accepted min(a+b-c, a+c-b, b+c-a) / max side. Below it, side
  /// rounding alone moves the radii by more than 1e-9. Zero disables.
  double min_relative_slack = 1e-7;

  /// Default ranges per geometry (the Euclidean box, the full spherical
  /// domain, hyperbolic sides up to 3).
  static SamplerConfig defaults(GeometryKind kind);
};

/// Throws InvalidInput when `cfg` is inconsistent with `kind`.
void check_config(GeometryKind kind, const SamplerConfig& cfg);

/// Independent random stream for (seed, stream_index). Streams never depend
/// on each other, so batches can be split across workers freely.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream_index, std::uint64_t salt = 0);

inline constexpr int kRejectionBudget = 10000;

/// Draws vertices uniformly (spherical cap, Klein sub-disk of radius
/// tanh(max_side), or square box of side max_side) and rejects until the
/// triangle validates with every side in [min_side, max_side].
EmbeddedTriangle sample_triangle(GeometryKind kind, const SamplerConfig& cfg,
                                 std::uint64_t stream_index);

/// Hyperbolic triangle with all three Klein vertices at the same Euclidean
/// radius, so its circumcenter is the origin.
EmbeddedTriangle sample_centered_hyperbolic(const SamplerConfig& cfg, std::uint64_t stream_index);

struct CenterEstimate {
  Eigen::VectorXd center;
  /// rho of the radius: R, tan R or tanh R.
  double rho;
};

/// Vertex-based circumcenter: a linear solve on the vertices (sphere, and the
/// hyperboloid lift for Klein points). Does not use the closed-form radius
/// formulas.
CenterEstimate circumcenter_oracle(const EmbeddedTriangle& e);

/// Vertex-based incenter. Does not use the closed-form radius formulas.
CenterEstimate incenter_oracle(const EmbeddedTriangle& e);

/// Rotates the circumcenter of a spherical triangle to the north pole and
/// centrally projects onto the tangent plane z = 1.
EmbeddedTriangle tangent_projection(const EmbeddedTriangle& e);

/// Hyperbolic distance from a Klein point to the geodesic through `a` and
/// `b`, via the hyperboloid model.
double klein_distance_to_line(const Eigen::Vector2d& x, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b);

/// Sign tells which side of the chord through `a` and `b` the point is on.
double klein_line_side(const Eigen::Vector2d& x, const Eigen::Vector2d& a,
                       const Eigen::Vector2d& b);

/// Klein distance evaluated literally from the cross ratio with the boundary
/// points of the chord through p and q.
double klein_distance_cross_ratio(const Eigen::Vector2d& p, const Eigen::Vector2d& q);

/// Intersections of the line through p and q with the unit circle, ordered so
/// that the line reads first, p, q, second.
std::pair<Eigen::Vector2d, Eigen::Vector2d> chord_endpoints(const Eigen::Vector2d& p,
                                                            const Eigen::Vector2d& q);

}  // namespace curvtri
