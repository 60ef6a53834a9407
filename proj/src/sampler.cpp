#include <algorithm>
#include <numbers>
#include <string>

#include <Eigen/Geometry>

#include "curvtri/oracle.hpp"
#include "curvtri/random.hpp"

namespace curvtri {

namespace {

constexpr std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
constexpr std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

Eigen::Quaterniond random_rotation(std::mt19937_64& eng) {
  Eigen::Vector4d q;
  do {
    for (int i = 0; i < 4; ++i) q(i) = standard_normal(eng);
  } while (q.norm() < 1e-6);
  q.normalize();
  return Eigen::Quaterniond(q(0), q(1), q(2), q(3));
}

Eigen::Vector3d cap_point(std::mt19937_64& eng, double cap_angle) {
  const double z = 1.0 - uniform01(eng) * (1.0 - std::cos(cap_angle));
  const double phi = 2 * std::numbers::pi * uniform01(eng);
  const double rho = std::sqrt(std::max(0.0, 1 - z * z));
  return {rho * std::cos(phi), rho * std::sin(phi), z};
}

Eigen::Vector2d disk_point(std::mt19937_64& eng, double radius) {
  const double u = radius * std::sqrt(uniform01(eng));
  const double phi = 2 * std::numbers::pi * uniform01(eng);
  return {u * std::cos(phi), u * std::sin(phi)};
}

bool sides_in_range(const Triangle& t, const SamplerConfig& cfg) {
  return std::ranges::all_of(t.sides(),
                             [&](double x) { return x >= cfg.min_side && x <= cfg.max_side; });
}

// Measures sides without throwing; nullopt on any rejection.
std::optional<EmbeddedTriangle> try_embed(GeometryKind kind, const Eigen::MatrixXd& v,
                                          const SamplerConfig& cfg) {
  const Eigen::VectorXd v0 = v.col(0), v1 = v.col(1), v2 = v.col(2);
  const double a = geodesic_distance(kind, v1, v2);
  const double b = geodesic_distance(kind, v0, v2);
  const double c = geodesic_distance(kind, v0, v1);
  if (triangle_violation(kind, a, b, c)) return std::nullopt;
  Triangle t = validate_triangle(kind, a, b, c);
  if (!sides_in_range(t, cfg)) return std::nullopt;
  const double slack = std::min({a + b - c, a + c - b, b + c - a});
  if (slack < cfg.min_relative_slack * std::max({a, b, c})) return std::nullopt;
  return EmbeddedTriangle{kind, v, t};
}

}  // namespace

SamplerConfig SamplerConfig::defaults(GeometryKind kind) {
  SamplerConfig cfg;
  switch (kind) {
    case GeometryKind::Euclidean: cfg.max_side = 10.0; break;
    case GeometryKind::Spherical: cfg.max_side = std::numbers::pi; break;
    case GeometryKind::Hyperbolic: cfg.max_side = 3.0; break;
  }
  return cfg;
}

void check_config(GeometryKind kind, const SamplerConfig& cfg) {
  auto fail = [](const std::string& what) { throw GeometryError(ErrorCode::InvalidInput, what); };
  if (!(cfg.min_side > 0)) fail("min_side must be positive");
  if (!(cfg.max_side > cfg.min_side)) fail("max_side must exceed min_side");
  if (cfg.count < 1) fail("count must be at least 1");
  if (!(cfg.min_relative_slack >= 0 && cfg.min_relative_slack < 1)) {
    fail("min_relative_slack must lie in [0, 1)");
  }
  if (kind == GeometryKind::Spherical && cfg.max_side > std::numbers::pi) {
    fail("spherical max_side must not exceed pi");
  }
  if (kind == GeometryKind::Hyperbolic && cfg.max_side > ValidationOptions{}.hyperbolic_side_cap) {
    fail("hyperbolic max_side exceeds the side cap");
  }
  if (kind == GeometryKind::Spherical &&
      !(cfg.cap_angle > 0 && cfg.cap_angle < std::numbers::pi / 2)) {
    fail("cap_angle must lie in (0, pi/2)");
  }
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream_index, std::uint64_t salt) {
  std::seed_seq seq{lo32(seed), hi32(seed), lo32(stream_index), hi32(stream_index), lo32(salt),
                    hi32(salt)};
  return std::mt19937_64(seq);
}

EmbeddedTriangle sample_triangle(GeometryKind kind, const SamplerConfig& cfg,
                                 std::uint64_t stream_index) {
  check_config(kind, cfg);
  auto eng = make_stream(cfg.seed, stream_index, static_cast<std::uint64_t>(curvature(kind) + 1));

  const Eigen::Quaterniond rotation =
      kind == GeometryKind::Spherical ? random_rotation(eng) : Eigen::Quaterniond::Identity();
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    Eigen::MatrixXd v;
    switch (kind) {
      case GeometryKind::Euclidean:
        v.resize(2, 3);
        for (int i = 0; i < 3; ++i) {
          v.col(i) << uniform(eng, 0, cfg.max_side), uniform(eng, 0, cfg.max_side);
        }
        break;
      case GeometryKind::Spherical:
        v.resize(3, 3);
        for (int i = 0; i < 3; ++i) v.col(i) = (rotation * cap_point(eng, cfg.cap_angle)).normalized();
        break;
      case GeometryKind::Hyperbolic:
        v.resize(2, 3);
        for (int i = 0; i < 3; ++i) v.col(i) = disk_point(eng, std::tanh(cfg.max_side));
        break;
    }
    if (auto e = try_embed(kind, v, cfg)) return *std::move(e);
  }
  throw GeometryError(ErrorCode::RejectionBudgetExceeded,
                      "stream " + std::to_string(stream_index) + " of " +
                          std::string(to_string(kind)));
}

EmbeddedTriangle sample_centered_hyperbolic(const SamplerConfig& cfg, std::uint64_t stream_index) {
  check_config(GeometryKind::Hyperbolic, cfg);
  auto eng = make_stream(cfg.seed, stream_index, 7);
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    const double u = uniform(eng, 0, std::tanh(cfg.max_side));
    Eigen::MatrixXd v(2, 3);
    for (int i = 0; i < 3; ++i) {
      const double phi = 2 * std::numbers::pi * uniform01(eng);
      v.col(i) << u * std::cos(phi), u * std::sin(phi);
    }
    if (auto e = try_embed(GeometryKind::Hyperbolic, v, cfg)) return *std::move(e);
  }
  throw GeometryError(ErrorCode::RejectionBudgetExceeded,
                      "centered hyperbolic stream " + std::to_string(stream_index));
}

}  // namespace curvtri
