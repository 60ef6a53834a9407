#include "curvtri/simplex.hpp"

#include <chrono>
#include <limits>
#include <optional>

#include "curvtri/oracle.hpp"
#include "curvtri/parallel.hpp"
#include "curvtri/random.hpp"

namespace curvtri {

namespace {

constexpr int kSimplexRejectionBudget = 10000;

Eigen::MatrixXd gaussian_matrix(std::mt19937_64& eng, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = standard_normal(eng);
  }
  return m;
}

// Haar-distributed orthogonal matrix from the QR factorization of a Gaussian
// matrix with the signs of R's diagonal folded into Q.
Eigen::MatrixXd random_orthogonal(std::mt19937_64& eng, Eigen::Index m) {
  const Eigen::MatrixXd g = gaussian_matrix(eng, m, m);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < m; ++i) {
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  }
  return q;
}

double longest_edge(const Eigen::MatrixXd& v) {
  double longest = 0;
  for (Eigen::Index i = 0; i < v.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < v.cols(); ++j) {
      longest = std::max(longest, (v.col(i) - v.col(j)).norm());
    }
  }
  return longest;
}

}  // namespace

InequalityEvaluation transfer_check(const EdgeFunction& f, const SphericalSimplex<double>& s,
                                    double floor) {
  const double big = spherical_circumradius(s).radius;
  const double small = spherical_inradius(s).radius;
  std::vector<double> halves = edge_lengths(s);
  for (double& d : halves) d = half_chord(GeometryKind::Spherical, d);
  return make_evaluation(std::tan(big) / std::tan(small), f(halves, s.dimension()), std::nullopt,
                         floor);
}

InequalityEvaluation euclidean_euler_check(const EuclideanSimplex<double>& s, double floor) {
  const double big = euclidean_circumradius(s).radius;
  const double small = euclidean_inradius(s).radius;
  return make_evaluation(big / small, s.dimension(), std::nullopt, floor);
}

EuclideanSimplex<double> sample_euclidean_simplex(int n, std::uint64_t seed,
                                                  std::uint64_t stream_index) {
  auto eng = make_stream(seed, stream_index, 1000 + static_cast<std::uint64_t>(n));
  for (int attempt = 0; attempt < kSimplexRejectionBudget; ++attempt) {
    Eigen::MatrixXd v = gaussian_matrix(eng, n, n + 1);
    const double quality =
        cayley_menger_volume<double>(v) / regular_simplex_volume<double>(n, longest_edge(v));
    if (quality >= 1e-4) return EuclideanSimplex<double>(std::move(v));
  }
  throw GeometryError(ErrorCode::RejectionBudgetExceeded, "Euclidean simplex sampler");
}

SphericalSimplex<double> sample_spherical_simplex(int n, std::uint64_t seed,
                                                  std::uint64_t stream_index,
                                                  const SphericalSamplerConfig& cfg) {
  auto eng = make_stream(seed, stream_index, 2000 + static_cast<std::uint64_t>(n));
  const Eigen::Index m = n + 1;
  const Eigen::MatrixXd rotation = random_orthogonal(eng, m);
  const double min_height = std::cos(cfg.cap_angle);
  for (int attempt = 0; attempt < kSimplexRejectionBudget; ++attempt) {
    Eigen::MatrixXd v(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      Eigen::VectorXd p;
      do {
        p = gaussian_matrix(eng, m, 1);
        p.normalize();
      } while (p(m - 1) <= min_height);
      v.col(i) = rotation * p;
    }
    v.colwise().normalize();
    if (std::abs(v.determinant()) < 1e-8) continue;
    try {
      SphericalSimplex<double> s(v);
      if (spherical_circumradius(s).radius < cfg.max_circumradius) return s;
    } catch (const GeometryError&) {
      continue;
    }
  }
  throw GeometryError(ErrorCode::RejectionBudgetExceeded, "spherical simplex sampler");
}

SimplexVerification verify_simplex_euler(int n, GeometryKind kind, std::uint64_t seed,
                                         std::int64_t count, double floor) {
  if (n < 2) throw GeometryError(ErrorCode::InvalidInput, "simplex dimension must be at least 2");
  if (kind == GeometryKind::Hyperbolic) {
    throw GeometryError(ErrorCode::InvalidInput, "hyperbolic simplices are not supported");
  }
  const auto start = std::chrono::steady_clock::now();
  constexpr double inf = std::numeric_limits<double>::infinity();

  struct Slot {
    double gap;
    bool holds;
    double margin = inf;
    double projected_volume = inf;
  };
  std::vector<std::optional<Slot>> slots(static_cast<std::size_t>(count));
  parallel_for(count, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      const auto stream = static_cast<std::uint64_t>(i);
      Slot slot{};
      if (kind == GeometryKind::Euclidean) {
        const auto e = euclidean_euler_check(sample_euclidean_simplex(n, seed, stream), floor);
        slot = {e.normalized_gap(), e.holds, inf, inf};
      } else {
        const auto s = sample_spherical_simplex(n, seed, stream);
        const auto e = transfer_check(euler_edge_bound, s, floor);
        const auto projected = gnomonic_project(s);
        const double tan_r = std::tan(spherical_inradius(s).radius);
        slot = {e.normalized_gap(), e.holds, euclidean_inradius(projected).radius - tan_r,
                projected.volume()};
      }
      slots[static_cast<std::size_t>(i)] = slot;
    }
  });

  SimplexVerification res{.dimension = n,
                          .kind = kind,
                          .min_gap = inf,
                          .equality_probe_gap = 0,
                          .min_projection_margin = inf,
                          .min_projected_volume = inf};
  for (const auto& s : slots) {
    ++res.samples;
    res.min_gap = std::min(res.min_gap, s->gap);
    if (!s->holds) ++res.violations;
    if (kind == GeometryKind::Spherical) {
      res.min_projection_margin = std::min(res.min_projection_margin, s->margin);
      res.min_projected_volume = std::min(res.min_projected_volume, s->projected_volume);
      if (!(s->margin >= -1e-10) || !(s->projected_volume > 0)) ++res.projection_violations;
    }
  }
  if (kind == GeometryKind::Euclidean) {
    res.min_projection_margin = 0;
    res.min_projected_volume = 0;
    const auto reg = regular_simplex<double>(n);
    const double big = euclidean_circumradius(reg).radius;
    res.equality_probe_gap = std::abs(big - n * euclidean_inradius(reg).radius) / big;
  } else {
    const auto orth = orthant_simplex<double>(n);
    const double big = std::tan(spherical_circumradius(orth).radius);
    res.equality_probe_gap = std::abs(big - n * std::tan(spherical_inradius(orth).radius)) / big;
  }
  res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace curvtri
