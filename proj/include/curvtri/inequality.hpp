#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curvtri/geometry.hpp"
#include "curvtri/oracle.hpp"

namespace curvtri {

/// f(x, y) applied to (rho(R), rho(r)).
using RadiusExpr = std::function<double(double, double)>;
/// g(x, y, z) applied to side-derived quantities.
using SideExpr = std::function<double(double, double, double)>;

enum class Monotonicity { DecreasingOnM, IncreasingOnM, Constant, Neither };

std::string_view to_string(Monotonicity m);

/// Euclidean inequality f(R, r) >= g(a, b, c) with f and g homogeneous of
/// the same degree.
struct HomogeneousPair {
  std::string name;
  RadiusExpr f;
  SideExpr g;
  int degree = 0;
  Monotonicity claimed_class = Monotonicity::Neither;
  bool equality_iff_equilateral = true;
};

inline constexpr double kHoldsFloor = 1e-12;

struct InequalityEvaluation {
  double lhs;
  double rhs;
  double gap;
  bool holds;
  /// Unset for evaluations on simplices.
  std::optional<Triangle> triangle;

  /// gap / max(|lhs|, |rhs|); scale-free across triangle sizes.
  double normalized_gap() const;
};

InequalityEvaluation make_evaluation(double lhs, double rhs, std::optional<Triangle> t,
                                     double floor = kHoldsFloor);

struct MonotonicityOptions {
  int grid_size = 512;
  double epsilon = 1e-4;
  /// Values of M probed. Homogeneity makes them equivalent; disagreement
  /// between them yields Neither.
  std::vector<double> scales = {0.25, 1.0, 4.0};
};

/// Sign class of x -> f(2M^2/x, x) on a log-spaced grid over (eps*M, M].
/// Throws EvaluationError on non-finite values.
Monotonicity classify_monotonicity(const RadiusExpr& f, int degree,
                                   const MonotonicityOptions& opts = {});

/// Evaluates f(rho(R), rho(r)) >= 2^n g(s(a), s(b), s(c)) ((s(a)+s(b)+s(c)) / s(a+b+c))^(n/2)
/// without checking that the transport is justified. In Euclidean geometry
/// this is exactly the original inequality f(R, r) >= g(a, b, c).
InequalityEvaluation evaluate_transported(const HomogeneousPair& p, const Triangle& t,
                                          double floor = kHoldsFloor);

/// A pair transported to a non-Euclidean geometry after its monotonicity
/// class has been certified.
class TransportedInequality {
 public:
  const HomogeneousPair& pair() const { return pair_; }
  GeometryKind kind() const { return kind_; }
  Monotonicity certified_class() const { return class_; }

  InequalityEvaluation operator()(const Triangle& t, double floor = kHoldsFloor) const;

 private:
  friend TransportedInequality generalize(const HomogeneousPair&, GeometryKind,
                                          const MonotonicityOptions&);
  TransportedInequality(HomogeneousPair p, GeometryKind k, Monotonicity c)
      : pair_(std::move(p)), kind_(k), class_(c) {}

  HomogeneousPair pair_;
  GeometryKind kind_;
  Monotonicity class_;
};

/// Requires a decreasing (spherical) or increasing (hyperbolic) class; a
/// constant profile satisfies both. Throws TheoremPreconditionError otherwise.
TransportedInequality generalize(const HomogeneousPair& p, GeometryKind kind,
                                 const MonotonicityOptions& opts = {});

/// One term of an inequality chain, evaluated on a triangle.
struct ChainTerm {
  std::string label;
  std::function<double(const Triangle&)> value;
};

/// Evaluations of term[i] >= term[i+1] for each adjacent pair.
std::vector<InequalityEvaluation> evaluate_chain(std::span<const ChainTerm> chain, const Triangle& t,
                                                 double floor = kHoldsFloor);

/// A registered inequality: either a homogeneous pair (one link, evaluated
/// through `evaluate_transported`) or an explicit chain of terms.
struct Inequality {
  std::string name;
  std::string statement;
  std::vector<GeometryKind> claimed;
  std::optional<HomogeneousPair> pair;
  std::vector<ChainTerm> chain;
  bool equality_iff_equilateral = true;

  bool claimed_in(GeometryKind kind) const;
  std::size_t link_count() const { return pair ? 1 : chain.size() - 1; }
  std::vector<std::string> link_labels() const;
  std::vector<InequalityEvaluation> evaluate(const Triangle& t, double floor = kHoldsFloor) const;
};

struct RegistrationOptions {
  std::uint64_t seed = 20170601;
  int homogeneity_trials = 64;
  int euclidean_samples = 10000;
};

/// Checks homogeneity of f and g (relative 1e-9 over random scales in
/// [0.1, 10]) and the Euclidean base on random triangles. Throws
/// EvaluationError naming the failed identity.
void check_registration(const Inequality& ineq, const RegistrationOptions& opts = {});

class Registry {
 public:
  Registry() = default;

  /// Runs `check_registration` and appends. Names must be unique.
  void add(Inequality ineq, const RegistrationOptions& opts = {});

  const std::vector<Inequality>& entries() const { return entries_; }
  const Inequality* find(std::string_view name) const;
  const Inequality& at(std::string_view name) const;

 private:
  std::vector<Inequality> entries_;
};

/// The built-in inequalities, checked once on first use.
const Registry& registry_builtin();

/// Chain terms shared by the built-ins.
double radius_ratio(const Triangle& t);
double half_sum_ratio(const Triangle& t);

struct CounterexampleRecord {
  std::string inequality;
  GeometryKind kind;
  Triangle triangle;
  std::size_t link;
  double lhs;
  double rhs;
  double gap;
  std::uint64_t seed;
  std::uint64_t stream_index;
  /// True when found by local refinement starting from the sampled triangle.
  bool refined = false;
};

struct LinkSummary {
  std::string label;
  double min_gap;              // normalized
  double raw_gap_at_min;
  double most_equilateral_gap; // normalized
};

struct EqualityProbe {
  double side;
  double max_abs_gap;  // normalized, over all links
};

/// Near-equilateral but visibly scalene probe: sides scaled from `shape`.
struct SpreadProbe {
  double side;
  std::array<double, 3> sides;
  double min_gap;  // normalized, over all links
};

struct VerificationOptions {
  double floor = kHoldsFloor;
  double spread_threshold = 0.1;
  std::vector<double> probe_scales = {0.1, 0.5, 1.0, 2.0};
  std::vector<std::array<double, 3>> spread_shapes = {{{1.0, 1.0, 0.9}}, {{0.9, 1.0, 1.1}}};
  std::size_t max_counterexamples = 10;
};

struct VerificationResult {
  std::string name;
  GeometryKind kind;
  bool claimed;
  std::int64_t samples = 0;
  std::int64_t violations = 0;
  double min_gap;                 // normalized, over all links
  double most_equilateral_spread; // relative spread of the most equilateral sample
  /// Smallest normalized gap among samples whose relative side spread
  /// (max - min) / max reaches `spread_threshold`; NaN if there were none.
  double min_gap_spread;
  std::vector<LinkSummary> links{};
  std::vector<EqualityProbe> probes{};
  std::vector<SpreadProbe> spread_probes{};
  std::vector<CounterexampleRecord> counterexamples{};
  double wall_time_s = 0;

  bool passed() const { return !claimed || violations == 0; }
};

/// Verifies against pre-sampled triangles; `triangles[i]` must come from
/// stream i of `seed`.
VerificationResult verify_on(const Inequality& ineq, GeometryKind kind,
                             std::span<const Triangle> triangles, std::uint64_t seed,
                             const VerificationOptions& opts = {});

VerificationResult verify_inequality(std::string_view name, GeometryKind kind,
                                     const SamplerConfig& cfg,
                                     const VerificationOptions& opts = {});

/// Evaluates an inequality on exact equilateral triangles of side `side`.
std::vector<InequalityEvaluation> equilateral_probe(const Inequality& ineq, GeometryKind kind,
                                                    double side, double floor = kHoldsFloor);

struct SearchResult {
  std::optional<CounterexampleRecord> counterexample;
  std::int64_t evaluations = 0;
  double best_gap;  // normalized
};

/// Random search followed by coordinate descent on the sides toward a
/// negative gap. Counterexamples are re-verified before being returned.
SearchResult search_counterexample(std::string_view name, GeometryKind kind, std::int64_t budget,
                                   const SamplerConfig& cfg, double floor = kHoldsFloor);

/// Draws cfg.count triangles (stream i for the i-th), in parallel.
std::vector<Triangle> sample_batch(GeometryKind kind, const SamplerConfig& cfg);

}  // namespace curvtri
