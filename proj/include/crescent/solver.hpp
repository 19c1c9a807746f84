#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "crescent/classify.hpp"
#include "crescent/geometry.hpp"

namespace crescent {

struct SolverConfig {
  int starts = 200;
  int max_iters = 500;
  /// Bound on the sum of squared constraint violations.
  double residual_tol = 1e-10;
  double margin_tol = 1e-6;
  double zero_tol = 1e-9;
  double distinct_tol = 1e-3;
  std::uint64_t seed = 42;
  double coord_box = 2.0;
  double dist_min = 0.2;
  double dist_max = 3.0;

  /// Throws InvalidArgument on a non-positive start count or tolerance, or
  /// an empty distance range.
  void validate() const;
  Tolerances tolerances() const { return Tolerances{zero_tol, margin_tol, distinct_tol}; }
};

struct Realization {
  int class_id = 0;
  LabelMatrix matrix;
  Coordinates coordinates;  // gauge-fixed, one point per row
  DistanceAssignment assignment;
  double residual = 0.0;
  PositionMargins margins;
  /// Starts tried up to and including the accepted one.
  int starts_used = 0;
  /// More unknowns than equations: the witness is one member of a family.
  bool family = false;
};

/// Least-squares system for one label matrix. Variables, in order: x of
/// point 2, then (x, y) of points 3..n, then d_2 .. d_(n-1). Point 1 sits
/// at the origin, point 2 on the x-axis, and d_1 = 1.
class SolverProblem {
 public:
  explicit SolverProblem(LabelMatrix m);

  const LabelMatrix& matrix() const { return m_; }
  int points() const { return m_.size(); }
  int variables() const { return 3 * m_.size() - 5; }
  int equations() const { return edge_count(m_.size()); }

  /// r_e = |p_i - p_j|^2 - d_(L(i,j))^2, one entry per edge in upper
  /// triangle order.
  Eigen::VectorXd residuals(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;

  Coordinates coordinates(const Eigen::VectorXd& x) const;
  /// |d_k| from the state; throws InvalidArgument if some value is zero.
  DistanceAssignment assignment(const Eigen::VectorXd& x) const;
  /// Inverse of coordinates/assignment. The points must already be in gauge.
  Eigen::VectorXd pack(const Coordinates& points, const DistanceAssignment& a) const;

 private:
  LabelMatrix m_;
  std::vector<std::pair<int, int>> edges_;
};

struct LocalResult {
  Eigen::VectorXd x;
  double cost = 0.0;  // sum of squared residuals
  int iterations = 0;
  bool finite = true;
};

/// Damped Gauss-Newton with Nielsen's update of the damping factor.
LocalResult levenberg_marquardt(const SolverProblem& problem, Eigen::VectorXd x0, int max_iters);

/// Translate point 1 to the origin, rotate point 2 onto the positive
/// x-axis, reflect so point 3 has y >= 0.
Coordinates gauge_fix(Coordinates points);

/// Multistart search. Returns nothing when no start converges to a witness
/// that passes verification; that is not a proof of non-realizability.
std::optional<Realization> solve_realization(const IsoClass& c, const SolverConfig& cfg);

/// Single local solve seeded from the classical embedding of `guess`.
std::optional<Realization> refine_assignment(const LabelMatrix& m, const DistanceAssignment& guess,
                                             const SolverConfig& cfg);

/// Classical multidimensional scaling into the plane, gauge-fixed. Throws
/// RankExceeded when the third Gram eigenvalue exceeds 1e-8 of the largest.
Coordinates embed_from_distances(const LabelBlock& m, const DistanceAssignment& a);

struct ClassVerdict {
  int class_id = 0;
  LabelMatrix representative;
  std::optional<Realization> realization;
  int starts_used = 0;

  bool realizable() const { return realization.has_value(); }
};

struct Census {
  int n = 0;
  SolverConfig config;
  std::vector<ClassVerdict> classes;

  int realizable_count() const;
  const ClassVerdict* find(int class_id) const;
};

/// Solves every surviving class; classes run on up to `jobs` threads. The
/// result does not depend on `jobs`.
Census realizable_census(const ClassificationReport& report, const SolverConfig& cfg, int jobs = 1);
Census realizable_census(int n, const SolverConfig& cfg, int jobs = 1, const PipelineOptions& options = {});

}  // namespace crescent
