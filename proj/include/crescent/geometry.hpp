#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "crescent/determinant.hpp"
#include "crescent/label_matrix.hpp"

namespace crescent {

/// Zero-based point indices, sorted.
using Subset = std::vector<int>;

/// "1,2,4,5" (one-based) for reports.
std::string subset_key(const Subset& s);

/// All k-element subsets of {0..n-1} in lexicographic order.
std::vector<Subset> subsets_of_size(int n, int k);

/// Planar (or general-dimension) point coordinates, one point per row.
using Coordinates = Eigen::MatrixXd;

/// Positive value d_k for every label k of an n-point configuration, with
/// d_1 = 1.
class DistanceAssignment {
 public:
  DistanceAssignment() = default;
  /// `rest` holds d_2 .. d_(n-1).
  DistanceAssignment(int n, std::span<const double> rest);
  static DistanceAssignment from_map(int n, const std::map<int, double>& values);

  int points() const { return n_; }
  int labels() const { return n_ - 1; }
  double operator[](int label) const;
  bool covers(int label) const { return label >= 1 && label < n_; }
  std::map<int, double> as_map() const;

 private:
  int n_ = 0;
  std::vector<double> values_;  // index 0 unused
};

/// Symmetric matrix of squared pairwise distances with zero diagonal.
class SquaredDistanceMatrix {
 public:
  explicit SquaredDistanceMatrix(Eigen::MatrixXd entries);

  static SquaredDistanceMatrix from_coordinates(const Coordinates& points);

  int size() const { return static_cast<int>(entries_.rows()); }
  double operator()(int i, int j) const { return entries_(i, j); }
  const Eigen::MatrixXd& entries() const { return entries_; }

  SquaredDistanceMatrix restricted(const Subset& subset) const;
  /// Geometric mean of the off-diagonal entries (upper triangle).
  double geometric_mean() const;

 private:
  Eigen::MatrixXd entries_;
};

/// Entry (i, j) = a[m(i, j)]^2 over `subset` (all points when empty).
SquaredDistanceMatrix squared_distances(const LabelBlock& m, const DistanceAssignment& a,
                                        const Subset& subset = {});

/// Cayley-Menger determinant: squared distances bordered by ones.
double cm_det(const SquaredDistanceMatrix& sq);
Rational cm_det(const RationalMatrix& sq);

/// Plain determinant of the squared-distance matrix.
double edm_det(const SquaredDistanceMatrix& sq);
Rational edm_det(const RationalMatrix& sq);

/// Exact squared distances of rational points, one point per row.
RationalMatrix exact_squared_distances(const std::vector<std::vector<Rational>>& points);

/// |det| / g^p with g the geometric mean of the off-diagonal entries and p
/// the homogeneity degree (k-1 for Cayley-Menger, k for the plain matrix).
double normalized_cm(const SquaredDistanceMatrix& sq);
double normalized_edm(const SquaredDistanceMatrix& sq);

struct PositionMargins {
  int dim = 2;
  std::map<Subset, double> planarity;      // size dim+2, should be ~0
  std::map<Subset, double> collinearity;   // size dim+1, bounded away from 0
  std::map<Subset, double> concyclicity;   // size dim+2, bounded away from 0

  double max_planarity() const;
  double min_collinearity() const;
  double min_concyclicity() const;
};

PositionMargins general_position_margins(const LabelBlock& m, const DistanceAssignment& a, int dim = 2);

struct Tolerances {
  double zero = 1e-9;
  double margin = 1e-6;
  /// Minimum relative gap between two distance values.
  double distinct = 1e-3;
};

enum class FailureReason { kNone, kPlanarity, kCollinearity, kConcyclicity, kCoincidentDistances };

std::string to_string(FailureReason r);

struct Verdict {
  bool ok = true;
  FailureReason reason = FailureReason::kNone;
  std::optional<Subset> failing_subset;
  /// Labels whose values coincide, for kCoincidentDistances.
  std::optional<std::pair<int, int>> coincident_labels;
  double value = 0.0;

  std::string describe() const;
};

/// Checks, in order: every planarity residual <= tol.zero, every
/// collinearity margin >= tol.margin, every concyclicity margin >=
/// tol.margin, and pairwise distinct distance values.
Verdict verify_realizable(const LabelBlock& m, const DistanceAssignment& a, const Tolerances& tol = {},
                          int dim = 2);
Verdict verify_margins(const PositionMargins& margins, const DistanceAssignment& a, const Tolerances& tol);

/// Mean distance per label measured on `points`, rescaled so d_1 = 1.
DistanceAssignment assignment_from_coordinates(const LabelMatrix& m, const Coordinates& points);

}  // namespace crescent
