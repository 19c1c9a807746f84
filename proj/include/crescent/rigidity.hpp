#pragma once

#include <vector>

#include <Eigen/Dense>

#include "crescent/geometry.hpp"
#include "crescent/solver.hpp"

namespace crescent {

struct Edge {
  int i = 0;
  int j = 0;
  int label = 0;
};

/// A graph together with coordinates for its vertices.
class Framework {
 public:
  /// Validates i < j and index ranges.
  Framework(Coordinates points, std::vector<Edge> edges);
  /// Complete graph labelled by `m`.
  static Framework complete(const LabelMatrix& m, Coordinates points);

  int points() const { return static_cast<int>(points_.rows()); }
  int dim() const { return static_cast<int>(points_.cols()); }
  const Coordinates& coordinates() const { return points_; }
  const std::vector<Edge>& edges() const { return edges_; }

  Framework without_edge(std::size_t index) const;

 private:
  Coordinates points_;
  std::vector<Edge> edges_;
};

/// One row per edge: p_i - p_j in the block of vertex i, p_j - p_i in the
/// block of vertex j.
Eigen::MatrixXd rigidity_matrix(const Framework& f);

/// Singular values above rel_tol times the largest.
int numeric_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-8);

/// n d - d (d + 1) / 2 for n >= d, n (n - 1) / 2 otherwise.
int s_allowed(int n, int d);

/// Minimum number of vertices whose removal disconnects the graph; n - 1
/// for a complete graph.
int vertex_connectivity(int n, const std::vector<Edge>& edges);

struct RigidityReport {
  int class_id = 0;
  int n = 0;
  int dim = 2;
  int rank = 0;
  int s_allowed = 0;
  bool rigid = false;
  std::vector<int> deletion_ranks;  // in edge order
  bool redundantly_rigid = false;
  int connectivity = 0;
  bool connectivity_ok = false;
  bool unique_realization = false;
};

RigidityReport rigidity_report(const Framework& f, double rel_tol = 1e-8);

/// One report per realized class, in census order.
std::vector<RigidityReport> census_rigidity(const Census& census, double rel_tol = 1e-8);

}  // namespace crescent
