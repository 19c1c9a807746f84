#include "crescent/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crescent/errors.hpp"

namespace crescent {

std::string subset_key(const Subset& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i] + 1);
  }
  return out;
}

std::vector<Subset> subsets_of_size(int n, int k) {
  std::vector<Subset> out;
  if (k < 0 || k > n) return out;
  Subset s(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

DistanceAssignment::DistanceAssignment(int n, std::span<const double> rest) : n_(n) {
  if (n < 2) throw InvalidArgument("assignment needs at least 2 points");
  if (static_cast<int>(rest.size()) != n - 2) {
    throw InvalidArgument("assignment for n=" + std::to_string(n) + " needs " + std::to_string(n - 2) +
                          " values beyond d_1");
  }
  values_.assign(static_cast<std::size_t>(n), 0.0);
  values_[1] = 1.0;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    const double v = rest[i];
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("distance d_" + std::to_string(i + 2) + " must be positive and finite");
    }
    values_[i + 2] = v;
  }
}

DistanceAssignment DistanceAssignment::from_map(int n, const std::map<int, double>& values) {
  std::vector<double> rest;
  for (int k = 1; k < n; ++k) {
    auto it = values.find(k);
    if (it == values.end()) throw InvalidArgument("assignment missing label " + std::to_string(k));
    if (k == 1) {
      if (it->second != 1.0) throw InvalidArgument("assignment must have d_1 = 1");
      continue;
    }
    rest.push_back(it->second);
  }
  for (const auto& [k, v] : values) {
    if (k < 1 || k >= n) throw InvalidArgument("assignment has unknown label " + std::to_string(k));
  }
  return DistanceAssignment(n, rest);
}

double DistanceAssignment::operator[](int label) const {
  if (!covers(label)) throw InvalidArgument("assignment does not cover label " + std::to_string(label));
  return values_[static_cast<std::size_t>(label)];
}

std::map<int, double> DistanceAssignment::as_map() const {
  std::map<int, double> out;
  for (int k = 1; k < n_; ++k) out[k] = values_[static_cast<std::size_t>(k)];
  return out;
}

SquaredDistanceMatrix::SquaredDistanceMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw InvalidArgument("squared distance matrix must be square");
  const auto k = entries_.rows();
  for (Eigen::Index i = 0; i < k; ++i) {
    if (entries_(i, i) != 0.0) throw InvalidArgument("squared distance matrix diagonal must be zero");
    for (Eigen::Index j = i + 1; j < k; ++j) {
      if (entries_(i, j) != entries_(j, i)) throw InvalidArgument("squared distance matrix must be symmetric");
      if (!(entries_(i, j) >= 0.0)) throw InvalidArgument("squared distances must be nonnegative");
    }
  }
}

SquaredDistanceMatrix SquaredDistanceMatrix::from_coordinates(const Coordinates& points) {
  const auto n = points.rows();
  Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) sq(i, j) = sq(j, i) = (points.row(i) - points.row(j)).squaredNorm();
  return SquaredDistanceMatrix(std::move(sq));
}

SquaredDistanceMatrix SquaredDistanceMatrix::restricted(const Subset& subset) const {
  const auto k = static_cast<Eigen::Index>(subset.size());
  Eigen::MatrixXd sq(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b) sq(a, b) = entries_(subset[static_cast<std::size_t>(a)], subset[static_cast<std::size_t>(b)]);
  return SquaredDistanceMatrix(std::move(sq));
}

double SquaredDistanceMatrix::geometric_mean() const {
  const auto k = entries_.rows();
  double log_sum = 0.0;
  int count = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      if (entries_(i, j) <= 0.0) return 0.0;
      log_sum += std::log(entries_(i, j));
      ++count;
    }
  }
  return count == 0 ? 1.0 : std::exp(log_sum / count);
}

SquaredDistanceMatrix squared_distances(const LabelBlock& m, const DistanceAssignment& a, const Subset& subset) {
  Subset idx = subset;
  if (idx.empty()) {
    idx.resize(static_cast<std::size_t>(m.size()));
    for (int i = 0; i < m.size(); ++i) idx[static_cast<std::size_t>(i)] = i;
  }
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    const int i = idx[static_cast<std::size_t>(r)];
    if (i < 0 || i >= m.size()) throw InvalidArgument("subset index out of range");
    for (Eigen::Index c = r + 1; c < k; ++c) {
      const int j = idx[static_cast<std::size_t>(c)];
      if (j < 0 || j >= m.size()) throw InvalidArgument("subset index out of range");
      const int label = m(i, j);
      if (!a.covers(label)) throw InvalidArgument("assignment does not cover label " + std::to_string(label));
      const double d = a[label];
      sq(r, c) = sq(c, r) = d * d;
    }
  }
  return SquaredDistanceMatrix(std::move(sq));
}

double cm_det(const SquaredDistanceMatrix& sq) {
  const auto k = sq.size();
  Eigen::MatrixXd bordered = Eigen::MatrixXd::Ones(k + 1, k + 1);
  bordered.topLeftCorner(k, k) = sq.entries();
  bordered(k, k) = 0.0;
  return determinant(bordered);
}

Rational cm_det(const RationalMatrix& sq) {
  const int k = sq.size();
  RationalMatrix bordered(k + 1);
  for (int i = 0; i <= k; ++i) {
    for (int j = 0; j <= k; ++j) {
      if (i < k && j < k) {
        bordered(i, j) = sq(i, j);
      } else {
        bordered(i, j) = (i == k && j == k) ? Rational(0) : Rational(1);
      }
    }
  }
  return determinant(bordered);
}

double edm_det(const SquaredDistanceMatrix& sq) { return determinant(sq.entries()); }

Rational edm_det(const RationalMatrix& sq) { return determinant(sq); }

RationalMatrix exact_squared_distances(const std::vector<std::vector<Rational>>& points) {
  const int n = static_cast<int>(points.size());
  RationalMatrix sq(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rational s(0);
      for (std::size_t c = 0; c < points[static_cast<std::size_t>(i)].size(); ++c) {
        const Rational d = points[static_cast<std::size_t>(i)][c] - points[static_cast<std::size_t>(j)][c];
        s += d * d;
      }
      sq(i, j) = s;
    }
  }
  return sq;
}

double normalized_cm(const SquaredDistanceMatrix& sq) {
  const double g = sq.geometric_mean();
  const double det = std::abs(cm_det(sq));
  return g > 0.0 ? det / std::pow(g, sq.size() - 1) : det;
}

double normalized_edm(const SquaredDistanceMatrix& sq) {
  const double g = sq.geometric_mean();
  const double det = std::abs(edm_det(sq));
  return g > 0.0 ? det / std::pow(g, sq.size()) : det;
}

double PositionMargins::max_planarity() const {
  double out = 0.0;
  for (const auto& [s, v] : planarity) out = std::max(out, v);
  return out;
}

double PositionMargins::min_collinearity() const {
  double out = std::numeric_limits<double>::infinity();
  for (const auto& [s, v] : collinearity) out = std::min(out, v);
  return out;
}

double PositionMargins::min_concyclicity() const {
  double out = std::numeric_limits<double>::infinity();
  for (const auto& [s, v] : concyclicity) out = std::min(out, v);
  return out;
}

PositionMargins general_position_margins(const LabelBlock& m, const DistanceAssignment& a, int dim) {
  if (dim < 1) throw InvalidArgument("dimension must be positive");
  const auto full = squared_distances(m, a);
  PositionMargins out;
  out.dim = dim;
  for (const auto& s : subsets_of_size(m.size(), dim + 2)) {
    const auto sub = full.restricted(s);
    out.planarity[s] = normalized_cm(sub);
    out.concyclicity[s] = normalized_edm(sub);
  }
  for (const auto& s : subsets_of_size(m.size(), dim + 1)) out.collinearity[s] = normalized_cm(full.restricted(s));
  return out;
}

std::string to_string(FailureReason r) {
  switch (r) {
    case FailureReason::kNone: return "none";
    case FailureReason::kPlanarity: return "planarity";
    case FailureReason::kCollinearity: return "collinearity";
    case FailureReason::kConcyclicity: return "concyclicity";
    case FailureReason::kCoincidentDistances: return "coincident_distances";
  }
  return "unknown";
}

std::string Verdict::describe() const {
  if (ok) return "ok";
  std::string out = to_string(reason);
  if (failing_subset) out += " failure on {" + subset_key(*failing_subset) + "}";
  if (coincident_labels) {
    out += " between d" + std::to_string(coincident_labels->first) + " and d" +
           std::to_string(coincident_labels->second);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, " (value %.3e)", value);
  return out + buf;
}

Verdict verify_margins(const PositionMargins& margins, const DistanceAssignment& a, const Tolerances& tol) {
  for (const auto& [s, v] : margins.planarity) {
    if (!(v <= tol.zero)) return Verdict{false, FailureReason::kPlanarity, s, std::nullopt, v};
  }
  for (const auto& [s, v] : margins.collinearity) {
    if (!(v >= tol.margin)) return Verdict{false, FailureReason::kCollinearity, s, std::nullopt, v};
  }
  for (const auto& [s, v] : margins.concyclicity) {
    if (!(v >= tol.margin)) return Verdict{false, FailureReason::kConcyclicity, s, std::nullopt, v};
  }
  for (int k = 1; k <= a.labels(); ++k) {
    for (int l = k + 1; l <= a.labels(); ++l) {
      const double hi = std::max(a[k], a[l]);
      const double gap = std::abs(a[k] - a[l]) / hi;
      if (!(gap >= tol.distinct)) {
        return Verdict{false, FailureReason::kCoincidentDistances, std::nullopt, std::pair{k, l}, gap};
      }
    }
  }
  return Verdict{};
}

Verdict verify_realizable(const LabelBlock& m, const DistanceAssignment& a, const Tolerances& tol, int dim) {
  return verify_margins(general_position_margins(m, a, dim), a, tol);
}

DistanceAssignment assignment_from_coordinates(const LabelMatrix& m, const Coordinates& points) {
  const int n = m.size();
  if (points.rows() != n) throw InvalidArgument("coordinate count does not match matrix size");
  std::vector<double> sum(static_cast<std::size_t>(n), 0.0);
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int l = m(i, j);
      sum[static_cast<std::size_t>(l)] += (points.row(i) - points.row(j)).norm();
      ++count[static_cast<std::size_t>(l)];
    }
  }
  const double unit = sum[1] / count[1];
  if (!(unit > 0.0)) throw InvalidArgument("label-1 edge has zero length");
  std::vector<double> rest;
  for (int k = 2; k < n; ++k) rest.push_back(sum[static_cast<std::size_t>(k)] / count[static_cast<std::size_t>(k)] / unit);
  return DistanceAssignment(n, rest);
}

}  // namespace crescent
