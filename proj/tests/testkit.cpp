#include "testkit.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "crescent/distance_table.hpp"
#include "crescent/errors.hpp"
#include "crescent/label_matrix.hpp"
#include "crescent/report.hpp"
#include "crescent/rigidity.hpp"

namespace testkit {

using namespace crescent;

double cofactor_det(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1.0;
  if (n == 1) return m[0][0];
  double det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<double>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<double> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    det += ((c % 2) ? -1.0 : 1.0) * m[0][c] * cofactor_det(minor);
  }
  return det;
}

double heron_area(double a, double b, double c) {
  std::array<double, 3> s{a, b, c};
  std::sort(s.begin(), s.end(), std::greater<>());
  const double x = s[0], y = s[1], z = s[2];
  const double p = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
  return 0.25 * std::sqrt(std::max(p, 0.0));
}

std::vector<std::vector<Label>> brute_force_matrices(int n) {
  std::vector<Label> labels;
  for (int k = 1; k < n; ++k)
    for (int c = 0; c < k; ++c) labels.push_back(static_cast<Label>(k));
  std::vector<int> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::set<std::vector<Label>> seen;
  do {
    std::vector<Label> upper(labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) upper[i] = labels[static_cast<std::size_t>(order[i])];
    seen.insert(std::move(upper));
  } while (std::next_permutation(order.begin(), order.end()));
  return {seen.begin(), seen.end()};
}

std::string count_key(const LabelBlock& m) {
  const int n = m.size();
  std::vector<std::string> rows;
  for (int i = 0; i < n; ++i) {
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < n; ++j)
      if (j != i) ++counts[static_cast<std::size_t>(m(i, j))];
    std::ostringstream row;
    for (const int c : counts) row << c << '.';
    rows.push_back(row.str());
  }
  std::sort(rows.begin(), rows.end());
  std::string key;
  for (const auto& r : rows) key += r + '|';
  return key;
}

int brute_force_connectivity(int n, const std::vector<std::pair<int, int>>& edges) {
  auto connected_without = [&](unsigned removed) {
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
      return x;
    };
    for (const auto& [a, b] : edges) {
      if ((removed >> a) & 1u || (removed >> b) & 1u) continue;
      parent[static_cast<std::size_t>(find(a))] = find(b);
    }
    int roots = 0;
    for (int v = 0; v < n; ++v)
      if (!((removed >> v) & 1u) && find(v) == v) ++roots;
    return roots <= 1;
  };
  for (int k = 0; k < n - 1; ++k) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) != k) continue;
      if (!connected_without(mask)) return k;
    }
  }
  return n - 1;
}

std::string fixture_path(const std::string& name) { return std::string(CRESCENT_FIXTURE_DIR) + "/" + name; }

LabelMatrix table_matrix(int id) {
  static const auto doc = json::parse(read_text_file(fixture_path("realizable_distances.json")));
  for (const auto& row : doc.at("rows"))
    if (row.at("matrix_id").get<int>() == id) return label_matrix_from_json(row.at("matrix"));
  throw InvalidArgument("no table matrix " + std::to_string(id));
}

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

int uniform_int(Rng& rng, int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

Coordinates random_points(Rng& rng, int n, int dim, double box = 2.0) {
  Coordinates p(n, dim);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < dim; ++c) p(i, c) = uniform(rng, -box, box);
  return p;
}

std::vector<int> random_permutation(Rng& rng, int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(uniform_int(rng, 0, i))]);
  return perm;
}

SquaredDistanceMatrix permuted(const SquaredDistanceMatrix& sq, const std::vector<int>& perm) {
  Eigen::MatrixXd e(sq.size(), sq.size());
  for (int i = 0; i < sq.size(); ++i)
    for (int j = 0; j < sq.size(); ++j) e(i, j) = sq(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  return SquaredDistanceMatrix(e);
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

void record(PropertyResult& r, bool ok, double err, const std::string& what) {
  ++r.cases;
  r.worst = std::max(r.worst, err);
  if (!ok) {
    if (r.failures == 0) r.first_failure = what;
    ++r.failures;
  }
}

}  // namespace

PropertyResult cm_edm_permutation_invariance(int cases, std::uint64_t seed) {
  PropertyResult r;
  r.name = "CM/EDM determinant permutation invariance";
  Rng rng(seed);
  for (int c = 0; c < cases; ++c) {
    const int k = uniform_int(rng, 3, 5);
    const auto sq = SquaredDistanceMatrix::from_coordinates(random_points(rng, k, k - 1));
    const auto perm = random_permutation(rng, k);
    const auto sp = permuted(sq, perm);
    const double e1 = rel_err(cm_det(sq), cm_det(sp));
    const double e2 = rel_err(edm_det(sq), edm_det(sp));
    const double err = std::max(e1, e2);
    record(r, err <= 1e-9, err, "case " + std::to_string(c));
  }
  return r;
}

PropertyResult cm_edm_homogeneity(int cases, std::uint64_t seed) {
  PropertyResult r;
  r.name = "CM/EDM homogeneity exponents k-1 and k";
  Rng rng(seed);
  for (int c = 0; c < cases; ++c) {
    const int k = uniform_int(rng, 3, 4);
    const auto sq = SquaredDistanceMatrix::from_coordinates(random_points(rng, k, 3));
    const double t = uniform(rng, 0.1, 10.0);
    const SquaredDistanceMatrix scaled(Eigen::MatrixXd(t * sq.entries()));
    const double e1 = rel_err(cm_det(scaled), std::pow(t, k - 1) * cm_det(sq));
    const double e2 = rel_err(edm_det(scaled), std::pow(t, k) * edm_det(sq));
    const double err = std::max(e1, e2);
    record(r, err <= 1e-9, err, "k=" + std::to_string(k) + " t=" + std::to_string(t));
  }
  return r;
}

PropertyResult cm_heron_agreement(int cases, std::uint64_t seed) {
  PropertyResult r;
  r.name = "CM of 3 points equals -16 area^2 (Heron)";
  Rng rng(seed);
  while (r.cases < cases) {
    const auto p = random_points(rng, 3, 2);
    const double a = (p.row(0) - p.row(1)).norm();
    const double b = (p.row(1) - p.row(2)).norm();
    const double c = (p.row(0) - p.row(2)).norm();
    const double area = heron_area(a, b, c);
    if (area < 1e-2 * std::max({a, b, c}) * std::max({a, b, c})) continue;  // keep triangles well shaped
    const double cm = cm_det(SquaredDistanceMatrix::from_coordinates(p));
    const double err = rel_err(cm, -16.0 * area * area);
    record(r, err <= 1e-10, err, "sides " + std::to_string(a) + " " + std::to_string(b) + " " + std::to_string(c));
  }
  return r;
}

namespace {

std::vector<std::vector<Rational>> random_rational_points(Rng& rng, int n, int dim) {
  std::vector<std::vector<Rational>> pts(static_cast<std::size_t>(n));
  for (auto& p : pts)
    for (int c = 0; c < dim; ++c) p.push_back(Rational(uniform_int(rng, -40, 40), uniform_int(rng, 1, 12)));
  return pts;
}

SquaredDistanceMatrix to_double(const RationalMatrix& m) {
  Eigen::MatrixXd e(m.size(), m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) e(i, j) = static_cast<double>(m(i, j));
  return SquaredDistanceMatrix(e);
}

Eigen::MatrixXd bordered(const Eigen::MatrixXd& sq) {
  const auto k = sq.rows();
  Eigen::MatrixXd b = Eigen::MatrixXd::Ones(k + 1, k + 1);
  b(0, 0) = 0.0;
  b.bottomRightCorner(k, k) = sq;
  return b;
}

// Product of row norms, the largest |det| a matrix with these rows can have.
double hadamard_bound(const Eigen::MatrixXd& m) {
  double h = 1.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) h *= m.row(i).norm();
  return h;
}

}  // namespace

PropertyResult rational_float_agreement(int cases, std::uint64_t seed) {
  PropertyResult r;
  r.name = "exact rational vs floating determinants";
  Rng rng(seed);
  while (r.cases < cases) {
    const int k = uniform_int(rng, 3, 4);
    const auto exact = exact_squared_distances(random_rational_points(rng, k, k - 1));
    const Rational cm_exact = cm_det(exact);
    const Rational edm_exact = edm_det(exact);
    if (cm_exact == 0 || edm_exact == 0) continue;
    const auto sq = to_double(exact);
    const double e1 = std::abs(cm_det(sq) - static_cast<double>(cm_exact)) / hadamard_bound(bordered(sq.entries()));
    const double e2 = std::abs(edm_det(sq) - static_cast<double>(edm_exact)) / hadamard_bound(sq.entries());
    const double err = std::max(e1, e2);
    record(r, err <= 1e-12, err, "k=" + std::to_string(k));
  }
  return r;
}

PropertyResult planar_rational_cm_zero(int cases, std::uint64_t seed) {
  PropertyResult r;
  r.name = "planar rational 4-point CM is exactly zero";
  Rng rng(seed);
  for (int c = 0; c < cases; ++c) {
    const auto exact = exact_squared_distances(random_rational_points(rng, 4, 2));
    const Rational det = cm_det(exact);
    record(r, det == 0, det == 0 ? 0.0 : std::abs(static_cast<double>(det)), "case " + std::to_string(c));
  }
  return r;
}

PropertyResult rigidity_rank_invariance(int cases, std::uint64_t seed) {
  PropertyResult r;
  r.name = "rigidity rank under rotation, translation, scaling";
  Rng rng(seed);
  for (int c = 0; c < cases; ++c) {
    const int n = uniform_int(rng, 3, 7);
    Coordinates p = random_points(rng, n, 2);
    if (c % 5 == 0) p.col(1) = 0.5 * p.col(0);  // degenerate collinear frameworks too
    std::vector<Edge> edges;
    const bool complete = c % 2 == 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (complete || rng() % 3 != 0) edges.push_back(Edge{i, j, 1});
    const Framework f(p, edges);
    const double angle = uniform(rng, 0.0, 6.283185307179586);
    const double s = uniform(rng, 0.1, 10.0);
    Eigen::Matrix2d rot;
    rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    Coordinates q = (s * (p * rot.transpose())).eval();
    q.rowwise() += Eigen::RowVector2d(uniform(rng, -5, 5), uniform(rng, -5, 5));
    const Framework g(q, edges);
    const int a = numeric_rank(rigidity_matrix(f));
    const int b = numeric_rank(rigidity_matrix(g));
    record(r, a == b, std::abs(a - b), "n=" + std::to_string(n) + " ranks " + std::to_string(a) + " vs " + std::to_string(b));
  }
  return r;
}

PropertyResult jacobian_finite_difference(int cases, std::uint64_t seed) {
  PropertyResult r;
  r.name = "analytic Jacobian vs central differences";
  Rng rng(seed);
  for (int c = 0; c < cases; ++c) {
    const int n = uniform_int(rng, 3, 6);
    const auto rank = rng() % count_matrices(n);
    const auto upper = unrank_matrix(n, rank);
    const SolverProblem problem(LabelMatrix::from_upper(n, upper));
    Eigen::VectorXd x(problem.variables());
    for (Eigen::Index v = 0; v < x.size(); ++v) x(v) = uniform(rng, -2.0, 2.0);
    const Eigen::MatrixXd jac = problem.jacobian(x);
    double err = 0.0;
    for (Eigen::Index v = 0; v < x.size(); ++v) {
      const double h = 1e-6 * std::max(1.0, std::abs(x(v)));
      Eigen::VectorXd xp = x, xm = x;
      xp(v) += h;
      xm(v) -= h;
      const Eigen::VectorXd fd = (problem.residuals(xp) - problem.residuals(xm)) / (xp(v) - xm(v));
      for (Eigen::Index e = 0; e < fd.size(); ++e)
        err = std::max(err, std::abs(fd(e) - jac(e, v)) / std::max(1.0, std::abs(jac(e, v))));
    }
    record(r, err <= 1e-6, err, "n=" + std::to_string(n) + " rank " + std::to_string(rank));
  }
  return r;
}

PropertyResult solver_round_trip(int cases) {
  PropertyResult r;
  r.name = "solver round trip realize -> embed -> verify";
  std::vector<IsoClass> classes;
  for (const int n : {4, 5}) {
    auto report = classify_pipeline(n);
    for (auto& c : report.surviving_classes) classes.push_back(std::move(c));
  }
  for (std::uint64_t seed = 42; r.cases < cases && seed < 142; ++seed) {
    SolverConfig cfg;
    cfg.seed = seed;
    cfg.starts = 40;
    for (const auto& c : classes) {
      if (r.cases >= cases) break;
      const auto real = solve_realization(c, cfg);
      if (!real) continue;
      const auto& m = real->matrix;
      const auto& p = real->coordinates;
      const int n = m.size();
      std::string what = "n=" + std::to_string(n) + " class " + std::to_string(c.class_id) + " seed " + std::to_string(seed);
      bool ok = p(0, 0) == 0.0 && p(0, 1) == 0.0 && p(1, 1) == 0.0 && p(1, 0) > 0.0 && p(2, 1) >= 0.0;
      double err = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const double d = real->assignment[m(i, j)];
          err = std::max(err, std::abs((p.row(i) - p.row(j)).squaredNorm() - d * d));
        }
      }
      ok = ok && err <= std::sqrt(cfg.residual_tol);
      ok = ok && verify_realizable(m, real->assignment, cfg.tolerances()).ok;
      try {
        const auto q = embed_from_distances(m, real->assignment);
        double rel = 0.0;
        for (int i = 0; i < n; ++i) {
          for (int j = i + 1; j < n; ++j) {
            const double d = real->assignment[m(i, j)];
            rel = std::max(rel, std::abs((q.row(i) - q.row(j)).norm() - d) / d);
          }
        }
        err = std::max(err, rel);
        ok = ok && rel <= 1e-8;
        ok = ok && verify_realizable(m, assignment_from_coordinates(m, q), cfg.tolerances()).ok;
      } catch (const RankExceeded&) {
        ok = false;
      }
      record(r, ok, err, what);
    }
  }
  return r;
}

}  // namespace testkit
