#include "crescent/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>

#include "crescent/errors.hpp"

namespace crescent {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// The engine is fully specified by the standard; the conversion to [0, 1)
// is done by hand because std::uniform_real_distribution is not.
class StartSampler {
 public:
  StartSampler(std::uint64_t seed, int class_id, int start)
      : engine_(splitmix64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(class_id)) ^
                           static_cast<std::uint64_t>(start))) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 engine_;
};

double clean_zero(double v) { return v == 0.0 ? 0.0 : v; }

Coordinates classical_embedding(const LabelBlock& m, const DistanceAssignment& a, bool strict) {
  const auto sq = squared_distances(m, a).entries();
  const auto n = sq.rows();
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd gram = -0.5 * centering * sq * centering;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::VectorXd& ev = eig.eigenvalues();  // ascending
  const double largest = ev(n - 1);
  if (strict) {
    for (Eigen::Index k = 0; k + 2 < n; ++k) {
      if (std::abs(ev(k)) > 1e-8 * largest) {
        throw RankExceeded("Gram matrix has a significant third eigenvalue (" + std::to_string(ev(k)) +
                           " against " + std::to_string(largest) + ")");
      }
    }
  }
  Coordinates points(n, 2);
  points.col(0) = eig.eigenvectors().col(n - 1) * std::sqrt(std::max(largest, 0.0));
  points.col(1) = n >= 2 ? Eigen::VectorXd(eig.eigenvectors().col(n - 2) * std::sqrt(std::max(ev(n - 2), 0.0)))
                         : Eigen::VectorXd::Zero(n);
  return gauge_fix(points);
}

std::optional<Realization> accept(const SolverProblem& problem, const LocalResult& local, const SolverConfig& cfg) {
  if (!local.finite || !(local.cost <= cfg.residual_tol)) return std::nullopt;
  DistanceAssignment a;
  try {
    a = problem.assignment(local.x);
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
  auto margins = general_position_margins(problem.matrix(), a);
  if (!verify_margins(margins, a, cfg.tolerances()).ok) return std::nullopt;
  Realization r;
  r.matrix = problem.matrix();
  r.coordinates = gauge_fix(problem.coordinates(local.x));
  r.assignment = std::move(a);
  r.residual = local.cost;
  r.margins = std::move(margins);
  r.family = problem.variables() > problem.equations();
  return r;
}

}  // namespace

void SolverConfig::validate() const {
  if (starts < 1) throw InvalidArgument("starts must be at least 1");
  if (max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
  if (!(residual_tol > 0.0) || !(margin_tol > 0.0) || !(zero_tol > 0.0) || !(distinct_tol > 0.0)) {
    throw InvalidArgument("tolerances must be positive");
  }
  if (!(coord_box > 0.0)) throw InvalidArgument("coord_box must be positive");
  if (!(dist_min > 0.0) || !(dist_max > dist_min)) throw InvalidArgument("dist_range must be positive and ordered");
}

SolverProblem::SolverProblem(LabelMatrix m) : m_(std::move(m)) {
  if (m_.size() < 3) throw InvalidArgument("solver needs at least 3 points");
  for (int i = 0; i < m_.size(); ++i)
    for (int j = i + 1; j < m_.size(); ++j) edges_.emplace_back(i, j);
}

namespace {

// Variable index of the x (axis 0) or y (axis 1) coordinate of point k, or
// -1 when the coordinate is pinned by the gauge.
int coord_var(int k, int axis) {
  if (k == 0) return -1;
  if (k == 1) return axis == 0 ? 0 : -1;
  return 1 + 2 * (k - 2) + axis;
}

int dist_var(int n, int label) { return label == 1 ? -1 : 2 * n - 3 + (label - 2); }

double coord(const Eigen::VectorXd& x, int k, int axis) {
  const int v = coord_var(k, axis);
  return v < 0 ? 0.0 : x(v);
}

double dist(const Eigen::VectorXd& x, int n, int label) {
  const int v = dist_var(n, label);
  return v < 0 ? 1.0 : x(v);
}

}  // namespace

Eigen::VectorXd SolverProblem::residuals(const Eigen::VectorXd& x) const {
  const int n = points();
  Eigen::VectorXd r(equations());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [i, j] = edges_[e];
    const double dx = coord(x, i, 0) - coord(x, j, 0);
    const double dy = coord(x, i, 1) - coord(x, j, 1);
    const double d = dist(x, n, m_(i, j));
    r(static_cast<Eigen::Index>(e)) = dx * dx + dy * dy - d * d;
  }
  return r;
}

Eigen::MatrixXd SolverProblem::jacobian(const Eigen::VectorXd& x) const {
  const int n = points();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(equations(), variables());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto row = static_cast<Eigen::Index>(e);
    const auto [i, j] = edges_[e];
    for (int axis = 0; axis < 2; ++axis) {
      const double diff = coord(x, i, axis) - coord(x, j, axis);
      if (const int v = coord_var(i, axis); v >= 0) jac(row, v) += 2.0 * diff;
      if (const int v = coord_var(j, axis); v >= 0) jac(row, v) -= 2.0 * diff;
    }
    const int label = m_(i, j);
    if (const int v = dist_var(n, label); v >= 0) jac(row, v) = -2.0 * x(v);
  }
  return jac;
}

Coordinates SolverProblem::coordinates(const Eigen::VectorXd& x) const {
  Coordinates p(points(), 2);
  for (int k = 0; k < points(); ++k) {
    p(k, 0) = coord(x, k, 0);
    p(k, 1) = coord(x, k, 1);
  }
  return p;
}

DistanceAssignment SolverProblem::assignment(const Eigen::VectorXd& x) const {
  const int n = points();
  std::vector<double> rest;
  for (int label = 2; label < n; ++label) rest.push_back(std::abs(dist(x, n, label)));
  return DistanceAssignment(n, rest);
}

Eigen::VectorXd SolverProblem::pack(const Coordinates& p, const DistanceAssignment& a) const {
  const int n = points();
  if (p.rows() != n || p.cols() != 2) throw InvalidArgument("pack needs n planar points");
  if (p(0, 0) != 0.0 || p(0, 1) != 0.0 || p(1, 1) != 0.0) throw InvalidArgument("pack needs gauge-fixed points");
  Eigen::VectorXd x(variables());
  for (int k = 1; k < n; ++k) {
    for (int axis = 0; axis < 2; ++axis)
      if (const int v = coord_var(k, axis); v >= 0) x(v) = p(k, axis);
  }
  for (int label = 2; label < n; ++label) x(dist_var(n, label)) = a[label];
  return x;
}

LocalResult levenberg_marquardt(const SolverProblem& problem, Eigen::VectorXd x0, int max_iters) {
  constexpr double kGradTol = 1e-15;
  constexpr double kStepTol = 1e-15;
  constexpr double kCostFloor = 1e-30;

  LocalResult out;
  out.x = std::move(x0);
  Eigen::VectorXd r = problem.residuals(out.x);
  out.cost = r.squaredNorm();
  if (!std::isfinite(out.cost)) {
    out.finite = false;
    return out;
  }
  Eigen::MatrixXd jac = problem.jacobian(out.x);
  Eigen::MatrixXd a = jac.transpose() * jac;
  Eigen::VectorXd g = jac.transpose() * r;
  double mu = 1e-3 * a.diagonal().maxCoeff();
  if (!(mu > 0.0)) mu = 1e-3;
  double nu = 2.0;
  const auto dim = out.x.size();

  for (out.iterations = 0; out.iterations < max_iters; ++out.iterations) {
    if (out.cost <= kCostFloor || g.lpNorm<Eigen::Infinity>() <= kGradTol) break;
    const Eigen::MatrixXd damped = a + mu * Eigen::MatrixXd::Identity(dim, dim);
    const Eigen::VectorXd h = damped.ldlt().solve(-g);
    if (!h.allFinite()) {
      out.finite = false;
      break;
    }
    if (h.norm() <= kStepTol * (out.x.norm() + kStepTol)) break;
    const Eigen::VectorXd x_new = out.x + h;
    const Eigen::VectorXd r_new = problem.residuals(x_new);
    const double cost_new = r_new.squaredNorm();
    // predicted decrease of 0.5 |r|^2 under the linear model
    const double predicted = 0.5 * h.dot(mu * h - g);
    const double rho = predicted > 0.0 ? 0.5 * (out.cost - cost_new) / predicted : -1.0;
    if (std::isfinite(cost_new) && rho > 0.0) {
      out.x = x_new;
      r = r_new;
      out.cost = cost_new;
      jac = problem.jacobian(out.x);
      a = jac.transpose() * jac;
      g = jac.transpose() * r;
      const double t = 2.0 * rho - 1.0;
      mu *= std::max(1.0 / 3.0, 1.0 - t * t * t);
      nu = 2.0;
    } else {
      mu *= nu;
      nu *= 2.0;
      if (!std::isfinite(mu)) break;
    }
  }
  out.finite = out.finite && out.x.allFinite() && std::isfinite(out.cost);
  return out;
}

Coordinates gauge_fix(Coordinates p) {
  const auto n = p.rows();
  if (n == 0) return p;
  const Eigen::RowVectorXd origin = p.row(0);
  for (Eigen::Index k = 0; k < n; ++k) p.row(k) -= origin;
  p.row(0).setZero();
  if (n >= 2 && p.cols() == 2) {
    const double r = std::hypot(p(1, 0), p(1, 1));
    if (r > 0.0) {
      const double c = p(1, 0) / r;
      const double s = p(1, 1) / r;
      for (Eigen::Index k = 2; k < n; ++k) {
        const double x = p(k, 0);
        const double y = p(k, 1);
        p(k, 0) = c * x + s * y;
        p(k, 1) = -s * x + c * y;
      }
      p(1, 0) = r;
      p(1, 1) = 0.0;
    }
    if (n >= 3 && p(2, 1) < 0.0) p.col(1) = -p.col(1);
  }
  return p.unaryExpr(&clean_zero);
}

std::optional<Realization> solve_realization(const IsoClass& c, const SolverConfig& cfg) {
  cfg.validate();
  const SolverProblem problem(c.representative);
  const int n = problem.points();
  Eigen::VectorXd x0(problem.variables());
  for (int start = 0; start < cfg.starts; ++start) {
    StartSampler sampler(cfg.seed, c.class_id, start);
    for (int v = 0; v < 2 * n - 3; ++v) x0(v) = sampler.uniform(-cfg.coord_box, cfg.coord_box);
    for (int v = 2 * n - 3; v < problem.variables(); ++v) x0(v) = sampler.uniform(cfg.dist_min, cfg.dist_max);
    const auto local = levenberg_marquardt(problem, x0, cfg.max_iters);
    if (auto r = accept(problem, local, cfg)) {
      r->class_id = c.class_id;
      r->starts_used = start + 1;
      return r;
    }
  }
  return std::nullopt;
}

std::optional<Realization> refine_assignment(const LabelMatrix& m, const DistanceAssignment& guess,
                                             const SolverConfig& cfg) {
  cfg.validate();
  const SolverProblem problem(m);
  const auto seed_points = classical_embedding(m, guess, false);
  const auto local = levenberg_marquardt(problem, problem.pack(seed_points, guess), cfg.max_iters);
  auto r = accept(problem, local, cfg);
  if (r) r->starts_used = 1;
  return r;
}

Coordinates embed_from_distances(const LabelBlock& m, const DistanceAssignment& a) {
  return classical_embedding(m, a, true);
}

int Census::realizable_count() const {
  return static_cast<int>(std::count_if(classes.begin(), classes.end(), [](const auto& v) { return v.realizable(); }));
}

const ClassVerdict* Census::find(int class_id) const {
  for (const auto& v : classes)
    if (v.class_id == class_id) return &v;
  return nullptr;
}

Census realizable_census(const ClassificationReport& report, const SolverConfig& cfg, int jobs) {
  cfg.validate();
  Census census;
  census.n = report.n;
  census.config = cfg;
  census.classes.resize(report.surviving_classes.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < census.classes.size(); i = next++) {
      const auto& c = report.surviving_classes[i];
      auto& verdict = census.classes[i];
      verdict.class_id = c.class_id;
      verdict.representative = c.representative;
      verdict.realization = solve_realization(c, cfg);
      verdict.starts_used = verdict.realization ? verdict.realization->starts_used : cfg.starts;
    }
  };
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, jobs)), census.classes.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return census;
}

Census realizable_census(int n, const SolverConfig& cfg, int jobs, const PipelineOptions& options) {
  PipelineOptions opts = options;
  opts.jobs = std::max(opts.jobs, jobs);
  return realizable_census(classify_pipeline(n, opts), cfg, jobs);
}

}  // namespace crescent
