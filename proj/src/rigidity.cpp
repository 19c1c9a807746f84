#include "crescent/rigidity.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "crescent/errors.hpp"

namespace crescent {

Framework::Framework(Coordinates coords, std::vector<Edge> edges)
    : points_(std::move(coords)), edges_(std::move(edges)) {
  if (points_.cols() < 1) throw InvalidArgument("framework needs a positive dimension");
  for (const auto& e : edges_) {
    if (e.i < 0 || e.j >= points() || e.i >= e.j) {
      throw InvalidArgument("framework edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) + ") is invalid");
    }
  }
}

Framework Framework::complete(const LabelMatrix& m, Coordinates points) {
  if (points.rows() != m.size()) throw InvalidArgument("coordinate count does not match matrix size");
  std::vector<Edge> edges;
  for (int i = 0; i < m.size(); ++i)
    for (int j = i + 1; j < m.size(); ++j) edges.push_back(Edge{i, j, m(i, j)});
  return Framework(std::move(points), std::move(edges));
}

Framework Framework::without_edge(std::size_t index) const {
  if (index >= edges_.size()) throw InvalidArgument("edge index out of range");
  auto edges = edges_;
  edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(index));
  return Framework(points_, std::move(edges));
}

Eigen::MatrixXd rigidity_matrix(const Framework& f) {
  const int d = f.dim();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(f.edges().size()), f.points() * d);
  const auto& p = f.coordinates();
  for (std::size_t row = 0; row < f.edges().size(); ++row) {
    const auto& e = f.edges()[row];
    for (int c = 0; c < d; ++c) {
      const double diff = p(e.i, c) - p(e.j, c);
      r(static_cast<Eigen::Index>(row), e.i * d + c) = diff;
      r(static_cast<Eigen::Index>(row), e.j * d + c) = -diff;
    }
  }
  return r;
}

int numeric_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  const double largest = sv.size() ? sv(0) : 0.0;
  if (!(largest > 0.0)) return 0;
  return static_cast<int>((sv.array() > rel_tol * largest).count());
}

int s_allowed(int n, int d) {
  if (n < 1 || d < 1) throw InvalidArgument("s_allowed needs n >= 1 and d >= 1");
  return n >= d ? n * d - d * (d + 1) / 2 : n * (n - 1) / 2;
}

namespace {

// Unit-capacity max flow from s to t on the split-vertex graph, stopping
// once `limit` augmenting paths are found.
int vertex_disjoint_paths(int n, const std::vector<Edge>& edges, int s, int t, int limit) {
  // vertex v -> in node 2v, out node 2v + 1
  const int nodes = 2 * n;
  struct Arc {
    int to;
    int cap;
    int rev;
  };
  std::vector<std::vector<Arc>> g(static_cast<std::size_t>(nodes));
  auto add = [&](int u, int v, int cap) {
    g[static_cast<std::size_t>(u)].push_back(Arc{v, cap, static_cast<int>(g[static_cast<std::size_t>(v)].size())});
    g[static_cast<std::size_t>(v)].push_back(Arc{u, 0, static_cast<int>(g[static_cast<std::size_t>(u)].size()) - 1});
  };
  const int big = n + 1;
  for (int v = 0; v < n; ++v) add(2 * v, 2 * v + 1, (v == s || v == t) ? big : 1);
  for (const auto& e : edges) {
    add(2 * e.i + 1, 2 * e.j, big);
    add(2 * e.j + 1, 2 * e.i, big);
  }
  const int source = 2 * s + 1;
  const int sink = 2 * t;
  int flow = 0;
  while (flow < limit) {
    std::vector<std::pair<int, int>> parent(static_cast<std::size_t>(nodes), {-1, -1});
    std::queue<int> q;
    q.push(source);
    parent[static_cast<std::size_t>(source)] = {source, -1};
    while (!q.empty() && parent[static_cast<std::size_t>(sink)].first < 0) {
      const int u = q.front();
      q.pop();
      for (std::size_t k = 0; k < g[static_cast<std::size_t>(u)].size(); ++k) {
        const auto& a = g[static_cast<std::size_t>(u)][k];
        if (a.cap > 0 && parent[static_cast<std::size_t>(a.to)].first < 0) {
          parent[static_cast<std::size_t>(a.to)] = {u, static_cast<int>(k)};
          q.push(a.to);
        }
      }
    }
    if (parent[static_cast<std::size_t>(sink)].first < 0) break;
    for (int v = sink; v != source;) {
      const auto [u, k] = parent[static_cast<std::size_t>(v)];
      auto& a = g[static_cast<std::size_t>(u)][static_cast<std::size_t>(k)];
      a.cap -= 1;
      g[static_cast<std::size_t>(v)][static_cast<std::size_t>(a.rev)].cap += 1;
      v = u;
    }
    ++flow;
  }
  return flow;
}

}  // namespace

int vertex_connectivity(int n, const std::vector<Edge>& edges) {
  if (n <= 1) return 0;
  std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (const auto& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n) throw InvalidArgument("edge index out of range");
    adj[static_cast<std::size_t>(e.i)][static_cast<std::size_t>(e.j)] = true;
    adj[static_cast<std::size_t>(e.j)][static_cast<std::size_t>(e.i)] = true;
  }
  int best = n - 1;
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      if (adj[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)]) continue;
      best = std::min(best, vertex_disjoint_paths(n, edges, s, t, best));
    }
  }
  return best;
}

RigidityReport rigidity_report(const Framework& f, double rel_tol) {
  RigidityReport r;
  r.n = f.points();
  r.dim = f.dim();
  r.rank = numeric_rank(rigidity_matrix(f), rel_tol);
  r.s_allowed = s_allowed(r.n, r.dim);
  r.rigid = r.rank == r.s_allowed;
  r.redundantly_rigid = !f.edges().empty();
  for (std::size_t e = 0; e < f.edges().size(); ++e) {
    const int rank = numeric_rank(rigidity_matrix(f.without_edge(e)), rel_tol);
    r.deletion_ranks.push_back(rank);
    if (rank != r.s_allowed) r.redundantly_rigid = false;
  }
  r.connectivity = vertex_connectivity(r.n, f.edges());
  r.connectivity_ok = r.connectivity >= r.dim + 1;
  r.unique_realization = r.rigid && r.redundantly_rigid && r.connectivity_ok;
  return r;
}

std::vector<RigidityReport> census_rigidity(const Census& census, double rel_tol) {
  std::vector<RigidityReport> out;
  for (const auto& v : census.classes) {
    if (!v.realization) continue;
    auto report = rigidity_report(Framework::complete(v.realization->matrix, v.realization->coordinates), rel_tol);
    report.class_id = v.class_id;
    out.push_back(std::move(report));
  }
  return out;
}

}  // namespace crescent
