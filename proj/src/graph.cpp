#include "carrisk/graph.hpp"

#include "carrisk/error.hpp"
#include "carrisk/random.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace carrisk {

int TractGraph::index_of(const std::string& id) const {
  auto it = std::lower_bound(tract_ids.begin(), tract_ids.end(), id);
  if (it == tract_ids.end() || *it != id) return -1;
  return static_cast<int>(it - tract_ids.begin());
}

std::vector<std::vector<int>> TractGraph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [i, j] : edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  return adj;
}

bool TractGraph::is_connected() const {
  if (n == 0) return false;
  auto adj = adjacency();
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == n;
}

TractGraph build_graph(const std::vector<std::pair<std::string, std::string>>& edge_list,
                       const std::vector<std::string>& tract_ids) {
  TractGraph g;
  g.tract_ids = tract_ids;
  std::sort(g.tract_ids.begin(), g.tract_ids.end());
  for (std::size_t k = 1; k < g.tract_ids.size(); ++k)
    if (g.tract_ids[k] == g.tract_ids[k - 1])
      fail("build_graph: duplicate tract id '" + g.tract_ids[k] + "'");
  g.n = static_cast<int>(g.tract_ids.size());

  std::set<std::pair<int, int>> edges;
  for (const auto& [src, dst] : edge_list) {
    int i = g.index_of(src);
    int j = g.index_of(dst);
    if (i < 0) fail("build_graph: unknown tract id '" + src + "' in edge (" + src + "," + dst + ")");
    if (j < 0) fail("build_graph: unknown tract id '" + dst + "' in edge (" + src + "," + dst + ")");
    if (i == j) fail("build_graph: self-loop on tract '" + src + "'");
    edges.insert({std::min(i, j), std::max(i, j)});
  }
  g.edges.assign(edges.begin(), edges.end());
  g.degree.assign(g.n, 0);
  for (auto [i, j] : g.edges) {
    ++g.degree[i];
    ++g.degree[j];
  }
  return g;
}

PruneResult prune_cohort_graph(const TractGraph& graph, const PeriodCounts& counts,
                               long min_count) {
  for (const auto& id : graph.tract_ids)
    if (!counts.count(id)) fail("prune_cohort_graph: no counts for tract '" + id + "'");

  // Step 1: threshold. A tract qualifies only if every period count
  // meets min_count (a tract with no recorded periods does not qualify).
  std::vector<char> keep(graph.n, 0);
  for (int i = 0; i < graph.n; ++i) {
    const auto& per = counts.at(graph.tract_ids[i]);
    bool ok = !per.empty();
    for (long c : per)
      if (c < min_count) ok = false;
    keep[i] = ok ? 1 : 0;
  }

  // Step 2: iteratively drop tracts left with no qualifying neighbor.
  auto adj = graph.adjacency();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < graph.n; ++i) {
      if (!keep[i]) continue;
      int live = 0;
      for (int j : adj[i])
        if (keep[j]) ++live;
      if (live == 0) {
        keep[i] = 0;
        changed = true;
      }
    }
  }

  PruneResult result;
  std::vector<std::string> kept_ids;
  for (int i = 0; i < graph.n; ++i) {
    if (keep[i])
      kept_ids.push_back(graph.tract_ids[i]);
    else
      result.removed.push_back(graph.tract_ids[i]);
  }
  if (kept_ids.empty()) fail("prune_cohort_graph: pruning removed every tract");

  std::vector<std::pair<std::string, std::string>> kept_edges;
  for (auto [i, j] : graph.edges)
    if (keep[i] && keep[j])
      kept_edges.emplace_back(graph.tract_ids[i], graph.tract_ids[j]);
  result.graph = build_graph(kept_edges, kept_ids);

  if (!result.graph.is_connected())
    fail("prune_cohort_graph: surviving graph is disconnected (" +
         std::to_string(result.graph.n) + " tracts remain); check the adjacency data");
  return result;
}

namespace {

// Dense log-determinant for small systems; sparse LDLT above the cutoff.
constexpr int kDenseCutoff = 64;

double spd_log_det(const Eigen::SparseMatrix<double>& m) {
  const int n = static_cast<int>(m.rows());
  if (n < kDenseCutoff) {
    Eigen::MatrixXd dense(m);
    Eigen::LLT<Eigen::MatrixXd> llt(dense);
    require(llt.info() == Eigen::Success, "log_det: matrix is not positive definite");
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  }
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(m);
  require(ldlt.info() == Eigen::Success, "log_det: sparse factorization failed");
  return ldlt.vectorD().array().log().sum();
}

}  // namespace

CarPrecision car_precision(const TractGraph& graph, double rho) {
  require(rho >= 0.0 && rho < 1.0, "car_precision: rho must lie in [0, 1)");
  CarPrecision prec;
  prec.rho = rho;

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(graph.n + 2 * graph.edges.size());
  for (int i = 0; i < graph.n; ++i)
    trips.emplace_back(i, i, rho * graph.degree[i] + (1.0 - rho));
  if (rho != 0.0) {
    for (auto [i, j] : graph.edges) {
      trips.emplace_back(i, j, -rho);
      trips.emplace_back(j, i, -rho);
    }
  }
  prec.matrix.resize(graph.n, graph.n);
  prec.matrix.setFromTriplets(trips.begin(), trips.end());
  prec.log_det = spd_log_det(prec.matrix);
  return prec;
}

double quad_form(const CarPrecision& prec, const Eigen::VectorXd& v) {
  require(v.size() == prec.matrix.rows(), "quad_form: dimension mismatch");
  return v.dot(prec.matrix * v);
}

Eigen::VectorXd sample_gmrf(const CarPrecision& prec, RandomStream& rng) {
  SpdSolver solver(prec.matrix);
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(prec.matrix.rows());
  return solver.sample(zero, rng);
}

SpdSolver::SpdSolver(const Eigen::SparseMatrix<double>& matrix) {
  ldlt_.analyzePattern(matrix);
  ldlt_.factorize(matrix);
  require(ldlt_.info() == Eigen::Success, "SpdSolver: factorization failed");
}

void SpdSolver::refactor(const Eigen::SparseMatrix<double>& matrix) {
  ldlt_.factorize(matrix);
  require(ldlt_.info() == Eigen::Success, "SpdSolver: factorization failed");
}

Eigen::VectorXd SpdSolver::solve(const Eigen::VectorXd& b) const { return ldlt_.solve(b); }

double SpdSolver::log_det() const { return ldlt_.vectorD().array().log().sum(); }

Eigen::VectorXd SpdSolver::sample(const Eigen::VectorXd& b, RandomStream& rng) const {
  // With P V P' = L D L', the transform P' L^{-T} D^{-1/2} z of z ~ N(0, I)
  // has covariance V^{-1}.
  Eigen::VectorXd mean = ldlt_.solve(b);
  Eigen::VectorXd z(b.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
  Eigen::VectorXd w = z.array() / ldlt_.vectorD().array().sqrt();
  Eigen::VectorXd v = ldlt_.matrixU().solve(w);
  Eigen::VectorXd noise = ldlt_.permutationPinv() * v;
  for (Eigen::Index i = 0; i < noise.size(); ++i)
    require(std::isfinite(noise[i]), "SpdSolver: non-finite sample (NaN contamination)");
  return mean + noise;
}

}  // namespace carrisk
