#pragma once

// Areal adjacency graph and the Leroux CAR precision
//   Q(rho) = rho * (D_W - W) + (1 - rho) * I,   rho in [0, 1),
// which is symmetric positive definite on that range (smallest
// eigenvalue >= 1 - rho). Tract order is fixed lexicographically at
// construction; every vector in the pipeline is indexed by it.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace carrisk {

class RandomStream;

struct TractGraph {
  std::vector<std::string> tract_ids;        // sorted, unique
  std::vector<std::pair<int, int>> edges;    // index pairs, i < j, sorted
  std::vector<int> degree;                   // row sums of W
  int n = 0;

  // Index of a tract id in the fixed ordering, -1 if unknown.
  int index_of(const std::string& id) const;
  std::vector<std::vector<int>> adjacency() const;
  bool is_connected() const;
};

// Edge list uses string ids; duplicates and reversed pairs collapse to
// one undirected edge. Errors: unknown id, duplicate tract id, self-loop.
TractGraph build_graph(const std::vector<std::pair<std::string, std::string>>& edge_list,
                       const std::vector<std::string>& tract_ids);

// Per-tract delivery counts, one entry per observation period.
using PeriodCounts = std::map<std::string, std::vector<long>>;

struct PruneResult {
  TractGraph graph;
  std::vector<std::string> removed;  // sorted ids, with removal reason in log order
};

// Drops tracts with any period count below min_count, then iteratively
// drops tracts left without neighbors. Errors if the survivor set is
// empty or disconnected rather than silently keeping a component.
PruneResult prune_cohort_graph(const TractGraph& graph, const PeriodCounts& counts,
                               long min_count);

struct CarPrecision {
  double rho = 0.0;
  Eigen::SparseMatrix<double> matrix;  // Q(rho), n x n
  double log_det = 0.0;

  int n() const { return static_cast<int>(matrix.rows()); }
};

CarPrecision car_precision(const TractGraph& graph, double rho);

// v' Q v; >= (1-rho) * |v|^2 for any v.
double quad_form(const CarPrecision& prec, const Eigen::VectorXd& v);

// One draw from N(0, Q^{-1}).
Eigen::VectorXd sample_gmrf(const CarPrecision& prec, RandomStream& rng);

// Sparse SPD solver used for GMRF-structured systems: solves, log
// determinants, and N(mean, V^{-1}) sampling from one factorization.
class SpdSolver {
public:
  explicit SpdSolver(const Eigen::SparseMatrix<double>& matrix);

  // Reuses the symbolic analysis when the sparsity pattern is unchanged.
  void refactor(const Eigen::SparseMatrix<double>& matrix);

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  double log_det() const;
  // mean = V^{-1} b, plus correlated noise: a draw from N(V^{-1} b, V^{-1}).
  Eigen::VectorXd sample(const Eigen::VectorXd& b, RandomStream& rng) const;

private:
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
};

}  // namespace carrisk
