#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "taeg/graph.hpp"
#include "taeg/kernels.hpp"

namespace taeg {

struct PowerIterationConfig {
  double damping = 0.85;
  double epsilon = 1e-8;
  std::size_t max_iter = 200;

  void validate() const;  // throws ConfigError
};

// Row-stochastic n x n matrix. Rows with no outgoing mass are "dangling" and
// stand for the uniform row 1/n without being stored.
class StochasticMatrix {
 public:
  std::size_t size() const { return n_; }
  bool dangling(std::size_t row) const { return dangling_[row]; }
  double at(std::size_t row, std::size_t col) const;
  std::vector<double> dense_row(std::size_t row) const;
  const CsrMatrix& rows() const { return rows_; }
  const CsrMatrix& transposed() const { return transposed_; }

  // Takes the rows as given, without normalizing; lexrank() rejects them if
  // they are not stochastic.
  static StochasticMatrix from_dense(const std::vector<std::vector<double>>& dense);

 private:
  friend StochasticMatrix to_stochastic(std::span<const WeightedEdge> edges, std::size_t n);
  static StochasticMatrix from_csr(CsrMatrix rows, std::vector<bool> dangling);

  std::size_t n_ = 0;
  CsrMatrix rows_;
  CsrMatrix transposed_;
  std::vector<bool> dangling_;
};

// Symmetric weights: every edge adds its weight to both (a, b) and (b, a).
// Throws NegativeWeight on a negative weight and ConfigError when n == 0.
StochasticMatrix to_stochastic(std::span<const WeightedEdge> edges, std::size_t n);

struct CentralityScores {
  std::vector<double> values;  // indexed by node id
  std::size_t iterations = 0;
  bool converged = false;

  double operator[](std::size_t node) const { return values[node]; }
  std::size_t size() const { return values.size(); }
};

// Damped power iteration p <- d M^T p + (1 - d)/n from the uniform vector,
// stopping when the L1 change drops below epsilon. Throws NonStochastic if a
// stored row does not sum to 1 within 1e-9.
CentralityScores lexrank(const StochasticMatrix& matrix, const PowerIterationConfig& config = {},
                         Backend backend = Backend::OpenMP);

enum class LexRankScope { Global, PerEvent };

// Global: one matrix from SAME_EVENT weights plus BEFORE edges symmetrized at
// kBeforeWeight. PerEvent: LexRank on each SAME_EVENT clique separately, each
// cluster's distribution scaled by 1 / (number of clusters).
CentralityScores taeg_scores(const Taeg& taeg, const PowerIterationConfig& config = {},
                             LexRankScope scope = LexRankScope::Global, Backend backend = Backend::OpenMP);

CentralityScores semantic_scores(const SemanticGraph& graph, const PowerIterationConfig& config = {},
                                 Backend backend = Backend::OpenMP);

}  // namespace taeg
