#include "taeg/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "taeg/error.hpp"

namespace taeg {

namespace {

constexpr double kRowSumTolerance = 1e-9;

CsrMatrix transpose(const CsrMatrix& m) {
  CsrMatrix t;
  t.n = m.n;
  std::vector<std::size_t> counts(m.n + 1, 0);
  for (const auto c : m.col) ++counts[c + 1];
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  t.row_ptr = counts;
  t.col.resize(m.nnz());
  t.val.resize(m.nnz());
  auto fill = counts;
  for (std::size_t r = 0; r < m.n; ++r) {
    for (std::size_t k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k) {
      const auto slot = fill[m.col[k]]++;
      t.col[slot] = r;
      t.val[slot] = m.val[k];
    }
  }
  return t;
}

}  // namespace

void PowerIterationConfig::validate() const {
  if (!(damping > 0.0 && damping <= 1.0)) throw ConfigError("damping must lie in (0, 1]");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (max_iter == 0) throw ConfigError("max_iter must be positive");
}

double StochasticMatrix::at(std::size_t row, std::size_t col) const {
  if (dangling_[row]) return 1.0 / static_cast<double>(n_);
  for (std::size_t k = rows_.row_ptr[row]; k < rows_.row_ptr[row + 1]; ++k) {
    if (rows_.col[k] == col) return rows_.val[k];
  }
  return 0.0;
}

std::vector<double> StochasticMatrix::dense_row(std::size_t row) const {
  std::vector<double> out(n_, 0.0);
  if (dangling_[row]) {
    out.assign(n_, 1.0 / static_cast<double>(n_));
    return out;
  }
  for (std::size_t k = rows_.row_ptr[row]; k < rows_.row_ptr[row + 1]; ++k) out[rows_.col[k]] = rows_.val[k];
  return out;
}

StochasticMatrix StochasticMatrix::from_csr(CsrMatrix rows, std::vector<bool> dangling) {
  StochasticMatrix m;
  m.n_ = rows.n;
  m.transposed_ = transpose(rows);
  m.rows_ = std::move(rows);
  m.dangling_ = std::move(dangling);
  return m;
}

StochasticMatrix StochasticMatrix::from_dense(const std::vector<std::vector<double>>& dense) {
  CsrMatrix csr;
  csr.n = dense.size();
  for (const auto& row : dense) {
    if (row.size() != dense.size()) throw ConfigError("dense matrix must be square");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] != 0.0) {
        csr.col.push_back(c);
        csr.val.push_back(row[c]);
      }
    }
    csr.row_ptr.push_back(csr.col.size());
  }
  return from_csr(std::move(csr), std::vector<bool>(dense.size(), false));
}

StochasticMatrix to_stochastic(std::span<const WeightedEdge> edges, std::size_t n) {
  if (n == 0) throw ConfigError("a stochastic matrix needs at least one node");
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency(n);
  for (const auto& e : edges) {
    if (e.weight < 0.0 || std::isnan(e.weight)) {
      throw NegativeWeight("edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) + ") has weight " +
                           std::to_string(e.weight));
    }
    if (e.a >= n || e.b >= n) throw InvariantError("edge endpoint out of range");
    if (e.weight == 0.0) continue;
    adjacency[e.a].emplace_back(e.b, e.weight);
    if (e.a != e.b) adjacency[e.b].emplace_back(e.a, e.weight);
  }

  CsrMatrix csr;
  csr.n = n;
  std::vector<bool> dangling(n, false);
  std::vector<double> dense_row(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    double mass = 0.0;
    for (const auto& [c, w] : adjacency[r]) {
      dense_row[c] += w;
      mass += w;
    }
    if (mass <= 0.0) {
      dangling[r] = true;
    } else {
      std::vector<std::size_t> cols;
      for (const auto& [c, w] : adjacency[r]) cols.push_back(c);
      std::sort(cols.begin(), cols.end());
      cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
      for (const auto c : cols) {
        csr.col.push_back(c);
        csr.val.push_back(dense_row[c] / mass);
        dense_row[c] = 0.0;
      }
    }
    csr.row_ptr.push_back(csr.col.size());
  }
  return StochasticMatrix::from_csr(std::move(csr), std::move(dangling));
}

CentralityScores lexrank(const StochasticMatrix& matrix, const PowerIterationConfig& config, Backend backend) {
  config.validate();
  const std::size_t n = matrix.size();
  if (n == 0) throw ConfigError("cannot rank an empty matrix");
  const auto& rows = matrix.rows();
  std::vector<std::size_t> dangling_rows;
  for (std::size_t r = 0; r < n; ++r) {
    if (matrix.dangling(r)) {
      dangling_rows.push_back(r);
      continue;
    }
    double sum = 0.0;
    for (std::size_t k = rows.row_ptr[r]; k < rows.row_ptr[r + 1]; ++k) {
      if (rows.val[k] < 0.0) throw NonStochastic("row " + std::to_string(r) + " has a negative entry");
      sum += rows.val[k];
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw NonStochastic("row " + std::to_string(r) + " sums to " + std::to_string(sum));
    }
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  const double d = config.damping;
  std::vector<double> p(n, inv_n);
  std::vector<double> next(n, 0.0);
  CentralityScores out;
  for (out.iterations = 1; out.iterations <= config.max_iter; ++out.iterations) {
    if (backend == Backend::Serial) {
      kernels::serial::matvec(matrix.transposed(), p, next);
    } else {
      kernels::omp::matvec(matrix.transposed(), p, next);
    }
    double dangling_mass = 0.0;
    for (const auto r : dangling_rows) dangling_mass += p[r];
    const double shift = d * dangling_mass * inv_n + (1.0 - d) * inv_n;
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = d * next[i] + shift;
      delta += std::abs(next[i] - p[i]);
    }
    p.swap(next);
    if (delta < config.epsilon) {
      out.converged = true;
      break;
    }
  }
  if (!out.converged) out.iterations = config.max_iter;

  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& v : p) v /= total;
  out.values = std::move(p);
  return out;
}

CentralityScores taeg_scores(const Taeg& taeg, const PowerIterationConfig& config, LexRankScope scope,
                             Backend backend) {
  const std::size_t n = taeg.nodes.size();
  if (n == 0) throw NoVersions("cannot score an empty TAEG");

  if (scope == LexRankScope::Global) {
    std::vector<WeightedEdge> edges = taeg.same_event_edges;
    for (const auto& e : taeg.before_edges) edges.push_back({e.from, e.to, kBeforeWeight});
    return lexrank(to_stochastic(edges, n), config, backend);
  }

  // Per-event clusters.
  std::map<std::size_t, std::size_t> local_of;
  std::vector<std::vector<WeightedEdge>> cluster_edges(taeg.event_nodes.size());
  std::map<EventIndex, std::size_t> cluster_of_event;
  for (const auto& [event, ids] : taeg.event_nodes) {
    const auto c = cluster_of_event.size();
    cluster_of_event.emplace(event, c);
    for (std::size_t k = 0; k < ids.size(); ++k) local_of[ids[k]] = k;
  }
  for (const auto& e : taeg.same_event_edges) {
    const auto c = cluster_of_event.at(taeg.nodes[e.a].event_index);
    cluster_edges[c].push_back({local_of.at(e.a), local_of.at(e.b), e.weight});
  }

  CentralityScores out;
  out.values.assign(n, 0.0);
  out.converged = true;
  const double share = 1.0 / static_cast<double>(taeg.event_nodes.size());
  for (const auto& [event, ids] : taeg.event_nodes) {
    const auto c = cluster_of_event.at(event);
    const auto local = lexrank(to_stochastic(cluster_edges[c], ids.size()), config, backend);
    out.iterations = std::max(out.iterations, local.iterations);
    out.converged = out.converged && local.converged;
    for (std::size_t k = 0; k < ids.size(); ++k) out.values[ids[k]] = local.values[k] * share;
  }
  return out;
}

CentralityScores semantic_scores(const SemanticGraph& graph, const PowerIterationConfig& config, Backend backend) {
  if (graph.node_count == 0) throw EmptyCorpus("cannot score an empty sentence graph");
  return lexrank(to_stochastic(graph.edges, graph.node_count), config, backend);
}

}  // namespace taeg
