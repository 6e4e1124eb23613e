#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "odyn/graph.hpp"
#include "odyn/rng.hpp"
#include "odyn/thresholds.hpp"

namespace odyn {

struct ClampedProbability {
  double value = 0.0;
  bool clamped = false;
};

// (ln n + (r-1) ln ln n + c) / n, clamped to [0,1]. Requires n >= 3, r >= 1.
ClampedProbability er_edge_probability(int n, int r, double c);

// Inter-community variant: (ln n + (r-1) ln ln n + c) / ((k-1) n) for k
// communities of n nodes each. Requires k >= 2.
ClampedProbability rin_edge_probability(int n, int k, int r, double c);

struct ErParams {
  int n = 0;
  int r = 1;
  double c = 0.0;  // resolved value of c(n) at this n
  // Explicit probability instead of the (r, c) formula.
  std::optional<double> p_override;

  double edge_probability(bool* clamped = nullptr) const;
};

struct RinParams {
  int k = 2;  // number of communities
  int n = 0;  // nodes per community
  int r = 1;
  double c = 0.0;
  std::optional<double> p_override;
  // Either empty (all communities edgeless) or exactly k undirected graphs
  // of n nodes each; community i occupies global indices [i*n, (i+1)*n).
  std::vector<Graph> intra;

  int total_nodes() const { return k * n; }
  double edge_probability(bool* clamped = nullptr) const;
};

// Finite distribution over thresholds {0, ..., rbar}.
class ThresholdDistribution {
 public:
  // probs must be nonempty, nonnegative, and sum to 1 within 1e-12.
  explicit ThresholdDistribution(std::vector<double> probs);

  int rbar() const noexcept { return static_cast<int>(probs_.size()) - 1; }
  std::span<const double> probs() const noexcept { return probs_; }
  double prob(int t) const;

  // Inverse-CDF draw; consumes one uniform.
  int sample(StreamRng& rng) const;

 private:
  std::vector<double> probs_;
  std::vector<double> cdf_;
};

// The concrete decaying family used by default: unnormalized mass 1 for
// t < r and (ln n)^-(t-r+1) for r <= t <= rbar, then normalized. For
// rbar < r this degenerates to the uniform distribution on {0..rbar}.
ThresholdDistribution default_threshold_distribution(int n, int r, int rbar);

// Symmetric per-pair edge probabilities with zero diagonal.
class EdgeProbabilityMatrix {
 public:
  // Row-major n*n entries; validates symmetry, zero diagonal, range.
  EdgeProbabilityMatrix(int n, std::vector<double> entries);

  static EdgeProbabilityMatrix constant(int n, double p);
  // Accepts either a bare 2D array or {"probs": [[...], ...]}.
  static EdgeProbabilityMatrix from_json_text(const std::string& text);

  int n() const noexcept { return n_; }
  double at(int i, int j) const;
  double min_off_diagonal() const;

  // Entry-wise scaled copy, clamped to [0,1].
  EdgeProbabilityMatrix scaled(double factor) const;

 private:
  int n_ = 0;
  std::vector<double> entries_;
};

// All generators are deterministic functions of their parameters and the
// seed, with a fixed lexicographic (i, j), i < j pair order and one uniform
// draw per candidate pair.

Graph sample_er(int n, double p, std::uint64_t seed);

Graph sample_rin(const RinParams& params, std::uint64_t seed);

// Constant matrices reproduce sample_er exactly for the same seed.
Graph sample_heterogeneous(const EdgeProbabilityMatrix& p, std::uint64_t seed);

// Two-coin coupling: the first graph is exactly sample_er(n, p_base, seed);
// the second adds each missing pair with probability
// (p_ij - p_base) / (1 - p_base) from a separate stream, so its edges have
// marginal probability p_ij and always contain the first graph's edges.
// Requires p_ij >= p_base everywhere off-diagonal and p_base < 1.
std::pair<Graph, Graph> coupled_pair(double p_base,
                                     const EdgeProbabilityMatrix& p,
                                     std::uint64_t seed);

ThresholdAssignment sample_thresholds(const ThresholdDistribution& dist, int n,
                                      std::uint64_t seed);

// Two n/2-cliques joined by a perfect matching (i, i + n/2), all thresholds
// 1. Strongly connected with minimum degree and connectivity n/2, yet never
// reaches consensus from the 0/1 split. Requires even n >= 4.
std::pair<Graph, ThresholdAssignment> two_clique_counterexample(int n);

}  // namespace odyn
