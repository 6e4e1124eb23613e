#include "odyn/randgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "odyn/error.hpp"

namespace odyn {

namespace {

ClampedProbability clamp_probability(double raw) {
  if (raw < 0) return {0.0, true};
  if (raw > 1) return {1.0, true};
  return {raw, false};
}

void check_probability(double p, const char* what) {
  if (!(p >= 0) || !(p <= 1)) {
    fail(ErrorCode::InvalidArgument,
         std::string(what) + " must lie in [0, 1]");
  }
}

double formula_numerator(int n, int r, double c) {
  if (n < 3) {
    fail(ErrorCode::InvalidArgument,
         "edge probability formula needs n >= 3");
  }
  if (r < 1) {
    fail(ErrorCode::InvalidArgument, "r must be at least 1");
  }
  return std::log(n) + (r - 1) * std::log(std::log(n)) + c;
}

}  // namespace

ClampedProbability er_edge_probability(int n, int r, double c) {
  return clamp_probability(formula_numerator(n, r, c) / n);
}

ClampedProbability rin_edge_probability(int n, int k, int r, double c) {
  if (k < 2) {
    fail(ErrorCode::InvalidArgument, "k must be at least 2");
  }
  return clamp_probability(formula_numerator(n, r, c) /
                           (static_cast<double>(k - 1) * n));
}

double ErParams::edge_probability(bool* clamped) const {
  if (p_override) {
    check_probability(*p_override, "edge probability override");
    if (clamped != nullptr) *clamped = false;
    return *p_override;
  }
  ClampedProbability p = er_edge_probability(n, r, c);
  if (clamped != nullptr) *clamped = p.clamped;
  return p.value;
}

double RinParams::edge_probability(bool* clamped) const {
  if (p_override) {
    check_probability(*p_override, "edge probability override");
    if (clamped != nullptr) *clamped = false;
    return *p_override;
  }
  ClampedProbability p = rin_edge_probability(n, k, r, c);
  if (clamped != nullptr) *clamped = p.clamped;
  return p.value;
}

ThresholdDistribution::ThresholdDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) {
    fail(ErrorCode::InvalidArgument,
         "threshold distribution needs at least one probability");
  }
  double sum = 0.0;
  for (std::size_t t = 0; t < probs_.size(); ++t) {
    if (!(probs_[t] >= 0) || !std::isfinite(probs_[t])) {
      fail(ErrorCode::InvalidArgument,
           "threshold probability " + std::to_string(t) +
               " must be nonnegative");
    }
    sum += probs_[t];
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    fail(ErrorCode::InvalidArgument,
         "threshold probabilities sum to " + std::to_string(sum) +
             ", expected 1");
  }
  cdf_.resize(probs_.size());
  double acc = 0.0;
  for (std::size_t t = 0; t < probs_.size(); ++t) {
    acc += probs_[t];
    cdf_[t] = acc;
  }
  cdf_.back() = 1.0;  // every uniform in [0,1) maps to a valid index
}

double ThresholdDistribution::prob(int t) const {
  if (t < 0 || t > rbar()) {
    fail(ErrorCode::InvalidArgument,
         "threshold " + std::to_string(t) + " outside the support");
  }
  return probs_[static_cast<std::size_t>(t)];
}

int ThresholdDistribution::sample(StreamRng& rng) const {
  double u = rng.next_double();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<int>(it - cdf_.begin());
}

ThresholdDistribution default_threshold_distribution(int n, int r, int rbar) {
  if (n < 3) {
    fail(ErrorCode::InvalidArgument,
         "threshold distribution formula needs n >= 3");
  }
  if (r < 1) {
    fail(ErrorCode::InvalidArgument, "r must be at least 1");
  }
  if (rbar < 0) {
    fail(ErrorCode::InvalidArgument, "rbar must be nonnegative");
  }
  double log_n = std::log(n);
  std::vector<double> weights(static_cast<std::size_t>(rbar) + 1);
  double sum = 0.0;
  for (int t = 0; t <= rbar; ++t) {
    double w = t < r ? 1.0 : std::pow(log_n, -(t - r + 1));
    weights[static_cast<std::size_t>(t)] = w;
    sum += w;
  }
  for (double& w : weights) w /= sum;
  return ThresholdDistribution(std::move(weights));
}

EdgeProbabilityMatrix::EdgeProbabilityMatrix(int n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n < 1) {
    fail(ErrorCode::InvalidArgument, "matrix needs at least one node");
  }
  if (entries_.size() != static_cast<std::size_t>(n) * n) {
    fail(ErrorCode::InvalidArgument,
         "matrix must have exactly n*n entries");
  }
  for (int i = 0; i < n; ++i) {
    if (entries_[static_cast<std::size_t>(i) * n + i] != 0.0) {
      fail(ErrorCode::InvalidArgument,
           "matrix diagonal entry " + std::to_string(i) + " must be zero");
    }
    for (int j = i + 1; j < n; ++j) {
      double pij = entries_[static_cast<std::size_t>(i) * n + j];
      double pji = entries_[static_cast<std::size_t>(j) * n + i];
      if (pij != pji) {
        fail(ErrorCode::InvalidArgument,
             "matrix must be symmetric; entries (" + std::to_string(i) + "," +
                 std::to_string(j) + ") differ");
      }
      if (!(pij >= 0) || !(pij <= 1)) {
        fail(ErrorCode::InvalidArgument,
             "matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                 ") must lie in [0, 1]");
      }
    }
  }
}

EdgeProbabilityMatrix EdgeProbabilityMatrix::constant(int n, double p) {
  check_probability(p, "edge probability");
  std::vector<double> entries(static_cast<std::size_t>(n) * n, p);
  for (int i = 0; i < n; ++i) entries[static_cast<std::size_t>(i) * n + i] = 0.0;
  return EdgeProbabilityMatrix(n, std::move(entries));
}

EdgeProbabilityMatrix EdgeProbabilityMatrix::from_json_text(
    const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  const nlohmann::json* rows = &doc;
  if (doc.is_object()) {
    auto it = doc.find("probs");
    if (it == doc.end()) {
      fail(ErrorCode::ParseError, "matrix object must have a \"probs\" field");
    }
    rows = &*it;
  }
  if (!rows->is_array() || rows->empty()) {
    fail(ErrorCode::ParseError, "matrix must be a nonempty 2D array");
  }
  int n = static_cast<int>(rows->size());
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const nlohmann::json& row = (*rows)[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      fail(ErrorCode::ParseError,
           "matrix row " + std::to_string(i) + " must have " +
               std::to_string(n) + " entries");
    }
    for (int j = 0; j < n; ++j) {
      const nlohmann::json& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_number()) {
        fail(ErrorCode::ParseError,
             "matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                 ") must be a number");
      }
      entries.push_back(cell.get<double>());
    }
  }
  return EdgeProbabilityMatrix(n, std::move(entries));
}

double EdgeProbabilityMatrix::at(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) {
    fail(ErrorCode::InvalidArgument, "matrix index out of range");
  }
  return entries_[static_cast<std::size_t>(i) * n_ + j];
}

double EdgeProbabilityMatrix::min_off_diagonal() const {
  if (n_ < 2) {
    fail(ErrorCode::InvalidArgument,
         "off-diagonal minimum needs at least two nodes");
  }
  double best = 1.0;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (i != j) best = std::min(best, at(i, j));
    }
  }
  return best;
}

EdgeProbabilityMatrix EdgeProbabilityMatrix::scaled(double factor) const {
  if (!(factor >= 0) || !std::isfinite(factor)) {
    fail(ErrorCode::InvalidArgument, "scale factor must be nonnegative");
  }
  std::vector<double> entries = entries_;
  for (double& e : entries) e = std::min(1.0, e * factor);
  return EdgeProbabilityMatrix(n_, std::move(entries));
}

Graph sample_er(int n, double p, std::uint64_t seed) {
  if (n < 0) {
    fail(ErrorCode::InvalidArgument, "node count must be nonnegative");
  }
  check_probability(p, "edge probability");
  StreamRng rng(seed, StreamPurpose::Edges);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
    }
  }
  return Graph::build(n, false, edges);
}

Graph sample_rin(const RinParams& params, std::uint64_t seed) {
  if (params.k < 2) {
    fail(ErrorCode::InvalidArgument, "k must be at least 2");
  }
  if (params.n < 1) {
    fail(ErrorCode::InvalidArgument, "communities need at least one node");
  }
  if (!params.intra.empty() &&
      static_cast<int>(params.intra.size()) != params.k) {
    fail(ErrorCode::InvalidArgument,
         "intra graph count must be 0 or k");
  }
  int total = params.total_nodes();
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < params.intra.size(); ++c) {
    const Graph& community = params.intra[c];
    if (community.directed() || community.n() != params.n) {
      fail(ErrorCode::InvalidArgument,
           "intra graph " + std::to_string(c) + " must be undirected with " +
               std::to_string(params.n) + " nodes");
    }
    int offset = static_cast<int>(c) * params.n;
    for (const Edge& e : community.edge_list()) {
      edges.emplace_back(e.first + offset, e.second + offset);
    }
  }
  double p = params.edge_probability();
  StreamRng rng(seed, StreamPurpose::Edges);
  for (int i = 0; i < total; ++i) {
    for (int j = i + 1; j < total; ++j) {
      if (i / params.n == j / params.n) continue;  // intra pairs draw nothing
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
    }
  }
  return Graph::build(total, false, edges);
}

Graph sample_heterogeneous(const EdgeProbabilityMatrix& p, std::uint64_t seed) {
  StreamRng rng(seed, StreamPurpose::Edges);
  std::vector<Edge> edges;
  for (int i = 0; i < p.n(); ++i) {
    for (int j = i + 1; j < p.n(); ++j) {
      if (rng.bernoulli(p.at(i, j))) edges.emplace_back(i, j);
    }
  }
  return Graph::build(p.n(), false, edges);
}

std::pair<Graph, Graph> coupled_pair(double p_base,
                                     const EdgeProbabilityMatrix& p,
                                     std::uint64_t seed) {
  check_probability(p_base, "base probability");
  if (p_base >= 1.0) {
    fail(ErrorCode::InvalidArgument, "base probability must be below 1");
  }
  int n = p.n();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (p.at(i, j) < p_base) {
        fail(ErrorCode::InvalidArgument,
             "matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                 ") is below the base probability");
      }
    }
  }
  // First coin reproduces sample_er(n, p_base, seed); an always-consumed
  // second coin upgrades each missing pair so the marginal becomes p_ij.
  StreamRng base_rng(seed, StreamPurpose::Edges);
  StreamRng extra_rng(seed, StreamPurpose::Coupling);
  std::vector<Edge> base_edges;
  std::vector<Edge> upper_edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool in_base = base_rng.bernoulli(p_base);
      double boost = (p.at(i, j) - p_base) / (1.0 - p_base);
      bool upgraded = extra_rng.bernoulli(boost);
      if (in_base) base_edges.emplace_back(i, j);
      if (in_base || upgraded) upper_edges.emplace_back(i, j);
    }
  }
  return {Graph::build(n, false, base_edges),
          Graph::build(n, false, upper_edges)};
}

ThresholdAssignment sample_thresholds(const ThresholdDistribution& dist, int n,
                                      std::uint64_t seed) {
  if (n < 1) {
    fail(ErrorCode::InvalidArgument, "need at least one node");
  }
  if (dist.rbar() > n - 1) {
    fail(ErrorCode::InvalidArgument,
         "threshold support exceeds the maximum threshold n-1");
  }
  StreamRng rng(seed, StreamPurpose::Thresholds);
  ThresholdAssignment out;
  out.t.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.t.push_back(dist.sample(rng));
  return out;
}

std::pair<Graph, ThresholdAssignment> two_clique_counterexample(int n) {
  if (n < 4 || n % 2 != 0) {
    fail(ErrorCode::InvalidArgument,
         "the two-clique family needs an even n >= 4");
  }
  int half = n / 2;
  std::vector<Edge> edges;
  for (int base : {0, half}) {
    for (int a = base; a < base + half; ++a) {
      for (int b = a + 1; b < base + half; ++b) edges.emplace_back(a, b);
    }
  }
  for (int i = 0; i < half; ++i) edges.emplace_back(i, i + half);
  return {Graph::build(n, false, edges), ThresholdAssignment::uniform(n, 1)};
}

}  // namespace odyn
