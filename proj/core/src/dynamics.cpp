#include "odyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "odyn/error.hpp"

namespace odyn {

namespace {

using Candidate = std::pair<double, int>;  // (opinion, node index)

// Removal priority for values above own: larger value first, then lower
// index (the deterministic refinement of arbitrary tie-breaking).
bool above_first(const Candidate& a, const Candidate& b) {
  return a.first > b.first || (a.first == b.first && a.second < b.second);
}

bool below_first(const Candidate& a, const Candidate& b) {
  return a.first < b.first || (a.first == b.first && a.second < b.second);
}

}  // namespace

void DynamicsConfig::validate() const {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    fail(ErrorCode::InvalidArgument, "epsilon must be positive and finite");
  }
  if (max_steps < 1) {
    fail(ErrorCode::InvalidArgument, "max_steps must be positive");
  }
  if (!(eta > 0) || !(eta <= 1)) {
    fail(ErrorCode::InvalidArgument, "eta must lie in (0, 1]");
  }
}

TrimResult trim(double own, std::span<const std::pair<int, double>> neighbors,
                int t, int universe) {
  if (t < 0) {
    fail(ErrorCode::InvalidArgument, "threshold must be nonnegative");
  }
  TrimResult out;
  out.moderate = NodeSet(universe);
  std::vector<Candidate> above;
  std::vector<Candidate> below;
  for (const auto& [index, value] : neighbors) {
    if (value > own) {
      above.emplace_back(value, index);
    } else if (value < own) {
      below.emplace_back(value, index);
    } else {
      out.moderate.insert(index);
    }
  }
  std::sort(above.begin(), above.end(), above_first);
  std::sort(below.begin(), below.end(), below_first);
  std::size_t drop_above = std::min(above.size(), static_cast<std::size_t>(t));
  std::size_t drop_below = std::min(below.size(), static_cast<std::size_t>(t));
  for (std::size_t i = 0; i < above.size(); ++i) {
    if (i < drop_above) {
      out.removed_above.push_back(above[i].second);
    } else {
      out.moderate.insert(above[i].second);
    }
  }
  for (std::size_t i = 0; i < below.size(); ++i) {
    if (i < drop_below) {
      out.removed_below.push_back(below[i].second);
    } else {
      out.moderate.insert(below[i].second);
    }
  }
  return out;
}

OpinionState step(const Graph& g, const ThresholdAssignment& thresholds,
                  const OpinionState& x, const DynamicsConfig& cfg) {
  cfg.validate();
  int n = g.n();
  thresholds.validate_for(n);
  if (static_cast<int>(x.size()) != n) {
    fail(ErrorCode::InvalidArgument,
         "opinion state length " + std::to_string(x.size()) +
             " does not match node count " + std::to_string(n));
  }

  OpinionState next = x;  // untouched nodes keep their opinion bit-for-bit
  std::vector<Candidate> above;
  std::vector<Candidate> below;
  std::vector<char> dropped(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    auto nbrs = g.in_neighbors(i);
    double own = x[i];
    int t = thresholds.t[i];
    above.clear();
    below.clear();
    for (int j : nbrs) {
      if (x[j] > own) {
        above.emplace_back(x[j], j);
      } else if (x[j] < own) {
        below.emplace_back(x[j], j);
      }
    }
    std::size_t drop_above =
        std::min(above.size(), static_cast<std::size_t>(t));
    std::size_t drop_below =
        std::min(below.size(), static_cast<std::size_t>(t));
    if (drop_above > 0 && drop_above < above.size()) {
      std::nth_element(above.begin(), above.begin() + drop_above, above.end(),
                       above_first);
    }
    if (drop_below > 0 && drop_below < below.size()) {
      std::nth_element(below.begin(), below.begin() + drop_below, below.end(),
                       below_first);
    }
    for (std::size_t k = 0; k < drop_above; ++k) dropped[above[k].second] = 1;
    for (std::size_t k = 0; k < drop_below; ++k) dropped[below[k].second] = 1;

    // Uniform weights over self + moderate set, accumulated in ascending
    // neighbor order so the sum is order-deterministic.
    double sum = own;
    int count = 1;
    for (int j : nbrs) {
      if (!dropped[j]) {
        sum += x[j];
        ++count;
      }
    }
    if (count > 1) next[i] = sum / count;

    for (std::size_t k = 0; k < drop_above; ++k) dropped[above[k].second] = 0;
    for (std::size_t k = 0; k < drop_below; ++k) dropped[below[k].second] = 0;
  }
  return next;
}

double opinion_gap(const OpinionState& x) {
  if (x.empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return *hi - *lo;
}

SimulationResult simulate(const Graph& g, const ThresholdAssignment& thresholds,
                          const OpinionState& x0, const DynamicsConfig& cfg) {
  cfg.validate();
  thresholds.validate_for(g.n());
  if (static_cast<int>(x0.size()) != g.n()) {
    fail(ErrorCode::InvalidArgument,
         "opinion state length " + std::to_string(x0.size()) +
             " does not match node count " + std::to_string(g.n()));
  }
  for (double v : x0) {
    if (!std::isfinite(v)) {
      fail(ErrorCode::InvalidArgument, "opinions must be finite");
    }
  }

  SimulationResult res;
  OpinionState x = x0;
  res.gap_history.push_back(opinion_gap(x));
  while (res.gap_history.back() >= cfg.epsilon && res.steps < cfg.max_steps) {
    x = step(g, thresholds, x, cfg);
    ++res.steps;
    res.gap_history.push_back(opinion_gap(x));
  }
  res.final_gap = res.gap_history.back();
  res.verdict = res.final_gap < cfg.epsilon ? SimVerdict::Consensus
                                            : SimVerdict::NoConsensusWithinBudget;
  res.final_state = std::move(x);
  return res;
}

OpinionState witness_initial_condition(const NodeSet& s1, const NodeSet& s2,
                                       int n) {
  if (s1.universe() != n || s2.universe() != n) {
    fail(ErrorCode::InvalidArgument,
         "witness sets must share the graph's node universe");
  }
  if (s1.empty() || s2.empty()) {
    fail(ErrorCode::InvalidArgument, "witness sets must be nonempty");
  }
  if (!s1.disjoint_with(s2)) {
    fail(ErrorCode::InvalidArgument, "witness sets must be disjoint");
  }
  OpinionState x(static_cast<std::size_t>(n), 0.5);
  for (int i : s1.indices()) x[i] = 0.0;
  for (int i : s2.indices()) x[i] = 1.0;
  return x;
}

}  // namespace odyn
