#pragma once

#include <span>
#include <utility>
#include <vector>

#include "odyn/graph.hpp"
#include "odyn/nodeset.hpp"
#include "odyn/thresholds.hpp"

namespace odyn {

using OpinionState = std::vector<double>;

enum class WeightRule {
  // Weight 1/(1 + |M_i|) on self and each surviving neighbor. Satisfies the
  // positive-lower-bound requirement with eta = 1/n.
  Uniform,
};

struct DynamicsConfig {
  WeightRule weight_rule = WeightRule::Uniform;
  double epsilon = 1e-9;  // consensus tolerance on the opinion gap
  int max_steps = 10000;
  double eta = 1e-9;  // declared positive lower bound on averaging weights

  void validate() const;
};

// Outcome of one node's filtering pass.
struct TrimResult {
  NodeSet moderate;
  // Removal order: value descending, ties by ascending node index.
  std::vector<int> removed_above;
  // Removal order: value ascending, ties by ascending node index.
  std::vector<int> removed_below;
};

// Removes the t largest neighbor opinions strictly above own and the t
// smallest strictly below own (all of them if fewer than t exist); values
// equal to own are never removed. Ties among equal candidates are broken by
// removing the lower node index first. universe sizes the moderate set and
// must exceed every neighbor index.
TrimResult trim(double own, std::span<const std::pair<int, double>> neighbors,
                int t, int universe);

// Synchronous filtered-averaging update: every node trims its in-neighborhood
// against the shared prior state and averages uniformly over itself plus its
// moderate neighbors. A node whose moderate set is empty (including the
// stubborn case t_i >= d_i) keeps its opinion bit-for-bit.
OpinionState step(const Graph& g, const ThresholdAssignment& thresholds,
                  const OpinionState& x, const DynamicsConfig& cfg);

// max_i x_i - min_i x_i; 0 for the empty state.
double opinion_gap(const OpinionState& x);

enum class SimVerdict {
  Consensus,
  // Budget exhaustion, not a disproof.
  NoConsensusWithinBudget,
};

struct SimulationResult {
  SimVerdict verdict = SimVerdict::Consensus;
  int steps = 0;
  double final_gap = 0.0;
  OpinionState final_state;
  // gap_history[k] is the gap at time k; size steps + 1.
  std::vector<double> gap_history;
};

// Iterates step until the gap drops below cfg.epsilon or cfg.max_steps is
// exhausted.
SimulationResult simulate(const Graph& g, const ThresholdAssignment& thresholds,
                          const OpinionState& x0, const DynamicsConfig& cfg);

// Opinion 0 on s1, 1 on s2, 0.5 elsewhere. If neither set is reachable this
// initial condition freezes both sets forever, so the gap stays exactly 1.
// Rejects overlapping or empty sets.
OpinionState witness_initial_condition(const NodeSet& s1, const NodeSet& s2,
                                       int n);

}  // namespace odyn
