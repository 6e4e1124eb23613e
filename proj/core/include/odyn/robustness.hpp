#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "odyn/graph.hpp"
#include "odyn/nodeset.hpp"
#include "odyn/thresholds.hpp"

namespace odyn {

// Exact robustness checking enumerates subsets, so node counts are hard
// capped; larger graphs are handled statistically by the experiment module.
inline constexpr int kExactCheckCap = 24;
inline constexpr int kHalfsizeCheckCap = 30;

struct RobustnessVerdict {
  bool robust = true;
  // Present iff !robust: a disjoint pair of nonempty sets, neither of which
  // is reachable. Lexicographically least pair under numeric bitmask order.
  std::optional<std::pair<NodeSet, NodeSet>> witness;
};

// True iff some member of S has at least t_i + 1 neighbors outside S.
// S must be nonempty and drawn from the graph's node universe.
bool is_reachable(const Graph& g, const ThresholdAssignment& thresholds,
                  const NodeSet& s);

// Every nonempty non-reachable subset, in ascending numeric bitmask order.
// Exponential enumeration; rejects n > max_n.
std::vector<NodeSet> non_reachable_sets(const Graph& g,
                                        const ThresholdAssignment& thresholds,
                                        int max_n = kExactCheckCap);

// Exact decision: robust iff no two disjoint nonempty subsets are both
// non-reachable. Equivalent to the naive all-pairs scan; internally uses a
// subset-indexed DP over complements, and the returned witness matches the
// naive scan's lexicographically least pair. Rejects n > kExactCheckCap.
RobustnessVerdict is_robust_exact(const Graph& g,
                                  const ThresholdAssignment& thresholds);

struct HalfsizeCertificate {
  // certified == true implies is_robust_exact(g, T).robust.
  bool certified = false;
  // When not certified: the first non-reachable set of size <= n/2 found
  // (smallest cardinality, then numeric order). Not a disproof.
  std::optional<NodeSet> inconclusive_set;
};

// One-sided fast certificate: if every nonempty subset of size <= floor(n/2)
// is reachable, the graph is robust (any disjoint pair has a member of at
// most half size). Rejects n > kHalfsizeCheckCap.
HalfsizeCertificate certify_robust_halfsize(const Graph& g,
                                            const ThresholdAssignment& thresholds);

}  // namespace odyn
