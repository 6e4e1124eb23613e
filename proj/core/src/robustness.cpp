#include "odyn/robustness.hpp"

#include <bit>
#include <cstdint>
#include <limits>
#include <string>

#include "odyn/error.hpp"

namespace odyn {

namespace {

// In-neighbor bitmasks; enumeration entry points cap n well below 64.
std::vector<std::uint64_t> neighbor_masks(const Graph& g) {
  std::vector<std::uint64_t> nbr(static_cast<std::size_t>(g.n()), 0);
  for (int v = 0; v < g.n(); ++v) {
    for (int u : g.in_neighbors(v)) nbr[v] |= std::uint64_t{1} << u;
  }
  return nbr;
}

bool mask_reachable(std::uint64_t s, const std::vector<std::uint64_t>& nbr,
                    const std::vector<int>& t) {
  std::uint64_t rest = s;
  while (rest != 0) {
    int i = std::countr_zero(rest);
    rest &= rest - 1;
    if (std::popcount(nbr[i] & ~s) >= t[i] + 1) return true;
  }
  return false;
}

void check_cap(int n, int cap, const char* label) {
  if (n > cap) {
    fail(ErrorCode::CapExceeded, std::string("n exceeds ") + label + " cap " +
                                     std::to_string(cap));
  }
}

}  // namespace

bool is_reachable(const Graph& g, const ThresholdAssignment& thresholds,
                  const NodeSet& s) {
  thresholds.validate_for(g.n());
  if (s.universe() != g.n()) {
    fail(ErrorCode::InvalidArgument,
         "set universe does not match the graph's node count");
  }
  if (s.empty()) {
    fail(ErrorCode::InvalidArgument,
         "reachability of the empty set is undefined");
  }
  for (int i : s.indices()) {
    int outside = 0;
    for (int j : g.in_neighbors(i)) {
      if (!s.contains(j)) ++outside;
    }
    if (outside >= thresholds.t[i] + 1) return true;
  }
  return false;
}

std::vector<NodeSet> non_reachable_sets(const Graph& g,
                                        const ThresholdAssignment& thresholds,
                                        int max_n) {
  thresholds.validate_for(g.n());
  check_cap(g.n(), max_n, "exact-check");
  int n = g.n();
  std::vector<NodeSet> out;
  if (n == 0) return out;
  auto nbr = neighbor_masks(g);
  std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t m = 1; m <= full; ++m) {
    if (!mask_reachable(m, nbr, thresholds.t)) {
      out.push_back(NodeSet::from_mask(n, m));
    }
  }
  return out;
}

RobustnessVerdict is_robust_exact(const Graph& g,
                                  const ThresholdAssignment& thresholds) {
  thresholds.validate_for(g.n());
  check_cap(g.n(), kExactCheckCap, "exact-check");
  int n = g.n();
  if (n == 0) return {true, std::nullopt};

  auto nbr = neighbor_masks(g);
  std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<char> reach(full + 1, 1);
  for (std::uint64_t m = 1; m <= full; ++m) {
    reach[m] = mask_reachable(m, nbr, thresholds.t) ? 1 : 0;
  }

  // least[m] = numerically least nonempty non-reachable subset of m, via a
  // subset-sum sweep; masks fit in 32 bits under the cap.
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> least(full + 1, kNone);
  for (std::uint64_t m = 1; m <= full; ++m) {
    if (!reach[m]) least[m] = static_cast<std::uint32_t>(m);
  }
  for (int b = 0; b < n; ++b) {
    std::uint64_t bit = std::uint64_t{1} << b;
    for (std::uint64_t m = 0; m <= full; ++m) {
      if ((m & bit) != 0) {
        least[m] = std::min(least[m], least[m ^ bit]);
      }
    }
  }

  // The first non-reachable set with a disjoint non-reachable partner, paired
  // with its least partner, is exactly the naive double loop's least pair:
  // any partner of a later set would itself be an earlier set with a partner.
  for (std::uint64_t a = 1; a <= full; ++a) {
    if (reach[a]) continue;
    std::uint32_t partner = least[full & ~a];
    if (partner == kNone) continue;
    NodeSet s1 = NodeSet::from_mask(n, a);
    NodeSet s2 = NodeSet::from_mask(n, partner);
    if (reach[a] || reach[partner] || (a & partner) != 0) {
      fail(ErrorCode::InvalidArgument, "internal witness validation failed");
    }
    return {false, std::make_pair(std::move(s1), std::move(s2))};
  }
  return {true, std::nullopt};
}

HalfsizeCertificate certify_robust_halfsize(
    const Graph& g, const ThresholdAssignment& thresholds) {
  thresholds.validate_for(g.n());
  check_cap(g.n(), kHalfsizeCheckCap, "halfsize-check");
  int n = g.n();
  // If every nonempty set of size <= n/2 is reachable, any disjoint pair has
  // a member of such size, so no pair can be jointly non-reachable.
  auto nbr = neighbor_masks(g);
  std::uint64_t limit = n == 0 ? 0 : std::uint64_t{1} << n;
  for (int size = 1; size <= n / 2; ++size) {
    // Gosper's hack: all n-bit masks of the given popcount, ascending.
    std::uint64_t m = (std::uint64_t{1} << size) - 1;
    while (m < limit) {
      if (!mask_reachable(m, nbr, thresholds.t)) {
        return {false, NodeSet::from_mask(n, m)};
      }
      std::uint64_t low = m & (~m + 1);
      std::uint64_t ripple = m + low;
      m = (((m ^ ripple) >> 2) / low) | ripple;
    }
  }
  return {true, std::nullopt};
}

}  // namespace odyn
