#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace odyn {

// Directed edge (source, target): target can receive information from source.
using Edge = std::pair<int, int>;

// Immutable graph over nodes 0..n-1 with sorted in-neighbor lists. Undirected
// graphs are stored as symmetric directed adjacency, so every consumer reads
// one representation. Safe to share read-only across threads.
class Graph {
 public:
  Graph() = default;

  // Validates every edge: indices in range, no self-loops, no duplicates
  // (for undirected graphs, (i,j) and (j,i) count as the same edge).
  static Graph build(int n, bool directed, std::span<const Edge> edges);

  int n() const noexcept { return n_; }
  bool directed() const noexcept { return directed_; }

  // In-neighbors of v, ascending.
  std::span<const int> in_neighbors(int v) const;
  bool has_edge(int source, int target) const;

  // Number of edges; an undirected edge counts once.
  std::size_t edge_count() const noexcept { return edge_count_; }

  // Canonical edge list: undirected pairs as (min,max), sorted; directed
  // pairs sorted by (source, target). Serialization uses this order.
  std::vector<Edge> edge_list() const;

  // Out-adjacency lists (ascending). For undirected graphs identical to the
  // in-neighbor lists.
  std::vector<std::vector<int>> out_adjacency() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_ = 0;
  bool directed_ = false;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<int>> in_;
};

// |N_v|. Errors on an out-of-range index.
int degree(const Graph& g, int v);

// min over all nodes of degree(g, v). Requires n >= 1.
int min_degree(const Graph& g);

// Strong connectivity for directed graphs, ordinary connectivity for
// undirected ones. A single node counts as connected.
bool is_connected(const Graph& g);

// Exact vertex connectivity of an undirected graph via min vertex cuts
// (max-flow). Complete graphs use the K_n = n-1 convention. Exact and
// potentially slow; meant for sanity checks, not hot loops. Rejects
// directed input.
int vertex_connectivity(const Graph& g);

}  // namespace odyn
