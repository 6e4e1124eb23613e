#include "odyn/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

#include "odyn/error.hpp"

namespace odyn {

namespace {

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.first) + ", " + std::to_string(e.second) + ")";
}

}  // namespace

Graph Graph::build(int n, bool directed, std::span<const Edge> edges) {
  if (n < 0) {
    fail(ErrorCode::InvalidArgument, "node count must be nonnegative");
  }
  Graph g;
  g.n_ = n;
  g.directed_ = directed;
  g.in_.assign(static_cast<std::size_t>(n), {});

  std::set<Edge> seen;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    auto [s, t] = edges[k];
    if (s < 0 || s >= n || t < 0 || t >= n) {
      fail(ErrorCode::InvalidArgument,
           "edge " + std::to_string(k) + " " + edge_str(edges[k]) +
               " has an endpoint outside [0, " + std::to_string(n - 1) + "]");
    }
    if (s == t) {
      fail(ErrorCode::InvalidArgument, "edge " + std::to_string(k) + " " +
                                           edge_str(edges[k]) +
                                           " is a self-loop");
    }
    Edge canon = directed ? edges[k] : Edge{std::min(s, t), std::max(s, t)};
    if (!seen.insert(canon).second) {
      fail(ErrorCode::InvalidArgument, "edge " + std::to_string(k) + " " +
                                           edge_str(edges[k]) +
                                           " is a duplicate");
    }
    g.in_[t].push_back(s);
    if (!directed) g.in_[s].push_back(t);
  }
  for (auto& list : g.in_) std::sort(list.begin(), list.end());
  g.edge_count_ = seen.size();
  return g;
}

std::span<const int> Graph::in_neighbors(int v) const {
  if (v < 0 || v >= n_) {
    fail(ErrorCode::InvalidArgument,
         "node index " + std::to_string(v) + " outside [0, " +
             std::to_string(n_ - 1) + "]");
  }
  return in_[v];
}

bool Graph::has_edge(int source, int target) const {
  auto nbrs = in_neighbors(target);
  (void)in_neighbors(source);
  return std::binary_search(nbrs.begin(), nbrs.end(), source);
}

std::vector<Edge> Graph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (int v = 0; v < n_; ++v) {
    for (int u : in_[v]) {
      if (directed_) {
        out.emplace_back(u, v);
      } else if (v < u) {
        out.emplace_back(v, u);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> Graph::out_adjacency() const {
  if (!directed_) return in_;
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n_));
  for (int v = 0; v < n_; ++v) {
    for (int u : in_[v]) out[u].push_back(v);
  }
  // Sources were visited in ascending target order, so each list is sorted.
  return out;
}

int degree(const Graph& g, int v) {
  return static_cast<int>(g.in_neighbors(v).size());
}

int min_degree(const Graph& g) {
  if (g.n() < 1) {
    fail(ErrorCode::InvalidArgument, "minimum degree needs at least one node");
  }
  int best = degree(g, 0);
  for (int v = 1; v < g.n(); ++v) best = std::min(best, degree(g, v));
  return best;
}

namespace {

// Nodes reached from start following the given adjacency.
int bfs_count(const std::vector<std::vector<int>>& adj, int start) {
  std::vector<char> seen(adj.size(), 0);
  std::queue<int> frontier;
  seen[start] = 1;
  frontier.push(start);
  int count = 0;
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    ++count;
    for (int u : adj[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        frontier.push(u);
      }
    }
  }
  return count;
}

}  // namespace

bool is_connected(const Graph& g) {
  if (g.n() < 1) {
    fail(ErrorCode::InvalidArgument, "connectivity needs at least one node");
  }
  if (g.n() == 1) return true;
  auto out = g.out_adjacency();
  if (bfs_count(out, 0) != g.n()) return false;
  if (!g.directed()) return true;
  std::vector<std::vector<int>> in(static_cast<std::size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) {
    auto nbrs = g.in_neighbors(v);
    in[v].assign(nbrs.begin(), nbrs.end());
  }
  return bfs_count(in, 0) == g.n();
}

namespace {

struct FlowEdge {
  int to;
  int cap;
  int rev;  // index of the reverse edge in adj[to]
};

class Dinic {
 public:
  explicit Dinic(int n) : adj_(n), level_(n), iter_(n) {}

  void add_edge(int a, int b, int cap) {
    adj_[a].push_back({b, cap, static_cast<int>(adj_[b].size())});
    adj_[b].push_back({a, 0, static_cast<int>(adj_[a].size()) - 1});
  }

  int max_flow(int s, int t, int limit) {
    int flow = 0;
    while (flow < limit && build_levels(s, t)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      while (flow < limit) {
        int pushed = augment(s, t, limit - flow);
        if (pushed == 0) break;
        flow += pushed;
      }
    }
    return flow;
  }

 private:
  bool build_levels(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> frontier;
    level_[s] = 0;
    frontier.push(s);
    while (!frontier.empty()) {
      int v = frontier.front();
      frontier.pop();
      for (const FlowEdge& e : adj_[v]) {
        if (e.cap > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[v] + 1;
          frontier.push(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  int augment(int v, int t, int limit) {
    if (v == t) return limit;
    for (int& i = iter_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
      FlowEdge& e = adj_[v][i];
      if (e.cap <= 0 || level_[e.to] != level_[v] + 1) continue;
      int pushed = augment(e.to, t, std::min(limit, e.cap));
      if (pushed > 0) {
        e.cap -= pushed;
        adj_[e.to][e.rev].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<std::vector<FlowEdge>> adj_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

// Minimum vertex cut separating non-adjacent s and t, via max-flow on the
// split graph: node v becomes v_in (2v) -> v_out (2v+1) with capacity 1
// (unbounded for the endpoints), each undirected edge becomes two unbounded
// arcs out -> in.
int local_connectivity(const Graph& g, int s, int t, int limit) {
  int n = g.n();
  int inf = n;  // no cut needs more than n units
  Dinic net(2 * n);
  for (int v = 0; v < n; ++v) {
    net.add_edge(2 * v, 2 * v + 1, (v == s || v == t) ? inf : 1);
  }
  for (int v = 0; v < n; ++v) {
    for (int u : g.in_neighbors(v)) {
      if (u < v) continue;
      net.add_edge(2 * v + 1, 2 * u, inf);
      net.add_edge(2 * u + 1, 2 * v, inf);
    }
  }
  return net.max_flow(2 * s + 1, 2 * t, limit);
}

}  // namespace

int vertex_connectivity(const Graph& g) {
  if (g.directed()) {
    fail(ErrorCode::InvalidArgument,
         "vertex connectivity requires an undirected graph");
  }
  int n = g.n();
  if (n < 2) {
    fail(ErrorCode::InvalidArgument,
         "vertex connectivity needs at least two nodes");
  }
  if (g.edge_count() ==
      static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2) {
    return n - 1;  // complete-graph convention
  }

  // Even's reduction: with v of minimum degree, the connectivity is realized
  // either between v and a non-neighbor or between two non-adjacent
  // neighbors of v, and is at most deg(v).
  int v = 0;
  for (int u = 1; u < n; ++u) {
    if (degree(g, u) < degree(g, v)) v = u;
  }
  int best = degree(g, v);
  std::vector<char> is_nbr(static_cast<std::size_t>(n), 0);
  for (int u : g.in_neighbors(v)) is_nbr[u] = 1;
  for (int w = 0; w < n && best > 0; ++w) {
    if (w == v || is_nbr[w]) continue;
    best = std::min(best, local_connectivity(g, v, w, best));
  }
  auto nbrs = g.in_neighbors(v);
  for (std::size_t i = 0; i < nbrs.size() && best > 0; ++i) {
    for (std::size_t j = i + 1; j < nbrs.size() && best > 0; ++j) {
      if (!g.has_edge(nbrs[i], nbrs[j])) {
        best = std::min(best, local_connectivity(g, nbrs[i], nbrs[j], best));
      }
    }
  }
  return best;
}

}  // namespace odyn
