#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rdcsim/geometry.hpp"
#include "rdcsim/rng.hpp"

namespace rdcsim {

/// Sender/destination pairing on a star of N neighbours (ids 2..N+1 around
/// central node 1). Senders are the even ids; each gets the node at the
/// opposite part of the circle: dest(k) = ((k + N/2 - 2) mod N) + 2.
inline std::vector<std::pair<NodeId, NodeId>> star_pairs(int n_neighbours) {
  if (n_neighbours < 2 || n_neighbours % 2 != 0) {
    throw std::invalid_argument("star_pairs: N must be even and >= 2");
  }
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (int k = 2; k <= n_neighbours + 1; k += 2) {
    const int dest = (k + n_neighbours / 2 - 2) % n_neighbours + 2;
    pairs.emplace_back(k, dest);
  }
  return pairs;
}

struct StarTopology {
  int n_neighbours = 0;
  std::vector<TopologyNode> nodes;  // node 1 = center, then 2..N+1 on the circle
  std::vector<std::pair<NodeId, NodeId>> pairs;

  static constexpr NodeId kCenter = 1;

  /// Neighbours sit evenly spaced on a circle of 0.8 x tx_range around the
  /// center, all one hop from it.
  static StarTopology build(int n_neighbours, const RadioGeometry& geo) {
    StarTopology t;
    t.n_neighbours = n_neighbours;
    t.pairs = star_pairs(n_neighbours);
    const double cx = 150.0, cy = 150.0;
    const double radius = 0.8 * geo.tx_range;
    t.nodes.push_back({kCenter, {cx, cy}, false});
    for (int j = 0; j < n_neighbours; ++j) {
      const double ang = 2.0 * M_PI * j / n_neighbours;
      t.nodes.push_back({j + 2, {cx + radius * std::cos(ang), cy + radius * std::sin(ang)}, false});
    }
    return t;
  }

  /// Senders route through the center; the center delivers directly.
  NodeId next_hop(NodeId node, NodeId dest) const {
    if (node == dest) return dest;
    if (node == kCenter) return dest;
    return kCenter;
  }
};

/// Sink-rooted minimum-hop tree over the unit-disk connectivity graph;
/// a simplified stand-in for RPL. Ties break toward the lowest node id.
struct CollectTree {
  std::vector<NodeId> parent;  // parent[sink] == sink
  std::vector<int> rank;       // hops to sink
  NodeId sink = 0;

  static std::optional<CollectTree> build(const std::vector<TopologyNode>& nodes,
                                          const RadioGeometry& geo, NodeId sink) {
    const std::size_t n = nodes.size();
    std::size_t sink_idx = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (nodes[i].id == sink) sink_idx = i;
    }
    if (sink_idx == n) throw std::invalid_argument("collect tree: unknown sink id");

    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (geo.in_tx_range(nodes[i].pos, nodes[j].pos)) {
          adj[i].push_back(j);
          adj[j].push_back(i);
        }
      }
    }

    std::vector<int> rank(n, -1);
    std::vector<std::size_t> parent(n, n);
    std::queue<std::size_t> frontier;
    rank[sink_idx] = 0;
    parent[sink_idx] = sink_idx;
    frontier.push(sink_idx);
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      // Visit neighbours in ascending node id for deterministic tie-breaks.
      std::vector<std::size_t> nb = adj[u];
      std::sort(nb.begin(), nb.end(),
                [&](std::size_t a, std::size_t b) { return nodes[a].id < nodes[b].id; });
      for (std::size_t v : nb) {
        if (rank[v] < 0) {
          rank[v] = rank[u] + 1;
          parent[v] = u;
          frontier.push(v);
        } else if (rank[v] == rank[u] + 1 && nodes[u].id < nodes[parent[v]].id) {
          parent[v] = u;
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (rank[i] < 0) return std::nullopt;  // disconnected
    }

    NodeId max_id = 0;
    for (const auto& nd : nodes) max_id = std::max(max_id, nd.id);
    CollectTree t;
    t.sink = sink;
    t.parent.assign(max_id + 1, -1);
    t.rank.assign(max_id + 1, -1);
    for (std::size_t i = 0; i < n; ++i) {
      t.parent[nodes[i].id] = nodes[parent[i]].id;
      t.rank[nodes[i].id] = rank[i];
    }
    return t;
  }

  NodeId next_hop(NodeId node) const { return parent[node]; }

  double mean_rank() const {
    double sum = 0;
    int count = 0;
    for (std::size_t i = 0; i < rank.size(); ++i) {
      if (rank[i] >= 0) {
        sum += rank[i];
        ++count;
      }
    }
    return count == 0 ? 0.0 : sum / count;
  }
};

/// Random 49-node style deployment: the sink pinned to the top-left corner,
/// everything else uniform over the square.
inline std::vector<TopologyNode> random_deployment(RngStream& rng, int node_count,
                                                   double grid_side) {
  std::vector<TopologyNode> nodes;
  nodes.push_back({1, {0.0, grid_side}, true});
  for (int i = 2; i <= node_count; ++i) {
    const double x = rng.uniform_01() * grid_side;
    const double y = rng.uniform_01() * grid_side;
    nodes.push_back({i, {x, y}, false});
  }
  return nodes;
}

}  // namespace rdcsim
