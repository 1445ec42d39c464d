#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdcsim/frame.hpp"

namespace rdcsim {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Unit-disk geometry: frames decode inside tx_range, and transmissions
/// disturb (but cannot be decoded by) everything inside interference_range.
struct RadioGeometry {
  double tx_range = 50.0;
  double interference_range = 100.0;

  bool in_tx_range(const Position& a, const Position& b) const {
    return distance(a, b) <= tx_range;
  }
  bool in_interference_range(const Position& a, const Position& b) const {
    return distance(a, b) <= interference_range;
  }
};

struct TopologyNode {
  NodeId id = 0;
  Position pos;
  bool is_sink = false;
};

/// Text topology format, one node per line: `id x y is_sink`.
inline void write_topology(std::ostream& os, const std::vector<TopologyNode>& nodes) {
  for (const auto& n : nodes) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d %.6f %.6f %d\n", n.id, n.pos.x, n.pos.y,
                  n.is_sink ? 1 : 0);
    os << buf;
  }
}

inline std::vector<TopologyNode> read_topology(std::istream& is) {
  std::vector<TopologyNode> nodes;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    TopologyNode n;
    int sink = 0;
    if (!(ls >> n.id >> n.pos.x >> n.pos.y >> sink)) {
      throw std::runtime_error("topology: malformed line: " + line);
    }
    n.is_sink = sink != 0;
    nodes.push_back(n);
  }
  return nodes;
}

}  // namespace rdcsim
