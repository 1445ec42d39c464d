#include <catch2/catch_amalgamated.hpp>

#include "rdcsim/routing.hpp"

using namespace rdcsim;

TEST_CASE("star pairs for N=14 match the reference list") {
  const auto pairs = star_pairs(14);
  const std::vector<std::pair<NodeId, NodeId>> expected = {
      {2, 9}, {4, 11}, {6, 13}, {8, 15}, {10, 3}, {12, 5}, {14, 7}};
  REQUIRE(pairs == expected);
}

TEST_CASE("star pairs for the small sizes") {
  REQUIRE(star_pairs(2) == std::vector<std::pair<NodeId, NodeId>>{{2, 3}});
  REQUIRE(star_pairs(4) == std::vector<std::pair<NodeId, NodeId>>{{2, 4}, {4, 2}});
}

TEST_CASE("odd N is rejected") {
  REQUIRE_THROWS_AS(star_pairs(5), std::invalid_argument);
  REQUIRE_THROWS_AS(star_pairs(0), std::invalid_argument);
}

TEST_CASE("static star routes go through the center") {
  const RadioGeometry geo{50.0, 100.0};
  const auto t = StarTopology::build(14, geo);
  REQUIRE(t.next_hop(2, 9) == 1);
  REQUIRE(t.next_hop(1, 9) == 9);
  REQUIRE(t.next_hop(9, 9) == 9);  // self delivery, zero hops
}

TEST_CASE("every star neighbour is one hop from the center") {
  const RadioGeometry geo{50.0, 100.0};
  for (int n = 2; n <= 14; n += 2) {
    const auto t = StarTopology::build(n, geo);
    REQUIRE(t.nodes.size() == static_cast<std::size_t>(n + 1));
    for (std::size_t i = 1; i < t.nodes.size(); ++i) {
      REQUIRE(geo.in_tx_range(t.nodes[0].pos, t.nodes[i].pos));
    }
  }
}

TEST_CASE("two nodes in range form a one-level tree") {
  std::vector<TopologyNode> nodes = {{1, {0, 0}, true}, {2, {30, 0}, false}};
  const auto tree = CollectTree::build(nodes, {50.0, 100.0}, 1);
  REQUIRE(tree.has_value());
  REQUIRE(tree->parent[2] == 1);
  REQUIRE(tree->rank[2] == 1);
  REQUIRE(tree->rank[1] == 0);
}

TEST_CASE("a line of 7 nodes at 0.9 x tx spacing ranks 0..6") {
  std::vector<TopologyNode> nodes;
  for (int i = 0; i < 7; ++i) {
    nodes.push_back({i + 1, {45.0 * i, 0.0}, i == 0});
  }
  const auto tree = CollectTree::build(nodes, {50.0, 100.0}, 1);
  REQUIRE(tree.has_value());
  for (int i = 0; i < 7; ++i) REQUIRE(tree->rank[i + 1] == i);
}

TEST_CASE("disconnected topologies are reported") {
  std::vector<TopologyNode> nodes = {{1, {0, 0}, true}, {2, {300, 300}, false}};
  REQUIRE_FALSE(CollectTree::build(nodes, {50.0, 100.0}, 1).has_value());
}

TEST_CASE("parent chains reach the sink in rank steps") {
  RngStream rng(42, substream::kTopology);
  for (int attempt = 0; attempt < 60; ++attempt) {
    auto nodes = random_deployment(rng, 49, 240.0);
    auto tree = CollectTree::build(nodes, {50.0, 100.0}, 1);
    if (!tree) continue;
    for (const auto& n : nodes) {
      NodeId cur = n.id;
      int steps = 0;
      while (cur != 1) {
        cur = tree->parent[cur];
        ++steps;
        REQUIRE(steps <= tree->rank[n.id]);  // acyclic, strictly descending rank
      }
      REQUIRE(steps == tree->rank[n.id]);
    }
    return;
  }
  FAIL("no connected topology in 60 attempts");
}

TEST_CASE("connected random 49-node deployments average 5-7 hops to the sink") {
  double sum = 0;
  int connected = 0;
  for (int attempt = 0; attempt < 400 && connected < 25; ++attempt) {
    RngStream rng(1000 + attempt, substream::kTopology);
    auto nodes = random_deployment(rng, 49, 240.0);
    auto tree = CollectTree::build(nodes, {50.0, 100.0}, 1);
    if (!tree) continue;
    ++connected;
    sum += tree->mean_rank();
  }
  REQUIRE(connected >= 25);
  const double mean = sum / connected;
  INFO("mean rank over " << connected << " instances: " << mean);
  REQUIRE(mean >= 5.0);
  REQUIRE(mean <= 7.0);
}

TEST_CASE("topology files round-trip") {
  RngStream rng(7, substream::kTopology);
  auto nodes = random_deployment(rng, 10, 100.0);
  std::stringstream ss;
  write_topology(ss, nodes);
  auto back = read_topology(ss);
  REQUIRE(back.size() == nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    REQUIRE(back[i].id == nodes[i].id);
    REQUIRE(back[i].is_sink == nodes[i].is_sink);
    REQUIRE(back[i].pos.x == Catch::Approx(nodes[i].pos.x).margin(1e-5));
    REQUIRE(back[i].pos.y == Catch::Approx(nodes[i].pos.y).margin(1e-5));
  }
}
