#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "helio/network.hpp"

using namespace helio;

namespace {

// Union-find over a raw edge list; independent of the library's search.
std::vector<std::set<int>> oracle_components(int n, const std::vector<NetEdge>& edges) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const NetEdge& e : edges) parent[find(e.from)] = find(e.to);
  std::map<int, std::set<int>> groups;
  for (int i = 0; i < n; ++i) groups[find(i)].insert(i);
  std::vector<std::set<int>> out;
  for (auto& [root, members] : groups) out.push_back(members);
  return out;
}

// Bellman-Ford sweeps over the raw edge list.
std::vector<double> oracle_dists(const NetworkTopology& topo, int src) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(topo.n, inf);
  d[src] = 0.0;
  for (int it = 0; it < topo.n; ++it) {
    bool changed = false;
    for (const NetEdge& e : topo.edges) {
      double w = e.cost.magnitude();
      if (d[e.from] + w < d[e.to]) {
        d[e.to] = d[e.from] + w;
        changed = true;
      }
      if (d[e.to] + w < d[e.from]) {
        d[e.from] = d[e.to] + w;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return d;
}

NetworkTopology dumbbell() {
  // Two rings bridged by two hub shortcuts; nine agents so the percolation
  // indicator goes negative for heterogeneity above one.
  NetworkTopology t;
  t.n = 9;
  t.ring_k = 2;
  auto ring = [&](const std::vector<int>& cyc) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      t.edges.push_back(
          {cyc[i], cyc[(i + 1) % cyc.size()], {3, 4, 0, 0}, NetEdgeKind::Ring});
    }
  };
  ring({0, 1, 2, 3, 4});
  ring({5, 6, 7, 8});
  t.edges.push_back({2, 7, {3, 4, 0, 0}, NetEdgeKind::Hub});
  t.edges.push_back({3, 6, {3, 4, 0, 0}, NetEdgeKind::Hub});
  t.rebuild_incidence();
  return t;
}

}  // namespace

TEST_CASE("build_network validates parameters") {
  WealthVector c{1, 1, 0, 0};
  CHECK_THROWS_AS(build_network(2, 2, 0, 0, c, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_network(10, 3, 0, 0, c, 1), std::invalid_argument);  // odd ring degree
  CHECK_THROWS_AS(build_network(10, 10, 0, 0, c, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_network(10, 2, 11, 1, c, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_network(10, 2, 1, -1, c, 1), std::invalid_argument);
}

TEST_CASE("build_network: figure-sized example and pure ring") {
  WealthVector c{1, 2, 0, 0};
  NetworkTopology t = build_network(20, 2, 3, 3, c, 7);
  CHECK(t.n == 20);
  int ring = 0;
  int hub = 0;
  for (const NetEdge& e : t.edges) (e.kind == NetEdgeKind::Ring ? ring : hub) += 1;
  CHECK(ring == 20);
  CHECK(hub == 9);
  CHECK(t.hubs.size() == 3);

  NetworkTopology pure = build_network(12, 4, 0, 0, c, 3);
  CHECK(pure.edges.size() == 12 * 4 / 2);
  for (const NetEdge& e : pure.edges) CHECK(e.kind == NetEdgeKind::Ring);
}

TEST_CASE("build_network is deterministic per seed, connected, ring intact") {
  WealthVector c{1, 2, 0, 0};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    NetworkTopology a = build_network(20, 2, 3, 3, c, seed);
    NetworkTopology b = build_network(20, 2, 3, 3, c, seed);
    CHECK(edges_to_csv(a) == edges_to_csv(b));

    CHECK(oracle_components(a.n, a.edges).size() == 1);
    std::set<std::pair<int, int>> present;
    for (const NetEdge& e : a.edges) {
      present.emplace(std::min(e.from, e.to), std::max(e.from, e.to));
    }
    for (int i = 0; i < a.n; ++i) {
      int j = (i + 1) % a.n;
      CHECK(present.count({std::min(i, j), std::max(i, j)}) == 1);
    }
  }
}

TEST_CASE("path_distance: examples and oracle") {
  WealthVector c{3, 4, 0, 0};
  NetworkTopology t = build_network(20, 2, 1, 1, c, 11);
  CHECK(path_distance(t, 4, 4) == 0.0);
  CHECK(path_distance(t, 4, 5) == doctest::Approx(5.0));

  for (int src = 0; src < t.n; src += 3) {
    std::vector<double> od = oracle_dists(t, src);
    std::vector<double> id = path_distances_from(t, src);
    for (int dst = 0; dst < t.n; ++dst) {
      CHECK(id[dst] == doctest::Approx(od[dst]).epsilon(1e-9));
    }
  }

  // Disconnected pair: strip the bridges from a dumbbell.
  NetworkTopology split = dumbbell();
  split.edges.erase(std::remove_if(split.edges.begin(), split.edges.end(),
                                   [](const NetEdge& e) { return e.kind == NetEdgeKind::Hub; }),
                    split.edges.end());
  split.rebuild_incidence();
  CHECK(std::isinf(path_distance(split, 0, 6)));
}

TEST_CASE("path_distance is a metric on small topologies") {
  WealthVector c{1, 2, 0, 0};
  NetworkTopology t = build_network(12, 2, 2, 2, c, 5);
  std::vector<std::vector<double>> d(t.n);
  for (int i = 0; i < t.n; ++i) d[i] = path_distances_from(t, i);
  for (int i = 0; i < t.n; ++i) {
    for (int j = 0; j < t.n; ++j) {
      if (i == j) {
        CHECK(d[i][j] == 0.0);
      } else {
        CHECK(d[i][j] > 0.0);
      }
      CHECK(d[i][j] == doctest::Approx(d[j][i]));
      for (int k = 0; k < t.n; ++k) CHECK(d[i][j] <= d[i][k] + d[k][j] + 1e-9);
    }
  }
}

TEST_CASE("neighborhood: strictness, saturation, monotonicity") {
  WealthVector c{3, 4, 0, 0};  // ring edge magnitude 5
  NetworkTopology t = build_network(10, 2, 0, 0, c, 1);

  CHECK(neighborhood(t, 0, 0.0).empty());
  // Radius of exactly one ring-edge magnitude excludes the ring neighbors.
  CHECK(neighborhood(t, 0, 5.0).empty());
  CHECK(neighborhood(t, 0, 5.0 + 1e-9) == std::vector<int>{1, 9});

  CHECK(neighborhood(t, 0, 1e9).size() == 9);

  double radii[] = {0.0, 4.0, 5.1, 10.1, 15.1, 26.0};
  std::vector<int> prev;
  for (double r : radii) {
    std::vector<int> cur = neighborhood(t, 0, r);
    CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
    prev = cur;
  }
}

TEST_CASE("degree_stats: degenerate, uniform ring formula, options") {
  NetworkTopology solo;
  solo.n = 1;
  solo.rebuild_incidence();
  DegreeStats ds = degree_stats(solo, {1.0});
  CHECK(ds.weighted_mean_degree == 0.0);
  CHECK(ds.heterogeneity == 0.0);

  // Uniform ring: five agents of degree 2, equal potentials, edge magnitude 5.
  WealthVector c{3, 4, 0, 0};
  NetworkTopology ring = build_network(5, 2, 0, 0, c, 1);
  double p = 2.0;
  DegreeStats rs = degree_stats(ring, std::vector<double>(5, p));
  double total_cost = 5.0 * 5.0;
  double expected_mean = 5.0 * p * 2.0 / total_cost;
  CHECK(rs.weighted_mean_degree == doctest::Approx(expected_mean));
  double expected_het = (5.0 * 8.0) / 5.0 - expected_mean * expected_mean;
  CHECK(rs.heterogeneity == doctest::Approx(expected_het));
  CHECK(rs.heterogeneity >= -expected_mean * expected_mean);

  DegreeStats sq = degree_stats(ring, std::vector<double>(5, p), {false});
  CHECK(sq.heterogeneity == doctest::Approx((5.0 * 4.0) / 5.0 - expected_mean * expected_mean));

  CHECK_THROWS_AS(degree_stats(ring, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(degree_stats(ring, std::vector<double>(5, -1.0)), std::invalid_argument);
}

TEST_CASE("percolation: formula value, gating, degenerate heterogeneity") {
  NetworkTopology five;
  five.n = 5;
  five.rebuild_incidence();

  // Synthetic heterogeneity 0.1 with n = 5: (1 - 0.1)^5 / 0.2 = 2.95245.
  PercolationResult direct = percolation_split(five, {0.0, 0.1});
  CHECK(direct.phi == doctest::Approx(std::pow(0.9, 5) / 0.2));
  CHECK(direct.phi == doctest::Approx(2.95245));
  CHECK(direct.connected);
  CHECK(direct.components.size() == 1);
  CHECK(direct.components[0].size() == 5);

  PercolationResult degenerate = percolation_split(dumbbell(), {1.0, 0.0});
  CHECK(degenerate.degenerate);
  CHECK(degenerate.connected);
  CHECK(std::isinf(degenerate.phi));

  PercolationResult alt = percolation_split(five, {0.0, 0.1}, {false});
  CHECK(alt.phi == doctest::Approx((1.0 - std::pow(0.1, 5)) / 0.2));
}

TEST_CASE("percolation split matches the component oracle on a dumbbell") {
  NetworkTopology t = dumbbell();
  // Heterogeneity above one with odd n forces phi < 0.5.
  PercolationResult perc = percolation_split(t, {1.0, 7.0});
  CHECK_FALSE(perc.connected);
  REQUIRE(perc.components.size() == 2);

  std::vector<std::set<int>> oc = oracle_components(t.n, perc.surviving_edges);
  REQUIRE(oc.size() == perc.components.size());
  for (std::size_t i = 0; i < oc.size(); ++i) {
    std::set<int> got(perc.components[i].begin(), perc.components[i].end());
    CHECK(got == oc[i]);
  }

  // Partition properties: disjoint cover, each part internally connected.
  std::set<int> seen;
  for (const auto& comp : perc.components) {
    std::set<int> members(comp.begin(), comp.end());
    for (int a : comp) CHECK(seen.insert(a).second);
    std::vector<NetEdge> internal;
    for (const NetEdge& e : perc.surviving_edges) {
      if (members.count(e.from) && members.count(e.to)) internal.push_back(e);
    }
    int parts_with_members = 0;
    for (const auto& g : oracle_components(t.n, internal)) {
      if (members.count(*g.begin()) && g.size() == members.size()) ++parts_with_members;
    }
    CHECK(parts_with_members == 1);
  }
  CHECK(seen.size() == static_cast<std::size_t>(t.n));
}

TEST_CASE("edge list CSV format") {
  WealthVector c{1, 2, 0, 0};
  NetworkTopology t = build_network(5, 2, 1, 1, c, 2);
  std::string csv = edges_to_csv(t);
  CHECK(csv.rfind("from,to,kr,lr,ks,ls,kind\n", 0) == 0);
  CHECK(csv.find(",ring\n") != std::string::npos);
  CHECK(csv.find(",hub\n") != std::string::npos);
}
