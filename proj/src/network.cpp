#include "helio/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "helio/io_util.hpp"

namespace helio {

void NetworkTopology::rebuild_incidence() {
  incident.assign(n, {});
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    incident[edges[e].from].push_back(e);
    incident[edges[e].to].push_back(e);
  }
}

NetworkTopology build_network(int n, int ring_k, int j, int hub_links,
                              const WealthVector& edge_cost, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("build_network: n must be >= 3");
  if (ring_k < 2 || ring_k >= n || ring_k % 2 != 0) {
    throw std::invalid_argument("build_network: ring_k must be even with 2 <= ring_k < n");
  }
  if (j < 0 || j > n) throw std::invalid_argument("build_network: hub count out of range");
  if (hub_links < 0) throw std::invalid_argument("build_network: hub_links must be >= 0");

  NetworkTopology topo;
  topo.n = n;
  topo.ring_k = ring_k;
  topo.hub_links = hub_links;
  topo.rng_seed = seed;

  std::set<std::pair<int, int>> present;
  auto add_edge = [&](int a, int b, NetEdgeKind kind) {
    topo.edges.push_back({a, b, edge_cost, kind});
    present.emplace(std::min(a, b), std::max(a, b));
  };
  auto has_edge = [&](int a, int b) {
    return present.count({std::min(a, b), std::max(a, b)}) > 0;
  };

  for (int i = 0; i < n; ++i) {
    for (int d = 1; d <= ring_k / 2; ++d) {
      int t = (i + d) % n;
      if (!has_edge(i, t)) add_edge(i, t, NetEdgeKind::Ring);
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);

  // Draw j distinct hub agents, duplicates re-drawn.
  std::set<int> hub_set;
  while (static_cast<int>(hub_set.size()) < j) {
    hub_set.insert(pick(rng));
  }
  topo.hubs.assign(hub_set.begin(), hub_set.end());

  for (int hub : topo.hubs) {
    int available = 0;
    for (int t = 0; t < n; ++t) {
      if (t != hub && !has_edge(hub, t)) ++available;
    }
    if (available < hub_links) {
      throw std::invalid_argument("build_network: not enough non-adjacent agents for hub links");
    }
    int placed = 0;
    while (placed < hub_links) {
      int t = pick(rng);
      if (t == hub || has_edge(hub, t)) continue;  // re-draw
      add_edge(hub, t, NetEdgeKind::Hub);
      ++placed;
    }
  }

  topo.rebuild_incidence();
  return topo;
}

std::vector<double> path_distances_from(const NetworkTopology& topo, int i) {
  if (i < 0 || i >= topo.n) throw std::out_of_range("path_distance: agent id out of range");
  std::vector<double> dist(topo.n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[i] = 0.0;
  pq.emplace(0.0, i);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (int e : topo.incident[u]) {
      const NetEdge& ed = topo.edges[e];
      int v = ed.from == u ? ed.to : ed.from;
      double nd = d + ed.cost.magnitude();
      if (nd < dist[v]) {
        dist[v] = nd;
        pq.emplace(nd, v);
      }
    }
  }
  return dist;
}

double path_distance(const NetworkTopology& topo, int i, int j) {
  if (j < 0 || j >= topo.n) throw std::out_of_range("path_distance: agent id out of range");
  return path_distances_from(topo, i)[j];
}

std::vector<int> neighborhood(const NetworkTopology& topo, int agent, double radius) {
  if (radius < 0.0) return {};
  std::vector<double> dist = path_distances_from(topo, agent);
  std::vector<int> out;
  for (int j = 0; j < topo.n; ++j) {
    if (j != agent && dist[j] < radius) out.push_back(j);
  }
  return out;
}

DegreeStats degree_stats(const NetworkTopology& topo, const std::vector<double>& potentials,
                         const DegreeStatsOptions& opts) {
  if (topo.n <= 0) throw std::invalid_argument("degree_stats: empty network");
  if (static_cast<int>(potentials.size()) != topo.n) {
    throw std::invalid_argument("degree_stats: one potential per agent required");
  }
  for (double p : potentials) {
    if (p < 0.0) throw std::invalid_argument("degree_stats: potentials must be nonnegative");
  }

  double total_cost = 0.0;
  for (const NetEdge& e : topo.edges) total_cost += e.cost.magnitude();
  DegreeStats out;
  if (total_cost == 0.0) return out;  // degenerate: no edges (or zero-cost graph)

  double weighted = 0.0;
  for (int i = 0; i < topo.n; ++i) weighted += potentials[i] * topo.degree(i);
  out.weighted_mean_degree = weighted / total_cost;

  double acc = 0.0;
  for (int i = 0; i < topo.n; ++i) {
    double d = topo.degree(i);
    acc += opts.cubed_term ? d * d * d : d * d;
  }
  out.heterogeneity = acc / topo.n - out.weighted_mean_degree * out.weighted_mean_degree;
  return out;
}

std::vector<std::vector<int>> connected_components(const NetworkTopology& topo) {
  std::vector<int> comp(topo.n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < topo.n; ++s) {
    if (comp[s] >= 0) continue;
    int c = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      out[c].push_back(u);
      for (int e : topo.incident[u]) {
        const NetEdge& ed = topo.edges[e];
        int v = ed.from == u ? ed.to : ed.from;
        if (comp[v] < 0) {
          comp[v] = c;
          stack.push_back(v);
        }
      }
    }
    std::sort(out[c].begin(), out[c].end());
  }
  return out;
}

PercolationResult percolation_split(const NetworkTopology& topo, const DegreeStats& stats,
                                    const PercolationOptions& opts) {
  PercolationResult res;
  double het = stats.heterogeneity;
  if (het == 0.0) {
    res.phi = std::numeric_limits<double>::infinity();
    res.degenerate = true;
    res.connected = true;
    res.components = {std::vector<int>()};
    for (int i = 0; i < topo.n; ++i) res.components[0].push_back(i);
    return res;
  }
  res.phi = opts.pow_outside ? std::pow(1.0 - het, topo.n) / (2.0 * het)
                             : (1.0 - std::pow(het, topo.n)) / (2.0 * het);
  res.connected = res.phi >= 0.5;
  res.surviving_edges = topo.edges;
  if (res.connected) {
    res.components = {std::vector<int>()};
    for (int i = 0; i < topo.n; ++i) res.components[0].push_back(i);
    return res;
  }

  // Remove hub shortcuts by descending weight until the graph actually
  // splits (or no hub edges remain).
  NetworkTopology work = topo;
  std::vector<int> hub_edges;
  for (int e = 0; e < static_cast<int>(work.edges.size()); ++e) {
    if (work.edges[e].kind == NetEdgeKind::Hub) hub_edges.push_back(e);
  }
  std::stable_sort(hub_edges.begin(), hub_edges.end(), [&](int a, int b) {
    return work.edges[a].cost.magnitude() > work.edges[b].cost.magnitude();
  });
  std::vector<char> removed(work.edges.size(), 0);
  res.components = connected_components(work);
  for (int e : hub_edges) {
    if (res.components.size() >= 2) break;
    removed[e] = 1;
    NetworkTopology pruned;
    pruned.n = work.n;
    pruned.ring_k = work.ring_k;
    for (int i = 0; i < static_cast<int>(work.edges.size()); ++i) {
      if (!removed[i]) pruned.edges.push_back(work.edges[i]);
    }
    pruned.rebuild_incidence();
    res.components = connected_components(pruned);
    res.surviving_edges = pruned.edges;
  }
  return res;
}

std::string edges_to_csv(const NetworkTopology& topo) {
  std::ostringstream os;
  os << "from,to,kr,lr,ks,ls,kind\n";
  for (const NetEdge& e : topo.edges) {
    os << e.from << ',' << e.to << ',' << format_double(e.cost.kr) << ','
       << format_double(e.cost.lr) << ',' << format_double(e.cost.ks) << ','
       << format_double(e.cost.ls) << ',' << (e.kind == NetEdgeKind::Ring ? "ring" : "hub")
       << '\n';
  }
  return os.str();
}

}  // namespace helio
