#ifndef HELIO_NETWORK_HPP
#define HELIO_NETWORK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "helio/wealth.hpp"

namespace helio {

enum class NetEdgeKind { Ring, Hub };

struct NetEdge {
  int from = 0;
  int to = 0;
  WealthVector cost;
  NetEdgeKind kind = NetEdgeKind::Ring;
};

// Ring-plus-hubs weighted graph over agents (Newman-Watts style small world
// with shortcuts attached to designated hub agents).
struct NetworkTopology {
  int n = 0;
  int ring_k = 0;
  std::vector<int> hubs;
  int hub_links = 0;
  std::vector<NetEdge> edges;
  std::uint64_t rng_seed = 0;

  std::vector<std::vector<int>> incident;  // edge indices per agent

  int degree(int agent) const { return static_cast<int>(incident.at(agent).size()); }
  void rebuild_incidence();
};

// n >= 3; ring_k even with 2 <= ring_k < n; 0 <= j <= n; hub targets drawn
// by seeded uniform choice over non-adjacent agents, duplicates re-drawn.
// Deterministic for identical inputs and seed. Throws std::invalid_argument.
NetworkTopology build_network(int n, int ring_k, int j, int hub_links,
                              const WealthVector& edge_cost, std::uint64_t seed);

// Minimum-weight path cost (edge weight = cost magnitude); 0 for i == j,
// +infinity for a disconnected pair.
double path_distance(const NetworkTopology& topo, int i, int j);

// All path distances from one agent.
std::vector<double> path_distances_from(const NetworkTopology& topo, int i);

// Agents strictly closer than `radius`, excluding the agent itself.
std::vector<int> neighborhood(const NetworkTopology& topo, int agent, double radius);

struct DegreeStats {
  double weighted_mean_degree = 0.0;
  double heterogeneity = 0.0;
};

struct DegreeStatsOptions {
  // Heterogeneity sums deg^3 by default; the alternative reading sums deg^2.
  bool cubed_term = true;
};

// Weighted mean degree (sum of potential * degree over total edge cost) and
// the heterogeneity measure. One nonnegative potential per agent required.
// Throws std::invalid_argument for an empty network or mismatched potentials.
DegreeStats degree_stats(const NetworkTopology& topo, const std::vector<double>& potentials,
                         const DegreeStatsOptions& opts = {});

struct PercolationOptions {
  // phi = (1 - het)^n / (2 het) by default; the alternative parenthesization
  // reads (1 - het^n) / (2 het).
  bool pow_outside = true;
};

struct PercolationResult {
  double phi = 0.0;
  bool connected = true;                     // phi >= 0.5
  std::vector<std::vector<int>> components;  // partition of all agents
  bool degenerate = false;                   // heterogeneity was zero
  std::vector<NetEdge> surviving_edges;      // edges left after shortcut removal
};

// Evaluates the percolation indicator; when phi < 0.5, removes hub shortcuts
// by descending weight until graph search finds >= 2 components (or hub
// edges run out). Zero heterogeneity is treated as connected with phi = +inf.
PercolationResult percolation_split(const NetworkTopology& topo, const DegreeStats& stats,
                                    const PercolationOptions& opts = {});

// Connected components of the topology as-is.
std::vector<std::vector<int>> connected_components(const NetworkTopology& topo);

// Edge-list CSV: from,to,kr,lr,ks,ls,kind
std::string edges_to_csv(const NetworkTopology& topo);

}  // namespace helio

#endif  // HELIO_NETWORK_HPP
