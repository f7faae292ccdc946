#ifndef HELIO_TECH_LATTICE_HPP
#define HELIO_TECH_LATTICE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "helio/wealth.hpp"

namespace helio {

enum class TechKind { Zero, Innovative, Base, Peripheral };

std::string to_string(TechKind k);
TechKind tech_kind_from_string(const std::string& s);

// Public identity of a lattice node: level (height), index within its kind
// at that level, and the kind itself. The zero technology is (0, 0, Zero).
struct TechNodeId {
  int level = 0;
  int index = 0;
  TechKind kind = TechKind::Zero;

  friend bool operator==(const TechNodeId&, const TechNodeId&) = default;
};

enum class TechEdgeKind { Trace, Time };

struct TechEdge {
  int from = 0;  // dense node id
  int to = 0;
  TechEdgeKind kind = TechEdgeKind::Trace;
  WealthVector cost;
};

// Per-level edge costs. Trace edges at level h cost
// (trace_kr, trace_lr, 0, 0) * level_scale^(h-1); time edges into level h cost
// (0, 0, time_ks, time_ls) * level_scale^(h-1). The defaults give the level
// unit distance u_h = sqrt(5) * sqrt(2)^(h-1).
struct LatticeCostParams {
  double trace_kr = 1.0;
  double trace_lr = 2.0;
  double time_ks = 1.0;
  double time_ls = 2.0;
  double level_scale = 1.4142135623730951;  // sqrt(2)

  static LatticeCostParams unit() { return {}; }
};

// Fixed-size bitset over lattice node ids.
class NodeMask {
 public:
  NodeMask() = default;
  explicit NodeMask(int node_count) : n_(node_count), words_((node_count + 63) / 64, 0) {}

  int node_count() const { return n_; }
  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  int count() const;
  bool any() const;

  NodeMask& operator|=(const NodeMask& o);
  NodeMask& operator&=(const NodeMask& o);
  NodeMask& operator^=(const NodeMask& o);
  friend NodeMask operator|(NodeMask a, const NodeMask& b) { return a |= b; }
  friend NodeMask operator&(NodeMask a, const NodeMask& b) { return a &= b; }
  friend NodeMask operator^(NodeMask a, const NodeMask& b) { return a ^= b; }
  friend bool operator==(const NodeMask&, const NodeMask&) = default;

  bool is_subset_of(const NodeMask& o) const;
  std::vector<int> to_vector() const;  // ascending node ids
  void for_each(const std::function<void(int)>& fn) const;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

// A downward-closed technology set. Always contains the zero node. Bound to a
// lattice only structurally (node count); rescaled copies of the same lattice
// remain compatible.
struct TechSet {
  NodeMask mask;

  int size() const { return mask.count(); }
  bool contains(int id) const { return mask.test(id); }
  std::vector<int> members() const { return mask.to_vector(); }
  friend bool operator==(const TechSet&, const TechSet&) = default;
};

struct ChainCost {
  WealthVector total;   // componentwise sum of edge costs along the path
  double scalar = 0.0;  // sum of per-edge magnitudes
};

// Leveled technology lattice: 19 nodes per level plus the zero node, trace
// edges within a level, directed time edges between consecutive levels.
class TechLattice {
 public:
  // An empty lattice; build() makes a usable one.
  TechLattice() = default;

  // levels >= 1, positive cost components; throws std::invalid_argument.
  static TechLattice build(int levels, const LatticeCostParams& params = LatticeCostParams::unit());

  int levels() const { return levels_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const LatticeCostParams& cost_params() const { return params_; }

  const std::vector<TechEdge>& edges() const { return edges_; }
  const TechNodeId& node(int id) const;
  // Throws std::out_of_range for an unknown identity.
  int id_of(const TechNodeId& node) const;
  int zero_id() const { return 0; }
  int level_of(int id) const { return node(id).level; }

  // Node ids of a whole level (h >= 1) or the level members of one kind.
  std::vector<int> level_nodes(int level) const;

  // Direct time-edge predecessors / successors.
  const std::vector<int>& predecessors(int id) const;
  const std::vector<int>& successors(int id) const;

  // Indices into edges() of every edge touching the node.
  const std::vector<int>& incident_edges(int id) const;

  // Precomputed down-set mask of a node (all tau' <= tau, incl. tau and zero).
  const NodeMask& down_mask(int id) const;

  TechSet down_set(int id) const;
  TechSet zero_set() const;  // {tau_bot}

  // Minimum-total-magnitude path between two nodes, edges traversable both
  // ways. Throws std::out_of_range for unknown nodes.
  ChainCost chain_cost(int a, int b) const;

  // Shortest chain cost from every node to the closest member of `from`,
  // with the parent edge index for path reconstruction (-1 at sources).
  struct SetDistances {
    std::vector<double> dist;
    std::vector<int> parent_edge;
  };
  SetDistances chain_costs_from(const NodeMask& from) const;
  // Path cost to `target` read back out of a chain_costs_from result.
  ChainCost reconstruct(const SetDistances& sd, int target) const;
  // Chain cost from a set to a target node, following chain_costs_from.
  ChainCost chain_cost_from_set(const NodeMask& from, int target) const;

  // Minimum spanning cost of the subgraph induced by a connected tech set
  // (Prim from the zero node, deterministic tie-breaking).
  ChainCost spanning_cost(const TechSet& set) const;

  // |down(a) U down(b)| / |down(a) ^ down(b)|; finite since every down-set
  // contains the zero node.
  double tech_inner(int a, int b) const;

  // Members of Pi_tau: same-level nodes sharing tau's direct-predecessor set,
  // plus tau's direct successors. Throws std::invalid_argument for the zero
  // node.
  std::vector<int> pi_region(int id) const;
  // Sum of chain-cost magnitudes from tau to each member of Pi_tau.
  double neighborhood_norm(int id) const;

  // Copy with every edge cost rescaled (kr by r_scale, lr by w_scale,
  // ks/ls by rho_scale).
  TechLattice rescaled(const BasisScale& s) const;

  // Structural compatibility check used by the set operations.
  bool accepts(const TechSet& set) const { return set.mask.node_count() == node_count(); }

 private:
  void build_adjacency();

  int levels_ = 0;
  LatticeCostParams params_;
  std::vector<TechNodeId> nodes_;
  std::vector<TechEdge> edges_;
  std::vector<std::vector<int>> incident_;   // edge indices per node (both ways)
  std::vector<std::vector<int>> preds_;      // direct time predecessors
  std::vector<std::vector<int>> succs_;      // direct time successors
  std::vector<NodeMask> down_;               // down-set per node
};

// Downward closure of an arbitrary mask (union of member down-sets); the
// closure of an empty mask is {tau_bot}.
TechSet downward_closure(const TechLattice& lat, const NodeMask& mask);

bool is_downward_closed(const TechLattice& lat, const TechSet& set);

// Ring operations on tech sets (union / intersection of down-closed sets;
// symmetric difference re-closed downward). Node-id overloads operate on the
// nodes' down-sets. Mixed-lattice operands throw std::invalid_argument.
TechSet ring_join(const TechLattice& lat, const TechSet& a, const TechSet& b);
TechSet ring_meet(const TechLattice& lat, const TechSet& a, const TechSet& b);
TechSet ring_symdiff(const TechLattice& lat, const TechSet& a, const TechSet& b);
TechSet ring_join(const TechLattice& lat, int a, int b);
TechSet ring_meet(const TechLattice& lat, int a, int b);
TechSet ring_symdiff(const TechLattice& lat, int a, int b);

}  // namespace helio

#endif  // HELIO_TECH_LATTICE_HPP
