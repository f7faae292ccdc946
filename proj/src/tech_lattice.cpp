#include "helio/tech_lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace helio {

namespace {

constexpr int kInnovativePerLevel = 1;
constexpr int kBasePerLevel = 6;
constexpr int kPeripheralPerLevel = 12;
constexpr int kNodesPerLevel = kInnovativePerLevel + kBasePerLevel + kPeripheralPerLevel;

// Dense id layout: 0 = zero node; level h >= 1 starts at 1 + (h-1)*19 with
// innovative first, then the 6 base nodes, then the 12 peripherals.
int level_offset(int level) { return 1 + (level - 1) * kNodesPerLevel; }

}  // namespace

std::string to_string(TechKind k) {
  switch (k) {
    case TechKind::Zero: return "zero";
    case TechKind::Innovative: return "innovative";
    case TechKind::Base: return "base";
    case TechKind::Peripheral: return "peripheral";
  }
  return "zero";
}

TechKind tech_kind_from_string(const std::string& s) {
  if (s == "zero") return TechKind::Zero;
  if (s == "innovative") return TechKind::Innovative;
  if (s == "base") return TechKind::Base;
  if (s == "peripheral") return TechKind::Peripheral;
  throw std::invalid_argument("unknown tech kind: " + s);
}

int NodeMask::count() const {
  int c = 0;
  for (std::uint64_t w : words_) c += std::popcount(w);
  return c;
}

bool NodeMask::any() const {
  for (std::uint64_t w : words_) {
    if (w) return true;
  }
  return false;
}

NodeMask& NodeMask::operator|=(const NodeMask& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

NodeMask& NodeMask::operator&=(const NodeMask& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

NodeMask& NodeMask::operator^=(const NodeMask& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

bool NodeMask::is_subset_of(const NodeMask& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~o.words_[i]) return false;
  }
  return true;
}

std::vector<int> NodeMask::to_vector() const {
  std::vector<int> out;
  out.reserve(count());
  for (int i = 0; i < n_; ++i) {
    if (test(i)) out.push_back(i);
  }
  return out;
}

void NodeMask::for_each(const std::function<void(int)>& fn) const {
  for (int i = 0; i < n_; ++i) {
    if (test(i)) fn(i);
  }
}

TechLattice TechLattice::build(int levels, const LatticeCostParams& params) {
  if (levels < 1) throw std::invalid_argument("build_lattice: levels must be >= 1");
  if (!(params.trace_kr > 0.0) || !(params.trace_lr > 0.0) || !(params.time_ks > 0.0) ||
      !(params.time_ls > 0.0) || !(params.level_scale > 0.0)) {
    throw std::invalid_argument("build_lattice: cost params must have positive components");
  }

  TechLattice lat;
  lat.levels_ = levels;
  lat.params_ = params;

  lat.nodes_.push_back({0, 0, TechKind::Zero});
  for (int h = 1; h <= levels; ++h) {
    lat.nodes_.push_back({h, 0, TechKind::Innovative});
    for (int j = 0; j < kBasePerLevel; ++j) lat.nodes_.push_back({h, j, TechKind::Base});
    for (int j = 0; j < kPeripheralPerLevel; ++j) lat.nodes_.push_back({h, j, TechKind::Peripheral});
  }

  auto scale_at = [&](int level) { return std::pow(params.level_scale, level - 1); };
  auto trace_cost = [&](int level) {
    double s = scale_at(level);
    return WealthVector{params.trace_kr * s, params.trace_lr * s, 0.0, 0.0};
  };
  auto time_cost = [&](int target_level) {
    double s = scale_at(target_level);
    return WealthVector{0.0, 0.0, params.time_ks * s, params.time_ls * s};
  };
  auto innov = [&](int h) { return level_offset(h); };
  auto base = [&](int h, int j) { return level_offset(h) + 1 + j; };
  auto periph = [&](int h, int j) { return level_offset(h) + 1 + kBasePerLevel + j; };

  // Trace template per level: innovative center joined to all base nodes,
  // closed base hexagon, closed peripheral 12-ring, base-peripheral block
  // with |j - k| <= 4.
  for (int h = 1; h <= levels; ++h) {
    const WealthVector c = trace_cost(h);
    for (int j = 0; j < kBasePerLevel; ++j) {
      lat.edges_.push_back({innov(h), base(h, j), TechEdgeKind::Trace, c});
    }
    for (int j = 0; j < kBasePerLevel; ++j) {
      lat.edges_.push_back({base(h, j), base(h, (j + 1) % kBasePerLevel), TechEdgeKind::Trace, c});
    }
    for (int j = 0; j < kPeripheralPerLevel; ++j) {
      lat.edges_.push_back(
          {periph(h, j), periph(h, (j + 1) % kPeripheralPerLevel), TechEdgeKind::Trace, c});
    }
    for (int j = 0; j < kBasePerLevel; ++j) {
      for (int k = 0; k < kPeripheralPerLevel; ++k) {
        if (std::abs(j - k) <= 4) {
          lat.edges_.push_back({base(h, j), periph(h, k), TechEdgeKind::Trace, c});
        }
      }
    }
  }

  // Time edges. The zero node reaches every level-1 node; cross-level
  // out-degrees are 7 (innovative), 4 (base), 3 (peripheral), wired
  // deterministically by index so that every node stays reachable.
  {
    const WealthVector c = time_cost(1);
    for (int id = level_offset(1); id < level_offset(1) + kNodesPerLevel; ++id) {
      lat.edges_.push_back({0, id, TechEdgeKind::Time, c});
    }
  }
  for (int h = 1; h < levels; ++h) {
    const WealthVector c = time_cost(h + 1);
    lat.edges_.push_back({innov(h), innov(h + 1), TechEdgeKind::Time, c});
    for (int k = 0; k < kBasePerLevel; ++k) {
      lat.edges_.push_back({innov(h), base(h + 1, k), TechEdgeKind::Time, c});
    }
    for (int j = 0; j < kBasePerLevel; ++j) {
      lat.edges_.push_back({base(h, j), base(h + 1, j), TechEdgeKind::Time, c});
      for (int d = 0; d < 3; ++d) {
        lat.edges_.push_back(
            {base(h, j), periph(h + 1, (2 * j + d) % kPeripheralPerLevel), TechEdgeKind::Time, c});
      }
    }
    for (int j = 0; j < kPeripheralPerLevel; ++j) {
      int b = j / 2;
      for (int d : {0, 1, 5}) {
        lat.edges_.push_back({periph(h, j), base(h + 1, (b + d) % kBasePerLevel), TechEdgeKind::Time, c});
      }
    }
  }

  lat.build_adjacency();
  return lat;
}

void TechLattice::build_adjacency() {
  const int n = node_count();
  incident_.assign(n, {});
  preds_.assign(n, {});
  succs_.assign(n, {});
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const TechEdge& ed = edges_[e];
    incident_[ed.from].push_back(e);
    incident_[ed.to].push_back(e);
    if (ed.kind == TechEdgeKind::Time) {
      succs_[ed.from].push_back(ed.to);
      preds_[ed.to].push_back(ed.from);
    }
  }
  // Down-sets via reverse BFS over time edges, level by level.
  down_.assign(n, NodeMask(n));
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return nodes_[a].level < nodes_[b].level; });
  for (int id : order) {
    down_[id].set(id);
    for (int p : preds_[id]) down_[id] |= down_[p];
  }
}

const TechNodeId& TechLattice::node(int id) const {
  if (id < 0 || id >= node_count()) throw std::out_of_range("tech lattice: node id out of range");
  return nodes_[id];
}

int TechLattice::id_of(const TechNodeId& node) const {
  if (node.kind == TechKind::Zero) {
    if (node.level == 0 && node.index == 0) return 0;
    throw std::out_of_range("tech lattice: invalid zero node identity");
  }
  if (node.level < 1 || node.level > levels_) throw std::out_of_range("tech lattice: unknown level");
  int off = level_offset(node.level);
  switch (node.kind) {
    case TechKind::Innovative:
      if (node.index != 0) throw std::out_of_range("tech lattice: innovative index out of range");
      return off;
    case TechKind::Base:
      if (node.index < 0 || node.index >= kBasePerLevel) {
        throw std::out_of_range("tech lattice: base index out of range");
      }
      return off + 1 + node.index;
    case TechKind::Peripheral:
      if (node.index < 0 || node.index >= kPeripheralPerLevel) {
        throw std::out_of_range("tech lattice: peripheral index out of range");
      }
      return off + 1 + kBasePerLevel + node.index;
    default: break;
  }
  throw std::out_of_range("tech lattice: unknown node identity");
}

std::vector<int> TechLattice::level_nodes(int level) const {
  if (level < 0 || level > levels_) throw std::out_of_range("tech lattice: unknown level");
  if (level == 0) return {0};
  std::vector<int> out(kNodesPerLevel);
  for (int i = 0; i < kNodesPerLevel; ++i) out[i] = level_offset(level) + i;
  return out;
}

const std::vector<int>& TechLattice::predecessors(int id) const {
  node(id);
  return preds_[id];
}

const std::vector<int>& TechLattice::successors(int id) const {
  node(id);
  return succs_[id];
}

const std::vector<int>& TechLattice::incident_edges(int id) const {
  node(id);
  return incident_[id];
}

const NodeMask& TechLattice::down_mask(int id) const {
  node(id);
  return down_[id];
}

TechSet TechLattice::down_set(int id) const { return TechSet{down_mask(id)}; }

TechSet TechLattice::zero_set() const {
  NodeMask m(node_count());
  m.set(0);
  return TechSet{m};
}

ChainCost TechLattice::chain_cost(int a, int b) const {
  node(a);
  node(b);
  if (a == b) return {};
  NodeMask from(node_count());
  from.set(a);
  return chain_cost_from_set(from, b);
}

TechLattice::SetDistances TechLattice::chain_costs_from(const NodeMask& from) const {
  const int n = node_count();
  SetDistances out;
  out.dist.assign(n, std::numeric_limits<double>::infinity());
  out.parent_edge.assign(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (int i = 0; i < n; ++i) {
    if (from.test(i)) {
      out.dist[i] = 0.0;
      pq.emplace(0.0, i);
    }
  }
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > out.dist[u]) continue;
    for (int e : incident_[u]) {
      const TechEdge& ed = edges_[e];
      int v = ed.from == u ? ed.to : ed.from;
      double nd = d + ed.cost.magnitude();
      if (nd < out.dist[v]) {
        out.dist[v] = nd;
        out.parent_edge[v] = e;
        pq.emplace(nd, v);
      }
    }
  }
  return out;
}

ChainCost TechLattice::reconstruct(const SetDistances& sd, int target) const {
  node(target);
  ChainCost out;
  if (!std::isfinite(sd.dist[target])) {
    out.scalar = std::numeric_limits<double>::infinity();
    return out;
  }
  int cur = target;
  while (sd.parent_edge[cur] >= 0) {
    const TechEdge& ed = edges_[sd.parent_edge[cur]];
    out.total += ed.cost;
    out.scalar += ed.cost.magnitude();
    cur = ed.from == cur ? ed.to : ed.from;
  }
  return out;
}

ChainCost TechLattice::chain_cost_from_set(const NodeMask& from, int target) const {
  return reconstruct(chain_costs_from(from), target);
}

ChainCost TechLattice::spanning_cost(const TechSet& set) const {
  if (!accepts(set)) throw std::invalid_argument("spanning_cost: set from a different lattice");
  ChainCost out;
  int remaining = set.size() - (set.contains(0) ? 1 : 0);
  if (remaining <= 0) return out;

  // Prim from the zero node over the induced subgraph, ties broken by edge
  // index for determinism.
  const int n = node_count();
  std::vector<char> in_tree(n, 0);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<int> best_edge(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  best[0] = 0.0;
  pq.emplace(0.0, 0);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (in_tree[u] || d > best[u]) continue;
    in_tree[u] = 1;
    if (best_edge[u] >= 0) {
      out.total += edges_[best_edge[u]].cost;
      out.scalar += edges_[best_edge[u]].cost.magnitude();
    }
    for (int e : incident_[u]) {
      const TechEdge& ed = edges_[e];
      int v = ed.from == u ? ed.to : ed.from;
      if (!set.contains(v) || in_tree[v]) continue;
      double w = ed.cost.magnitude();
      if (w < best[v] || (w == best[v] && best_edge[v] >= 0 && e < best_edge[v])) {
        best[v] = w;
        best_edge[v] = e;
        pq.emplace(w, v);
      }
    }
  }
  return out;
}

double TechLattice::tech_inner(int a, int b) const {
  const NodeMask& da = down_mask(a);
  const NodeMask& db = down_mask(b);
  int uni = (da | db).count();
  int inter = (da & db).count();
  return static_cast<double>(uni) / static_cast<double>(inter);
}

std::vector<int> TechLattice::pi_region(int id) const {
  const TechNodeId& nd = node(id);
  if (nd.kind == TechKind::Zero) {
    throw std::invalid_argument("neighborhood_norm: undefined for the zero technology");
  }
  std::vector<int> out;
  std::vector<int> my_preds = preds_[id];
  std::sort(my_preds.begin(), my_preds.end());
  for (int sib : level_nodes(nd.level)) {
    if (sib == id) continue;
    std::vector<int> sp = preds_[sib];
    std::sort(sp.begin(), sp.end());
    if (sp == my_preds) out.push_back(sib);
  }
  for (int s : succs_[id]) out.push_back(s);
  return out;
}

double TechLattice::neighborhood_norm(int id) const {
  double sum = 0.0;
  for (int m : pi_region(id)) sum += chain_cost(id, m).scalar;
  return sum;
}

TechLattice TechLattice::rescaled(const BasisScale& s) const {
  TechLattice out = *this;
  for (TechEdge& e : out.edges_) e.cost = rescale(e.cost, s);
  return out;
}

TechSet downward_closure(const TechLattice& lat, const NodeMask& mask) {
  NodeMask out(lat.node_count());
  out.set(lat.zero_id());
  mask.for_each([&](int id) { out |= lat.down_mask(id); });
  return TechSet{out};
}

bool is_downward_closed(const TechLattice& lat, const TechSet& set) {
  if (!lat.accepts(set) || !set.contains(lat.zero_id())) return false;
  bool ok = true;
  set.mask.for_each([&](int id) {
    if (!lat.down_mask(id).is_subset_of(set.mask)) ok = false;
  });
  return ok;
}

namespace {

void check_operands(const TechLattice& lat, const TechSet& a, const TechSet& b) {
  if (!lat.accepts(a) || !lat.accepts(b)) {
    throw std::invalid_argument("ring op: operands from mixed lattices");
  }
}

}  // namespace

TechSet ring_join(const TechLattice& lat, const TechSet& a, const TechSet& b) {
  check_operands(lat, a, b);
  return TechSet{a.mask | b.mask};
}

TechSet ring_meet(const TechLattice& lat, const TechSet& a, const TechSet& b) {
  check_operands(lat, a, b);
  return TechSet{a.mask & b.mask};
}

TechSet ring_symdiff(const TechLattice& lat, const TechSet& a, const TechSet& b) {
  check_operands(lat, a, b);
  return downward_closure(lat, a.mask ^ b.mask);
}

TechSet ring_join(const TechLattice& lat, int a, int b) {
  return ring_join(lat, lat.down_set(a), lat.down_set(b));
}

TechSet ring_meet(const TechLattice& lat, int a, int b) {
  return ring_meet(lat, lat.down_set(a), lat.down_set(b));
}

TechSet ring_symdiff(const TechLattice& lat, int a, int b) {
  return ring_symdiff(lat, lat.down_set(a), lat.down_set(b));
}

}  // namespace helio
