#include "helio/agent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace helio {

int frontier_level(const TechLattice& lat, const TechSet& tech) {
  int frontier = 0;
  tech.mask.for_each([&](int id) { frontier = std::max(frontier, lat.level_of(id)); });
  return frontier;
}

namespace {

int edge_level(const TechLattice& lat, const TechEdge& e) {
  return std::max(lat.level_of(e.from), lat.level_of(e.to));
}

}  // namespace

void compute_metrics(AgentState& agent, const TechLattice& lat) {
  if (!is_downward_closed(lat, agent.tech)) {
    throw std::invalid_argument("compute_metrics: tech set not downward-closed");
  }

  // Edge measures per level; an edge is owned when both endpoints are owned.
  std::vector<double> owned(lat.levels() + 1, 0.0);
  std::vector<double> total(lat.levels() + 1, 0.0);
  double owned_sum = 0.0;
  for (const TechEdge& e : lat.edges()) {
    int h = edge_level(lat, e);
    double w = e.cost.magnitude();
    total[h] += w;
    if (agent.tech.contains(e.from) && agent.tech.contains(e.to)) {
      owned[h] += w;
      owned_sum += w;
    }
  }

  int frontier = frontier_level(lat, agent.tech);
  agent.advancement = owned_sum > 0.0 ? owned[frontier] / owned_sum : 0.0;

  double mastery = 0.0;
  for (int h = 1; h <= lat.levels(); ++h) {
    if (total[h] > 0.0) mastery += owned[h] / total[h];
  }
  agent.mastery = mastery;

  double a3 = agent.advancement * agent.advancement * agent.advancement;
  agent.potential = agent.mastery * (agent.endowment.kr + agent.endowment.lr) +
                    a3 * (agent.endowment.ks + agent.endowment.ls);
  agent.growth_potential = agent.potential - lat.spanning_cost(agent.tech).scalar;
}

std::vector<GrowthCandidate> growth_candidates(const AgentState& agent, const TechLattice& lat,
                                               const std::vector<double>& node_norms) {
  std::vector<GrowthCandidate> out;
  int frontier = frontier_level(lat, agent.tech);
  TechLattice::SetDistances sd = lat.chain_costs_from(agent.tech.mask);

  auto consider = [&](int id, bool cross) {
    if (agent.tech.contains(id)) return;
    // Adoption must preserve downward closure.
    NodeMask need = lat.down_mask(id);
    need.reset(id);
    if (!need.is_subset_of(agent.tech.mask)) return;
    // Must be adjacent to the set by one edge.
    bool adjacent = false;
    for (int ei : lat.incident_edges(id)) {
      const TechEdge& e = lat.edges()[ei];
      bool cross_edge = e.kind == TechEdgeKind::Time;
      if (cross_edge != cross) continue;
      int other = e.from == id ? e.to : e.from;
      if (agent.tech.contains(other)) {
        adjacent = true;
        break;
      }
    }
    if (!adjacent) return;
    GrowthCandidate c;
    c.node = id;
    c.cross_level = cross;
    ChainCost cc = lat.reconstruct(sd, id);
    c.cost = cc.scalar;
    c.cost_vec = cc.total;
    c.value = c.cost > 0.0 ? node_norms[id] / (c.cost * c.cost) : 0.0;
    out.push_back(c);
  };

  if (frontier + 1 <= lat.levels()) {
    for (int id : lat.level_nodes(frontier + 1)) consider(id, true);
  }
  if (frontier >= 1) {
    for (int id : lat.level_nodes(frontier)) consider(id, false);
  }
  return out;
}

GrowthVectors growth_vectors(const AgentState& agent, const TechLattice& lat,
                             const GrowthCandidate* adv, const GrowthCandidate* mas) {
  (void)lat;
  GrowthVectors g;
  // Components are magnitudes; negative potentials contribute no pull.
  double pot = std::max(agent.potential, 0.0);
  double gp = std::max(agent.growth_potential, 0.0);
  if (adv && adv->node >= 0) g.advance = pot * adv->value;
  if (mas && mas->node >= 0) g.master = pot * mas->value * gp;
  g.magnitude = g.advance * g.master * gp;
  double h = std::hypot(g.advance, g.master);
  if (h > 0.0) {
    g.dir_advance = g.advance / h;
    g.dir_master = g.master / h;
  }
  return g;
}

GrowthAssessment assess_growth(const AgentState& agent, const TechLattice& lat,
                               const std::vector<double>& node_norms) {
  GrowthAssessment out;
  out.all = growth_candidates(agent, lat, node_norms);
  for (const GrowthCandidate& c : out.all) {
    auto& slot = c.cross_level ? out.adv : out.mas;
    if (!slot || c.value > slot->value) slot = c;
  }
  out.vectors = growth_vectors(agent, lat, out.adv ? &*out.adv : nullptr,
                               out.mas ? &*out.mas : nullptr);
  return out;
}

double agent_inner(const AgentState& a, const AgentState& b, const TechLattice& lat) {
  if (!lat.accepts(a.tech) || !lat.accepts(b.tech)) {
    throw std::invalid_argument("agent_inner: agents from mixed lattices");
  }
  std::vector<int> ma = a.tech.members();
  std::vector<int> mb = b.tech.members();
  double sum = 0.0;
  auto nearest = [&](int tau, const std::vector<int>& other) {
    double best = std::numeric_limits<double>::infinity();
    for (int t : other) best = std::min(best, lat.tech_inner(tau, t));
    return best;
  };
  for (int tau : ma) {
    sum += b.tech.contains(tau) ? 1.0 : nearest(tau, mb);
  }
  for (int tau : mb) {
    if (!a.tech.contains(tau)) sum += nearest(tau, ma);
  }
  return sum;
}

std::optional<GrowthDebit> grow_step(AgentState& agent, const TechLattice& lat,
                                     const std::vector<double>& node_norms) {
  std::vector<GrowthCandidate> cands = growth_candidates(agent, lat, node_norms);
  bool favor_advance = agent.growth.advance >= agent.growth.master;
  const GrowthCandidate* best = nullptr;
  for (const GrowthCandidate& c : cands) {
    if (!(c.cost < agent.growth_potential)) continue;
    if (!best || c.value > best->value) {
      best = &c;
    } else if (c.value == best->value) {
      if (c.cross_level != best->cross_level) {
        if (c.cross_level == favor_advance) best = &c;
      } else if (c.node < best->node) {
        best = &c;
      }
    }
  }
  if (!best) return std::nullopt;

  agent.tech.mask.set(best->node);
  agent.endowment -= best->cost_vec;
  GrowthDebit debit;
  debit.node = best->node;
  debit.cost = best->cost_vec;
  debit.cross_level = best->cross_level;
  return debit;
}

}  // namespace helio
