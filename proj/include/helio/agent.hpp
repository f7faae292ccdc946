#ifndef HELIO_AGENT_HPP
#define HELIO_AGENT_HPP

#include <optional>
#include <vector>

#include "helio/tech_lattice.hpp"
#include "helio/wealth.hpp"

namespace helio {

// Growth pull along the two technology axes. `advance` and `master` are the
// nonzero components of the advancement / mastery vectors; `magnitude` is the
// combined |G| = advance * master * growth_potential (clamped at zero), with
// the direction kept as the normalized component pair.
struct GrowthVectors {
  double advance = 0.0;
  double master = 0.0;
  double magnitude = 0.0;
  double dir_advance = 0.0;
  double dir_master = 0.0;
};

struct AgentState {
  int id = 0;
  TechSet tech;
  WealthVector endowment;
  double w_c = 0.0;  // cooperation weight
  double w_d = 0.0;  // defection weight

  // Metrics recomputed by compute_metrics.
  double advancement = 0.0;       // A in [0, 1]
  double mastery = 0.0;           // M in [0, levels]
  double potential = 0.0;         // ||A|| = M(kr+lr) + A^3(ks+ls)
  double growth_potential = 0.0;  // |A| = ||A|| - D(T)
  GrowthVectors growth;

  // Round bookkeeping.
  double round_payout = 0.0;
  double learning = 0.0;
  bool degenerate_strategy = false;
};

// Recomputes advancement, mastery, potential and growth potential from the
// tech set and endowment. Throws std::invalid_argument if the tech set is
// not downward-closed.
void compute_metrics(AgentState& agent, const TechLattice& lat);

// Highest level present in the tech set (0 when only the zero node is owned).
int frontier_level(const TechLattice& lat, const TechSet& tech);

// A technology the agent could adopt next: adjacent to the tech set by one
// edge, closure-preserving, with its chain cost from the set.
struct GrowthCandidate {
  int node = -1;
  bool cross_level = false;  // advancement (next level) vs mastery (same level)
  double cost = 0.0;         // D(tau, T) scalar
  WealthVector cost_vec;
  double value = 0.0;        // ||tau|| / D(tau, T)^2
};

// Enumerates advancement candidates (frontier + 1) and mastery candidates
// (frontier level), in node-id order. `node_norms` must hold the
// neighborhood norm of every lattice node.
std::vector<GrowthCandidate> growth_candidates(const AgentState& agent, const TechLattice& lat,
                                               const std::vector<double>& node_norms);

// Growth vectors for a chosen candidate pair; a missing candidate (node < 0)
// zeroes its axis.
GrowthVectors growth_vectors(const AgentState& agent, const TechLattice& lat,
                             const GrowthCandidate* adv, const GrowthCandidate* mas);

// Picks the best candidate per axis (max value, then lowest node id) and
// derives the growth vectors. Returns the candidates for reuse.
struct GrowthAssessment {
  std::optional<GrowthCandidate> adv;
  std::optional<GrowthCandidate> mas;
  GrowthVectors vectors;
  std::vector<GrowthCandidate> all;
};
GrowthAssessment assess_growth(const AgentState& agent, const TechLattice& lat,
                               const std::vector<double>& node_norms);

// Technological difference between two agents: sum over the union of tech
// sets of the down-set ratio against the nearest counterpart in the other
// set. Symmetric; equals |T| for identical sets.
double agent_inner(const AgentState& a, const AgentState& b, const TechLattice& lat);

struct GrowthDebit {
  int node = -1;
  WealthVector cost;
  bool cross_level = false;
};

// Adopts the best affordable candidate (chain cost strictly below the growth
// potential), maximizing ||tau||/D^2 with ties broken toward the axis favored
// by the larger growth-vector component, then by node id. Debits the
// endowment by the chain-cost components. No affordable candidate leaves the
// agent unchanged.
std::optional<GrowthDebit> grow_step(AgentState& agent, const TechLattice& lat,
                                     const std::vector<double>& node_norms);

}  // namespace helio

#endif  // HELIO_AGENT_HPP
