#ifndef HELIO_SIM_HPP
#define HELIO_SIM_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "helio/agent.hpp"
#include "helio/astro.hpp"
#include "helio/game.hpp"
#include "helio/macro.hpp"
#include "helio/network.hpp"
#include "helio/tech_lattice.hpp"

namespace helio {

struct SimConfig {
  // Lattice.
  int lattice_levels = 3;
  LatticeCostParams cost_params;

  // Network. n == 1 is the degenerate edgeless case; otherwise n >= 3.
  int n = 20;
  int ring_k = 2;
  int hubs = 3;
  int hub_links = 3;
  WealthVector network_edge_cost{1.0, 2.0, 0.0, 0.0};

  // Agents.
  double endowment_min = 5.0;
  double endowment_max = 10.0;
  int tech_min = 1;  // initial non-zero technologies per agent
  int tech_max = 3;
  double initial_w_c = 0.5;
  double initial_w_d = 0.5;

  // Game and macro feedback.
  double eta0 = 0.1;
  MacroParams macro;
  PriceVector prices{1.0, 1.0};

  // Phase classification.
  int phase_window = 10;
  double phase_eps = 1e-6;

  // Run control.
  int rounds = 100;
  std::uint64_t seed = 0;

  // Ambiguous-formula switches.
  bool het_cubed = true;
  bool phi_pow_outside = true;
};

// Throws std::invalid_argument naming the offending field.
void validate(const SimConfig& cfg);

struct AgentSnapshot {
  int id = 0;
  std::vector<int> tech;  // node ids, ascending
  WealthVector endowment;
  double w_c = 0.0;  // weights carried into the next round (post-learning)
  double w_d = 0.0;
  double advancement = 0.0;
  double mastery = 0.0;
  double potential = 0.0;
  double growth_potential = 0.0;
  double growth_magnitude = 0.0;
  Decision decision = Decision::Cooperate;
  double payout = 0.0;
  double learning = 0.0;
  int economy = 0;
  // Weights in force when the round was played (pre-learning); the
  // evolutionary-stability counterfactual replays with these.
  double played_w_c = 0.0;
  double played_w_d = 0.0;
};

struct EconomyRecord {
  std::vector<int> members;  // global agent ids
  MacroState macro;
  SpendTotals spend;
  double phi = 0.0;
  bool connected = true;
  bool degenerate_phi = false;
};

struct RoundRecord {
  int round = 0;  // 1-based
  std::vector<AgentSnapshot> agents;
  std::vector<EconomyRecord> economies;  // structure that played this round
  std::vector<std::pair<int, int>> pairs;
  RoundAggregate aggregate;
  Phase phase = Phase::Unclassified;
  int components_after = 1;  // economy count after percolation
};

struct SimHistory {
  SimConfig config;
  std::vector<RoundRecord> rounds;
};

// One independent game after a split: its agents, its network (local
// indices), its lattice copy with its own accumulated cost scale, and its
// macro state.
struct Economy {
  std::vector<int> members;  // global agent ids, ascending
  NetworkTopology topo;      // indices are positions in `members`
  TechLattice lattice;
  MacroState macro;
  SpendTotals prev_spend;
};

struct SimState {
  SimConfig config;
  std::vector<AgentState> agents;
  std::vector<Economy> economies;
  std::mt19937_64 rng;
  int round = 0;
  std::vector<RoundAggregate> aggregates;  // global per-round series
};

// Deterministic-for-seed initial state. Draw order: network seed, then per
// agent (id order) tech-set size, tech node choices, and the four endowment
// components; per round one learning draw per agent.
SimState init(const SimConfig& cfg);

// Executes one full round of the pipeline (metrics, strategies, game,
// growth, learning, macro, rescale, percolation) for every economy and
// returns the round record.
RoundRecord step(SimState& st);

// init + rounds x step.
SimHistory run(const SimConfig& cfg);

// Evolutionary stability on the recorded trajectory: |eta| below tolerance
// (eta = first difference of the population mean learning value) and no
// profitable unilateral decision flip in the last round. Empty when fewer
// than two rounds are recorded.
std::optional<bool> ess_check(const SimHistory& hist, double tolerance);

}  // namespace helio

#endif  // HELIO_SIM_HPP
