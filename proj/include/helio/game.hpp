#ifndef HELIO_GAME_HPP
#define HELIO_GAME_HPP

#include <random>
#include <utility>
#include <vector>

#include "helio/agent.hpp"
#include "helio/tech_lattice.hpp"

namespace helio {

enum class Decision { Cooperate, Defect };

inline const char* to_string(Decision d) { return d == Decision::Cooperate ? "C" : "D"; }

struct StrategyWeights {
  double w_c = 0.5;
  double w_d = 0.5;
  bool degenerate = false;

  // Tie resolves to cooperation.
  Decision decision() const { return w_c >= w_d ? Decision::Cooperate : Decision::Defect; }
};

// Degree- and potential-weighted strategy function. Falls back to the base
// form for an empty neighborhood; a zero growth-vector magnitude or any zero
// denominator yields uniform weights with the degeneracy flag set.
StrategyWeights strategy_of(const AgentState& agent, double degree,
                            const std::vector<const AgentState*>& neighbors,
                            const std::vector<double>& neighbor_degrees);

// Wealth payoff of one pairing for the `self` side: (C,C) and (D,D) pay 0,
// cooperating against a defector pays gp - w_d, defecting against a
// cooperator pays gp + w_c (own growth potential and weights).
double wealth_delta(Decision self, Decision other, double growth_potential, double w_c,
                    double w_d);

struct PairPayoff {
  TechSet tech_i;
  TechSet tech_j;
  double wealth_delta_i = 0.0;
  double wealth_delta_j = 0.0;
};

// Evaluates one game between two agents with resolved pure decisions.
// Mutual cooperation joins both tech sets; a cooperator facing a defector
// absorbs the licensed meet (never losing owned technology); mutual
// defection is a strict no-op.
PairPayoff pair_payoff(const AgentState& i, const AgentState& j, const StrategyWeights& si,
                       const StrategyWeights& sj, const TechLattice& lat);

// Unordered pairs in range: {i, j} plays when j is in i's neighborhood or
// vice versa; each pair at most once per round.
std::vector<std::pair<int, int>> round_pairs(const std::vector<std::vector<int>>& neighborhoods);

// L(A): sum of technological differences against the neighborhood over the
// sum of potential ratios. Empty neighborhood or a degenerate denominator
// gives zero.
double learning_value(const AgentState& agent, const std::vector<const AgentState*>& neighbors,
                      const TechLattice& lat);

// Imitation step: each agent copies the strategy weights of its
// highest-payout neighbor with probability clamp(L * eta0, 0, 1). One
// uniform draw per agent, in agent order, against the pre-update snapshot.
// Neighborhood lists index into `agents`.
void learn_update(const std::vector<AgentState*>& agents,
                  const std::vector<std::vector<int>>& neighborhoods, const TechLattice& lat,
                  double eta0, std::mt19937_64& rng);

// Per-agent inputs for the evolutionary-stability deviation check.
struct EssAgent {
  double growth_potential = 0.0;
  double w_c = 0.0;
  double w_d = 0.0;
  Decision decision = Decision::Cooperate;
  double payout = 0.0;
  std::vector<Decision> partner_decisions;
};

// True iff |eta| < tolerance and no agent strictly improves its round payout
// by unilaterally flipping its decision against frozen partners.
bool ess_check(const std::vector<EssAgent>& agents, double eta, double tolerance);

}  // namespace helio

#endif  // HELIO_GAME_HPP
