#include "helio/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace helio {

StrategyWeights strategy_of(const AgentState& agent, double degree,
                            const std::vector<const AgentState*>& neighbors,
                            const std::vector<double>& neighbor_degrees) {
  StrategyWeights uniform{0.5, 0.5, true};
  double g = agent.growth.magnitude;
  if (!(g > 0.0)) return uniform;
  double lead = agent.growth.advance / g;

  if (neighbors.empty()) {
    // Base form: both coefficients |A|/|G|.
    return {lead, lead, false};
  }

  double pot = std::max(agent.potential, 0.0);
  double sum_deg_pot = 0.0;
  double sum_wc = 0.0;
  double sum_wd = 0.0;
  for (std::size_t k = 0; k < neighbors.size(); ++k) {
    sum_deg_pot += neighbor_degrees[k] * std::max(neighbors[k]->potential, 0.0);
    sum_wc += neighbors[k]->w_c;
    sum_wd += neighbors[k]->w_d;
  }
  if (!(sum_deg_pot > 0.0) || !(sum_wc > 0.0) || !(sum_wd > 0.0)) return uniform;

  double share = lead * (degree * pot / sum_deg_pot);
  return {share * (agent.w_c / sum_wc), share * (agent.w_d / sum_wd), false};
}

double wealth_delta(Decision self, Decision other, double growth_potential, double w_c,
                    double w_d) {
  if (self == other) return 0.0;
  if (self == Decision::Cooperate) return growth_potential - w_d;
  return growth_potential + w_c;
}

PairPayoff pair_payoff(const AgentState& i, const AgentState& j, const StrategyWeights& si,
                       const StrategyWeights& sj, const TechLattice& lat) {
  Decision di = si.decision();
  Decision dj = sj.decision();
  PairPayoff out;
  out.tech_i = i.tech;
  out.tech_j = j.tech;

  if (di == Decision::Cooperate && dj == Decision::Cooperate) {
    TechSet joined = ring_join(lat, i.tech, j.tech);
    out.tech_i = joined;
    out.tech_j = joined;
  } else if (di != dj) {
    // Licensing: the cooperator absorbs the shared down-closure, which can
    // never remove owned technology.
    TechSet licensed = ring_meet(lat, i.tech, j.tech);
    if (di == Decision::Cooperate) {
      out.tech_i = ring_join(lat, i.tech, licensed);
    } else {
      out.tech_j = ring_join(lat, j.tech, licensed);
    }
  }
  out.wealth_delta_i = wealth_delta(di, dj, i.growth_potential, i.w_c, i.w_d);
  out.wealth_delta_j = wealth_delta(dj, di, j.growth_potential, j.w_c, j.w_d);
  return out;
}

std::vector<std::pair<int, int>> round_pairs(const std::vector<std::vector<int>>& neighborhoods) {
  int n = static_cast<int>(neighborhoods.size());
  std::vector<std::pair<int, int>> out;
  std::vector<std::vector<char>> in_range(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j : neighborhoods[i]) {
      in_range[i][j] = 1;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (in_range[i][j] || in_range[j][i]) out.emplace_back(i, j);
    }
  }
  return out;
}

double learning_value(const AgentState& agent, const std::vector<const AgentState*>& neighbors,
                      const TechLattice& lat) {
  if (neighbors.empty()) return 0.0;
  double numer = 0.0;
  double denom = 0.0;
  for (const AgentState* nb : neighbors) {
    numer += agent_inner(agent, *nb, lat);
    if (nb->potential > 0.0) {
      denom += agent.potential / nb->potential;
    } else if (agent.potential > 0.0) {
      return 0.0;  // unbounded ratio; degenerate
    }
  }
  if (!(denom > 0.0) || !std::isfinite(denom)) return 0.0;
  return numer / denom;
}

void learn_update(const std::vector<AgentState*>& agents,
                  const std::vector<std::vector<int>>& neighborhoods, const TechLattice& lat,
                  double eta0, std::mt19937_64& rng) {
  std::vector<AgentState> snapshot;
  snapshot.reserve(agents.size());
  for (const AgentState* a : agents) snapshot.push_back(*a);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < agents.size(); ++i) {
    std::vector<const AgentState*> nbs;
    nbs.reserve(neighborhoods[i].size());
    for (int j : neighborhoods[i]) nbs.push_back(&snapshot[j]);
    double l = learning_value(snapshot[i], nbs, lat);
    agents[i]->learning = l;
    double p = std::clamp(l * eta0, 0.0, 1.0);
    double u = unit(rng);  // one draw per agent keeps the stream aligned
    if (nbs.empty() || !(u < p)) continue;
    int best = -1;
    for (int j : neighborhoods[i]) {
      if (best < 0 || snapshot[j].round_payout > snapshot[best].round_payout) best = j;
    }
    agents[i]->w_c = snapshot[best].w_c;
    agents[i]->w_d = snapshot[best].w_d;
  }
}

bool ess_check(const std::vector<EssAgent>& agents, double eta, double tolerance) {
  if (!(std::abs(eta) < tolerance)) return false;
  for (const EssAgent& a : agents) {
    Decision flipped =
        a.decision == Decision::Cooperate ? Decision::Defect : Decision::Cooperate;
    double counterfactual = 0.0;
    for (Decision partner : a.partner_decisions) {
      counterfactual += wealth_delta(flipped, partner, a.growth_potential, a.w_c, a.w_d);
    }
    if (counterfactual > a.payout) return false;
  }
  return true;
}

}  // namespace helio
