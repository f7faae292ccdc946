#include "helio/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace helio {

void validate(const SimConfig& cfg) {
  auto fail = [](const char* what) {
    throw std::invalid_argument(std::string("sim config: ") + what);
  };
  if (cfg.lattice_levels < 1) fail("lattice_levels must be >= 1");
  if (cfg.n != 1) {
    if (cfg.n < 3) fail("n must be 1 or >= 3");
    if (cfg.ring_k < 2 || cfg.ring_k >= cfg.n || cfg.ring_k % 2 != 0) {
      fail("ring_k must be even with 2 <= ring_k < n");
    }
    if (cfg.hubs < 0 || cfg.hubs > cfg.n) fail("hubs must be in [0, n]");
    if (cfg.hub_links < 0) fail("hub_links must be >= 0");
  }
  if (!(cfg.endowment_min <= cfg.endowment_max)) fail("endowment range is empty");
  int max_tech = 19 * cfg.lattice_levels;
  if (cfg.tech_min < 1 || cfg.tech_min > cfg.tech_max) fail("tech-set size range is empty");
  if (cfg.tech_max > max_tech) fail("tech-set size range exceeds the lattice");
  if (cfg.initial_w_c < 0.0 || cfg.initial_w_d < 0.0) fail("initial weights must be >= 0");
  if (cfg.eta0 < 0.0) fail("eta0 must be >= 0");
  if (!(cfg.macro.rho_min > 0.0) || !(cfg.macro.rho_min <= cfg.macro.rho_max)) {
    fail("rho bounds must satisfy 0 < rho_min <= rho_max");
  }
  if (!(cfg.prices.earth > 0.0) || !(cfg.prices.helio > 0.0)) fail("prices must be > 0");
  if (cfg.phase_window < 3) fail("phase_window must be >= 3");
  if (!(cfg.phase_eps > 0.0)) fail("phase_eps must be > 0");
  if (cfg.rounds < 1) fail("rounds must be >= 1");
}

namespace {

NetworkTopology degenerate_topology(int n) {
  NetworkTopology t;
  t.n = n;
  t.ring_k = 0;
  t.hub_links = 0;
  t.rebuild_incidence();
  return t;
}

std::vector<double> node_norms_of(const TechLattice& lat) {
  std::vector<double> out(lat.node_count(), 0.0);
  for (int id = 1; id < lat.node_count(); ++id) out[id] = lat.neighborhood_norm(id);
  return out;
}

// Nodes whose adoption keeps the set downward-closed.
std::vector<int> adoptable_nodes(const TechLattice& lat, const TechSet& tech) {
  std::vector<int> out;
  for (int id = 1; id < lat.node_count(); ++id) {
    if (tech.contains(id)) continue;
    NodeMask need = lat.down_mask(id);
    need.reset(id);
    if (need.is_subset_of(tech.mask)) out.push_back(id);
  }
  return out;
}

}  // namespace

SimState init(const SimConfig& cfg) {
  validate(cfg);
  SimState st;
  st.config = cfg;
  st.rng.seed(cfg.seed);

  TechLattice lattice = TechLattice::build(cfg.lattice_levels, cfg.cost_params);

  NetworkTopology topo;
  if (cfg.n == 1) {
    topo = degenerate_topology(1);
  } else {
    std::uint64_t net_seed = st.rng();
    topo = build_network(cfg.n, cfg.ring_k, cfg.hubs, cfg.hub_links, cfg.network_edge_cost,
                         net_seed);
  }

  std::uniform_int_distribution<int> size_draw(cfg.tech_min, cfg.tech_max);
  std::uniform_real_distribution<double> endow_draw(cfg.endowment_min, cfg.endowment_max);
  st.agents.resize(cfg.n);
  for (int a = 0; a < cfg.n; ++a) {
    AgentState& ag = st.agents[a];
    ag.id = a;
    ag.tech = lattice.zero_set();
    int target = size_draw(st.rng);
    for (int k = 0; k < target; ++k) {
      std::vector<int> cands = adoptable_nodes(lattice, ag.tech);
      if (cands.empty()) break;
      std::uniform_int_distribution<int> pick(0, static_cast<int>(cands.size()) - 1);
      ag.tech.mask.set(cands[pick(st.rng)]);
    }
    ag.endowment.kr = endow_draw(st.rng);
    ag.endowment.lr = endow_draw(st.rng);
    ag.endowment.ks = endow_draw(st.rng);
    ag.endowment.ls = endow_draw(st.rng);
    ag.endowment += lattice.spanning_cost(ag.tech).total;
    ag.w_c = cfg.initial_w_c;
    ag.w_d = cfg.initial_w_d;
    compute_metrics(ag, lattice);
  }

  // Credit each agent with the summed distances to its neighborhood, split
  // evenly between the kr and lr components.
  for (int a = 0; a < cfg.n; ++a) {
    std::vector<double> dist = path_distances_from(topo, a);
    double credit = 0.0;
    for (int j = 0; j < cfg.n; ++j) {
      if (j != a && dist[j] < st.agents[a].growth_potential) credit += dist[j];
    }
    st.agents[a].endowment.kr += credit / 2.0;
    st.agents[a].endowment.lr += credit / 2.0;
  }
  for (AgentState& ag : st.agents) compute_metrics(ag, lattice);

  Economy eco;
  eco.members.resize(cfg.n);
  std::iota(eco.members.begin(), eco.members.end(), 0);
  eco.topo = topo;
  eco.lattice = lattice;
  st.economies.push_back(std::move(eco));
  return st;
}

namespace {

struct AgentRoundData {
  Decision decision = Decision::Cooperate;
  double played_w_c = 0.0;
  double played_w_d = 0.0;
  double growth_magnitude = 0.0;
  SpendTotals spend;
  int economy = 0;
};

}  // namespace

RoundRecord step(SimState& st) {
  const SimConfig& cfg = st.config;
  const int n = static_cast<int>(st.agents.size());
  RoundRecord rec;
  rec.round = st.round + 1;

  std::vector<AgentRoundData> ard(n);
  std::vector<Economy> next_economies;
  struct EcoStats {
    double mean_degree = 0.0;
    int members = 0;
  };
  std::vector<EcoStats> eco_stats;

  for (std::size_t ei = 0; ei < st.economies.size(); ++ei) {
    Economy& eco = st.economies[ei];
    const int m = static_cast<int>(eco.members.size());
    auto global = [&](int li) { return eco.members[li]; };

    // Metrics and growth assessment on a frozen lattice.
    std::vector<double> norms = node_norms_of(eco.lattice);
    for (int li = 0; li < m; ++li) compute_metrics(st.agents[global(li)], eco.lattice);
    for (int li = 0; li < m; ++li) {
      AgentState& ag = st.agents[global(li)];
      GrowthAssessment ga = assess_growth(ag, eco.lattice, norms);
      ag.growth = ga.vectors;
      ard[global(li)].growth_magnitude = ga.vectors.magnitude;
      ard[global(li)].economy = static_cast<int>(ei);
    }

    // Neighborhoods under the growth-potential radius.
    std::vector<std::vector<int>> omega(m);
    for (int li = 0; li < m; ++li) {
      std::vector<double> dist = path_distances_from(eco.topo, li);
      double radius = st.agents[global(li)].growth_potential;
      for (int lj = 0; lj < m; ++lj) {
        if (lj != li && dist[lj] < radius) omega[li].push_back(lj);
      }
    }

    // Strategies from the frozen snapshot.
    std::vector<StrategyWeights> sw(m);
    {
      std::vector<AgentState> frozen;
      frozen.reserve(m);
      for (int li = 0; li < m; ++li) frozen.push_back(st.agents[global(li)]);
      for (int li = 0; li < m; ++li) {
        std::vector<const AgentState*> nbs;
        std::vector<double> degs;
        for (int lj : omega[li]) {
          nbs.push_back(&frozen[lj]);
          degs.push_back(eco.topo.degree(lj));
        }
        sw[li] = strategy_of(frozen[li], eco.topo.degree(li), nbs, degs);
      }
    }
    for (int li = 0; li < m; ++li) {
      AgentState& ag = st.agents[global(li)];
      ag.w_c = sw[li].w_c;
      ag.w_d = sw[li].w_d;
      ag.degenerate_strategy = sw[li].degenerate;
      ard[global(li)].decision = sw[li].decision();
      ard[global(li)].played_w_c = sw[li].w_c;
      ard[global(li)].played_w_d = sw[li].w_d;
    }

    // Game phase: evaluate every in-range pair on the frozen state, then
    // apply tech outcomes and wealth deltas atomically.
    std::vector<std::pair<int, int>> pairs = round_pairs(omega);
    {
      std::vector<AgentState> frozen;
      frozen.reserve(m);
      for (int li = 0; li < m; ++li) frozen.push_back(st.agents[global(li)]);
      std::vector<NodeMask> staged;
      staged.reserve(m);
      for (int li = 0; li < m; ++li) staged.push_back(frozen[li].tech.mask);
      std::vector<double> delta(m, 0.0);
      for (auto [i, j] : pairs) {
        PairPayoff pp = pair_payoff(frozen[i], frozen[j], sw[i], sw[j], eco.lattice);
        staged[i] |= pp.tech_i.mask;
        staged[j] |= pp.tech_j.mask;
        delta[i] += pp.wealth_delta_i;
        delta[j] += pp.wealth_delta_j;
        rec.pairs.emplace_back(global(i), global(j));
      }
      for (int li = 0; li < m; ++li) {
        AgentState& ag = st.agents[global(li)];
        ag.tech.mask = staged[li];
        ag.endowment.kr += delta[li] / 2.0;
        ag.endowment.lr += delta[li] / 2.0;
        ag.round_payout = delta[li];
      }
    }

    // Endogenous growth; spending debits feed the macro block.
    SpendTotals spend;
    for (int li = 0; li < m; ++li) {
      AgentState& ag = st.agents[global(li)];
      if (auto debit = grow_step(ag, eco.lattice, norms)) {
        double cap = std::abs(debit->cost.kr) + std::abs(debit->cost.ks);
        double lab = std::abs(debit->cost.lr) + std::abs(debit->cost.ls);
        ard[global(li)].spend = {cap, lab};
        spend.capital += cap;
        spend.labour += lab;
      }
    }

    // Imitation learning.
    {
      std::vector<AgentState*> ptrs;
      ptrs.reserve(m);
      for (int li = 0; li < m; ++li) ptrs.push_back(&st.agents[global(li)]);
      learn_update(ptrs, omega, eco.lattice, cfg.eta0, st.rng);
    }

    // Macro feedback and basis rescaling.
    std::vector<double> payouts;
    std::vector<double> gmags;
    payouts.reserve(m);
    gmags.reserve(m);
    for (int li = 0; li < m; ++li) {
      payouts.push_back(st.agents[global(li)].round_payout);
      gmags.push_back(ard[global(li)].growth_magnitude);
    }
    double gdp = gdp_of(payouts, gmags);
    MacroUpdate mu = macro_update(eco.macro, gdp, spend, eco.prev_spend, cfg.macro);
    eco.macro = mu.state;
    eco.prev_spend = spend;
    eco.lattice = eco.lattice.rescaled(mu.scale);

    // Percolation gate and (possible) split.
    std::vector<double> pots(m);
    for (int li = 0; li < m; ++li) pots[li] = std::max(st.agents[global(li)].potential, 0.0);
    DegreeStats ds = degree_stats(eco.topo, pots, {cfg.het_cubed});
    PercolationResult perc = percolation_split(eco.topo, ds, {cfg.phi_pow_outside});

    EconomyRecord er;
    er.members = eco.members;
    er.macro = eco.macro;
    er.spend = spend;
    er.phi = perc.phi;
    er.connected = perc.connected;
    er.degenerate_phi = perc.degenerate;
    rec.economies.push_back(std::move(er));
    eco_stats.push_back({ds.weighted_mean_degree, m});

    if (perc.components.size() >= 2) {
      for (const std::vector<int>& comp : perc.components) {
        Economy sub;
        sub.members.reserve(comp.size());
        for (int li : comp) sub.members.push_back(global(li));
        std::sort(sub.members.begin(), sub.members.end());
        // Map old local index -> new local index.
        std::vector<int> new_index(m, -1);
        {
          std::vector<int> sorted_local = comp;
          std::sort(sorted_local.begin(), sorted_local.end(),
                    [&](int a, int b) { return global(a) < global(b); });
          for (std::size_t k = 0; k < sorted_local.size(); ++k) {
            new_index[sorted_local[k]] = static_cast<int>(k);
          }
        }
        sub.topo.n = static_cast<int>(comp.size());
        sub.topo.ring_k = 0;
        sub.topo.hub_links = 0;
        for (const NetEdge& e : perc.surviving_edges) {
          if (new_index[e.from] >= 0 && new_index[e.to] >= 0) {
            sub.topo.edges.push_back({new_index[e.from], new_index[e.to], e.cost, e.kind});
          }
        }
        sub.topo.rebuild_incidence();
        sub.lattice = eco.lattice;
        sub.macro = eco.macro;  // components inherit the pre-split macro state
        SpendTotals comp_spend;
        for (int g : sub.members) {
          comp_spend.capital += ard[g].spend.capital;
          comp_spend.labour += ard[g].spend.labour;
        }
        sub.prev_spend = comp_spend;
        next_economies.push_back(std::move(sub));
      }
    } else {
      next_economies.push_back(std::move(eco));
    }
  }

  std::sort(next_economies.begin(), next_economies.end(),
            [](const Economy& a, const Economy& b) { return a.members.front() < b.members.front(); });
  st.economies = std::move(next_economies);

  // Global aggregates (agent-count-weighted where economies differ).
  RoundAggregate agg;
  agg.rho = 0.0;
  for (const EconomyRecord& er : rec.economies) {
    agg.gdp += er.macro.gdp;
    agg.spend_k += er.spend.capital;
    agg.spend_l += er.spend.labour;
    double wgt = static_cast<double>(er.members.size()) / n;
    agg.r += er.macro.r * wgt;
    agg.w += er.macro.w * wgt;
    agg.rho += er.macro.rho * wgt;
  }
  // Secondary chain-cost GDP: network edge cost plus tech-set spanning
  // costs (potential minus growth potential).
  for (const Economy& eco : st.economies) {
    for (const NetEdge& e : eco.topo.edges) agg.gdp_chain += e.cost.magnitude();
  }
  for (int a = 0; a < n; ++a) {
    agg.gdp_chain += st.agents[a].potential - st.agents[a].growth_potential;
  }
  for (const EcoStats& es : eco_stats) {
    agg.mean_degree += es.mean_degree * static_cast<double>(es.members) / n;
  }
  int coop = 0;
  double frontier_sum = 0.0;
  double learn_sum = 0.0;
  for (int a = 0; a < n; ++a) {
    const AgentState& ag = st.agents[a];
    if (ard[a].decision == Decision::Cooperate) ++coop;
    frontier_sum += frontier_level(st.economies.front().lattice, ag.tech);
    learn_sum += ag.learning;
    agg.ordinary_wealth += ag.endowment.kr + ag.endowment.lr;
    agg.space_wealth += ag.endowment.ks + ag.endowment.ls;
    agg.total_potential += ag.potential;
  }
  agg.coop_share = static_cast<double>(coop) / n;
  agg.mean_frontier = frontier_sum / n;
  agg.mean_learning = learn_sum / n;
  st.aggregates.push_back(agg);
  rec.aggregate = agg;

  int w = std::min<int>(cfg.phase_window, static_cast<int>(st.aggregates.size()));
  std::vector<RoundAggregate> window(st.aggregates.end() - w, st.aggregates.end());
  rec.phase = classify_phase(window, cfg.phase_eps);
  rec.components_after = static_cast<int>(st.economies.size());

  rec.agents.reserve(n);
  for (int a = 0; a < n; ++a) {
    const AgentState& ag = st.agents[a];
    AgentSnapshot snap;
    snap.id = a;
    snap.tech = ag.tech.members();
    snap.endowment = ag.endowment;
    snap.w_c = ag.w_c;
    snap.w_d = ag.w_d;
    snap.advancement = ag.advancement;
    snap.mastery = ag.mastery;
    snap.potential = ag.potential;
    snap.growth_potential = ag.growth_potential;
    snap.growth_magnitude = ard[a].growth_magnitude;
    snap.decision = ard[a].decision;
    snap.payout = ag.round_payout;
    snap.learning = ag.learning;
    snap.economy = ard[a].economy;
    snap.played_w_c = ard[a].played_w_c;
    snap.played_w_d = ard[a].played_w_d;
    rec.agents.push_back(std::move(snap));
  }

  ++st.round;
  return rec;
}

SimHistory run(const SimConfig& cfg) {
  SimState st = init(cfg);
  SimHistory hist;
  hist.config = cfg;
  hist.rounds.reserve(cfg.rounds);
  for (int r = 0; r < cfg.rounds; ++r) hist.rounds.push_back(step(st));
  return hist;
}

std::optional<bool> ess_check(const SimHistory& hist, double tolerance) {
  if (hist.rounds.size() < 2) return std::nullopt;
  const RoundRecord& last = hist.rounds.back();
  const RoundRecord& prev = hist.rounds[hist.rounds.size() - 2];
  double eta = last.aggregate.mean_learning - prev.aggregate.mean_learning;

  std::vector<EssAgent> inputs(last.agents.size());
  for (const AgentSnapshot& s : last.agents) {
    EssAgent& e = inputs[s.id];
    e.growth_potential = s.growth_potential;
    e.w_c = s.played_w_c;
    e.w_d = s.played_w_d;
    e.decision = s.decision;
    e.payout = s.payout;
  }
  for (auto [i, j] : last.pairs) {
    inputs[i].partner_decisions.push_back(inputs[j].decision);
    inputs[j].partner_decisions.push_back(inputs[i].decision);
  }
  return ess_check(inputs, eta, tolerance);
}

}  // namespace helio
