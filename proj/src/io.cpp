#include "helio/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "helio/io_util.hpp"
#include "helio/resources.hpp"

namespace helio {

using nlohmann::json;

json to_json(const WealthVector& v) {
  return json{{"kr", v.kr}, {"lr", v.lr}, {"ks", v.ks}, {"ls", v.ls}};
}

WealthVector wealth_from_json(const json& j) {
  WealthVector v;
  v.kr = j.at("kr").get<double>();
  v.lr = j.at("lr").get<double>();
  v.ks = j.at("ks").get<double>();
  v.ls = j.at("ls").get<double>();
  return v;
}

json lattice_to_json(const TechLattice& lat) {
  json nodes = json::array();
  for (int id = 0; id < lat.node_count(); ++id) {
    const TechNodeId& n = lat.node(id);
    nodes.push_back({{"level", n.level}, {"index", n.index}, {"kind", to_string(n.kind)}});
  }
  json edges = json::array();
  for (const TechEdge& e : lat.edges()) {
    edges.push_back({{"from", e.from},
                     {"to", e.to},
                     {"kind", e.kind == TechEdgeKind::Trace ? "trace" : "time"},
                     {"cost", to_json(e.cost)}});
  }
  const LatticeCostParams& p = lat.cost_params();
  return json{{"levels", lat.levels()},
              {"cost_params",
               {{"traceKr", p.trace_kr},
                {"traceLr", p.trace_lr},
                {"timeKs", p.time_ks},
                {"timeLs", p.time_ls},
                {"levelScale", p.level_scale}}},
              {"nodes", nodes},
              {"edges", edges}};
}

json config_to_json(const SimConfig& cfg) {
  return json{
      {"lattice",
       {{"levels", cfg.lattice_levels},
        {"costParams",
         {{"traceKr", cfg.cost_params.trace_kr},
          {"traceLr", cfg.cost_params.trace_lr},
          {"timeKs", cfg.cost_params.time_ks},
          {"timeLs", cfg.cost_params.time_ls},
          {"levelScale", cfg.cost_params.level_scale}}}}},
      {"network",
       {{"n", cfg.n},
        {"ringK", cfg.ring_k},
        {"hubs", cfg.hubs},
        {"hubLinks", cfg.hub_links},
        {"edgeCost", to_json(cfg.network_edge_cost)}}},
      {"agents",
       {{"endowmentMin", cfg.endowment_min},
        {"endowmentMax", cfg.endowment_max},
        {"techMin", cfg.tech_min},
        {"techMax", cfg.tech_max},
        {"initialWC", cfg.initial_w_c},
        {"initialWD", cfg.initial_w_d}}},
      {"game", {{"eta0", cfg.eta0}}},
      {"macro",
       {{"alphaR", cfg.macro.alpha_r},
        {"alphaW", cfg.macro.alpha_w},
        {"alphaRho", cfg.macro.alpha_rho},
        {"gE", cfg.macro.g_e},
        {"rhoMin", cfg.macro.rho_min},
        {"rhoMax", cfg.macro.rho_max}}},
      {"prices", {{"earth", cfg.prices.earth}, {"helio", cfg.prices.helio}}},
      {"phase", {{"window", cfg.phase_window}, {"eps", cfg.phase_eps}}},
      {"rounds", cfg.rounds},
      {"seed", cfg.seed},
      {"switches", {{"hetCubed", cfg.het_cubed}, {"phiPowOutside", cfg.phi_pow_outside}}}};
}

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument("config: " + path + " " + what);
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) schema_fail(path, "must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) schema_fail(path + "." + key, "is not a recognized field");
  }
}

double get_number(const json& obj, const std::string& path, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) schema_fail(path + "." + key, "must be a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) schema_fail(path + "." + key, "must be an integer");
  return v.get<int>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) schema_fail(path + "." + key, "must be a boolean");
  return v.get<bool>();
}

}  // namespace

SimConfig config_from_json(const json& j) {
  SimConfig cfg;
  check_keys(j, "config",
             {"lattice", "network", "agents", "game", "macro", "prices", "phase", "rounds",
              "seed", "switches"});

  if (j.contains("lattice")) {
    const json& l = j.at("lattice");
    check_keys(l, "lattice", {"levels", "costParams"});
    cfg.lattice_levels = get_int(l, "lattice", "levels", cfg.lattice_levels);
    if (l.contains("costParams")) {
      const json& cp = l.at("costParams");
      check_keys(cp, "lattice.costParams",
                 {"traceKr", "traceLr", "timeKs", "timeLs", "levelScale"});
      cfg.cost_params.trace_kr = get_number(cp, "lattice.costParams", "traceKr", 1.0);
      cfg.cost_params.trace_lr = get_number(cp, "lattice.costParams", "traceLr", 2.0);
      cfg.cost_params.time_ks = get_number(cp, "lattice.costParams", "timeKs", 1.0);
      cfg.cost_params.time_ls = get_number(cp, "lattice.costParams", "timeLs", 2.0);
      cfg.cost_params.level_scale =
          get_number(cp, "lattice.costParams", "levelScale", cfg.cost_params.level_scale);
    }
  }
  if (j.contains("network")) {
    const json& n = j.at("network");
    check_keys(n, "network", {"n", "ringK", "hubs", "hubLinks", "edgeCost"});
    cfg.n = get_int(n, "network", "n", cfg.n);
    cfg.ring_k = get_int(n, "network", "ringK", cfg.ring_k);
    cfg.hubs = get_int(n, "network", "hubs", cfg.hubs);
    cfg.hub_links = get_int(n, "network", "hubLinks", cfg.hub_links);
    if (n.contains("edgeCost")) {
      const json& ec = n.at("edgeCost");
      check_keys(ec, "network.edgeCost", {"kr", "lr", "ks", "ls"});
      cfg.network_edge_cost.kr = get_number(ec, "network.edgeCost", "kr", 1.0);
      cfg.network_edge_cost.lr = get_number(ec, "network.edgeCost", "lr", 2.0);
      cfg.network_edge_cost.ks = get_number(ec, "network.edgeCost", "ks", 0.0);
      cfg.network_edge_cost.ls = get_number(ec, "network.edgeCost", "ls", 0.0);
    }
  }
  if (j.contains("agents")) {
    const json& a = j.at("agents");
    check_keys(a, "agents",
               {"endowmentMin", "endowmentMax", "techMin", "techMax", "initialWC", "initialWD"});
    cfg.endowment_min = get_number(a, "agents", "endowmentMin", cfg.endowment_min);
    cfg.endowment_max = get_number(a, "agents", "endowmentMax", cfg.endowment_max);
    cfg.tech_min = get_int(a, "agents", "techMin", cfg.tech_min);
    cfg.tech_max = get_int(a, "agents", "techMax", cfg.tech_max);
    cfg.initial_w_c = get_number(a, "agents", "initialWC", cfg.initial_w_c);
    cfg.initial_w_d = get_number(a, "agents", "initialWD", cfg.initial_w_d);
  }
  if (j.contains("game")) {
    const json& g = j.at("game");
    check_keys(g, "game", {"eta0"});
    cfg.eta0 = get_number(g, "game", "eta0", cfg.eta0);
  }
  if (j.contains("macro")) {
    const json& m = j.at("macro");
    check_keys(m, "macro", {"alphaR", "alphaW", "alphaRho", "gE", "rhoMin", "rhoMax"});
    cfg.macro.alpha_r = get_number(m, "macro", "alphaR", cfg.macro.alpha_r);
    cfg.macro.alpha_w = get_number(m, "macro", "alphaW", cfg.macro.alpha_w);
    cfg.macro.alpha_rho = get_number(m, "macro", "alphaRho", cfg.macro.alpha_rho);
    cfg.macro.g_e = get_number(m, "macro", "gE", cfg.macro.g_e);
    cfg.macro.rho_min = get_number(m, "macro", "rhoMin", cfg.macro.rho_min);
    cfg.macro.rho_max = get_number(m, "macro", "rhoMax", cfg.macro.rho_max);
  }
  if (j.contains("prices")) {
    const json& p = j.at("prices");
    check_keys(p, "prices", {"earth", "helio"});
    cfg.prices.earth = get_number(p, "prices", "earth", cfg.prices.earth);
    cfg.prices.helio = get_number(p, "prices", "helio", cfg.prices.helio);
  }
  if (j.contains("phase")) {
    const json& p = j.at("phase");
    check_keys(p, "phase", {"window", "eps"});
    cfg.phase_window = get_int(p, "phase", "window", cfg.phase_window);
    cfg.phase_eps = get_number(p, "phase", "eps", cfg.phase_eps);
  }
  cfg.rounds = get_int(j, "config", "rounds", cfg.rounds);
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_integer() && !s.is_number_unsigned()) schema_fail("config.seed", "must be an integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (j.contains("switches")) {
    const json& s = j.at("switches");
    check_keys(s, "switches", {"hetCubed", "phiPowOutside"});
    cfg.het_cubed = get_bool(s, "switches", "hetCubed", cfg.het_cubed);
    cfg.phi_pow_outside = get_bool(s, "switches", "phiPowOutside", cfg.phi_pow_outside);
  }

  validate(cfg);  // range checks
  return cfg;
}

SimConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config: '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

std::string config_schema() { return resources::kSimConfigSchemaJson; }

json agent_snapshot_to_json(const AgentSnapshot& s) {
  return json{{"id", s.id},
              {"tech", s.tech},
              {"endowment", to_json(s.endowment)},
              {"weights", {{"wC", s.w_c}, {"wD", s.w_d}}},
              {"A", s.advancement},
              {"M", s.mastery},
              {"potential", s.potential},
              {"growthPotential", s.growth_potential}};
}

namespace {

const EconomyRecord& leading_economy(const RoundRecord& rec) {
  const EconomyRecord* best = &rec.economies.front();
  for (const EconomyRecord& er : rec.economies) {
    if (er.members.size() > best->members.size()) best = &er;
  }
  return *best;
}

}  // namespace

namespace {

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json trajectory_metrics_json(const SimHistory& hist) {
  std::vector<RoundAggregate> aggregates;
  aggregates.reserve(hist.rounds.size());
  for (const RoundRecord& rec : hist.rounds) aggregates.push_back(rec.aggregate);
  double ratio = hist.config.prices.earth / hist.config.prices.helio;
  TrajectoryMetrics m = trajectory_metrics(aggregates, ratio);
  return json{{"gradH", optional_number(m.grad_h)},
              {"kappaH", optional_number(m.kappa_h)},
              {"dR", optional_number(m.d_r)},
              {"dW", optional_number(m.d_w)},
              {"strategyDrift", optional_number(m.strategy_drift)},
              {"marketDrift", optional_number(m.market_drift)},
              {"kappaT", optional_number(m.kappa_t)},
              {"spendKTotal", m.spend_k_total},
              {"spendLTotal", m.spend_l_total},
              {"wealthAccumulated", m.wealth_accumulated},
              {"gdpChainCost", aggregates.empty() ? 0.0 : aggregates.back().gdp_chain}};
}

json final_state_json(const SimHistory& hist) {
  const RoundRecord& last = hist.rounds.back();
  json agents = json::array();
  for (const AgentSnapshot& s : last.agents) agents.push_back(agent_snapshot_to_json(s));
  json economies = json::array();
  for (const EconomyRecord& er : last.economies) {
    economies.push_back({{"members", er.members},
                         {"gdp", er.macro.gdp},
                         {"deltaGdp", er.macro.delta_gdp},
                         {"r", er.macro.r},
                         {"w", er.macro.w},
                         {"rho", er.macro.rho},
                         {"phi", er.phi},
                         {"connected", er.connected}});
  }
  TechLattice lattice =
      TechLattice::build(hist.config.lattice_levels, hist.config.cost_params);
  return json{{"round", last.round},
              {"agents", agents},
              {"economies", economies},
              {"components", last.components_after},
              {"phase", to_string(last.phase)},
              {"metrics", trajectory_metrics_json(hist)},
              {"lattice", lattice_to_json(lattice)}};
}

json manifest_json(const SimConfig& cfg) {
  return json{{"config", config_to_json(cfg)}, {"seed", cfg.seed}, {"version", kVersion}};
}

std::string timeseries_csv(const SimHistory& hist) {
  std::ostringstream os;
  os << "round,gdp,deltaGdp,r,w,rho,phi,components,phase,meanLearning\n";
  double prev_gdp = 0.0;
  for (const RoundRecord& rec : hist.rounds) {
    const RoundAggregate& a = rec.aggregate;
    double delta = prev_gdp != 0.0 ? (a.gdp - prev_gdp) / prev_gdp : 0.0;
    const EconomyRecord& lead = leading_economy(rec);
    os << rec.round << ',' << format_double(a.gdp) << ',' << format_double(delta) << ','
       << format_double(a.r) << ',' << format_double(a.w) << ',' << format_double(a.rho) << ','
       << format_double(lead.phi) << ',' << rec.components_after << ',' << to_string(rec.phase)
       << ',' << format_double(a.mean_learning) << '\n';
    prev_gdp = a.gdp;
  }
  return os.str();
}

std::string agents_csv(const SimHistory& hist) {
  std::ostringstream os;
  os << "round,agent,decision,payout,techSize,A,M,potential\n";
  for (const RoundRecord& rec : hist.rounds) {
    for (const AgentSnapshot& s : rec.agents) {
      os << rec.round << ',' << s.id << ',' << to_string(s.decision) << ','
         << format_double(s.payout) << ',' << s.tech.size() << ',' << format_double(s.advancement)
         << ',' << format_double(s.mastery) << ',' << format_double(s.potential) << '\n';
    }
  }
  return os.str();
}

}  // namespace helio
