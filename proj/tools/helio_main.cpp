#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "helio/astro.hpp"
#include "helio/io.hpp"
#include "helio/io_util.hpp"
#include "helio/network.hpp"
#include "helio/sim.hpp"

namespace {

using helio::format_double;
using nlohmann::json;

std::string rounded(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

struct SimArgs {
  std::string config_path;
  std::string out_dir;
  std::int64_t seed = -1;
  bool seed_set = false;
  int rounds = 0;
  bool rounds_set = false;
  bool agents_csv = false;
};

int run_sim(const SimArgs& args) {
  helio::SimConfig cfg = helio::load_config_file(args.config_path);
  if (args.seed_set) cfg.seed = static_cast<std::uint64_t>(args.seed);
  if (args.rounds_set) cfg.rounds = args.rounds;
  helio::validate(cfg);

  helio::SimHistory hist = helio::run(cfg);

  std::filesystem::path out(args.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + out.string() + "'");

  write_file(out / "timeseries.csv", helio::timeseries_csv(hist));
  write_file(out / "final.json", helio::final_state_json(hist).dump(2) + "\n");
  write_file(out / "manifest.json", helio::manifest_json(cfg).dump(2) + "\n");
  if (args.agents_csv) write_file(out / "agents.csv", helio::agents_csv(hist));

  std::cout << "wrote " << (out / "timeseries.csv").string() << ", final.json, manifest.json"
            << (args.agents_csv ? ", agents.csv" : "") << "\n";
  return 0;
}

struct MissionArgs {
  std::string profile_path;
  std::string launch_name;
  std::string return_name;
  double ul = 0.0;
  bool ul_set = false;
  double ur = 0.0;
  bool ur_set = false;
  double e0 = 0.0;
  double grade = 1.0;
  double eta1 = 1.0;
  double eta2 = 1.0;
  double dh = 0.0;
  double mass = 1.0;
  double velocity = 0.0;
  double pi_earth = 1.0;
  double pi_helio = 1.0;
  bool quadratic = false;
  bool differential = false;
  bool as_json = false;
};

helio::MissionProfile profile_from_json(const json& j) {
  helio::MissionProfile p;
  const helio::DeltaVTable& table = helio::DeltaVTable::builtin();
  if (j.contains("launch")) p.launch_dv = table.lookup(j.at("launch").get<std::string>());
  if (j.contains("return")) p.rendezvous_dv = table.lookup(j.at("return").get<std::string>());
  if (j.contains("ul")) p.launch_dv = j.at("ul").get<double>();
  if (j.contains("ur")) p.rendezvous_dv = j.at("ur").get<double>();
  if (j.contains("e0")) p.beneficiation_energy = j.at("e0").get<double>();
  if (j.contains("grade")) p.grade = j.at("grade").get<double>();
  if (j.contains("eta1")) p.eta1 = j.at("eta1").get<double>();
  if (j.contains("eta2")) p.eta2 = j.at("eta2").get<double>();
  if (j.contains("dh")) p.enthalpy = j.at("dh").get<double>();
  if (j.contains("mass")) p.ore_mass = j.at("mass").get<double>();
  if (j.contains("velocity")) p.currency_velocity = j.at("velocity").get<double>();
  if (j.contains("piEarth")) p.prices.earth = j.at("piEarth").get<double>();
  if (j.contains("piHelio")) p.prices.helio = j.at("piHelio").get<double>();
  if (j.contains("quadratic")) p.quadratic_energy = j.at("quadratic").get<bool>();
  if (j.contains("differential")) p.price_differential = j.at("differential").get<bool>();
  return p;
}

json profile_to_json(const helio::MissionProfile& p) {
  return json{{"ul", p.launch_dv},
              {"ur", p.rendezvous_dv},
              {"e0", p.beneficiation_energy},
              {"grade", p.grade},
              {"eta1", p.eta1},
              {"eta2", p.eta2},
              {"dh", p.enthalpy},
              {"mass", p.ore_mass},
              {"velocity", p.currency_velocity},
              {"piEarth", p.prices.earth},
              {"piHelio", p.prices.helio},
              {"quadratic", p.quadratic_energy},
              {"differential", p.price_differential}};
}

int run_mission(const MissionArgs& args) {
  helio::MissionProfile p;
  if (!args.profile_path.empty()) {
    std::ifstream in(args.profile_path);
    if (!in) throw std::invalid_argument("mission: cannot open '" + args.profile_path + "'");
    json j;
    try {
      in >> j;
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("mission: profile is not valid JSON: ") + e.what());
    }
    p = profile_from_json(j);
  } else {
    const helio::DeltaVTable& table = helio::DeltaVTable::builtin();
    if (!args.launch_name.empty()) p.launch_dv = table.lookup(args.launch_name);
    if (!args.return_name.empty()) p.rendezvous_dv = table.lookup(args.return_name);
    if (args.ul_set) p.launch_dv = args.ul;
    if (args.ur_set) p.rendezvous_dv = args.ur;
    p.beneficiation_energy = args.e0;
    p.grade = args.grade;
    p.eta1 = args.eta1;
    p.eta2 = args.eta2;
    p.enthalpy = args.dh;
    p.ore_mass = args.mass;
    p.currency_velocity = args.velocity;
    p.prices = {args.pi_earth, args.pi_helio};
    p.quadratic_energy = args.quadratic;
    p.price_differential = args.differential;
  }

  helio::MissionCost cost = helio::mission_cost(p);
  helio::MissionRevenue rev = helio::mission_profit(p);

  if (args.as_json) {
    json report{{"profile", profile_to_json(p)},
                {"ft", cost.transport},
                {"fr", cost.refinement},
                {"c", cost.total},
                {"revenue", rev.revenue},
                {"profit", rev.profit}};
    std::cout << report.dump(2) << "\n";
    return 0;
  }
  std::cout << "F_t:    " << rounded(cost.transport) << " (exact " << format_double(cost.transport)
            << ")\n"
            << "F_r:    " << rounded(cost.refinement) << " (exact "
            << format_double(cost.refinement) << ")\n"
            << "C:      " << rounded(cost.total) << " (exact " << format_double(cost.total)
            << ")\n"
            << "R:      " << rounded(rev.revenue) << " (exact " << format_double(rev.revenue)
            << ")\n"
            << "profit: " << rounded(rev.profit) << " (exact " << format_double(rev.profit)
            << ")\n";
  return 0;
}

struct DepletionArgs {
  double ratio = 0.0;
  bool ratio_set = false;
  std::string element;
  double growth = 0.0;
};

int run_depletion(const DepletionArgs& args) {
  double static_index = args.ratio;
  if (!args.element.empty()) {
    const helio::DepletionTable& table = helio::DepletionTable::builtin();
    const helio::DepletionRow* row = table.find(args.element);
    if (!row) {
      std::string msg = "unknown element '" + args.element + "'; valid names:";
      for (const std::string& name : table.element_names()) msg += "\n  " + name;
      throw std::out_of_range(msg);
    }
    static_index = row->static_index;
  }
  double years = helio::depletion_years({static_index, args.growth});
  std::cout << "years: " << std::llround(years) << " (exact " << format_double(years) << ")\n";
  return 0;
}

struct NetStatsArgs {
  int n = 20;
  int ring_k = 2;
  int hubs = 3;
  int hub_links = 3;
  std::uint64_t seed = 0;
  double edge_kr = 1.0;
  double edge_lr = 2.0;
  double edge_ks = 0.0;
  double edge_ls = 0.0;
  double potential = 1.0;
  bool het_squared = false;
  bool phi_inside = false;
  std::string edges_out;
  bool as_json = false;
};

int run_net_stats(const NetStatsArgs& args) {
  helio::WealthVector cost{args.edge_kr, args.edge_lr, args.edge_ks, args.edge_ls};
  helio::NetworkTopology topo =
      helio::build_network(args.n, args.ring_k, args.hubs, args.hub_links, cost, args.seed);
  std::vector<double> potentials(args.n, args.potential);
  helio::DegreeStats stats = helio::degree_stats(topo, potentials, {!args.het_squared});
  helio::PercolationResult perc = helio::percolation_split(topo, stats, {!args.phi_inside});

  int ring_edges = 0;
  int hub_edges = 0;
  for (const helio::NetEdge& e : topo.edges) {
    (e.kind == helio::NetEdgeKind::Ring ? ring_edges : hub_edges) += 1;
  }

  if (!args.edges_out.empty()) write_file(args.edges_out, helio::edges_to_csv(topo));

  if (args.as_json) {
    json out{{"n", topo.n},
             {"ringEdges", ring_edges},
             {"hubEdges", hub_edges},
             {"hubs", topo.hubs},
             {"weightedMeanDegree", stats.weighted_mean_degree},
             {"heterogeneity", stats.heterogeneity},
             {"phi", perc.phi},
             {"connected", perc.connected},
             {"components", perc.components.size()}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "n:                  " << topo.n << "\n"
            << "ring edges:         " << ring_edges << "\n"
            << "hub edges:          " << hub_edges << "\n"
            << "weighted mean deg:  " << rounded(stats.weighted_mean_degree) << " (exact "
            << format_double(stats.weighted_mean_degree) << ")\n"
            << "heterogeneity:      " << rounded(stats.heterogeneity) << " (exact "
            << format_double(stats.heterogeneity) << ")\n"
            << "phi:                " << rounded(perc.phi) << " (exact " << format_double(perc.phi)
            << ")\n"
            << "connected:          " << (perc.connected ? 1 : 0) << "\n"
            << "components:         " << perc.components.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heliospheric economy simulator and mission economics calculator"};
  app.set_version_flag("--version", helio::kVersion);
  app.require_subcommand(1);

  SimArgs sim_args;
  CLI::App* sim = app.add_subcommand("sim", "run a simulation from a JSON config");
  sim->add_option("--config", sim_args.config_path, "config JSON path");
  sim->add_option("--out", sim_args.out_dir, "output directory");
  CLI::Option* seed_opt = sim->add_option("--seed", sim_args.seed, "seed override");
  CLI::Option* rounds_opt = sim->add_option("--rounds", sim_args.rounds, "rounds override");
  sim->add_flag("--agents-csv", sim_args.agents_csv, "also write per-agent agents.csv");
  bool print_schema = false;
  sim->add_flag("--schema", print_schema, "print the config JSON schema and exit");

  MissionArgs mission_args;
  CLI::App* mission = app.add_subcommand("mission", "evaluate mission cost and profit");
  mission->add_option("--profile", mission_args.profile_path, "mission profile JSON path");
  mission->add_option("--launch", mission_args.launch_name, "named launch transfer");
  mission->add_option("--return", mission_args.return_name, "named rendezvous transfer");
  CLI::Option* ul_opt = mission->add_option("--ul", mission_args.ul, "launch impulse U_l");
  CLI::Option* ur_opt = mission->add_option("--ur", mission_args.ur, "rendezvous impulse U_r");
  mission->add_option("--e0", mission_args.e0, "ore beneficiation energy");
  mission->add_option("--grade", mission_args.grade, "ore grade in (0,1]");
  mission->add_option("--eta1", mission_args.eta1, "beneficiation efficiency in (0,1]");
  mission->add_option("--eta2", mission_args.eta2, "smelting efficiency in (0,1]");
  mission->add_option("--dh", mission_args.dh, "smelting enthalpy");
  mission->add_option("--mass", mission_args.mass, "ore mass");
  mission->add_option("--velocity", mission_args.velocity, "currency velocity");
  mission->add_option("--pi-earth", mission_args.pi_earth, "Earth price");
  mission->add_option("--pi-helio", mission_args.pi_helio, "heliospheric price");
  mission->add_flag("--quadratic", mission_args.quadratic, "convert dv via e = dv^2/2");
  mission->add_flag("--differential", mission_args.differential,
                    "scale revenue by the relative price differential");
  mission->add_flag("--json", mission_args.as_json, "emit a JSON report");

  DepletionArgs depletion_args;
  CLI::App* depletion = app.add_subcommand("depletion", "years until a resource base is exhausted");
  CLI::Option* ratio_opt =
      depletion->add_option("--ratio", depletion_args.ratio, "static reserve index (years at 0%)");
  CLI::Option* element_opt =
      depletion->add_option("--element", depletion_args.element, "element from the bundled table");
  ratio_opt->excludes(element_opt);
  depletion->add_option("--growth", depletion_args.growth, "annual consumption growth rate");

  NetStatsArgs net_args;
  CLI::App* net = app.add_subcommand("net-stats", "build a network and report degree statistics");
  net->add_option("--n", net_args.n, "agent count");
  net->add_option("--ring-k", net_args.ring_k, "even total ring degree");
  net->add_option("--j", net_args.hubs, "hub count");
  net->add_option("--hub-links", net_args.hub_links, "extra edges per hub");
  net->add_option("--seed", net_args.seed, "generator seed");
  net->add_option("--edge-kr", net_args.edge_kr, "edge cost kr");
  net->add_option("--edge-lr", net_args.edge_lr, "edge cost lr");
  net->add_option("--edge-ks", net_args.edge_ks, "edge cost ks");
  net->add_option("--edge-ls", net_args.edge_ls, "edge cost ls");
  net->add_option("--potential", net_args.potential, "uniform agent potential");
  net->add_flag("--het-squared", net_args.het_squared,
                "use the squared-degree heterogeneity reading");
  net->add_flag("--phi-inside", net_args.phi_inside,
                "use the (1 - het^n) parenthesization of phi");
  net->add_option("--edges-out", net_args.edges_out, "write the edge list CSV here");
  net->add_flag("--json", net_args.as_json, "emit a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sim) {
      if (print_schema) {
        std::cout << helio::config_schema();
        return 0;
      }
      if (sim_args.config_path.empty() || sim_args.out_dir.empty()) {
        std::cerr << "error: sim requires --config and --out\n";
        return 2;
      }
      sim_args.seed_set = seed_opt->count() > 0;
      sim_args.rounds_set = rounds_opt->count() > 0;
      return run_sim(sim_args);
    }
    if (*mission) {
      mission_args.ul_set = ul_opt->count() > 0;
      mission_args.ur_set = ur_opt->count() > 0;
      return run_mission(mission_args);
    }
    if (*depletion) {
      depletion_args.ratio_set = ratio_opt->count() > 0;
      bool have_ratio = depletion_args.ratio_set;
      bool have_element = !depletion_args.element.empty();
      if (have_ratio == have_element) {
        std::cerr << "error: exactly one of --ratio / --element is required\n";
        return 2;
      }
      return run_depletion(depletion_args);
    }
    if (*net) return run_net_stats(net_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
