#ifndef HELIO_IO_HPP
#define HELIO_IO_HPP

#include <string>

#include "json.hpp"

#include "helio/sim.hpp"

namespace helio {

inline constexpr const char* kVersion = "0.1.0";

nlohmann::json to_json(const WealthVector& v);
WealthVector wealth_from_json(const nlohmann::json& j);

// {levels, cost_params, nodes:[{level,index,kind}],
//  edges:[{from,to,kind,cost:{kr,lr,ks,ls}}]}
nlohmann::json lattice_to_json(const TechLattice& lat);

nlohmann::json config_to_json(const SimConfig& cfg);

// Parses and validates a config document; unknown keys and out-of-range
// values throw std::invalid_argument with the offending path.
SimConfig config_from_json(const nlohmann::json& j);
SimConfig load_config_file(const std::string& path);

// The JSON Schema shipped for the config document.
std::string config_schema();

nlohmann::json agent_snapshot_to_json(const AgentSnapshot& s);
// Trajectory measurements over the recorded run.
nlohmann::json trajectory_metrics_json(const SimHistory& hist);
nlohmann::json final_state_json(const SimHistory& hist);
nlohmann::json manifest_json(const SimConfig& cfg);

// round,gdp,deltaGdp,r,w,rho,phi,components,phase,meanLearning
std::string timeseries_csv(const SimHistory& hist);

// round,agent,decision,payout,techSize,A,M,potential
std::string agents_csv(const SimHistory& hist);

}  // namespace helio

#endif  // HELIO_IO_HPP
