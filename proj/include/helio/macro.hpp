#ifndef HELIO_MACRO_HPP
#define HELIO_MACRO_HPP

#include <optional>
#include <string>
#include <vector>

#include "helio/game.hpp"
#include "helio/wealth.hpp"

namespace helio {

struct MacroState {
  double gdp = 0.0;
  double delta_gdp = 0.0;
  double r = 0.0;    // interest growth (measured from capital spending)
  double w = 0.0;    // wage growth (measured from labour spending)
  double rho = 1.0;  // inflation index, always > 0
  int round = 0;
};

struct MacroParams {
  double alpha_r = 0.1;
  double alpha_w = 0.1;
  double alpha_rho = 0.1;
  double g_e = 0.03;  // exogenous Earth growth
  double rho_min = 0.5;
  double rho_max = 2.0;
};

// GDP of a completed round: total payouts plus total growth-vector
// magnitudes.
double gdp_of(const std::vector<double>& payouts, const std::vector<double>& growth_magnitudes);

// Per-round spending totals (grow-step debits, magnitudes): capital on the
// (kr, ks) axes, labour on (lr, ls).
struct SpendTotals {
  double capital = 0.0;
  double labour = 0.0;
};

struct MacroUpdate {
  MacroState state;
  BasisScale scale;  // applied to all lattice edge costs for the next round
};

// r/w are relative differences of spending between rounds (0 when the
// previous round spent nothing); rho = 1 + alpha_rho (dGDP - g_e) clamped to
// [rho_min, rho_max]. The returned scale adds the feedback term on top of
// the measured rates: (1 + r + alpha_r f, 1 + w + alpha_w f, rho), with the
// rate factors clamped so a spending collapse cannot produce a non-positive
// basis.
MacroUpdate macro_update(const MacroState& prev, double gdp, const SpendTotals& spend,
                         const SpendTotals& prev_spend, const MacroParams& params);

// One row of recorded per-round aggregates.
struct RoundAggregate {
  double gdp = 0.0;
  // Secondary chain-cost reading of GDP: total network edge cost plus the
  // agents' tech-set spanning costs.
  double gdp_chain = 0.0;
  double spend_k = 0.0;
  double spend_l = 0.0;
  double r = 0.0;
  double w = 0.0;
  double rho = 1.0;
  double coop_share = 0.0;
  double mean_degree = 0.0;
  double mean_frontier = 0.0;
  double mean_learning = 0.0;
  double ordinary_wealth = 0.0;  // sum over agents of kr + lr
  double space_wealth = 0.0;     // sum over agents of ks + ls
  double total_potential = 0.0;
};

// Finite-difference trajectory measurements; fields whose differences are
// unavailable on a short history stay empty.
struct TrajectoryMetrics {
  std::optional<double> grad_h;          // last first difference of GDP
  std::optional<double> kappa_h;         // second difference x price ratio
  std::optional<double> d_r;
  std::optional<double> d_w;
  std::optional<double> strategy_drift;  // diff of cooperation share
  std::optional<double> market_drift;    // diff of weighted mean degree
  std::optional<double> kappa_t;         // diff of mean frontier level
  double spend_k_total = 0.0;
  double spend_l_total = 0.0;
  double wealth_accumulated = 0.0;       // running sum of GDP
};

TrajectoryMetrics trajectory_metrics(const std::vector<RoundAggregate>& history,
                                     double earth_helio_price_ratio);

// Sign symbols of the phase table. Zero and Flat are distinct: Zero is a
// flat-line trend, Flat is the oscillating "<->" symbol.
enum class Sign { Zero, Plus, Minus, Flat };

enum class Phase { I, II, III, IV, Unclassified };

std::string to_string(Phase p);
std::string to_string(Sign s);

struct PhaseSignature {
  Sign tech = Sign::Zero;             // frontier-level trend (Flat or Plus)
  Sign space_wealth = Sign::Zero;     // d W / d ks d ls
  Sign ordinary_wealth = Sign::Zero;  // d W / d kr d lr
  Decision strategy = Decision::Defect;
  Sign game = Sign::Zero;             // GDP trend
  Sign degree = Sign::Zero;           // mean-degree trend

  friend bool operator==(const PhaseSignature&, const PhaseSignature&) = default;
};

// Exact lookup against the four-phase table; anything else is Unclassified.
Phase classify(const PhaseSignature& sig);

// Sign extraction over a trailing window with threshold eps.
PhaseSignature extract_signature(const std::vector<RoundAggregate>& window, double eps);

// extract + classify; pure in its inputs.
Phase classify_phase(const std::vector<RoundAggregate>& window, double eps);

}  // namespace helio

#endif  // HELIO_MACRO_HPP
