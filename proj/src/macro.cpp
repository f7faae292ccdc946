#include "helio/macro.hpp"

#include <algorithm>
#include <cmath>

namespace helio {

namespace {

// Guard rails for the applied rate factors; spending collapses (r = -1)
// must not yield a non-positive basis.
constexpr double kRateScaleMin = 0.1;
constexpr double kRateScaleMax = 10.0;

double relative_diff(double cur, double prev) {
  if (prev == 0.0) return 0.0;
  return (cur - prev) / prev;
}

}  // namespace

double gdp_of(const std::vector<double>& payouts, const std::vector<double>& growth_magnitudes) {
  double sum = 0.0;
  for (double p : payouts) sum += p;
  for (double g : growth_magnitudes) sum += g;
  return sum;
}

MacroUpdate macro_update(const MacroState& prev, double gdp, const SpendTotals& spend,
                         const SpendTotals& prev_spend, const MacroParams& params) {
  MacroUpdate out;
  out.state.round = prev.round + 1;
  out.state.gdp = gdp;
  out.state.delta_gdp = relative_diff(gdp, prev.gdp);
  out.state.r = relative_diff(spend.capital, prev_spend.capital);
  out.state.w = relative_diff(spend.labour, prev_spend.labour);

  double feedback = out.state.delta_gdp - params.g_e;
  out.state.rho = std::clamp(1.0 + params.alpha_rho * feedback, params.rho_min, params.rho_max);

  out.scale.r_scale =
      std::clamp(1.0 + out.state.r + params.alpha_r * feedback, kRateScaleMin, kRateScaleMax);
  out.scale.w_scale =
      std::clamp(1.0 + out.state.w + params.alpha_w * feedback, kRateScaleMin, kRateScaleMax);
  out.scale.rho_scale = out.state.rho;
  return out;
}

namespace {

std::optional<double> last_diff(const std::vector<double>& xs) {
  if (xs.size() < 2) return std::nullopt;
  return xs[xs.size() - 1] - xs[xs.size() - 2];
}

std::optional<double> last_second_diff(const std::vector<double>& xs) {
  if (xs.size() < 3) return std::nullopt;
  std::size_t n = xs.size();
  return xs[n - 1] - 2.0 * xs[n - 2] + xs[n - 3];
}

template <typename Fn>
std::vector<double> column(const std::vector<RoundAggregate>& h, Fn fn) {
  std::vector<double> out;
  out.reserve(h.size());
  for (const RoundAggregate& a : h) out.push_back(fn(a));
  return out;
}

}  // namespace

TrajectoryMetrics trajectory_metrics(const std::vector<RoundAggregate>& history,
                                     double earth_helio_price_ratio) {
  TrajectoryMetrics out;
  std::vector<double> gdp = column(history, [](const RoundAggregate& a) { return a.gdp; });
  out.grad_h = last_diff(gdp);
  if (auto dd = last_second_diff(gdp)) out.kappa_h = *dd * earth_helio_price_ratio;
  out.d_r = last_diff(column(history, [](const RoundAggregate& a) { return a.r; }));
  out.d_w = last_diff(column(history, [](const RoundAggregate& a) { return a.w; }));
  out.strategy_drift =
      last_diff(column(history, [](const RoundAggregate& a) { return a.coop_share; }));
  out.market_drift =
      last_diff(column(history, [](const RoundAggregate& a) { return a.mean_degree; }));
  out.kappa_t = last_diff(column(history, [](const RoundAggregate& a) { return a.mean_frontier; }));
  for (const RoundAggregate& a : history) {
    out.spend_k_total += a.spend_k;
    out.spend_l_total += a.spend_l;
    out.wealth_accumulated += a.gdp;
  }
  return out;
}

std::string to_string(Phase p) {
  switch (p) {
    case Phase::I: return "I";
    case Phase::II: return "II";
    case Phase::III: return "III";
    case Phase::IV: return "IV";
    case Phase::Unclassified: return "unclassified";
  }
  return "unclassified";
}

std::string to_string(Sign s) {
  switch (s) {
    case Sign::Zero: return "0";
    case Sign::Plus: return "+";
    case Sign::Minus: return "-";
    case Sign::Flat: return "<->";
  }
  return "0";
}

Phase classify(const PhaseSignature& sig) {
  static const PhaseSignature kPhaseI{Sign::Flat, Sign::Zero, Sign::Plus, Decision::Defect,
                                      Sign::Zero, Sign::Zero};
  static const PhaseSignature kPhaseII{Sign::Plus, Sign::Plus, Sign::Plus, Decision::Cooperate,
                                       Sign::Plus, Sign::Zero};
  static const PhaseSignature kPhaseIII{Sign::Flat, Sign::Zero, Sign::Plus, Decision::Defect,
                                        Sign::Minus, Sign::Plus};
  static const PhaseSignature kPhaseIV{Sign::Plus, Sign::Plus, Sign::Minus, Decision::Cooperate,
                                       Sign::Flat, Sign::Minus};
  if (sig == kPhaseI) return Phase::I;
  if (sig == kPhaseII) return Phase::II;
  if (sig == kPhaseIII) return Phase::III;
  if (sig == kPhaseIV) return Phase::IV;
  return Phase::Unclassified;
}

namespace {

std::vector<double> diffs(const std::vector<double>& xs) {
  std::vector<double> out;
  for (std::size_t i = 1; i < xs.size(); ++i) out.push_back(xs[i] - xs[i - 1]);
  return out;
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

// Three-way trend: flat-line, up, or down.
Sign trend_sign(const std::vector<double>& xs, double eps) {
  double m = mean(diffs(xs));
  if (m > eps) return Sign::Plus;
  if (m < -eps) return Sign::Minus;
  return Sign::Zero;
}

// Four-way trend used for the game column: Zero when every step is flat,
// Flat when steps move but cancel out (oscillation).
Sign game_sign(const std::vector<double>& xs, double eps) {
  std::vector<double> d = diffs(xs);
  bool all_flat = true;
  for (double x : d) {
    if (std::abs(x) >= eps) all_flat = false;
  }
  if (all_flat) return Sign::Zero;
  double m = mean(d);
  if (m > eps) return Sign::Plus;
  if (m < -eps) return Sign::Minus;
  return Sign::Flat;
}

}  // namespace

PhaseSignature extract_signature(const std::vector<RoundAggregate>& window, double eps) {
  PhaseSignature sig;
  std::vector<double> frontier =
      column(window, [](const RoundAggregate& a) { return a.mean_frontier; });
  sig.tech = trend_sign(frontier, eps) == Sign::Plus ? Sign::Plus : Sign::Flat;
  sig.space_wealth =
      trend_sign(column(window, [](const RoundAggregate& a) { return a.space_wealth; }), eps);
  sig.ordinary_wealth =
      trend_sign(column(window, [](const RoundAggregate& a) { return a.ordinary_wealth; }), eps);
  double coop = mean(column(window, [](const RoundAggregate& a) { return a.coop_share; }));
  sig.strategy = coop >= 0.5 ? Decision::Cooperate : Decision::Defect;
  sig.game = game_sign(column(window, [](const RoundAggregate& a) { return a.gdp; }), eps);
  sig.degree =
      trend_sign(column(window, [](const RoundAggregate& a) { return a.mean_degree; }), eps);
  return sig;
}

Phase classify_phase(const std::vector<RoundAggregate>& window, double eps) {
  if (window.size() < 3) return Phase::Unclassified;
  return classify(extract_signature(window, eps));
}

}  // namespace helio
