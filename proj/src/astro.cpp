#include "helio/astro.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "helio/resources.hpp"
#include "json.hpp"

namespace helio {

namespace {

std::string normalize_arrow(std::string s) {
  // Accept "->" for the arrow used in the aliases.
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out += "→";
      ++i;
    } else {
      out += s[i];
    }
  }
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

const DeltaVTable& DeltaVTable::builtin() {
  static const DeltaVTable table = [] {
    nlohmann::json doc = nlohmann::json::parse(resources::kDeltaVTableJson);
    std::vector<TransferEntry> entries;
    for (const auto& t : doc.at("transfers")) {
      entries.push_back({t.at("name").get<std::string>(), t.at("alias").get<std::string>(),
                         t.at("dv").get<double>()});
    }
    return DeltaVTable(std::move(entries));
  }();
  return table;
}

bool DeltaVTable::contains(const std::string& key) const {
  std::string k = normalize_arrow(key);
  for (const TransferEntry& e : entries_) {
    if (e.name == k || e.alias == k) return true;
  }
  return false;
}

double DeltaVTable::lookup(const std::string& key) const {
  std::string k = normalize_arrow(key);
  for (const TransferEntry& e : entries_) {
    if (e.name == k || e.alias == k) return e.dv;
  }
  std::ostringstream os;
  os << "unknown transfer '" << key << "'; valid names:";
  for (const TransferEntry& e : entries_) os << "\n  " << e.alias << " | " << e.name;
  throw std::out_of_range(os.str());
}

std::vector<std::string> DeltaVTable::names() const {
  std::vector<std::string> out;
  for (const TransferEntry& e : entries_) out.push_back(e.name);
  return out;
}

void validate(const MissionProfile& p) {
  auto fail = [](const char* field, const char* what) {
    throw std::invalid_argument(std::string("mission profile: ") + field + " " + what);
  };
  if (!(p.grade > 0.0) || p.grade > 1.0) fail("grade", "must be in (0, 1]");
  if (!(p.eta1 > 0.0) || p.eta1 > 1.0) fail("eta1", "must be in (0, 1]");
  if (!(p.eta2 > 0.0) || p.eta2 > 1.0) fail("eta2", "must be in (0, 1]");
  if (p.enthalpy < 0.0) fail("enthalpy", "must be >= 0");
  if (!(p.ore_mass > 0.0)) fail("mass", "must be > 0");
  if (p.currency_velocity < 0.0) fail("velocity", "must be >= 0");
  if (!(p.prices.earth > 0.0)) fail("pi_earth", "must be > 0");
  if (!(p.prices.helio > 0.0)) fail("pi_helio", "must be > 0");
}

MissionCost mission_cost(const MissionProfile& p) {
  validate(p);
  MissionCost out;
  if (p.quadratic_energy) {
    out.transport = 0.5 * p.launch_dv * p.launch_dv + 0.5 * p.rendezvous_dv * p.rendezvous_dv;
  } else {
    out.transport = p.launch_dv + p.rendezvous_dv;
  }
  out.refinement = p.beneficiation_energy / (p.grade * p.eta1) + p.enthalpy / p.eta2;
  out.total = 2.0 * out.transport + out.refinement;
  return out;
}

MissionRevenue mission_profit(const MissionProfile& p) {
  MissionCost cost = mission_cost(p);
  MissionRevenue out;
  out.revenue = 0.5 * p.ore_mass * p.currency_velocity * p.currency_velocity;
  if (p.price_differential) {
    out.revenue *= (p.prices.earth - p.prices.helio) / p.prices.earth;
  }
  out.profit = out.revenue - cost.total;
  return out;
}

double depletion_years(const DepletionScenario& s) {
  if (!(s.static_index > 0.0)) {
    throw std::invalid_argument("depletion: static index must be > 0");
  }
  if (s.growth < 0.0) throw std::invalid_argument("depletion: growth must be >= 0");
  if (s.growth == 0.0) return s.static_index;
  return std::log1p(s.growth * s.static_index) / std::log1p(s.growth);
}

const DepletionTable& DepletionTable::builtin() {
  static const DepletionTable table = [] {
    nlohmann::json doc = nlohmann::json::parse(resources::kDepletionTableJson);
    std::vector<DepletionRow> rows;
    for (const auto& e : doc.at("elements")) {
      DepletionRow row;
      row.element = e.at("element").get<std::string>();
      row.resource_base = e.at("resourceBase").get<double>();
      row.static_index = e.at("staticIndex").get<double>();
      row.years_2pc = e.at("years2").get<double>();
      row.years_5pc = e.at("years5").get<double>();
      row.years_10pc = e.at("years10").get<double>();
      if (!e.at("exponential").is_null()) {
        row.exponential_years = e.at("exponential").get<double>();
      }
      row.avg_growth_1947_1974 = e.at("avgGrowth").get<double>();
      row.anomalous = e.at("anomalous").get<bool>();
      if (e.contains("anomalousCells")) {
        row.anomalous_cells = e.at("anomalousCells").get<std::vector<std::string>>();
      }
      rows.push_back(std::move(row));
    }
    return DepletionTable(std::move(rows));
  }();
  return table;
}

bool DepletionRow::cell_anomalous(const std::string& cell) const {
  return std::find(anomalous_cells.begin(), anomalous_cells.end(), cell) !=
         anomalous_cells.end();
}

const DepletionRow* DepletionTable::find(const std::string& element) const {
  std::string k = lower(element);
  for (const DepletionRow& r : rows_) {
    if (lower(r.element) == k) return &r;
  }
  return nullptr;
}

std::vector<std::string> DepletionTable::element_names() const {
  std::vector<std::string> out;
  for (const DepletionRow& r : rows_) out.push_back(r.element);
  return out;
}

GrowthStats growth_stats(const std::vector<std::pair<int, double>>& series,
                         const std::set<int>& excluded_years) {
  std::vector<double> xs;
  for (const auto& [year, value] : series) {
    if (!excluded_years.count(year)) xs.push_back(value);
  }
  if (xs.empty()) throw std::invalid_argument("growth_stats: series empty after exclusions");
  GrowthStats out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double acc = 0.0;
    for (double x : xs) acc += (x - out.mean) * (x - out.mean);
    out.variance = acc / static_cast<double>(xs.size() - 1);
  }
  return out;
}

const std::vector<std::pair<int, double>>& platinum_series() {
  static const std::vector<std::pair<int, double>> series = [] {
    nlohmann::json doc = nlohmann::json::parse(resources::kPlatinumConsumptionJson);
    std::vector<std::pair<int, double>> out;
    for (const auto& e : doc.at("series")) {
      out.emplace_back(e.at("year").get<int>(), e.at("change").get<double>());
    }
    return out;
  }();
  return series;
}

}  // namespace helio
