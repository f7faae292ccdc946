#ifndef HELIO_ASTRO_HPP
#define HELIO_ASTRO_HPP

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace helio {

struct TransferEntry {
  std::string name;   // full published description
  std::string alias;  // short form, e.g. "LEO→NEA"
  double dv = 0.0;    // km/s
};

// The bundled table of mission energy requirements.
class DeltaVTable {
 public:
  static const DeltaVTable& builtin();

  const std::vector<TransferEntry>& entries() const { return entries_; }
  // Lookup by full name or alias; "->" is accepted for the arrow. Throws
  // std::out_of_range listing the valid names.
  double lookup(const std::string& key) const;
  bool contains(const std::string& key) const;
  std::vector<std::string> names() const;

  explicit DeltaVTable(std::vector<TransferEntry> entries) : entries_(std::move(entries)) {}

 private:
  std::vector<TransferEntry> entries_;
};

struct PriceVector {
  double earth = 1.0;
  double helio = 1.0;
};

struct MissionProfile {
  double launch_dv = 0.0;              // U_l
  double rendezvous_dv = 0.0;          // U_r
  double beneficiation_energy = 0.0;   // E_0
  double grade = 1.0;                  // g in (0, 1]
  double eta1 = 1.0;                   // beneficiation efficiency in (0, 1]
  double eta2 = 1.0;                   // smelting efficiency in (0, 1]
  double enthalpy = 0.0;               // dH >= 0
  double ore_mass = 1.0;               // m > 0
  double currency_velocity = 0.0;      // v >= 0
  PriceVector prices;
  bool quadratic_energy = false;       // convert each dv via e = dv^2 / 2
  bool price_differential = false;     // scale revenue by (pi_e - pi_h) / pi_e
};

// Throws std::invalid_argument naming the offending field.
void validate(const MissionProfile& p);

struct MissionCost {
  double transport = 0.0;   // F_t
  double refinement = 0.0;  // F_r
  double total = 0.0;       // C = 2 F_t + F_r
};

MissionCost mission_cost(const MissionProfile& p);

struct MissionRevenue {
  double revenue = 0.0;  // R = m v^2 / 2 (optionally differential-scaled)
  double profit = 0.0;   // R - C
};

MissionRevenue mission_profit(const MissionProfile& p);

struct DepletionScenario {
  double static_index = 0.0;  // resource base over current annual consumption
  double growth = 0.0;        // annual consumption growth rate >= 0
};

// Years until a geometrically growing consumption exhausts the base:
// static_index at zero growth, ln(1 + g S) / ln(1 + g) otherwise.
double depletion_years(const DepletionScenario& s);

struct DepletionRow {
  std::string element;
  double resource_base = 0.0;
  double static_index = 0.0;  // the 0% column
  double years_2pc = 0.0;
  double years_5pc = 0.0;
  double years_10pc = 0.0;
  std::optional<double> exponential_years;
  double avg_growth_1947_1974 = 0.0;
  bool anomalous = false;  // whole row inconsistent with the depletion formula
  std::vector<std::string> anomalous_cells;  // e.g. {"years10"}

  bool cell_anomalous(const std::string& cell) const;
};

class DepletionTable {
 public:
  static const DepletionTable& builtin();

  const std::vector<DepletionRow>& rows() const { return rows_; }
  const DepletionRow* find(const std::string& element) const;  // case-insensitive
  std::vector<std::string> element_names() const;

  explicit DepletionTable(std::vector<DepletionRow> rows) : rows_(std::move(rows)) {}

 private:
  std::vector<DepletionRow> rows_;
};

struct GrowthStats {
  double mean = 0.0;
  double variance = 0.0;  // sample variance, n-1 denominator
};

// Mean and sample variance of the decimal-fraction series after dropping the
// excluded years. Throws std::invalid_argument when nothing remains.
GrowthStats growth_stats(const std::vector<std::pair<int, double>>& series,
                         const std::set<int>& excluded_years = {});

// Yearly platinum consumption changes (decimal fractions) from the bundled
// resource.
const std::vector<std::pair<int, double>>& platinum_series();

}  // namespace helio

#endif  // HELIO_ASTRO_HPP
