#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace specpert {

enum class TheoremId {
  ShiftI,        ///< spectrum enclosure in U_{delta_V}(spec A)
  ShiftII,       ///< gap persistence in O_{d/2}(sigma)
  ShiftIII,      ///< gap persistence in O_d(sigma), hull-separated layout
  Main,          ///< pi/2 bound under ||V|| < c_pi d
  Case2,         ///< sin-arctan bound under ||V|| < sqrt(2) d
  Subordinated,  ///< sin(arctan(2||V||/d)/2) bound
  TanTheta,      ///< a posteriori tan-theta bound
  Mce,           ///< dist * ||E_A E_B|| <= c ||A - B||
  ShiftBounds,   ///< inf/sup shifts with directional deltas
};

inline constexpr TheoremId kAllTheorems[] = {
    TheoremId::ShiftI, TheoremId::ShiftII,      TheoremId::ShiftIII, TheoremId::Main,       TheoremId::Case2,
    TheoremId::Subordinated, TheoremId::TanTheta, TheoremId::Mce,    TheoremId::ShiftBounds};

std::string to_string(TheoremId id);
/// Accepts the canonical upper-case names and their lower-case forms.
TheoremId theorem_from_string(std::string_view name);

struct Witness {
  std::string name;
  double value = 0.0;
};

/// What a theorem claims for a concrete problem and what was measured.
struct AnalysisReport {
  TheoremId theorem = TheoremId::ShiftI;
  bool premise_satisfied = true;
  /// Distance to the premise threshold; positive when the premise holds.
  double premise_margin = 0.0;
  double claimed_bound = 0.0;
  double measured_value = 0.0;
  bool holds = true;
  std::vector<Witness> witnesses;
  std::vector<std::string> flags;

  /// A bound failed although its premise held.
  bool violated() const noexcept { return premise_satisfied && !holds; }
  double margin() const noexcept { return claimed_bound - measured_value; }

  std::optional<double> witness(std::string_view name) const;
  bool has_flag(std::string_view flag) const;

  void add(std::string name, double value) { witnesses.push_back({std::move(name), value}); }
  void flag(std::string name);
};

}  // namespace specpert
