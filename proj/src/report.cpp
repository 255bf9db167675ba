#include "specpert/report.hpp"

#include <algorithm>
#include <cctype>

#include "specpert/errors.hpp"

namespace specpert {

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::ShiftI: return "SHIFT_I";
    case TheoremId::ShiftII: return "SHIFT_II";
    case TheoremId::ShiftIII: return "SHIFT_III";
    case TheoremId::Main: return "MAIN";
    case TheoremId::Case2: return "CASE2";
    case TheoremId::Subordinated: return "SUBORDINATED";
    case TheoremId::TanTheta: return "TAN_THETA";
    case TheoremId::Mce: return "MCE";
    case TheoremId::ShiftBounds: return "SHIFT_BOUNDS";
  }
  return "?";
}

TheoremId theorem_from_string(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (TheoremId id : kAllTheorems)
    if (to_string(id) == upper) return id;
  throw DomainError("unknown theorem id '" + std::string(name) + "'");
}

std::optional<double> AnalysisReport::witness(std::string_view name) const {
  for (const auto& w : witnesses)
    if (w.name == name) return w.value;
  return std::nullopt;
}

bool AnalysisReport::has_flag(std::string_view f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

void AnalysisReport::flag(std::string name) {
  if (!has_flag(name)) flags.push_back(std::move(name));
}

}  // namespace specpert
