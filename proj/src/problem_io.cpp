#include "specpert/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <regex>

#include "specpert/analysis.hpp"
#include "specpert/errors.hpp"

namespace specpert {

namespace {

std::string at(const std::string& key, std::size_t i, std::size_t j) {
  return key + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

Complex entry_from_json(const Json& e, const std::string& where) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw ValidationError(where + ": expected a number or [re, im]");
}

Tolerances tolerances_from_json(const Json& j, double tol_scale) {
  Tolerances tol;
  if (!j.is_null()) {
    if (!j.is_object()) throw ValidationError("tolerances: expected an object");
    for (const auto& [name, value] : j.items()) {
      const double x = number_from_json(value, "tolerances." + name);
      if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError("tolerances." + name + ": must be positive");
      if (name == "scale") tol.scale = x;
      else if (name == "base") tol.base = x;
      else if (name == "offdiag") tol.offdiag = x;
      else if (name == "report") tol.report = x;
      else if (name == "conv") tol.conv = x;
      else throw ValidationError("tolerances: unknown field '" + name + "'");
    }
  }
  if (!(tol_scale > 0.0)) throw ValidationError("tolerance scale must be positive");
  tol.scale *= tol_scale;
  return tol;
}

HermitianMatrix hermitian_from_json(const Json& j, const std::string& key, const Tolerances& tol) {
  ComplexMatrix m = matrix_from_json(j, key);
  try {
    return HermitianMatrix(m, tol);
  } catch (const ValidationError& e) {
    throw ValidationError(key + ": " + e.what());
  }
}

}  // namespace

Json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf" || s == "+inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ValidationError(where + ": expected a number");
}

Json matrix_to_json(const ComplexMatrix& m) {
  const bool real = m.imag().isZero(0.0);
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (real) row.push_back(m(i, j).real());
      else row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& key) {
  if (!j.is_array() || j.empty()) throw ValidationError(key + ": expected a non-empty array of rows");
  const std::size_t n = j.size();
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = j[i];
    if (!row.is_array()) throw ValidationError(key + ": row " + std::to_string(i + 1) + " is not an array");
    if (row.size() != n)
      throw ValidationError(key + ": row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                            " entries, expected " + std::to_string(n));
    for (std::size_t c = 0; c < n; ++c) {
      const Complex z = entry_from_json(row[c], at(key, i, c));
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw ValidationError(at(key, i, c) + ": non-finite entry");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = z;
    }
  }
  return m;
}

Json set_to_json(const SpectralSet& s) {
  Json out = Json::array();
  for (const auto& iv : s.intervals()) {
    if (iv.lo == iv.hi) out.push_back(iv.lo);
    else out.push_back(Json::array({number_to_json(iv.lo), number_to_json(iv.hi)}));
  }
  return out;
}

SpectralSet set_from_json(const Json& j, const std::string& key) {
  if (!j.is_array()) throw ValidationError(key + ": expected a list of points or [lo, hi] intervals");
  std::vector<Interval> ivs;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = key + "[" + std::to_string(i + 1) + "]";
    const Json& e = j[i];
    if (e.is_array()) {
      if (e.size() != 2) throw ValidationError(where + ": interval needs exactly two endpoints");
      const double lo = number_from_json(e[0], where);
      const double hi = number_from_json(e[1], where);
      if (std::isnan(lo) || std::isnan(hi) || lo > hi) throw ValidationError(where + ": need lo <= hi");
      ivs.push_back({lo, hi});
    } else {
      const double x = number_from_json(e, where);
      if (!std::isfinite(x)) throw ValidationError(where + ": point must be finite");
      ivs.push_back({x, x});
    }
  }
  return SpectralSet::closed(std::move(ivs));
}

PerturbationProblem problem_from_json(const Json& j, double tol_scale) {
  if (!j.is_object()) throw ValidationError("problem file: expected an object");
  for (const char* key : {"A", "V", "sigma", "Sigma"})
    if (!j.contains(key)) throw ValidationError(std::string("problem file: missing key '") + key + "'");
  const Tolerances tol = tolerances_from_json(j.value("tolerances", Json()), tol_scale);
  HermitianMatrix A = hermitian_from_json(j["A"], "A", tol);
  HermitianMatrix V = hermitian_from_json(j["V"], "V", tol);
  return PerturbationProblem(std::move(A), std::move(V), set_from_json(j["sigma"], "sigma"),
                             set_from_json(j["Sigma"], "Sigma"), tol);
}

PerturbationProblem load_problem(const std::filesystem::path& path, double tol_scale) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  return problem_from_json(j, tol_scale);
}

Json problem_to_json(const PerturbationProblem& problem) {
  const Tolerances& t = problem.tolerances();
  Json j;
  j["A"] = matrix_to_json(problem.A().matrix());
  j["V"] = matrix_to_json(problem.V().matrix());
  j["sigma"] = set_to_json(problem.sigma());
  j["Sigma"] = set_to_json(problem.Sigma());
  const Tolerances defaults;
  if (t.scale != defaults.scale || t.base != defaults.base || t.offdiag != defaults.offdiag ||
      t.report != defaults.report || t.conv != defaults.conv)
    j["tolerances"] = {{"scale", t.scale}, {"base", t.base}, {"offdiag", t.offdiag}, {"report", t.report},
                       {"conv", t.conv}};
  return j;
}

void save_json(const Json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  // Innermost arrays (matrix rows, [re, im] pairs, intervals) on one line.
  static const std::regex innermost(R"(\[\s+([^\[\]{}]*?)\s+\])");
  static const std::regex spacing(R"(,\s+)");
  std::string text = j.dump(2);
  std::string compact;
  auto last = text.cbegin();
  for (std::sregex_iterator it(text.begin(), text.end(), innermost), end; it != end; ++it) {
    compact.append(last, (*it)[0].first);
    compact += "[" + std::regex_replace((*it)[1].str(), spacing, ", ") + "]";
    last = (*it)[0].second;
  }
  compact.append(last, text.cend());
  out << compact << '\n';
}

Json report_to_json(const AnalysisReport& r) {
  Json j;
  j["theorem"] = to_string(r.theorem);
  j["premise_satisfied"] = r.premise_satisfied;
  j["premise_margin"] = number_to_json(r.premise_margin);
  j["claimed_bound"] = number_to_json(r.claimed_bound);
  j["measured_value"] = number_to_json(r.measured_value);
  j["holds"] = r.holds;
  Json w = Json::array();
  for (const auto& x : r.witnesses) w.push_back({{"name", x.name}, {"value", number_to_json(x.value)}});
  j["witnesses"] = std::move(w);
  j["flags"] = r.flags;
  return j;
}

AnalysisReport report_from_json(const Json& j) {
  try {
    AnalysisReport r;
    r.theorem = theorem_from_string(j.at("theorem").get<std::string>());
    r.premise_satisfied = j.at("premise_satisfied").get<bool>();
    r.premise_margin = number_from_json(j.at("premise_margin"), "premise_margin");
    r.claimed_bound = number_from_json(j.at("claimed_bound"), "claimed_bound");
    r.measured_value = number_from_json(j.at("measured_value"), "measured_value");
    r.holds = j.at("holds").get<bool>();
    for (const auto& w : j.at("witnesses"))
      r.add(w.at("name").get<std::string>(), number_from_json(w.at("value"), "witness"));
    r.flags = j.at("flags").get<std::vector<std::string>>();
    return r;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("report: ") + e.what());
  }
}

Json analysis_to_json(const PerturbationProblem& problem, const std::vector<AnalysisReport>& reports) {
  Json j;
  j["problem"] = {{"dim", problem.dim()},
                  {"case", to_string(problem.spectral_case())},
                  {"d", number_to_json(problem.gap())},
                  {"norm_v", number_to_json(problem.norm_v())},
                  {"delta_v", number_to_json(delta_v(problem.norm_v(), problem.gap()))},
                  {"spec_B", problem.eig_B().values()}};
  for (const auto& r : reports) j[to_string(r.theorem)] = report_to_json(r);
  return j;
}

}  // namespace specpert
