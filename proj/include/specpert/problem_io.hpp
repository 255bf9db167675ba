#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "specpert/problem.hpp"
#include "specpert/report.hpp"

namespace specpert {

using Json = nlohmann::ordered_json;

/// Problem files hold `A`, `V` (rows of numbers or [re, im] pairs), `sigma`,
/// `Sigma` (lists of points or [lo, hi] pairs, "inf"/"-inf" allowed) and an
/// optional `tolerances` object with fields named as in Tolerances.
///
/// Errors are ValidationError with the offending key and row/column.
PerturbationProblem problem_from_json(const Json& j, double tol_scale = 1.0);
PerturbationProblem load_problem(const std::filesystem::path& path, double tol_scale = 1.0);

/// Matrices are written as plain numbers when every entry is real.
Json problem_to_json(const PerturbationProblem& problem);
void save_json(const Json& j, const std::filesystem::path& path);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const std::string& key);
Json set_to_json(const SpectralSet& s);
SpectralSet set_from_json(const Json& j, const std::string& key);

/// Infinite and NaN values become the strings "inf", "-inf", "nan".
Json number_to_json(double x);
double number_from_json(const Json& j, const std::string& where);

Json report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const Json& j);

/// `problem` summary followed by one record per theorem, keyed by its id.
Json analysis_to_json(const PerturbationProblem& problem, const std::vector<AnalysisReport>& reports);

}  // namespace specpert
