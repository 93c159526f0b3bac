#pragma once

#include "altproj/angles.hpp"
#include "altproj/diagnostics.hpp"
#include "altproj/dynamics.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace altproj::io {

using json = nlohmann::json;

// SystemFile: {"dim": d, "subspaces": [{"name": s, "vectors": [[...], ...]}, ...]}
// Vectors are spanning sets given as rows of length d.

SubspaceSystem system_from_json(const json& doc, const TolerancePolicy& tol = {});
SubspaceSystem read_system(const std::string& path, const TolerancePolicy& tol = {});
/// Basis columns become the "vectors" rows.
json system_to_json(const SubspaceSystem& system);

json to_json(const AngleReport& report);
json to_json(const InclinationEstimate& est);
json to_json(const BoundEntry& entry);
json to_json(const BoundReport& report);
json to_json(const DichotomyVerdict& verdict);

/// Shortest decimal that round-trips the double.
std::string format_double(double v);

/// CSV with header "n,measured[,bound...]".
void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace);
void write_trace_csv(const std::string& path, const ConvergenceTrace& trace);

/// Comma/whitespace separated numbers.
std::vector<double> parse_number_list(const std::string& text);
std::vector<double> read_number_file(const std::string& path);

}  // namespace altproj::io
