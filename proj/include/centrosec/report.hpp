#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "centrosec/solver.hpp"

namespace centrosec {

inline constexpr const char* kReportSchema = "centrosec.report/1";

/// Round to 12 significant digits; -0 becomes 0.
double round_sig(double v, int digits = 12);

nlohmann::ordered_json to_json(const Vec& v);
nlohmann::ordered_json to_json(const ConvexBody& body);
nlohmann::ordered_json to_json(const SolverConfig& cfg);
nlohmann::ordered_json to_json(const TheoremReport& report);

/// Stable serialization: fixed field order, 12 significant digits, 2-space
/// indent, trailing newline.
std::string report_json_string(const TheoremReport& report);

/// n = 2 only: K, L, the two tangent lines of every pair and one centroid
/// marker per pair.
std::string report_svg(const TheoremReport& report);

/// RFC 4180 CSV writer.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& os_;
};

/// Fixed 12-significant-digit text for a double.
std::string format_number(double v);

}  // namespace centrosec
