#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hcube/counterexamples.hpp"
#include "hcube/cube_function.hpp"
#include "hcube/inequality.hpp"

namespace hcube {

/// Build identifier, e.g. "hcube 0.4.0".
std::string version_string();

/// {"n": n, "basis": "walsh-bitmask-le", "coeffs": [...]}
std::string to_json(const CubeFunction& f);
/// Throws std::invalid_argument on a malformed document or a basis other
/// than walsh-bitmask-le.
CubeFunction cube_function_from_json(std::string_view text);

/// {"n": n, "v": [...]} with n + 1 entries.
std::string to_json(const RadialProfile& v);
RadialProfile radial_profile_from_json(std::string_view text);

/// Header inequality_id,n,p,q,a_or_gamma,t,lhs,rhs,ratio,mode,seed then one
/// line per report. Doubles are written with 17 significant digits.
std::string reports_to_csv(std::span<const RatioReport> rows);
/// Array of objects with the same keys as the CSV columns.
std::string reports_to_json(std::span<const RatioReport> rows);

/// Header "n,value" then (abscissa, ordinate) pairs.
std::string growth_curve_csv(const GrowthCurve& g);
/// {"slope": .., "intercept": .., "residual": ..}
std::string growth_fit_json(const GrowthCurve& g);

/// Counterexample rows: name,n,p,s,lhs,rhs,ratio.
std::string counterexamples_to_csv(std::span<const CounterexampleReport> rows);
std::string counterexamples_to_json(std::span<const CounterexampleReport> rows);

/// Deterministic rendering of a double ("inf", "-inf", "nan" for non-finite).
std::string format_double(double x);

/// One cell of a result row.
using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t>;
using Row = std::vector<std::pair<std::string, Cell>>;

std::string format_cell(const Cell& c);

/// Row with the sweep CSV columns.
Row report_row(const RatioReport& r);

struct ExperimentRecord {
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  /// Each row is an ordered list of (column, value) pairs.
  std::vector<Row> rows;
  /// Aggregates (maxima, fits, verdicts); JSON only.
  Row summary;
  std::uint64_t seed = 0;
  std::string version = version_string();
  /// Only serialized when set; leave empty for byte-identical reruns.
  std::optional<double> wall_time_seconds;

  std::string to_json() const;
  /// Header from the first row's columns, then one line per row.
  std::string to_csv() const;
};

}  // namespace hcube
