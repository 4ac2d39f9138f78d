#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace smallnum {

using ParamValue =
    std::variant<double, std::int64_t, bool, std::string, std::vector<double>>;

/// One checked inequality lhs <= rhs (+ tolerance). `slack` is kept even when
/// negative so failures show by how much they missed. A chained check
/// lhs <= intermediate <= rhs holds only when both links do.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<double> intermediate;
  double slack = 0.0;
  bool holds = false;
  double tolerance = 0.0;
  /// Inputs and intermediate values, in insertion order.
  std::vector<std::pair<std::string, ParamValue>> params;

  static BoundReport make(std::string name, double lhs, double rhs,
                          double tolerance);
  static BoundReport make_chain(std::string name, double lhs,
                                double intermediate, double rhs,
                                double tolerance);

  BoundReport& with(std::string key, ParamValue value);
  const ParamValue* param(std::string_view key) const;
  double param_number(std::string_view key) const;

  /// Re-evaluates `holds` under a different tolerance.
  void retolerate(double tolerance);
};

/// Doubles print with 17 significant digits; non-finite values become the
/// strings "inf", "-inf" or "nan".
std::string format_number(double x);
std::string json_quote(std::string_view s);
std::string param_to_json(const ParamValue& v);

std::string to_json(const BoundReport& report);
std::string to_json(const std::vector<BoundReport>& reports);

std::string csv_header();
/// Params are packed into one quoted JSON-object column.
std::string to_csv_row(const BoundReport& report);

}  // namespace smallnum
