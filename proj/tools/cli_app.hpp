#pragma once

// Command-line front end: worked-example tables, seeded verification
// campaigns and the smoothing-integral check.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "smallnum/bound_report.hpp"

namespace smallnum::cli {

enum class Format { Table, Json, Csv };

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// False when any asserted ordering in the table fails.
  bool all_hold = true;

  double number(std::size_t row, std::string_view column) const;
};

std::string render(const Table& t, Format f);
std::string render(const std::vector<BoundReport>& reports, Format f);

/// Rows per n: exact TV of Binomial(n, lambda/n) against Po(lambda), the
/// Pinsker-transformed Bernoulli-sum divergence bound, (2 + eps) lambda/n with eps = lambda/n,
/// the 2 lambda/sqrt(n) comparison value and sqrt(2 sum p_i^2).
Table example1_table(double lambda, std::span<const std::size_t> ns);

/// Rows per n: exact TV of Binomial(n, mu/sqrt n) against Po(mu sqrt n), the
/// divergence bound passed through Pinsker, its asymptote mu sqrt(2/n) and the reference
/// rate mu/sqrt(n) sqrt(1/(2 pi e)).
Table example2_table(double mu, std::span<const std::size_t> ns);

/// Equal q_i = n/(n + lambda) for each n.
Table example3_table(double lambda, std::span<const std::size_t> ns);

/// Explicit list of geometric parameters (one row).
Table example3_table(std::span<const double> qs);

Table markov_table(std::span<const std::size_t> ns);

/// Parses argv and runs the selected subcommand. Exit codes: 0 success,
/// 1 a reported inequality failed, 2 configuration or usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace smallnum::cli
