#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kgz::harness {

/// One (eps, h, tau) experiment measured at time t.
struct ErrorRow {
  double eps = 0.0;
  double h = 0.0;
  double tau = 0.0;
  double t = 0.0;
  double e_err = 0.0;
  double n_err = 0.0;
  std::optional<double> rate_e;
  std::optional<double> rate_n;
  std::string error;  ///< non-empty when the run failed; errors are then NaN

  friend bool operator==(const ErrorRow&, const ErrorRow&) = default;
};

struct RateTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<ErrorRow> rows;

  /// Sorts rows by (eps desc, h desc, tau desc) and fills the rates between
  /// consecutive rows of the same eps that differ by a factor of two in
  /// exactly one of h and tau.
  void finalize();

  /// Rows with the given eps, in table order.
  std::vector<ErrorRow> rows_for(double eps) const;

  friend bool operator==(const RateTable&, const RateTable&) = default;
};

/// Six significant digits, scientific, locale independent.
std::string format_value(double v);

/// `# key: value` metadata lines, an `# error:` line per failed row, then
/// the header `eps,h,tau,t,e_err,n_err,rate_e,rate_n` and one line per row.
std::string to_csv(const RateTable& table);
RateTable parse_csv(std::string_view text);

/// Writes `contents` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace kgz::harness
