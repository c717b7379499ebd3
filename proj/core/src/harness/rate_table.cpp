#include "kgz/harness/rate_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "kgz/errors.hpp"
#include "kgz/harness/metrics.hpp"

namespace kgz::harness {

namespace {

constexpr std::string_view kHeader = "eps,h,tau,t,e_err,n_err,rate_e,rate_n";
constexpr std::string_view kRowErrorKey = "row-error ";

bool halves(double coarse, double fine) {
  return std::abs(coarse / fine - 2.0) < 1e-9;
}

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

double parse_double(std::string_view s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParameterError("malformed number in CSV: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

void RateTable::finalize() {
  std::stable_sort(rows.begin(), rows.end(), [](const ErrorRow& x, const ErrorRow& y) {
    if (x.eps != y.eps) return x.eps > y.eps;
    if (x.h != y.h) return x.h > y.h;
    return x.tau > y.tau;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ErrorRow& row = rows[i];
    row.rate_e.reset();
    row.rate_n.reset();
    if (i == 0) continue;
    const ErrorRow& prev = rows[i - 1];
    if (prev.eps != row.eps) continue;
    const bool space = halves(prev.h, row.h) && same(prev.tau, row.tau);
    const bool time = halves(prev.tau, row.tau) && same(prev.h, row.h);
    if (!space && !time) continue;
    row.rate_e = convergence_rate(prev.e_err, row.e_err);
    row.rate_n = convergence_rate(prev.n_err, row.n_err);
  }
}

std::vector<ErrorRow> RateTable::rows_for(double eps) const {
  std::vector<ErrorRow> out;
  for (const auto& r : rows) {
    if (r.eps == eps) out.push_back(r);
  }
  return out;
}

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 5);
  if (ec != std::errc()) throw NumericalError("failed to format value");
  return std::string(buf, ptr);
}

std::string to_csv(const RateTable& table) {
  std::ostringstream os;
  for (const auto& [key, value] : table.metadata) os << "# " << key << ": " << value << '\n';
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (!table.rows[i].error.empty()) {
      os << "# " << kRowErrorKey << i << ": " << table.rows[i].error << '\n';
    }
  }
  os << kHeader << '\n';
  for (const auto& r : table.rows) {
    os << format_value(r.eps) << ',' << format_value(r.h) << ',' << format_value(r.tau) << ','
       << format_value(r.t) << ',' << format_value(r.e_err) << ',' << format_value(r.n_err)
       << ',' << (r.rate_e ? format_value(*r.rate_e) : "") << ','
       << (r.rate_n ? format_value(*r.rate_n) : "") << '\n';
  }
  return os.str();
}

RateTable parse_csv(std::string_view text) {
  RateTable table;
  std::vector<std::pair<std::size_t, std::string>> errors;
  bool header_seen = false;
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      line.remove_prefix(std::min<std::size_t>(2, line.size()));
      const auto colon = line.find(": ");
      if (colon == std::string_view::npos) throw ParameterError("malformed CSV metadata line");
      const std::string key(line.substr(0, colon));
      const std::string value(line.substr(colon + 2));
      if (key.starts_with(kRowErrorKey)) {
        errors.emplace_back(std::stoul(key.substr(kRowErrorKey.size())), value);
      } else {
        table.metadata.emplace_back(key, value);
      }
      continue;
    }
    if (!header_seen) {
      if (line != kHeader) throw ParameterError("unexpected CSV header: " + std::string(line));
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 8) throw ParameterError("CSV row must have 8 fields");
    ErrorRow r;
    r.eps = parse_double(f[0]);
    r.h = parse_double(f[1]);
    r.tau = parse_double(f[2]);
    r.t = parse_double(f[3]);
    r.e_err = parse_double(f[4]);
    r.n_err = parse_double(f[5]);
    if (!f[6].empty()) r.rate_e = parse_double(f[6]);
    if (!f[7].empty()) r.rate_n = parse_double(f[7]);
    table.rows.push_back(std::move(r));
  }
  if (!header_seen) throw ParameterError("CSV has no header line");
  for (auto& [index, message] : errors) {
    if (index >= table.rows.size()) throw ParameterError("row-error refers to a missing row");
    table.rows[index].error = std::move(message);
  }
  return table;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParameterError("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw ParameterError("failed to write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace kgz::harness
