/*
 * signal_io.hpp - text exchange of signals.
 *
 *   samples:      index,x,re,im    (one row per grid point, in grid order)
 *   coefficients: j,re,im          (one row per stored frequency, ascending j)
 *
 * Values are written with 17 significant digits, which round-trips doubles.
 */
#ifndef FEJER_SIGNAL_IO_HPP
#define FEJER_SIGNAL_IO_HPP

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "fejer/error.hpp"
#include "fejer/experiments.hpp"
#include "fejer/spectral.hpp"

namespace fejer {

namespace detail {

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    fields.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return fields;
}

template <typename T>
T parse_number(std::string_view s, std::size_t line_no) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": cannot parse '" + std::string(s) + "'");
  return value;
}

inline std::vector<std::vector<std::string_view>> read_table(std::istream& in, std::string_view header,
                                                             std::vector<std::string>& storage) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParseError, "empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header)
    throw Error(ErrorCode::kParseError, "expected header '" + std::string(header) + "', got '" + line + "'");
  while (std::getline(in, line))
    if (!line.empty() && line != "\r") storage.push_back(line);
  std::vector<std::vector<std::string_view>> rows;
  rows.reserve(storage.size());
  for (const auto& s : storage) rows.push_back(split_csv(s));
  return rows;
}

}  // namespace detail

inline void write_signal_csv(std::ostream& out, const Signal& f) {
  out << "index,x,re,im\n";
  const auto s = f.samples();
  for (std::size_t i = 0; i < s.size(); ++i)
    out << i << ',' << format_double(f.grid().point(i)) << ',' << format_double(s[i].real()) << ','
        << format_double(s[i].imag()) << '\n';
}

/// Grid size is the row count; indices must run 0..M-1 in order.
inline Signal read_signal_csv(std::istream& in) {
  std::vector<std::string> storage;
  const auto rows = detail::read_table(in, "index,x,re,im", storage);
  if (rows.size() < 2) throw Error(ErrorCode::kParseError, "signal needs at least 2 rows");
  const SpectralGrid grid(rows.size());
  std::vector<cplx> samples(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 4) throw Error(ErrorCode::kParseError, "line " + std::to_string(r + 2) + ": expected 4 fields");
    if (detail::parse_number<std::size_t>(row[0], r + 2) != r)
      throw Error(ErrorCode::kParseError, "line " + std::to_string(r + 2) + ": index out of order");
    samples[r] = cplx(detail::parse_number<double>(row[2], r + 2), detail::parse_number<double>(row[3], r + 2));
  }
  return Signal::from_samples(grid, std::move(samples));
}

inline void write_coefficients_csv(std::ostream& out, const Signal& f) {
  out << "j,re,im\n";
  const auto& grid = f.grid();
  const std::int64_t top = grid.has_nyquist() ? static_cast<std::int64_t>(grid.size() / 2) : grid.max_frequency();
  for (std::int64_t j = -grid.max_frequency(); j <= top; ++j) {
    const auto c = f.coefficient(j);
    out << j << ',' << format_double(c.real()) << ',' << format_double(c.imag()) << '\n';
  }
}

/// Frequencies not listed are zero.
inline Signal read_coefficients_csv(std::istream& in, const SpectralGrid& grid) {
  std::vector<std::string> storage;
  const auto rows = detail::read_table(in, "j,re,im", storage);
  std::vector<cplx> coeffs(grid.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 3) throw Error(ErrorCode::kParseError, "line " + std::to_string(r + 2) + ": expected 3 fields");
    const auto j = detail::parse_number<std::int64_t>(row[0], r + 2);
    if (!grid.stores(j))
      throw Error(ErrorCode::kAliasingRisk, "line " + std::to_string(r + 2) + ": frequency outside grid");
    coeffs[grid.bin(j)] = cplx(detail::parse_number<double>(row[1], r + 2), detail::parse_number<double>(row[2], r + 2));
  }
  return Signal::from_coefficients(grid, std::move(coeffs));
}

}  // namespace fejer

#endif  // FEJER_SIGNAL_IO_HPP
