// CSV writers for series, windows, amplitudes and reports. Numbers use 9
// significant digits via std::to_chars, so output does not depend on locale.

#pragma once

#include "qscissors/reconciliation.hpp"
#include "qscissors/rwa.hpp"
#include "qscissors/squeezing.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace qscissors {

inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  if (res.ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, res.ptr);
}

inline std::string series_csv(const VarianceSeries& s) {
  std::string out = "t_us";
  for (std::size_t p = 0; p < s.modes(); ++p) out += ",dX2_" + std::to_string(p + 1);
  for (std::size_t p = 0; p < s.modes(); ++p) out += ",dY2_" + std::to_string(p + 1);
  out += '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += format_number(s.times_us[i]);
    for (std::size_t p = 0; p < s.modes(); ++p) out += ',' + format_number(s.dX2[p][i]);
    for (std::size_t p = 0; p < s.modes(); ++p) out += ',' + format_number(s.dY2[p][i]);
    out += '\n';
  }
  return out;
}

inline std::string windows_csv(const std::vector<SqueezingWindow>& windows) {
  std::string out = "mode,quadrature,t_start_us,t_end_us,t_min_us,v_min\n";
  for (const auto& w : windows) {
    out += std::to_string(w.mode + 1) + ',' + quadrature_name(w.quadrature) + ',' + format_number(w.t_start_us) + ',' +
           format_number(w.t_end_us) + ',' + format_number(w.t_min_us) + ',' + format_number(w.v_min) + '\n';
  }
  return out;
}

inline std::string occupation_label(const Occupation& occ, std::size_t cutoff) {
  std::string s;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (cutoff > 9 && i > 0) s += '-';
    s += std::to_string(occ[i]);
  }
  return s;
}

/// One row per time: t_us, then re/im of every basis amplitude.
inline std::string amplitudes_csv(const std::vector<double>& times_us, const std::vector<StateVector>& states) {
  if (times_us.size() != states.size()) throw std::invalid_argument("amplitudes_csv: length mismatch");
  std::string out = "t_us";
  if (!states.empty()) {
    const FockBasis& b = states.front().basis();
    for (std::size_t j = 0; j < b.dimension(); ++j) {
      const std::string label = occupation_label(b.occupation(j), b.cutoff());
      out += ",re_" + label + ",im_" + label;
    }
  }
  out += '\n';
  for (std::size_t i = 0; i < states.size(); ++i) {
    out += format_number(times_us[i]);
    const Vector& c = states[i].amplitudes();
    for (Eigen::Index j = 0; j < c.size(); ++j)
      out += ',' + format_number(c(j).real()) + ',' + format_number(c(j).imag());
    out += '\n';
  }
  return out;
}

inline std::string rwa_csv(const std::vector<RwaReport>& reports) {
  std::string out =
      "chi_ratio,max_leakage,max_amplitude_deviation,horizon_us,max_top_level_population,cutoff_insufficient\n";
  for (const auto& r : reports) {
    out += format_number(r.chi_ratio) + ',' + format_number(r.max_leakage) + ',' +
           format_number(r.max_amplitude_deviation) + ',' + format_number(r.horizon_us) + ',' +
           format_number(r.max_top_level_population) + ',' + (r.cutoff_insufficient ? "1" : "0") + '\n';
  }
  return out;
}

inline std::string reconciliation_csv(const std::vector<ReconciliationEntry>& entries) {
  std::string out =
      "model,expression,status,max_dev_as_printed,term,printed_coefficient,fitted_coefficient,max_dev_fitted\n";
  for (const auto& e : entries) {
    out += e.model + ',' + e.expression + ',' + status_name(e.status) + ',' + format_number(e.max_dev_as_printed) +
           ",\"" + e.term + "\"," + format_number(e.printed_coefficient) + ',' + format_number(e.fitted_coefficient) +
           ',' + format_number(e.max_dev_fitted) + '\n';
  }
  return out;
}

/// Writes `content` to a sibling temp file and renames it over `path`.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << content;
    os.flush();
    if (!os) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place at " + path.string());
  }
}

/// Parses a series CSV written by series_csv.
inline VarianceSeries read_series_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_series_csv: empty input");
  const std::size_t columns = std::count(line.begin(), line.end(), ',') + 1;
  if (columns < 3 || (columns - 1) % 2 != 0) throw std::runtime_error("read_series_csv: bad header");
  const std::size_t modes = (columns - 1) / 2;
  VarianceSeries s;
  s.dX2.assign(modes, {});
  s.dY2.assign(modes, {});
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t next = std::min(line.find(',', pos), line.size());
      double v = 0.0;
      const auto res = std::from_chars(line.data() + pos, line.data() + next, v);
      if (res.ec != std::errc{}) throw std::runtime_error("read_series_csv: bad number in line: " + line);
      row.push_back(v);
      pos = next + 1;
    }
    if (row.size() != columns) throw std::runtime_error("read_series_csv: wrong column count");
    s.times_us.push_back(row[0]);
    for (std::size_t p = 0; p < modes; ++p) {
      s.dX2[p].push_back(row[1 + p]);
      s.dY2[p].push_back(row[1 + modes + p]);
    }
  }
  return s;
}

}  // namespace qscissors
