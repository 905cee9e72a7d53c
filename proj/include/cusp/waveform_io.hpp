#ifndef CUSP_WAVEFORM_IO_HPP
#define CUSP_WAVEFORM_IO_HPP

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cusp/shaper.hpp"

namespace cusp {

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_real(const std::string& tok, std::size_t line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                             ": bad value '" + tok + "'");
  }
}

inline std::int64_t parse_int(const std::string& tok, std::size_t line_no) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                             ": bad integer '" + tok + "'");
  }
}

template <typename T>
T parse_sample(const std::string& tok, std::size_t line_no) {
  if constexpr (std::is_integral_v<T>)
    return parse_int(tok, line_no);
  else
    return parse_real(tok, line_no);
}

inline std::string format_sample(std::int64_t v) { return std::to_string(v); }

inline std::string format_sample(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

/// Load a waveform from a `n,value` CSV. Throws with a line number on
/// malformed rows, and rejects files without samples.
template <typename T>
Waveform<T> load_waveform(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  Waveform<T> w;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = detail::trim(line);
    if (t.empty()) continue;
    if (line_no == 1) {
      if (t != "n,value")
        throw std::runtime_error("parse error at line 1: expected header 'n,value'");
      continue;
    }
    auto comma = t.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                               ": expected 'n,value'");
    w.samples.push_back(detail::parse_sample<T>(detail::trim(t.substr(comma + 1)), line_no));
  }
  if (w.samples.empty()) throw std::runtime_error("'" + path + "': no samples");
  return w;
}

template <typename T>
void save_waveform(const Waveform<T>& w, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "n,value\n";
  for (std::size_t n = 0; n < w.samples.size(); ++n)
    out << n << ',' << detail::format_sample(w.samples[n]) << '\n';
  if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

/// Load an event set: either a directory of per-event `n,value` CSVs
/// (sorted by filename) or a single `event_id,n,value` CSV.
inline std::vector<RealWaveform> load_events(const std::string& path) {
  namespace fs = std::filesystem;
  std::vector<RealWaveform> events;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(path))
      if (e.is_regular_file() && e.path().extension() == ".csv")
        files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) events.push_back(load_waveform<double>(f.string()));
    if (events.empty()) throw std::runtime_error("'" + path + "': no event files");
    return events;
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::map<std::string, RealWaveform> by_id;
  std::vector<std::string> order;  // event ids in first-appearance order
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = detail::trim(line);
    if (t.empty()) continue;
    if (line_no == 1) {
      if (t != "event_id,n,value")
        throw std::runtime_error("parse error at line 1: expected header 'event_id,n,value'");
      continue;
    }
    std::stringstream ss(t);
    std::string id, n_tok, v_tok;
    if (!std::getline(ss, id, ',') || !std::getline(ss, n_tok, ',') ||
        !std::getline(ss, v_tok))
      throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                               ": expected 'event_id,n,value'");
    if (by_id.find(id) == by_id.end()) order.push_back(id);
    by_id[id].samples.push_back(detail::parse_real(detail::trim(v_tok), line_no));
  }
  if (order.empty()) throw std::runtime_error("'" + path + "': no samples");
  for (const auto& id : order) events.push_back(std::move(by_id[id]));
  return events;
}

inline void save_events(const std::vector<RealWaveform>& events, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "event_id,n,value\n";
  for (std::size_t e = 0; e < events.size(); ++e)
    for (std::size_t n = 0; n < events[e].samples.size(); ++n)
      out << e << ',' << n << ',' << detail::format_sample(events[e].samples[n]) << '\n';
  if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

}  // namespace cusp

#endif  // CUSP_WAVEFORM_IO_HPP
