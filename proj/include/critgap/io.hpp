#pragma once

// Output helpers: round-trip CSV formatting, run manifests, grid dumps.
// Depends on nlohmann/json (json.hpp on the include path).

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "critgap/contours.hpp"

namespace critgap {

inline constexpr const char* kVersion = "1.0.0";

/// 17 significant digits: parses back to the same double.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_row(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += fmt17(values[i]);
  }
  return out;
}

/// Parse one CSV line of doubles; '#' lines and headers are the caller's job.
inline std::vector<double> parse_csv_row(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

/// Parameter echo written as "# key=value" lines at the top of CSV output.
/// Holds no wall-clock time so identical runs give identical bytes.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;

  void add(const std::string& k, const std::string& v) { params.emplace_back(k, v); }
  void add(const std::string& k, double v) { params.emplace_back(k, fmt17(v)); }

  std::string csv_header() const {
    std::string out = "# critgap " + command + " version=" + kVersion + "\n";
    for (const auto& [k, v] : params) out += "# " + k + "=" + v + "\n";
    return out;
  }

  nlohmann::json to_json(bool with_clock) const {
    nlohmann::json j;
    j["command"] = command;
    j["version"] = kVersion;
    nlohmann::json p = nlohmann::json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["parameters"] = p;
    if (with_clock) {
      const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
      j["wall_clock_utc"] = buf;
    }
    return j;
  }

  /// Writes FILE.manifest.json next to an output file.
  void write_sidecar(const std::string& file) const {
    std::ofstream out(file + ".manifest.json");
    out << to_json(true).dump(2) << "\n";
  }
};

/// Debug dump of a quadrature grid.
inline nlohmann::json grid_to_json(const QuadratureGrid& g) {
  nlohmann::json j;
  j["panel_count"] = g.panel_count;
  j["order"] = g.order;
  j["size"] = g.size();
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    nodes.push_back({{"re", g.nodes[i].real()},
                     {"im", g.nodes[i].imag()},
                     {"w_re", g.weights[i].real()},
                     {"w_im", g.weights[i].imag()},
                     {"label", to_string(g.labels[i])}});
  }
  j["nodes"] = nodes;
  return j;
}

}  // namespace critgap
