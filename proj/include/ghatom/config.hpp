#pragma once

#include <fstream>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "params.hpp"

namespace ghatom {

// Runtime settings assembled from a config file and/or CLI flags.
struct Settings {
  ScaledParams params;
  double fd_rel_step = 1e-6;
  double sigma_k = -1.0;  // < 0: use the 0.005 k default at point of use
  int modes = 64;

  double packet_sigma() const {
    return sigma_k > 0.0 ? sigma_k : 0.005 * params.k;
  }
};

namespace detail {
inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}
}  // namespace detail

// Plain `key = value` file, `#` comments.  Recognized keys: gamma, Delta,
// Omega, k, kL, L, theta_deg, fd_rel_step, sigma_k, modes.
inline void load_config(const std::string& path, Settings& s) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    double x = 0.0;
    try {
      x = std::stod(val);
    } catch (...) {
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": bad number '" + val + "'");
    }
    if (key == "gamma")
      s.params.gamma = x;
    else if (key == "Delta")
      s.params.delta_L = x;
    else if (key == "Omega")
      s.params.omega = x;
    else if (key == "k")
      s.params.k = x;
    else if (key == "kL")
      s.params.k_L = x;
    else if (key == "L")
      s.params.L = x;
    else if (key == "theta_deg")
      s.params.theta = x * std::numbers::pi / 180.0;
    else if (key == "fd_rel_step")
      s.fd_rel_step = x;
    else if (key == "sigma_k")
      s.sigma_k = x;
    else if (key == "modes")
      s.modes = static_cast<int>(x);
    else
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": unknown key '" + key + "'");
  }
}

}  // namespace ghatom
