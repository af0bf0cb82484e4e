#include "ssfem/config.hpp"

#include "ssfem/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <istream>

namespace ssfem {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int r = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
  }
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double r = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  }
}

} // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "mesh") mesh = value;
  else if (key == "nx") nx = to_int(key, value);
  else if (key == "ny") ny = to_int(key, value);
  else if (key == "L") L = to_int(key, value);
  else if (key == "p_u") p_u = to_int(key, value);
  else if (key == "p_A") p_A = to_int(key, value);
  else if (key == "sigma") sigma = to_double(key, value);
  else if (key == "corr_length" || key == "b") corr_length = to_double(key, value);
  else if (key == "a") a = to_double(key, value);
  else if (key == "g0") g0 = to_double(key, value);
  else if (key == "f") f = to_double(key, value);
  else if (key == "tol") tol = to_double(key, value);
  else if (key == "det_tol") det_tol = to_double(key, value);
  else if (key == "level") level = to_int(key, value);
  else if (key == "out") out = value;
  else if (key == "vtk") vtk = value;
  else if (key == "cijk_out") cijk_out = value;
  else throw ConfigError("config: unknown key '" + key + "'");
}

void RunConfig::validate() const {
  if (mesh.empty() && (nx < 1 || ny < 1)) throw ConfigError("config: nx and ny must be >= 1");
  if (L < 1) throw ConfigError("config: L must be >= 1");
  if (p_u < 0) throw ConfigError("config: p_u must be >= 0");
  if (input_order() < 0) throw ConfigError("config: p_A must be >= 0");
  if (!(sigma >= 0.0)) throw ConfigError("config: sigma must be >= 0");
  if (!(corr_length > 0.0)) throw ConfigError("config: corr_length must be > 0");
  if (!(a >= 0.5)) throw ConfigError("config: a must be >= 0.5 to cover the unit square");
  if (!(tol > 0.0) || !(det_tol > 0.0)) throw ConfigError("config: tolerances must be > 0");
  if (level < 1) throw ConfigError("config: level must be >= 1");
}

void read_config(std::istream& in, RunConfig& config) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) + ": expected key = value");
    config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void load_config(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  read_config(in, config);
}

Problem build_problem(const RunConfig& config) {
  config.validate();
  Problem p;
  if (config.mesh.empty()) {
    p.mesh = mesh::structured_mesh(static_cast<std::size_t>(config.nx), static_cast<std::size_t>(config.ny));
  } else {
    auto loaded = mesh::load_mesh(config.mesh);
    for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
    p.mesh = std::move(loaded.mesh);
  }
  p.expansion = kle::eigen_2d(config.a, config.corr_length, config.sigma * config.sigma, config.L);
  p.modes = kle::gaussian_modes(p.expansion, p.mesh.nodes, config.g0, config.L);
  return p;
}

} // namespace ssfem
