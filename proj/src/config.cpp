#include "affiq/config.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

namespace affiq {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::mutex& config_mutex() {
  static std::mutex m;
  return m;
}

Config& config_slot() {
  static Config c = Config::from_environment();
  return c;
}

}  // namespace

Config::Config() {
  values_ = {
      {"grid.cells", "129"},  {"grid.cells3", "65"},   {"sphere.d2", "720"},
      {"sphere.d3", "2048"},  {"sphere.d4", "2048"},   {"sphere.d5", "8192"},
      {"sphere.d6", "8192"},  {"tol.default", "0.01"}, {"seed", "42"},
      {"report.timing", "0"}, {"threads", "0"},
  };
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config", "cannot open config file '" + path + "'");
  Config c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("config", path + ":" + std::to_string(lineno) + ": expected key=value");
    c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

Config Config::from_environment() {
  if (const char* path = std::getenv("AFFIQ_CONFIG"); path && *path) return from_file(path);
  return Config{};
}

void Config::set(const std::string& key, const std::string& value) {
  if (key.empty()) throw Error("config", "empty key");
  values_[key] = value;
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

std::string Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw Error("config", "missing key '" + key + "'");
  return it->second;
}

double Config::get_double(const std::string& key) const {
  const auto v = get(key);
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw Error("config", "key '" + key + "' is not a number: " + v);
  }
}

long Config::get_int(const std::string& key) const {
  const auto v = get(key);
  try {
    std::size_t used = 0;
    long d = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw Error("config", "key '" + key + "' is not an integer: " + v);
  }
}

int Config::sphere_resolution(int d) const {
  const std::string key = "sphere.d" + std::to_string(d);
  if (has(key)) return static_cast<int>(get_int(key));
  return d <= 2 ? 720 : d <= 4 ? 2048 : 8192;
}

int Config::box_cells(int n) const {
  return static_cast<int>(get_int(n >= 3 ? "grid.cells3" : "grid.cells"));
}

const Config& global_config() {
  std::lock_guard lock(config_mutex());
  return config_slot();
}

void set_global_config(const Config& config) {
  std::lock_guard lock(config_mutex());
  config_slot() = config;
}

}  // namespace affiq
