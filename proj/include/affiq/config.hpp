#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace affiq {

/// Library-wide error. `token` is a short machine-readable tag used in
/// report rows ("hemisphere", "degenerate", "domain", ...).
class Error : public std::runtime_error {
public:
  Error(std::string token, const std::string& what)
      : std::runtime_error(token + ": " + what), token_(std::move(token)) {}
  const std::string& token() const noexcept { return token_; }

private:
  std::string token_;
};

/// Plain key=value run configuration.
///
/// Recognised keys (defaults in brackets):
///   grid.cells [129]        cells per axis for n=2 box grids
///   grid.cells3 [65]        cells per axis for n=3 box grids
///   sphere.d2 [720] ... sphere.d6 [8192]   sphere grid resolutions
///   tol.default [0.01]
///   seed [42]
///   report.timing [0]       write measured runtime_ms (breaks byte-identity)
///   threads [0]             0 = hardware concurrency
class Config {
public:
  Config();

  static Config from_file(const std::string& path);
  /// Defaults, overridden by the file named in AFFIQ_CONFIG when set.
  static Config from_environment();

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  std::string get(const std::string& key) const;
  double get_double(const std::string& key) const;
  long get_int(const std::string& key) const;

  int sphere_resolution(int d) const;
  int box_cells(int n) const;
  double default_tolerance() const { return get_double("tol.default"); }
  unsigned long seed() const { return static_cast<unsigned long>(get_int("seed")); }

  const std::map<std::string, std::string>& entries() const { return values_; }

private:
  std::map<std::string, std::string> values_;
};

/// Process-wide configuration used by the default-resolution helpers.
const Config& global_config();
void set_global_config(const Config& config);

}  // namespace affiq
