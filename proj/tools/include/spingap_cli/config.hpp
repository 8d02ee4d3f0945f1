#pragma once

#include <string>
#include <utility>
#include <vector>

namespace spingap::cli {

/// Inclusive linear range "lo:hi:count".
struct RangeSpec {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t count = 2;

  static RangeSpec parse(const std::string& text);
  std::vector<double> values() const;
  std::string str() const;
};

struct RunConfig {
  std::string command;
  std::vector<double> j_values{25.0};
  int power = 3;
  RangeSpec gamma_range{0.0, 1.0, 201};
  RangeSpec kappa_range{0.0, 1.0, 201};
  RangeSpec xi_range{0.1, 4.0, 40};
  RangeSpec beta_range{0.4, 4.0, 37};
  RangeSpec alpha_range{0.5, 4.0, 36};
  double x_parameter = 1.0;  // sweet-spot parameter for asymptotics tables
  std::size_t raster = 201;
  std::string edge_endpoint = "destination";  // destination|source|average
  bool refine_ridge = true;
  std::string out = "-";
  std::string format = "csv";
  unsigned threads = 0;  // 0: hardware concurrency

  /// Echo of every setting, in a fixed order, for output headers.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Reads a key=value file (same keys as long flags, '#' comments) and
/// returns equivalent "--key" "value" token pairs.
std::vector<std::string> config_file_tokens(const std::string& path);

}  // namespace spingap::cli
