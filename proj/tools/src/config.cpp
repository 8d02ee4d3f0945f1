#include "spingap_cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "spingap/errors.hpp"

namespace spingap::cli {

RangeSpec RangeSpec::parse(const std::string& text) {
  RangeSpec spec;
  std::istringstream in(text);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(in, part, ':')) parts.push_back(part);
  if (parts.size() != 3)
    throw ConfigError("range '" + text + "' must have the form lo:hi:count");
  try {
    spec.lo = std::stod(parts[0]);
    spec.hi = std::stod(parts[1]);
    const long count = std::stol(parts[2]);
    if (count < 1) throw ConfigError("range count must be >= 1");
    spec.count = static_cast<std::size_t>(count);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("could not parse range '" + text + "'");
  }
  if (spec.count > 1 && !(spec.hi > spec.lo))
    throw ConfigError("range '" + text + "' needs hi > lo for count > 1");
  return spec;
}

std::vector<double> RangeSpec::values() const {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < count; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return out;
}

std::string RangeSpec::str() const {
  std::ostringstream out;
  out << lo << ':' << hi << ':' << count;
  return out.str();
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::ostringstream js;
  for (std::size_t i = 0; i < j_values.size(); ++i) {
    if (i) js << ',';
    js << j_values[i];
  }
  return {
      {"command", command},
      {"j", js.str()},
      {"p", std::to_string(power)},
      {"gamma-range", gamma_range.str()},
      {"kappa-range", kappa_range.str()},
      {"xi-range", xi_range.str()},
      {"beta-range", beta_range.str()},
      {"alpha-range", alpha_range.str()},
      {"x", std::to_string(x_parameter)},
      {"raster", std::to_string(raster)},
      {"edge-endpoint", edge_endpoint},
      {"refine-ridge", refine_ridge ? "1" : "0"},
      {"format", format},
      {"threads", std::to_string(threads)},
  };
}

std::vector<std::string> config_file_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line without '=': " + line);
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    const auto key_end = key.find_last_not_of(" \t");
    key = key.substr(0, key_end + 1);
    const auto value_begin = value.find_first_not_of(" \t");
    value = value_begin == std::string::npos ? "" : value.substr(value_begin);
    // single --key=value tokens parse uniformly for options and flags
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

}  // namespace spingap::cli
