#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "spingap/errors.hpp"
#include "spingap/version.hpp"
#include "spingap_cli/commands.hpp"
#include "spingap_cli/config.hpp"

namespace {

using spingap::cli::RangeSpec;
using spingap::cli::RunConfig;

struct RawOptions {
  std::string j_list = "25";
  std::string gamma_range, kappa_range, xi_range, beta_range, alpha_range;
  std::string config_file;
};

void add_common_options(CLI::App* cmd, RunConfig& config, RawOptions& raw) {
  // config-file tokens are spliced in before explicit flags, so every option
  // takes the last occurrence: the command line wins.
  auto last = [](CLI::Option* opt) {
    opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  };
  last(cmd->add_option("--j", raw.j_list, "total spin j, or comma-separated list"));
  last(cmd->add_option("--p", config.power, "interaction power p >= 2"));
  last(cmd->add_option("--gamma-range", raw.gamma_range, "Gamma grid lo:hi:count"));
  last(cmd->add_option("--kappa-range", raw.kappa_range,
                       "kappa grid lo:hi:count (Gamma_z grid for 'lmg')"));
  last(cmd->add_option("--xi-range", raw.xi_range,
                       "well displacement grid lo:hi:count"));
  last(cmd->add_option("--beta-range", raw.beta_range, "well width grid lo:hi:count"));
  last(cmd->add_option("--alpha-range", raw.alpha_range, "Rayleigh coefficient grid"));
  last(cmd->add_option("--x", config.x_parameter,
                       "sweet-spot parameter for asymptotics"));
  last(cmd->add_option("--raster", config.raster, "raster resolution per axis"));
  last(cmd->add_option("--edge-endpoint", config.edge_endpoint,
                       "edge gap convention: destination|source|average"));
  cmd->add_flag("--refine-ridge,!--no-refine-ridge", config.refine_ridge,
                "re-price ridge-crossing edges by adaptive integration")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  last(cmd->add_option("--out", config.out, "output path ('-' for stdout)"));
  last(cmd->add_option("--format", config.format, "csv|json"));
  last(cmd->add_option("--threads", config.threads, "worker threads (0 = hardware)"));
  last(cmd->add_option("--config", raw.config_file,
                       "key=value file with the same keys; flags override"));
}

std::vector<double> parse_j_list(const std::string& text) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    out.push_back(std::stod(token));
  }
  if (out.empty()) throw spingap::ConfigError("empty --j list");
  return out;
}

void apply_raw(const RawOptions& raw, RunConfig& config) {
  config.j_values = parse_j_list(raw.j_list);
  if (!raw.gamma_range.empty()) config.gamma_range = RangeSpec::parse(raw.gamma_range);
  if (!raw.kappa_range.empty()) config.kappa_range = RangeSpec::parse(raw.kappa_range);
  if (!raw.xi_range.empty()) config.xi_range = RangeSpec::parse(raw.xi_range);
  if (!raw.beta_range.empty()) config.beta_range = RangeSpec::parse(raw.beta_range);
  if (!raw.alpha_range.empty()) config.alpha_range = RangeSpec::parse(raw.alpha_range);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spingap: spectral-gap analysis of driven collective-spin annealing"};
  app.set_version_flag("--version", std::string("spingap ") + spingap::kVersion);
  app.require_subcommand(1);

  RunConfig config;
  RawOptions raw;
  const std::vector<std::string> commands = {
      "pairing",    "isogap", "landscape", "saddle",    "scaling",
      "path",       "lmg",    "asymptotics", "spinstats"};
  const std::vector<std::string> descriptions = {
      "doublet energies of the symmetric well vs displacement",
      "gap-ratio raster over (xi1, beta) plus the max-gap locus",
      "Delta01/Delta02 raster over the (Gamma, kappa) control plane",
      "per-j saddle of the transition ridge (max-min gap)",
      "kappa_c, gap and LMG scaling laws over a j list",
      "Dijkstra-optimal annealing schedule and cumulative time",
      "LMG gap landscape over (Gamma_x, Gamma_z) plus potential extrema",
      "small-kappa closed forms vs exact well parameters",
      "mean-spin magnitude, angle and uncertainty along a sweep"};
  for (std::size_t i = 0; i < commands.size(); ++i)
    add_common_options(app.add_subcommand(commands[i], descriptions[i]), config, raw);

  // Pre-pass: splice config-file tokens in ahead of the explicit flags so
  // the command line wins on conflicts.
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") {
      try {
        const auto tokens = spingap::cli::config_file_tokens(args[i + 1]);
        args.insert(args.begin() + 1, tokens.begin(), tokens.end());
      } catch (const std::exception& e) {
        std::fprintf(stderr, "spingap: %s\n", e.what());
        return 2;
      }
      break;
    }
  }

  try {
    std::vector<const char*> cargs{argv[0]};
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  for (const auto& name : commands)
    if (app.got_subcommand(name)) config.command = name;

  try {
    apply_raw(raw, config);
    spingap::cli::run_command(config);
  } catch (const spingap::ConfigError& e) {
    std::fprintf(stderr, "spingap: configuration error: %s\n", e.what());
    return 2;
  } catch (const spingap::NumericalError& e) {
    std::fprintf(stderr, "spingap: numerical failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "spingap: %s\n", e.what());
    return 3;
  }
  return 0;
}
