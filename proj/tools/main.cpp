#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "app/commands.hpp"
#include "mfdbsde/parallel.hpp"

int main(int argc, char** argv) {
  using namespace mfdbsde::app;

  CLI::App cli{"Monte-Carlo solver for mean-field delayed BSDEs with jumps"};
  cli.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> particles;
  std::optional<std::string> out_dir;
  int threads = 0;
  cli.add_option("--seed", seed, "Override the simulation seed");
  cli.add_option("--particles", particles, "Override the particle count");
  cli.add_option("--out-dir", out_dir, "Override the output directory");
  cli.add_option("--threads", threads, "Worker threads (0: MFDBSDE_THREADS or automatic)")
      ->check(CLI::NonNegativeNumber);

  std::string config;
  auto* solve = cli.add_subcommand("solve", "Picard solve; writes solution CSV and report");
  solve->add_option("config", config, "Config file")->required();
  auto* validate = cli.add_subcommand("validate", "Check the standing assumptions");
  validate->add_option("config", config, "Config file")->required();
  std::string deltas;
  auto* sweep = cli.add_subcommand("sweep-delta", "Picard solves over a list of delays");
  sweep->add_option("config", config, "Config file")->required();
  sweep->add_option("--deltas", deltas, "Comma-separated delays")->required();

  for (auto* sub : {solve, validate, sweep}) {
    sub->fallthrough();
  }

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  if (threads > 0) mfdbsde::set_thread_count(threads);
  Overrides ov;
  ov.seed = seed;
  ov.particles = particles;
  if (out_dir) ov.out_dir = *out_dir;

  if (*solve) return cmd_solve(config, ov, std::cout, std::cerr);
  if (*validate) return cmd_validate(config, ov, std::cout, std::cerr);
  std::vector<double> list;
  try {
    list = parse_delta_list(deltas);
  } catch (const ConfigFileError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return cmd_sweep_delta(config, list, ov, std::cout, std::cerr);
}
