// qardns command line tool: run experiments, compare learners, render
// plots. All behavior lives in the library; this file only parses flags.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qardns/cli.hpp"

namespace {

// CLI11 writes into plain locals; only flags the user actually passed
// are promoted to overrides so the config file keeps its say otherwise.
struct RunFlagSlots {
  long episodes = 0;
  std::uint64_t seed = 0;
  int size_x = 0, size_y = 0, size_z = 0;
  int goal_x = 0, goal_y = 0, goal_z = 0;
  double obstacle_fraction = 0.0;
  int obstacle_refresh_every = 0;
  int max_steps = 0;
  int n_qubits = 0;
  int shots = 0;
  std::string learner;
  std::string output_dir;
  std::string stage_override;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Multi-agent quantum-circuit reinforcement learning lab: a 10x10x3 "
      "dynamic gridworld, a dual-memory learner with a measured-circuit "
      "policy, a tabular baseline, and an analysis pipeline."};
  app.require_subcommand(1);

  // --- run ---------------------------------------------------------
  auto* run = app.add_subcommand("run", "Execute an experiment");
  std::string config_path;
  RunFlagSlots slots;
  std::vector<std::uint64_t> sweep_seeds;
  run->add_option("--config", config_path,
                  "key=value config file (flags take precedence)");
  auto* o_episodes = run->add_option("--episodes", slots.episodes,
                                     "number of episodes (default 5000)");
  auto* o_seed = run->add_option("--seed", slots.seed, "master seed");
  auto* o_sx = run->add_option("--size-x", slots.size_x, "grid x size");
  auto* o_sy = run->add_option("--size-y", slots.size_y, "grid y size");
  auto* o_sz = run->add_option("--size-z", slots.size_z, "grid z size");
  auto* o_gx = run->add_option("--goal-x", slots.goal_x, "goal x");
  auto* o_gy = run->add_option("--goal-y", slots.goal_y, "goal y");
  auto* o_gz = run->add_option("--goal-z", slots.goal_z, "goal z");
  auto* o_obs = run->add_option("--obstacle-fraction",
                                slots.obstacle_fraction,
                                "fraction of cells that are obstacles");
  auto* o_refresh =
      run->add_option("--obstacle-refresh-every", slots.obstacle_refresh_every,
                      "episodes between obstacle resamples");
  auto* o_steps = run->add_option("--max-steps", slots.max_steps,
                                  "step cap per episode");
  auto* o_qubits = run->add_option("--n-qubits", slots.n_qubits,
                                   "2 or 3 (default 3)");
  auto* o_shots = run->add_option("--shots", slots.shots,
                                  "measurement shots per action");
  auto* o_learner = run->add_option("--learner", slots.learner,
                                    "qardns | baseline");
  auto* o_output = run->add_option("--output", slots.output_dir,
                                   "output directory");
  auto* o_stage = run->add_option("--stage-override", slots.stage_override,
                                  "stage-schedule CSV path");
  run->add_option("--sweep-seeds", sweep_seeds,
                  "run once per seed, in parallel, one directory each");

  // --- compare -----------------------------------------------------
  auto* compare = app.add_subcommand(
      "compare", "Mann-Whitney U comparison of two runs");
  std::string input_a, input_b;
  std::string report_path = "comparison.txt";
  compare->add_option("a", input_a, "run directory or config file")
      ->required();
  compare->add_option("b", input_b, "run directory or config file")
      ->required();
  compare->add_option("--report", report_path,
                      "where to write comparison.txt");

  // --- plot --------------------------------------------------------
  auto* plot = app.add_subcommand("plot", "Render SVG plots for a run");
  std::string run_dir;
  plot->add_option("dir", run_dir, "run directory with episodes.csv")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qardns::cli::kExitConfig;
  }

  if (run->parsed()) {
    qardns::cli::FlagOverrides flags;
    if (o_episodes->count()) flags.episodes = slots.episodes;
    if (o_seed->count()) flags.seed = slots.seed;
    if (o_sx->count()) flags.size_x = slots.size_x;
    if (o_sy->count()) flags.size_y = slots.size_y;
    if (o_sz->count()) flags.size_z = slots.size_z;
    if (o_gx->count()) flags.goal_x = slots.goal_x;
    if (o_gy->count()) flags.goal_y = slots.goal_y;
    if (o_gz->count()) flags.goal_z = slots.goal_z;
    if (o_obs->count()) flags.obstacle_fraction = slots.obstacle_fraction;
    if (o_refresh->count()) {
      flags.obstacle_refresh_every = slots.obstacle_refresh_every;
    }
    if (o_steps->count()) flags.max_steps = slots.max_steps;
    if (o_qubits->count()) flags.n_qubits = slots.n_qubits;
    if (o_shots->count()) flags.shots = slots.shots;
    if (o_learner->count()) flags.learner = slots.learner;
    if (o_output->count()) flags.output_dir = slots.output_dir;
    if (o_stage->count()) flags.stage_override = slots.stage_override;

    try {
      const qardns::config::RunConfig cfg = qardns::cli::resolve_config(
          config_path.empty() ? std::nullopt
                              : std::make_optional(config_path),
          flags);
      return qardns::cli::cmd_run(cfg, sweep_seeds, std::cout, std::cerr);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return qardns::cli::kExitConfig;
    }
  }
  if (compare->parsed()) {
    return qardns::cli::cmd_compare(input_a, input_b, report_path, std::cout,
                                    std::cerr);
  }
  if (plot->parsed()) {
    return qardns::cli::cmd_plot(run_dir, std::cout, std::cerr);
  }
  return qardns::cli::kExitConfig;
}
