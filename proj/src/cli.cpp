#include "qardns/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <future>
#include <sstream>

#include "qardns/errors.hpp"
#include "qardns/io.hpp"
#include "qardns/plots.hpp"
#include "qardns/stats.hpp"
#include "qardns/trainer.hpp"

namespace qardns::cli {

namespace fs = std::filesystem;

config::RunConfig resolve_config(const std::optional<std::string>& config_path,
                                 const FlagOverrides& flags) {
  config::RunConfig cfg;
  if (config_path) {
    config::apply_key_values(cfg, config::load_key_values(*config_path));
  }
  if (flags.episodes) cfg.episodes = *flags.episodes;
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.size_x) cfg.grid.size_x = *flags.size_x;
  if (flags.size_y) cfg.grid.size_y = *flags.size_y;
  if (flags.size_z) cfg.grid.size_z = *flags.size_z;
  if (flags.goal_x) cfg.grid.goal.x = *flags.goal_x;
  if (flags.goal_y) cfg.grid.goal.y = *flags.goal_y;
  if (flags.goal_z) cfg.grid.goal.z = *flags.goal_z;
  if (flags.obstacle_fraction) {
    cfg.grid.obstacle_fraction = *flags.obstacle_fraction;
  }
  if (flags.obstacle_refresh_every) {
    cfg.grid.obstacle_refresh_every = *flags.obstacle_refresh_every;
  }
  if (flags.max_steps) cfg.grid.max_steps = *flags.max_steps;
  if (flags.n_qubits) cfg.n_qubits = *flags.n_qubits;
  if (flags.shots) cfg.shots = *flags.shots;
  if (flags.learner) cfg.learner = *flags.learner;
  if (flags.output_dir) cfg.output_dir = *flags.output_dir;
  if (flags.stage_override) cfg.stage_override_path = *flags.stage_override;
  return cfg;
}

std::string resolve_output_dir(const config::RunConfig& config) {
  if (!config.output_dir.empty()) return config.output_dir;
  const char* root = std::getenv(kOutputRootEnv);
  const std::string base = (root && *root) ? root : "runs";
  return base + "/" + config.learner + "-seed" + std::to_string(config.seed);
}

namespace {

// Runs one experiment and writes the full artifact set into `dir`.
// Returns the records through `out_records` for callers that keep going.
void execute_run(const config::RunConfig& config, const std::string& dir,
                 std::vector<EpisodeRecord>* out_records) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory '" + dir +
                      "': " + ec.message());
  }

  trainer::RunResult result = trainer::run_experiment(config);

  config::RunConfig echoed = config;
  echoed.output_dir = dir;
  io::write_episodes_csv(dir + "/episodes.csv", result.records);
  io::write_summary_txt(dir + "/summary.txt", result.summary);
  io::write_summary_json(dir + "/summary.json", result.summary);
  io::write_run_config(dir + "/run_config.txt", echoed);

  if (out_records) *out_records = std::move(result.records);
}

int classify(const std::exception& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  if (dynamic_cast<const DataError*>(&e)) return kExitData;
  return kExitConfig;
}

// Loads the records behind a compare input: a run directory with
// episodes.csv, or a config file that is executed first.
std::vector<EpisodeRecord> load_compare_input(const std::string& input,
                                              std::ostream& out) {
  if (fs::is_directory(input)) {
    const std::string csv = input + "/episodes.csv";
    if (!fs::exists(csv)) {
      throw ConfigError("no episodes.csv in run directory '" + input + "'");
    }
    return io::read_episodes_csv(csv);
  }
  if (fs::exists(input)) {
    config::RunConfig cfg = resolve_config(input, {});
    cfg.validate();
    const std::string dir = resolve_output_dir(cfg);
    out << "executing config " << input << " -> " << dir << "\n";
    std::vector<EpisodeRecord> records;
    execute_run(cfg, dir, &records);
    return records;
  }
  throw ConfigError("input '" + input +
                    "' is neither a run directory nor a config file");
}

}  // namespace

int cmd_run(const config::RunConfig& config,
            const std::vector<std::uint64_t>& sweep_seeds, std::ostream& out,
            std::ostream& err) {
  try {
    config.validate();

    if (sweep_seeds.empty()) {
      const std::string dir = resolve_output_dir(config);
      std::vector<EpisodeRecord> records;
      execute_run(config, dir, &records);
      out << io::format_summary_txt(stats::summarize(records));
      out << "wrote " << dir << "\n";
      return kExitOk;
    }

    // One isolated run per seed, in parallel; directories are per-seed.
    const std::string base = config.output_dir.empty()
                                 ? std::string()
                                 : config.output_dir;
    std::vector<std::future<std::string>> jobs;
    jobs.reserve(sweep_seeds.size());
    for (const std::uint64_t seed : sweep_seeds) {
      config::RunConfig sub = config;
      sub.seed = seed;
      sub.output_dir =
          base.empty() ? resolve_output_dir(sub)
                       : base + "/seed" + std::to_string(seed);
      jobs.push_back(std::async(std::launch::async, [sub]() {
        execute_run(sub, sub.output_dir, nullptr);
        return sub.output_dir;
      }));
    }
    for (auto& job : jobs) {
      out << "wrote " << job.get() << "\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return classify(e, err);
  }
}

int cmd_compare(const std::string& input_a, const std::string& input_b,
                const std::string& report_path, std::ostream& out,
                std::ostream& err) {
  try {
    const std::vector<EpisodeRecord> a = load_compare_input(input_a, out);
    const std::vector<EpisodeRecord> b = load_compare_input(input_b, out);
    if (a.empty() || b.empty()) {
      throw ConfigError("cannot compare empty runs");
    }
    if (a.front().agents.size() != b.front().agents.size()) {
      throw ConfigError("agent counts differ: " +
                        std::to_string(a.front().agents.size()) + " vs " +
                        std::to_string(b.front().agents.size()));
    }

    std::vector<stats::UTestResult> results;
    for (std::size_t agent = 0; agent < a.front().agents.size(); ++agent) {
      results.push_back(stats::mann_whitney_u(io::reward_series(a, agent),
                                              io::reward_series(b, agent)));
    }
    const std::string report =
        io::format_comparison(results, input_a, input_b);
    io::write_comparison(report_path, results, input_a, input_b);
    out << report;
    out << "wrote " << report_path << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return classify(e, err);
  }
}

int cmd_plot(const std::string& run_dir, std::ostream& out,
             std::ostream& err) {
  try {
    const std::string csv = run_dir + "/episodes.csv";
    if (!fs::exists(csv)) {
      throw ConfigError("no episodes.csv in '" + run_dir + "'");
    }
    const std::vector<EpisodeRecord> records = io::read_episodes_csv(csv);
    plots::write_run_plots(run_dir, records);
    out << "wrote " << run_dir << "/{" << plots::kRewardCurveFile << ", "
        << plots::kRewardHistogramFile << ", " << plots::kStepsCurveFile
        << ", " << plots::kSuccessRateFile << "}\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return classify(e, err);
  }
}

}  // namespace qardns::cli
