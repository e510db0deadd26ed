// config.hpp
// Run configuration, the staged hyperparameter schedule (with the
// built-in four-stage default), the stage-override CSV loader, and the
// flat key=value config file format.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qardns/gridworld.hpp"

namespace qardns::config {

// One row of the staged schedule; last_episode = -1 leaves the range
// open-ended. Ranges are inclusive on both ends.
struct StageRow {
  long first_episode = 0;
  long last_episode = -1;
  double eta = 0.7;
  double epsilon_min = 0.2;
  double alpha_s = 0.9;
  double alpha_l = 0.98;
  double alpha_shared = 0.9;
  double curiosity = 1.0;
  double beta = 0.1;
  double gamma = 0.01;
  int shots = 16;
};

class StageSchedule {
 public:
  // The default four-stage schedule:
  //   [0,1000]    eta 1.40  eps_min 0.9  alpha_s 0.70  alpha_l 0.80  curiosity 2.0
  //   [1001,2000] eta 1.05  eps_min 0.6  alpha_s 0.80  alpha_l 0.90  curiosity 1.5
  //   [2001,3000] eta 0.84  eps_min 0.3  alpha_s 0.85  alpha_l 0.95  curiosity 1.0
  //   [3001,inf)  eta 0.70  eps_min 0.2  alpha_s 0.90  alpha_l 0.98  curiosity 1.0
  // with alpha_shared 0.9, beta 0.1, gamma 0.01, shots 16 throughout.
  static StageSchedule defaults();

  // CSV with header
  // first_episode,last_episode,eta,epsilon_min,alpha_s,alpha_l,alpha_shared,curiosity,beta,gamma,shots
  // Throws ConfigError on malformed content or ranges that fail to
  // partition [0, inf).
  static StageSchedule from_csv(const std::string& path);

  explicit StageSchedule(std::vector<StageRow> rows);

  const StageRow& row_for(long episode) const;
  // Index of the row containing `episode` (for boundary-reset detection).
  std::size_t index_for(long episode) const;
  const std::vector<StageRow>& rows() const { return rows_; }

 private:
  std::vector<StageRow> rows_;
};

struct RunConfig {
  long episodes = 5000;
  std::uint64_t seed = 42;
  grid::GridConfig grid;
  int n_qubits = 3;
  int shots = 16;
  std::string learner = "qardns";  // qardns | baseline
  std::string output_dir;
  std::string stage_override_path;

  // Throws ConfigError when any field is out of contract
  // (episodes < 0, shots < 1, n_qubits not in {2,3}, unknown learner,
  // n_agents != 2, or an invalid grid).
  void validate() const;

  // The effective schedule: the override file when set, else defaults.
  StageSchedule schedule() const;
};

// Flat key=value file: blank lines and '#' comments ignored; keys match
// the field names echoed by run_config.txt. Syntax errors throw
// ConfigError naming the line.
std::map<std::string, std::string> load_key_values(const std::string& path);

// Applies parsed key=value pairs onto a config (used for both config
// files and run_config.txt round trips).
void apply_key_values(RunConfig& config,
                      const std::map<std::string, std::string>& pairs);

// The echo format written as run_config.txt: every field, one per line,
// loadable by load_key_values.
std::string to_key_values(const RunConfig& config);

}  // namespace qardns::config
