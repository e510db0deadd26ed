// trainer.hpp
// The training loop: stage scheduling, per-step orchestration of memory
// updates, action selection, environment stepping, reward composition,
// plasticity and meta updates, and metric capture. A parallel trainer
// drives the tabular baseline through the identical environment and
// ε schedule so the two arms differ only in the learner.

#pragma once

#include <cstddef>
#include <vector>

#include "qardns/agent.hpp"
#include "qardns/baseline.hpp"
#include "qardns/config.hpp"
#include "qardns/gridworld.hpp"
#include "qardns/memory.hpp"
#include "qardns/meta.hpp"
#include "qardns/records.hpp"
#include "qardns/rng.hpp"

namespace qardns::trainer {

struct RunResult {
  std::vector<EpisodeRecord> records;
  RunSummary summary;
};

struct TrainerOptions {
  // Relabels the two agents end to end: rng substreams, weight-block
  // assignment, shared-memory concatenation order, stepping order. A
  // swapped run must reproduce the original with the agent columns
  // exchanged; the symmetry property test relies on this. Production
  // runs leave it false.
  bool swap_agents = false;
};

// Everything one learning agent owns between episodes.
struct AgentState {
  agent::AgentWeights weights;
  meta::MetaWeights meta_weights;
  memory::MemoryBank bank;
  agent::AgentParams params;
  agent::RewardWindow window{100};
  meta::AdjustResult last_adjust;
  bool adjusted_this_episode = false;
  double prev_window_mean = 0.0;
  Rng policy_rng;
  Rng shot_rng;
  long successes = 0;
};

class QardnsTrainer {
 public:
  explicit QardnsTrainer(const config::RunConfig& config,
                         const TrainerOptions& options = {});

  // Runs the next episode and returns its record.
  EpisodeRecord run_episode();
  // Runs every remaining episode and summarizes.
  RunResult run();

  long episodes_completed() const { return episode_cursor_; }

  // State access for tests (rig weights, pin exploration, inspect memory).
  std::vector<AgentState>& agent_states() { return agents_; }
  const grid::EnvState& env_state() const { return env_; }
  const memory::SharedMemory& shared_memory() const { return shared_; }
  double epsilon() const { return epsilon_; }
  void set_epsilon(double epsilon) { epsilon_ = epsilon; }

 private:
  void apply_stage(long episode);
  void begin_episode(long episode);

  config::RunConfig config_;
  TrainerOptions options_;
  config::StageSchedule schedule_;
  Rng obstacle_rng_;
  grid::EnvState env_;
  std::vector<AgentState> agents_;
  memory::Mat8x6 W_shared_ = memory::Mat8x6::Zero();
  memory::SharedMemory shared_;
  double epsilon_ = 1.0;
  std::size_t stage_index_ = static_cast<std::size_t>(-1);
  long episode_cursor_ = 0;
  long episodes_elapsed_ = 0;
  std::vector<double> success_rates_;
};

struct BaselineAgentState {
  baseline::QTable table;
  Rng policy_rng;
  long successes = 0;
};

class BaselineTrainer {
 public:
  explicit BaselineTrainer(const config::RunConfig& config,
                           const TrainerOptions& options = {});

  EpisodeRecord run_episode();
  RunResult run();

  long episodes_completed() const { return episode_cursor_; }
  std::vector<BaselineAgentState>& agent_states() { return agents_; }
  double epsilon() const { return epsilon_; }
  void set_epsilon(double epsilon) { epsilon_ = epsilon; }

 private:
  config::RunConfig config_;
  TrainerOptions options_;
  config::StageSchedule schedule_;
  Rng obstacle_rng_;
  grid::EnvState env_;
  std::vector<BaselineAgentState> agents_;
  double epsilon_ = 1.0;
  long episode_cursor_ = 0;
};

// Validates the config, builds the trainer named by config.learner, and
// runs it to completion. Throws ConfigError for unusable configs.
RunResult run_experiment(const config::RunConfig& config,
                         const TrainerOptions& options = {});

}  // namespace qardns::trainer
