// records.hpp
// Plain data produced by a run: one record per episode (holding one entry
// per agent) and the whole-run summary derived from them. Shared by the
// trainer, the statistics pipeline, and the file I/O layer.

#pragma once

#include <vector>

namespace qardns {

struct AgentEpisode {
  double total_reward = 0.0;
  int steps = 0;
  bool success = false;
  int collisions = 0;
  // Live parameter values at the end of the episode, echoed to the CSV.
  double epsilon = 0.0;
  double eta = 0.0;
  double curiosity = 0.0;
};

struct EpisodeRecord {
  int episode = 0;
  std::vector<AgentEpisode> agents;
  double wall_seconds = 0.0;
};

struct AgentSummary {
  double success_rate = 0.0;
  double mean_reward = 0.0;
  double std_reward = 0.0;
  double reward_variance = 0.0;
  double mean_steps = 0.0;
  double collision_rate = 0.0;
};

struct RunSummary {
  std::vector<AgentSummary> agents;
  int episodes = 0;
  double total_seconds = 0.0;
};

}  // namespace qardns
