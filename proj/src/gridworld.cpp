#include "qardns/gridworld.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "qardns/errors.hpp"

namespace qardns::grid {

Cell action_delta(Action a) {
  switch (a) {
    case Action::kUp:
      return {0, 1, 0};
    case Action::kDown:
      return {0, -1, 0};
    case Action::kLeft:
      return {-1, 0, 0};
    case Action::kRight:
      return {1, 0, 0};
    case Action::kUpZ:
      return {0, 0, 1};
    case Action::kDownZ:
      return {0, 0, -1};
  }
  throw std::invalid_argument("action_delta: unknown action " +
                              std::to_string(static_cast<int>(a)));
}

void GridConfig::validate() const {
  if (size_x < 1 || size_y < 1 || size_z < 1) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  if (!contains(goal)) {
    throw std::invalid_argument("goal cell lies outside the grid");
  }
  if (obstacle_fraction < 0.0 || obstacle_fraction >= 1.0) {
    throw std::invalid_argument("obstacle_fraction must be in [0, 1)");
  }
  if (max_steps < 1) {
    throw std::invalid_argument("max_steps must be positive");
  }
  if (obstacle_refresh_every < 1) {
    throw std::invalid_argument("obstacle_refresh_every must be positive");
  }
  if (n_agents < 1) {
    throw std::invalid_argument("n_agents must be positive");
  }
}

bool EnvState::is_obstacle(const GridConfig& config, Cell c) const {
  return std::binary_search(obstacles.begin(), obstacles.end(),
                            config.cell_index(c));
}

namespace {

// Draws `count` distinct cell indices, skipping everything in `excluded`.
// Rejection sampling over the flat index keeps the draw order (and thus the
// rng consumption) independent of the exclusion set's representation.
std::vector<std::uint32_t> sample_distinct_cells(
    const GridConfig& config, Rng& rng,
    const std::unordered_set<std::uint32_t>& excluded) {
  const int count = config.num_obstacles();
  std::vector<std::uint32_t> picked;
  picked.reserve(static_cast<std::size_t>(count));
  std::unordered_set<std::uint32_t> seen;
  while (static_cast<int>(picked.size()) < count) {
    const auto idx = static_cast<std::uint32_t>(
        rng.uniform_int(0, config.num_cells() - 1));
    if (excluded.contains(idx) || seen.contains(idx)) continue;
    seen.insert(idx);
    picked.push_back(idx);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace

std::vector<std::uint32_t> sample_obstacles(const GridConfig& config,
                                            Rng& rng) {
  std::unordered_set<std::uint32_t> excluded{config.cell_index(kStart),
                                             config.cell_index(config.goal)};
  return sample_distinct_cells(config, rng, excluded);
}

EnvState make_initial_state(const GridConfig& config, Rng& rng) {
  config.validate();
  EnvState state;
  state.positions.assign(static_cast<std::size_t>(config.n_agents), kStart);
  state.obstacles = sample_obstacles(config, rng);
  return state;
}

int manhattan_distance(Cell a, Cell b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z);
}

double extrinsic_reward(Cell next_pos, bool moved_onto_obstacle,
                        const GridConfig& config) {
  if (next_pos == config.goal) return 8.0;
  if (moved_onto_obstacle) return -2.0;
  const double span =
      static_cast<double>(config.size_x + config.size_y + config.size_z - 3);
  const double progress =
      static_cast<double>(next_pos.x + next_pos.y + next_pos.z) / span;
  const double distance =
      static_cast<double>(manhattan_distance(next_pos, config.goal));
  return std::max(-8.0, -0.001 + 0.08 * progress - 0.01 * distance);
}

StepOutcome step(EnvState& state, const GridConfig& config, int agent,
                 Action action) {
  if (agent < 0 || agent >= static_cast<int>(state.positions.size())) {
    throw std::invalid_argument("step: agent index " + std::to_string(agent) +
                                " out of range");
  }
  if (state.step_count >= config.max_steps) {
    throw ProtocolError("step: episode already consumed max_steps");
  }

  const Cell from = state.positions[static_cast<std::size_t>(agent)];
  const Cell delta = action_delta(action);
  const Cell target{from.x + delta.x, from.y + delta.y, from.z + delta.z};

  StepOutcome out;
  if (!config.contains(target)) {
    // Off-grid attempt: stay put, standard distance penalty of the
    // unchanged cell.
    out.next_position = from;
    out.extrinsic_reward = extrinsic_reward(from, false, config);
  } else if (state.is_obstacle(config, target)) {
    out.next_position = from;
    out.extrinsic_reward = extrinsic_reward(target, true, config);
    out.collided = true;
  } else {
    out.next_position = target;
    out.extrinsic_reward = extrinsic_reward(target, false, config);
  }
  out.reached_goal = out.next_position == config.goal;
  state.positions[static_cast<std::size_t>(agent)] = out.next_position;
  return out;
}

void maybe_refresh_obstacles(EnvState& state, const GridConfig& config,
                             Rng& rng) {
  if (state.episode_index <= 0 ||
      state.episode_index % config.obstacle_refresh_every != 0) {
    return;
  }
  std::unordered_set<std::uint32_t> excluded{config.cell_index(kStart),
                                             config.cell_index(config.goal)};
  for (Cell pos : state.positions) excluded.insert(config.cell_index(pos));
  state.obstacles = sample_distinct_cells(config, rng, excluded);
}

}  // namespace qardns::grid
