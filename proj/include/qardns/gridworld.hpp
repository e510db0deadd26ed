// gridworld.hpp
// The dynamic 3D GridWorld: a size_x * size_y * size_z box of cells, a
// fixed goal corner, randomly placed obstacles refreshed on an episode
// cadence, six axis-aligned moves, and the extrinsic reward function.

#pragma once

#include <cstdint>
#include <vector>

#include "qardns/rng.hpp"

namespace qardns::grid {

struct Cell {
  int x = 0;
  int y = 0;
  int z = 0;
  bool operator==(const Cell&) const = default;
};

// Action order follows the environment's move list (up, down, left,
// right, up-z, down-z): up/down move along y, left/right along x.
enum class Action : int {
  kUp = 0,     // +y
  kDown = 1,   // -y
  kLeft = 2,   // -x
  kRight = 3,  // +x
  kUpZ = 4,    // +z
  kDownZ = 5,  // -z
};

inline constexpr int kNumActions = 6;

Cell action_delta(Action a);

struct GridConfig {
  int size_x = 10;
  int size_y = 10;
  int size_z = 3;
  Cell goal{9, 9, 2};
  double obstacle_fraction = 0.05;
  int obstacle_refresh_every = 100;
  int max_steps = 1000;
  int n_agents = 2;

  int num_cells() const { return size_x * size_y * size_z; }
  int num_obstacles() const {
    return static_cast<int>(obstacle_fraction * num_cells());
  }
  bool contains(Cell c) const {
    return c.x >= 0 && c.x < size_x && c.y >= 0 && c.y < size_y && c.z >= 0 &&
           c.z < size_z;
  }
  std::uint32_t cell_index(Cell c) const {
    return static_cast<std::uint32_t>((c.x * size_y + c.y) * size_z + c.z);
  }

  // Throws std::invalid_argument when dims are non-positive, the goal is
  // outside the grid, or the obstacle fraction is out of [0, 1).
  void validate() const;
};

inline constexpr Cell kStart{0, 0, 0};

struct EnvState {
  std::vector<Cell> positions;          // one per agent
  std::vector<std::uint32_t> obstacles; // sorted cell indices
  int step_count = 0;
  int episode_index = 0;

  bool is_obstacle(const GridConfig& config, Cell c) const;
};

struct StepOutcome {
  Cell next_position;
  double extrinsic_reward = 0.0;
  bool reached_goal = false;
  bool collided = false;
};

// Creates the starting state: all agents at the origin, a fresh obstacle
// sample, counters at zero.
EnvState make_initial_state(const GridConfig& config, Rng& rng);

// Exactly floor(obstacle_fraction * cells) distinct cells, never the
// start cell or the goal. Deterministic given the rng state.
std::vector<std::uint32_t> sample_obstacles(const GridConfig& config, Rng& rng);

int manhattan_distance(Cell a, Cell b);

// +8 at the goal, -2 when a move hit an obstacle, otherwise
// max(-8, -0.001 + 0.08*progress - 0.01*distance) with
// progress = (x+y+z) / (size_x+size_y+size_z-3).
double extrinsic_reward(Cell next_pos, bool moved_onto_obstacle,
                        const GridConfig& config);

// Moves one agent. Off-grid moves leave the agent in place with the
// distance-penalty reward; obstacle moves leave it in place with -2 and
// collided set. Throws qardns-protocol errors (std::logic_error) when the
// episode has already consumed max_steps, std::invalid_argument for a bad
// agent index.
StepOutcome step(EnvState& state, const GridConfig& config, int agent, Action action);

// Resamples obstacles when episode_index is a positive multiple of
// obstacle_refresh_every; the new set avoids current agent positions as
// well as start and goal.
void maybe_refresh_obstacles(EnvState& state, const GridConfig& config, Rng& rng);

}  // namespace qardns::grid
