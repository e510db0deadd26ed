// agent.hpp
// One agent of the pair: quantum-probability action selection under an
// ε-greedy policy, the intrinsic (curiosity) reward, the cooperative
// bonus, the variance-modulated plasticity rule, and the ε decay step.

#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "qardns/gridworld.hpp"
#include "qardns/memory.hpp"
#include "qardns/rng.hpp"

namespace qardns::agent {

using memory::Vec8;
using memory::Vec16;
using memory::Vec32;
using memory::Mat8x3;
using memory::Mat16x3;

// Rows of W_a give the circuit angles: theta_i = W_a.row(i) . M.
using ActionWeightMatrix = Eigen::Matrix<double, Eigen::Dynamic, 32>;

struct AgentWeights {
  Mat8x3 W_s = Mat8x3::Zero();
  Mat16x3 W_l = Mat16x3::Zero();
  ActionWeightMatrix W_a;
  Vec8 W_att_s = Vec8::Zero();
  Vec16 W_att_l = Vec16::Zero();
};

struct AgentParams {
  double eta = 1.4;
  double epsilon = 1.0;
  double epsilon_min = 0.9;
  double curiosity_factor = 2.0;
  // Ceiling for meta-adjusted curiosity: max(1.5, stage's initial value).
  double curiosity_ceiling = 2.0;
  double beta = 0.1;
  double gamma_penalty = 0.01;
  double clip_bound = 5.0;
  int shots = 16;
  int n_qubits = 3;
};

// 3 qubits drive the six grid moves (outcomes 6 and 7 fold away);
// the 2-qubit compatibility mode exposes only the four planar moves.
int num_actions(int n_qubits);

// Uniform [-0.1, 0.1] entries drawn in a fixed order: W_s, W_l, W_a,
// W_att_s, W_att_l, each filled row-major.
AgentWeights init_weights(int n_qubits, Rng& rng);

// Ring buffer over the most recent `capacity` per-step total rewards.
// Mean and variance follow the population convention; both are 0 while
// the window is empty.
class RewardWindow {
 public:
  explicit RewardWindow(std::size_t capacity = 100);

  void push(double reward);
  std::size_t size() const { return count_; }
  double mean() const;
  double variance() const;
  double stddev() const;
  // Current window contents in insertion order (oldest first).
  std::vector<double> contents() const;

 private:
  std::vector<double> values_;
  std::size_t capacity_;
  std::size_t count_ = 0;
  std::size_t head_ = 0;
};

// Index of the largest count among the first `actions` outcomes, ties to
// the lowest index; -1 when every one of those counts is zero. Invariant
// under scaling all counts by the same positive factor.
int greedy_action_from_counts(const std::vector<std::uint64_t>& counts,
                              int actions);

// ε-greedy: explore uniformly with probability ε (consuming policy_rng);
// otherwise derive angles theta = W_a * M, run the circuit for
// params.shots shots (consuming shot_rng) and return the action whose
// outcome count is highest, ties to the lowest index. With 3 qubits,
// outcomes 6/7 are ignored; if every shot lands there, falls back to a
// uniform pick.
grid::Action select_action(const AgentWeights& weights,
                           const memory::CombinedMemory& memory,
                           const AgentParams& params, Rng& policy_rng,
                           Rng& shot_rng);

// b = curiosity * novelty * distance_factor + balance_penalty, with
// novelty = 1/(1+e^{-|s|}) (sigmoid input clamped to [-500, 500]),
// distance_factor = 8/(1 + manhattan(state, goal)), and
// balance_penalty = -2 |sr0 - sr1|.
double intrinsic_reward(grid::Cell state, grid::Cell goal,
                        double success_rate_0, double success_rate_1,
                        const AgentParams& params);

// 10 * ((d0 - d0') + (d1 - d1')): positive when the team net-approaches
// the goal, negative when it net-retreats.
double cooperative_bonus(int prev_d0, int prev_d1, int next_d0, int next_d1);

// Adds eta * drive / max(0.5, 1 + beta * variance) * e^{-gamma * delta_state}
// * M to every row of W_a, then clips W_a entries to [-clip_bound, clip_bound].
void plasticity_update(AgentWeights& weights, double total_drive,
                       double variance, double delta_state,
                       const memory::CombinedMemory& memory,
                       const AgentParams& params);

// max(epsilon_min_stage, epsilon * 0.995); applied once per episode.
double decay_epsilon(double epsilon, double epsilon_min_stage);

}  // namespace qardns::agent
