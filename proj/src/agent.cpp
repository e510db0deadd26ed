#include "qardns/agent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qardns/quantum.hpp"

namespace qardns::agent {

int num_actions(int n_qubits) {
  switch (n_qubits) {
    case 2:
      return 4;
    case 3:
      return grid::kNumActions;
    default:
      throw std::invalid_argument("n_qubits must be 2 or 3");
  }
}

namespace {

template <typename Matrix>
void fill_row_major(Matrix& m, Rng& rng) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      m(r, c) = rng.uniform_real(-0.1, 0.1);
    }
  }
}

}  // namespace

AgentWeights init_weights(int n_qubits, Rng& rng) {
  num_actions(n_qubits);  // validates the qubit count
  AgentWeights w;
  w.W_a.resize(n_qubits, Eigen::NoChange);
  fill_row_major(w.W_s, rng);
  fill_row_major(w.W_l, rng);
  fill_row_major(w.W_a, rng);
  fill_row_major(w.W_att_s, rng);
  fill_row_major(w.W_att_l, rng);
  return w;
}

RewardWindow::RewardWindow(std::size_t capacity)
    : values_(capacity, 0.0), capacity_(capacity) {
  if (capacity == 0) {
    throw std::invalid_argument("RewardWindow capacity must be positive");
  }
}

void RewardWindow::push(double reward) {
  values_[head_] = reward;
  head_ = (head_ + 1) % capacity_;
  if (count_ < capacity_) ++count_;
}

double RewardWindow::mean() const {
  if (count_ == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < count_; ++i) sum += values_[i];
  return sum / static_cast<double>(count_);
}

double RewardWindow::variance() const {
  if (count_ == 0) return 0.0;
  const double mu = mean();
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < count_; ++i) {
    const double d = values_[i] - mu;
    sum_sq += d * d;
  }
  return sum_sq / static_cast<double>(count_);
}

double RewardWindow::stddev() const { return std::sqrt(variance()); }

std::vector<double> RewardWindow::contents() const {
  std::vector<double> out;
  out.reserve(count_);
  const std::size_t oldest = count_ < capacity_ ? 0 : head_;
  for (std::size_t i = 0; i < count_; ++i) {
    out.push_back(values_[(oldest + i) % capacity_]);
  }
  return out;
}

int greedy_action_from_counts(const std::vector<std::uint64_t>& counts,
                              int actions) {
  int best = -1;
  std::uint64_t best_count = 0;
  for (int a = 0; a < actions && a < static_cast<int>(counts.size()); ++a) {
    const std::uint64_t c = counts[static_cast<std::size_t>(a)];
    if (c > best_count) {
      best = a;
      best_count = c;
    }
  }
  return best;
}

grid::Action select_action(const AgentWeights& weights,
                           const memory::CombinedMemory& memory,
                           const AgentParams& params, Rng& policy_rng,
                           Rng& shot_rng) {
  const int actions = num_actions(params.n_qubits);

  if (policy_rng.uniform() < params.epsilon) {
    return static_cast<grid::Action>(policy_rng.uniform_int(0, actions - 1));
  }

  const Eigen::VectorXd theta = weights.W_a * memory.values;
  const quantum::CircuitAngles angles(
      std::vector<double>(theta.data(), theta.data() + theta.size()));
  const quantum::StateVector state = quantum::build_action_state(angles);
  const quantum::ShotCounts counts =
      quantum::measure(state, static_cast<std::uint64_t>(params.shots),
                       shot_rng);

  // Outcomes beyond the action set (6 and 7 with three qubits) are
  // dropped; the argmax over the remainder equals the argmax of the
  // renormalized distribution.
  const int best = greedy_action_from_counts(counts.counts, actions);
  if (best < 0) {
    // Every shot landed outside the action outcomes.
    return static_cast<grid::Action>(policy_rng.uniform_int(0, actions - 1));
  }
  return static_cast<grid::Action>(best);
}

double intrinsic_reward(grid::Cell state, grid::Cell goal,
                        double success_rate_0, double success_rate_1,
                        const AgentParams& params) {
  const double norm = std::sqrt(static_cast<double>(
      state.x * state.x + state.y * state.y + state.z * state.z));
  const double clamped = std::clamp(norm, -500.0, 500.0);
  const double novelty = 1.0 / (1.0 + std::exp(-clamped));
  const double distance =
      static_cast<double>(grid::manhattan_distance(state, goal));
  const double distance_factor = 8.0 / (1.0 + distance);
  const double balance_penalty =
      -2.0 * std::abs(success_rate_0 - success_rate_1);
  return params.curiosity_factor * novelty * distance_factor + balance_penalty;
}

double cooperative_bonus(int prev_d0, int prev_d1, int next_d0, int next_d1) {
  return 10.0 * (static_cast<double>(prev_d0 - next_d0) +
                 static_cast<double>(prev_d1 - next_d1));
}

void plasticity_update(AgentWeights& weights, double total_drive,
                       double variance, double delta_state,
                       const memory::CombinedMemory& memory,
                       const AgentParams& params) {
  const double divisor = std::max(0.5, 1.0 + params.beta * variance);
  const double scale = params.eta * total_drive / divisor *
                       std::exp(-params.gamma_penalty * delta_state);
  weights.W_a.rowwise() += (scale * memory.values).transpose();
  weights.W_a = weights.W_a.cwiseMax(-params.clip_bound)
                    .cwiseMin(params.clip_bound);
}

double decay_epsilon(double epsilon, double epsilon_min_stage) {
  return std::max(epsilon_min_stage, epsilon * 0.995);
}

}  // namespace qardns::agent
