// baseline.hpp
// The classical comparison arm: per-agent tabular Q-learning with the
// same environment, ε schedule, and metrics pipeline as the main
// learner, so comparisons differ only in the learner.

#pragma once

#include <Eigen/Dense>

#include "qardns/gridworld.hpp"
#include "qardns/rng.hpp"

namespace qardns::baseline {

inline constexpr double kAlpha = 0.1;
inline constexpr double kGamma = 0.9;

class QTable {
 public:
  QTable(int num_cells, int num_actions)
      : values_(Eigen::MatrixXd::Zero(num_cells, num_actions)) {}

  double value(std::uint32_t cell, int action) const {
    return values_(cell, action);
  }
  double max_value(std::uint32_t cell) const {
    return values_.row(cell).maxCoeff();
  }
  // Highest-valued action, ties to the lowest index.
  int greedy_action(std::uint32_t cell) const;

  // Q(s,a) += alpha * (reward + gamma * max_a' Q(s',a') - Q(s,a)).
  void update(std::uint32_t cell, int action, double reward,
              std::uint32_t next_cell, double alpha = kAlpha,
              double gamma = kGamma);

  int num_actions() const { return static_cast<int>(values_.cols()); }

 private:
  Eigen::MatrixXd values_;
};

// Uniform with probability epsilon, greedy otherwise.
grid::Action select_action(const QTable& table, std::uint32_t cell,
                           double epsilon, Rng& policy_rng);

}  // namespace qardns::baseline
