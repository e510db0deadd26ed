#include "qardns/baseline.hpp"

namespace qardns::baseline {

int QTable::greedy_action(std::uint32_t cell) const {
  int best = 0;
  double best_value = values_(cell, 0);
  for (int a = 1; a < num_actions(); ++a) {
    if (values_(cell, a) > best_value) {
      best = a;
      best_value = values_(cell, a);
    }
  }
  return best;
}

void QTable::update(std::uint32_t cell, int action, double reward,
                    std::uint32_t next_cell, double alpha, double gamma) {
  const double target = reward + gamma * max_value(next_cell);
  values_(cell, action) += alpha * (target - values_(cell, action));
}

grid::Action select_action(const QTable& table, std::uint32_t cell,
                           double epsilon, Rng& policy_rng) {
  if (policy_rng.uniform() < epsilon) {
    return static_cast<grid::Action>(
        policy_rng.uniform_int(0, table.num_actions() - 1));
  }
  return static_cast<grid::Action>(table.greedy_action(cell));
}

}  // namespace qardns::baseline
