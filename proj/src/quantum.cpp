#include "qardns/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qardns::quantum {

StateVector StateVector::zero_state(int n_qubits) {
  if (n_qubits < 1) {
    throw std::invalid_argument("zero_state: n_qubits must be positive");
  }
  StateVector s;
  s.n_qubits = n_qubits;
  s.amplitudes.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
  s.amplitudes[0] = {1.0, 0.0};
  return s;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::norm(a);
  return std::sqrt(sum);
}

CircuitAngles::CircuitAngles(std::vector<double> thetas) : thetas_(std::move(thetas)) {
  for (double& t : thetas_) {
    if (std::isnan(t)) {
      t = 0.0;
    } else {
      t = std::clamp(t, -kMaxAngle, kMaxAngle);
    }
  }
}

StateVector apply_ry(const StateVector& state, int qubit, double theta) {
  if (qubit < 0 || qubit >= state.n_qubits) {
    throw std::invalid_argument("apply_ry: qubit index " + std::to_string(qubit) +
                                " out of range for " + std::to_string(state.n_qubits) +
                                " qubits");
  }
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);

  // Qubit 0 is the most significant bit of the outcome index.
  const std::size_t stride = std::size_t{1} << (state.n_qubits - 1 - qubit);

  StateVector out = state;
  for (std::size_t base = 0; base < out.amplitudes.size(); base += 2 * stride) {
    for (std::size_t offset = 0; offset < stride; ++offset) {
      const std::size_t i0 = base + offset;
      const std::size_t i1 = i0 + stride;
      const auto a0 = state.amplitudes[i0];
      const auto a1 = state.amplitudes[i1];
      out.amplitudes[i0] = c * a0 - s * a1;
      out.amplitudes[i1] = s * a0 + c * a1;
    }
  }
  return out;
}

StateVector build_action_state(const CircuitAngles& angles) {
  StateVector state = StateVector::zero_state(angles.n_qubits());
  for (int q = 0; q < angles.n_qubits(); ++q) {
    state = apply_ry(state, q, angles.thetas()[q]);
  }
  return state;
}

std::vector<double> exact_probabilities(const StateVector& state) {
  std::vector<double> probs(state.amplitudes.size());
  for (std::size_t k = 0; k < probs.size(); ++k) {
    probs[k] = std::norm(state.amplitudes[k]);
  }
  return probs;
}

ShotCounts measure(const StateVector& state, std::uint64_t shots, Rng& rng) {
  if (shots == 0) {
    throw std::invalid_argument("measure: shots must be at least 1");
  }
  const std::vector<double> probs = exact_probabilities(state);
  std::vector<double> cumulative(probs.size());
  double total = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    total += probs[k];
    cumulative[k] = total;
  }
  cumulative.back() = total;  // guards the final bucket against rounding

  ShotCounts result;
  result.shots = shots;
  result.counts.assign(probs.size(), 0);
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t k = static_cast<std::size_t>(it - cumulative.begin());
    if (k >= probs.size()) k = probs.size() - 1;
    ++result.counts[k];
  }
  return result;
}

}  // namespace qardns::quantum
