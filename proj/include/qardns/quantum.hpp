// quantum.hpp
// Exact statevector simulation of the action-selection circuit: RY
// rotations on each qubit of an n-qubit register, exact outcome
// probabilities, and shot-based sampling.
//
// Outcome labeling: index k reads qubit 0 as the most significant bit,
// so for n = 2 the state |10> (qubit 0 = 1, qubit 1 = 0) is index 2.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qardns/rng.hpp"

namespace qardns::quantum {

struct StateVector {
  std::vector<std::complex<double>> amplitudes;  // size 2^n_qubits
  int n_qubits = 0;

  static StateVector zero_state(int n_qubits);  // |0...0>
  double norm() const;
};

// Rotation angles for one circuit, one per qubit. Angles are clamped to
// [-8*pi, 8*pi] at construction (non-finite inputs clamp too), so a
// CircuitAngles value is always safe to feed to the simulator.
class CircuitAngles {
 public:
  explicit CircuitAngles(std::vector<double> thetas);

  const std::vector<double>& thetas() const { return thetas_; }
  int n_qubits() const { return static_cast<int>(thetas_.size()); }

  static constexpr double kMaxAngle = 8.0 * 3.14159265358979323846;

 private:
  std::vector<double> thetas_;
};

struct ShotCounts {
  std::vector<std::uint64_t> counts;  // size 2^n_qubits, sums to shots
  std::uint64_t shots = 0;
};

// Applies RY(theta) to one qubit of the register. Throws
// std::invalid_argument if the qubit index is out of range.
StateVector apply_ry(const StateVector& state, int qubit, double theta);

// |0...0> followed by RY(theta_i) on qubit i for each i.
StateVector build_action_state(const CircuitAngles& angles);

// Entry k is |amplitudes[k]|^2.
std::vector<double> exact_probabilities(const StateVector& state);

// Draws `shots` independent samples from exact_probabilities(state).
// Throws std::invalid_argument when shots == 0.
ShotCounts measure(const StateVector& state, std::uint64_t shots, Rng& rng);

}  // namespace qardns::quantum
