// meta.hpp
// The two-layer meta-cognitive adapter. Once per step it reads the
// recent reward mean and standard deviation, pushes them through a tiny
// tanh network, and nudges the learning rate and curiosity factor. Once
// per episode its weights hill-climb the change in windowed mean reward.

#pragma once

#include <Eigen/Dense>

#include "qardns/agent.hpp"
#include "qardns/rng.hpp"

namespace qardns::meta {

inline constexpr int kHiddenSize = 4;
inline constexpr double kPreActivationBound = 10.0;
inline constexpr double kAdjustStep = 0.05;
inline constexpr double kWeightClip = 5.0;

using Mat4x2 = Eigen::Matrix<double, kHiddenSize, 2>;
using Mat2x4 = Eigen::Matrix<double, 2, kHiddenSize>;
using Vec4 = Eigen::Matrix<double, kHiddenSize, 1>;
using Vec2 = Eigen::Vector2d;

struct MetaWeights {
  Mat4x2 W1 = Mat4x2::Zero();
  Mat2x4 W2 = Mat2x4::Zero();
  double learning_rate = 0.01;
};

// Forward-pass record kept for the end-of-episode gradient step.
struct AdjustResult {
  Vec2 inputs = Vec2::Zero();          // [mu, sigma]
  Vec4 raw_pre = Vec4::Zero();         // W1 * inputs, before clamping
  Vec4 hidden = Vec4::Zero();          // tanh(clamped pre-activation)
  Vec2 adjustments = Vec2::Zero();     // W2 * hidden
};

// Uniform [-0.1, 0.1] entries, W1 then W2, each filled row-major.
MetaWeights init_meta_weights(Rng& rng);

// hidden = tanh(clamp(W1 [mu, sigma], ±10)); adjustments = W2 hidden;
// eta moves by 0.05 * adjustments[0] clipped to [0.1, 1.5], curiosity by
// 0.05 * adjustments[1] clipped to [0.1, params.curiosity_ceiling].
// Mutates params.eta / params.curiosity_factor and returns the forward
// record.
AdjustResult adjust(double mu, double sigma, const MetaWeights& meta,
                    agent::AgentParams& params);

// Gradient ascent on L = reward_trend * (adjustments[0] + adjustments[1]),
// differentiated through the recorded forward pass. Rows whose
// pre-activation hit the ±10 clamp receive no W1 update. Both gradients
// are taken at the current weights, then applied together and clipped to
// [-5, 5].
void meta_update(MetaWeights& meta, double reward_trend,
                 const AdjustResult& last);

}  // namespace qardns::meta
