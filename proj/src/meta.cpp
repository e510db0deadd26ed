#include "qardns/meta.hpp"

#include <algorithm>
#include <cmath>

namespace qardns::meta {

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

MetaWeights init_meta_weights(Rng& rng) {
  MetaWeights meta;
  fill_row_major(meta.W1, rng);
  fill_row_major(meta.W2, rng);
  return meta;
}

AdjustResult adjust(double mu, double sigma, const MetaWeights& meta,
                    agent::AgentParams& params) {
  AdjustResult out;
  out.inputs << mu, sigma;
  out.raw_pre = meta.W1 * out.inputs;
  const Vec4 clamped = out.raw_pre.cwiseMax(-kPreActivationBound)
                           .cwiseMin(kPreActivationBound);
  out.hidden = clamped.array().tanh();
  out.adjustments = meta.W2 * out.hidden;

  params.eta = std::clamp(params.eta + kAdjustStep * out.adjustments(0), 0.1,
                          1.5);
  params.curiosity_factor =
      std::clamp(params.curiosity_factor + kAdjustStep * out.adjustments(1),
                 0.1, params.curiosity_ceiling);
  return out;
}

void meta_update(MetaWeights& meta, double reward_trend,
                 const AdjustResult& last) {
  // d(adj0 + adj1)/dW2(j,k) = hidden(k); both output rows share it.
  const Mat2x4 grad_W2 =
      reward_trend * Vec2::Ones() * last.hidden.transpose();

  // Backprop to W1: dL/dhidden(k) = trend * (W2 column sum); through the
  // tanh, zeroed where the pre-activation clamp was active.
  Mat4x2 grad_W1 = Mat4x2::Zero();
  for (int k = 0; k < kHiddenSize; ++k) {
    if (std::abs(last.raw_pre(k)) >= kPreActivationBound) continue;
    const double col_sum = meta.W2(0, k) + meta.W2(1, k);
    const double dtanh = 1.0 - last.hidden(k) * last.hidden(k);
    grad_W1.row(k) =
        reward_trend * col_sum * dtanh * last.inputs.transpose();
  }

  meta.W2 += meta.learning_rate * grad_W2;
  meta.W1 += meta.learning_rate * grad_W1;
  meta.W1 = meta.W1.cwiseMax(-kWeightClip).cwiseMin(kWeightClip);
  meta.W2 = meta.W2.cwiseMax(-kWeightClip).cwiseMin(kWeightClip);
}

}  // namespace qardns::meta
