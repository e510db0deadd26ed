// memory.hpp
// The cognitive memory stack: per-agent short-term (8-dim) and long-term
// (16-dim) memories with exponential-decay updates, a cross-agent shared
// memory (8-dim), scalar attention gating, and concatenation into the
// 32-dim combined memory that drives the action circuit.

#pragma once

#include <Eigen/Dense>

namespace qardns::memory {

using Vec3 = Eigen::Vector3d;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Vec16 = Eigen::Matrix<double, 16, 1>;
using Vec32 = Eigen::Matrix<double, 32, 1>;
using Mat8x3 = Eigen::Matrix<double, 8, 3>;
using Mat16x3 = Eigen::Matrix<double, 16, 3>;
using Mat8x6 = Eigen::Matrix<double, 8, 6>;

inline constexpr int kShortDim = 8;
inline constexpr int kLongDim = 16;
inline constexpr int kSharedDim = 8;
inline constexpr int kCombinedDim = kShortDim + kLongDim + kSharedDim;

struct MemoryBank {
  Vec8 short_term = Vec8::Zero();
  Vec16 long_term = Vec16::Zero();
  int owner = 0;
};

struct SharedMemory {
  Vec8 values = Vec8::Zero();
};

struct CombinedMemory {
  Vec32 values = Vec32::Zero();
};

struct AttentionGates {
  double w_s = 0.0;  // tanh-squashed short-term gate, in (-1, 1)
  double w_l = 0.0;  // linear long-term gate
};

// memory' = alpha * memory + (1 - alpha) * (W * state).
// Throws std::invalid_argument when alpha is outside [0, 1].
Vec8 update_short(const Vec8& memory, const Vec3& state, const Mat8x3& W_s,
                  double alpha_s);
Vec16 update_long(const Vec16& memory, const Vec3& state, const Mat16x3& W_l,
                  double alpha_l);

// shared' = alpha_shared * shared + (1 - alpha_shared) * W_shared * [s1; s2].
SharedMemory update_shared(const SharedMemory& memory, const Vec3& s1,
                           const Vec3& s2, const Mat8x6& W_shared,
                           double alpha_shared = 0.9);

// w_s = tanh(W_att_s . M_s); w_l = W_att_l . M_l (deliberately un-squashed).
AttentionGates attention_gates(const Vec8& M_s, const Vec16& M_l,
                               const Vec8& W_att_s, const Vec16& W_att_l);

// [w_s * M_s | w_l * M_l | shared], a 32-vector.
CombinedMemory combine(const Vec8& M_s, const Vec16& M_l,
                       const SharedMemory& shared, const AttentionGates& gates);

}  // namespace qardns::memory
