#include "qardns/memory.hpp"

#include <cmath>
#include <stdexcept>

namespace qardns::memory {

namespace {

void check_alpha(double alpha, const char* name) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace

Vec8 update_short(const Vec8& memory, const Vec3& state, const Mat8x3& W_s,
                  double alpha_s) {
  check_alpha(alpha_s, "alpha_s");
  return alpha_s * memory + (1.0 - alpha_s) * (W_s * state);
}

Vec16 update_long(const Vec16& memory, const Vec3& state, const Mat16x3& W_l,
                  double alpha_l) {
  check_alpha(alpha_l, "alpha_l");
  return alpha_l * memory + (1.0 - alpha_l) * (W_l * state);
}

SharedMemory update_shared(const SharedMemory& memory, const Vec3& s1,
                           const Vec3& s2, const Mat8x6& W_shared,
                           double alpha_shared) {
  check_alpha(alpha_shared, "alpha_shared");
  Eigen::Matrix<double, 6, 1> joint;
  joint << s1, s2;
  SharedMemory out;
  out.values =
      alpha_shared * memory.values + (1.0 - alpha_shared) * (W_shared * joint);
  return out;
}

AttentionGates attention_gates(const Vec8& M_s, const Vec16& M_l,
                               const Vec8& W_att_s, const Vec16& W_att_l) {
  AttentionGates gates;
  gates.w_s = std::tanh(W_att_s.dot(M_s));
  gates.w_l = W_att_l.dot(M_l);
  return gates;
}

CombinedMemory combine(const Vec8& M_s, const Vec16& M_l,
                       const SharedMemory& shared,
                       const AttentionGates& gates) {
  CombinedMemory out;
  out.values << gates.w_s * M_s, gates.w_l * M_l, shared.values;
  return out;
}

}  // namespace qardns::memory
