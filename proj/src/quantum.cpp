#include "kcbs/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace kcbs {

namespace {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec9 = Eigen::Matrix<double, 9, 1>;
using Mat9 = Eigen::Matrix<double, 9, 9>;

Vec3 as_eigen(const UnitVector3& u) { return {u.x(), u.y(), u.z()}; }

Mat3 projector(const UnitVector3& u) {
  Vec3 v = as_eigen(u);
  return v * v.transpose();
}

Mat9 kron(const Mat3& a, const Mat3& b) {
  Mat9 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
  }
  return out;
}

Vec9 as_eigen(const EntangledState& state) {
  return Eigen::Map<const Vec9>(state.amplitudes().data());
}

double expectation(const Vec9& psi, const Mat9& op) { return psi.dot(op * psi); }

// Rounding can leave values like -1e-17 where an exact zero is meant.
double clamp_probability(double p) {
  constexpr double kSlack = 1e-12;
  if (p < -kSlack || p > 1.0 + kSlack) {
    throw std::logic_error("probability out of range: " + std::to_string(p));
  }
  return std::min(std::max(p, 0.0), 1.0);
}

}  // namespace

QutritState QutritState::checked(const std::array<double, 3>& amplitudes, double tolerance) {
  double n2 = 0.0;
  for (double a : amplitudes) {
    if (!std::isfinite(a)) throw std::invalid_argument("qutrit amplitude is not finite");
    n2 += a * a;
  }
  if (std::abs(std::sqrt(n2) - 1.0) > tolerance) {
    throw std::invalid_argument("qutrit state is not normalized");
  }
  return QutritState(amplitudes);
}

QutritState QutritState::from_direction(const UnitVector3& u) noexcept {
  return QutritState({u.x(), u.y(), u.z()});
}

double born_probability(const QutritState& state, const UnitVector3& direction) noexcept {
  double overlap = state[0] * direction.x() + state[1] * direction.y() + state[2] * direction.z();
  return overlap * overlap;
}

double single_particle_klyachko_sum(const PentagramFrame& frame) {
  const QutritState psi = QutritState::from_direction(frame.psi);
  double total = 0.0;
  for (const UnitVector3& v : frame.vertices) total += born_probability(psi, v);
  return total;
}

EntangledState EntangledState::checked(const std::array<double, 9>& amplitudes,
                                       const std::array<QutritState, 3>& basis,
                                       double tolerance) {
  double n2 = 0.0;
  for (double a : amplitudes) {
    if (!std::isfinite(a)) throw std::invalid_argument("amplitude is not finite");
    n2 += a * a;
  }
  if (std::abs(std::sqrt(n2) - 1.0) > tolerance) {
    throw std::invalid_argument("two-particle state is not normalized");
  }
  return EntangledState(amplitudes, basis);
}

EntangledState make_entangled_state(const std::array<QutritState, 3>& basis, double tolerance) {
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      double g = 0.0;
      for (std::size_t k = 0; k < 3; ++k) g += basis[i][k] * basis[j][k];
      if (std::abs(g - (i == j ? 1.0 : 0.0)) > tolerance) {
        throw std::invalid_argument("entangling basis is not orthonormal");
      }
    }
  }
  std::array<double, 9> amp{};
  const double weight = 1.0 / std::sqrt(3.0);
  for (const QutritState& alpha : basis) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) amp[3 * i + j] += weight * alpha[i] * alpha[j];
    }
  }
  return EntangledState::checked(amp, basis, tolerance);
}

EntangledState canonical_entangled_state() {
  return make_entangled_state({QutritState::checked({1.0, 0.0, 0.0}),
                               QutritState::checked({0.0, 1.0, 0.0}),
                               QutritState::checked({0.0, 0.0, 1.0})});
}

JointDistribution joint_distribution(const EntangledState& state, Vertex a, Vertex b,
                                     const PentagramFrame& frame) {
  const Vec9 psi = as_eigen(state);
  const Mat3 pa = projector(frame.vertex(a));
  const Mat3 pb = projector(frame.vertex(b));
  const Mat3 id = Mat3::Identity();

  const double p11 = expectation(psi, kron(pa, pb));
  const double pa_marginal = expectation(psi, kron(pa, id));
  const double pb_marginal = expectation(psi, kron(id, pb));

  JointDistribution d;
  d.p11 = clamp_probability(p11);
  d.p10 = clamp_probability(pa_marginal - p11);
  d.p01 = clamp_probability(pb_marginal - p11);
  d.p00 = clamp_probability(1.0 - pa_marginal - pb_marginal + p11);
  return d;
}

double pentagon_sum_quantum(const EntangledState& state, const PentagramFrame& frame) {
  double total = 0.0;
  for (const auto& [a, b] : pentagon_edges()) total += joint_distribution(state, a, b, frame).p11;
  return total;
}

double chsh_correlator(const EntangledState& state, Vertex a, Vertex b,
                       const PentagramFrame& frame) {
  JointDistribution d = joint_distribution(state, a, b, frame);
  return d.p11 - d.p10 - d.p01 + d.p00;
}

ChshMaximum max_chsh(const EntangledState& state, const PentagramFrame& frame) {
  std::array<std::array<double, 5>, 5> corr{};
  for (int a = 1; a <= 5; ++a) {
    for (int b = 1; b <= 5; ++b) {
      corr[a - 1][b - 1] = chsh_correlator(state, Vertex(a), Vertex(b), frame);
    }
  }
  ChshMaximum best;
  best.value = -1.0;
  for (int x = 0; x < 5; ++x) {
    for (int xp = 0; xp < 5; ++xp) {
      for (int y = 0; y < 5; ++y) {
        for (int yp = 0; yp < 5; ++yp) {
          double v = std::abs(corr[x][y] + corr[x][yp] + corr[xp][y] - corr[xp][yp]);
          if (v > best.value) best = {v, x + 1, xp + 1, y + 1, yp + 1};
        }
      }
    }
  }
  return best;
}

}  // namespace kcbs
