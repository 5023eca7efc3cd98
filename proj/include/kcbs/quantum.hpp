#pragma once

#include <array>

#include "kcbs/geometry.hpp"

namespace kcbs {

/// Real unit vector in the three-dimensional state space.
class QutritState {
public:
  /// Throws std::invalid_argument unless the norm is 1 within `tolerance`.
  static QutritState checked(const std::array<double, 3>& amplitudes,
                             double tolerance = kDefaultTolerance);
  static QutritState from_direction(const UnitVector3& u) noexcept;

  [[nodiscard]] const std::array<double, 3>& amplitudes() const noexcept { return a_; }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return a_[i]; }

private:
  explicit QutritState(const std::array<double, 3>& a) : a_(a) {}
  std::array<double, 3> a_;
};

/// |<direction|state>|^2
double born_probability(const QutritState& state, const UnitVector3& direction) noexcept;

/// Sum over the five vertices of born_probability(psi, v_i).
double single_particle_klyachko_sum(const PentagramFrame& frame);

/// Two-particle pure state: amplitude (i, j) multiplies e_i (x) e_j in the
/// computational product basis, stored row-major at 3*i + j.
class EntangledState {
public:
  /// Throws std::invalid_argument unless the norm is 1 within `tolerance`.
  static EntangledState checked(const std::array<double, 9>& amplitudes,
                                const std::array<QutritState, 3>& basis,
                                double tolerance = kDefaultTolerance);

  [[nodiscard]] const std::array<double, 9>& amplitudes() const noexcept { return amp_; }
  [[nodiscard]] double amplitude(std::size_t i, std::size_t j) const noexcept {
    return amp_[3 * i + j];
  }
  /// The basis the state was written in when it was made.
  [[nodiscard]] const std::array<QutritState, 3>& basis() const noexcept { return basis_; }

private:
  EntangledState(const std::array<double, 9>& amp, const std::array<QutritState, 3>& basis)
      : amp_(amp), basis_(basis) {}
  std::array<double, 9> amp_;
  std::array<QutritState, 3> basis_;
};

/// (1/sqrt3) sum_k |alpha_k>|alpha_k>, re-expressed in the computational
/// product basis. Throws std::invalid_argument if `basis` is not
/// orthonormal within `tolerance`.
EntangledState make_entangled_state(const std::array<QutritState, 3>& basis,
                                    double tolerance = kDefaultTolerance);
/// make_entangled_state over the computational basis.
EntangledState canonical_entangled_state();

struct JointDistribution {
  double p11 = 0.0;
  double p10 = 0.0;  ///< A reads 1, B reads 0
  double p01 = 0.0;
  double p00 = 0.0;

  [[nodiscard]] double a_marginal() const noexcept { return p11 + p10; }
  [[nodiscard]] double b_marginal() const noexcept { return p11 + p01; }
  [[nodiscard]] double agreement() const noexcept { return p11 + p00; }
};

/// Outcome distribution for measuring the vertex-a projector on particle A
/// and the vertex-b projector on particle B. Computed from the 9x9 operators
/// P_a (x) P_b, P_a (x) 1 and 1 (x) P_b applied to the amplitude vector.
JointDistribution joint_distribution(const EntangledState& state, Vertex a, Vertex b,
                                     const PentagramFrame& frame);

/// Sum of p11 over the pentagon edges e1..e5.
double pentagon_sum_quantum(const EntangledState& state, const PentagramFrame& frame);

/// <XY> with X = 2 P_a - 1, Y = 2 P_b - 1.
double chsh_correlator(const EntangledState& state, Vertex a, Vertex b,
                       const PentagramFrame& frame);

struct ChshMaximum {
  double value = 0.0;
  // Arguments of the first maximizer found, scanning x, x', y, y' in
  // lexicographic label order.
  int x = 1;
  int x_prime = 1;
  int y = 1;
  int y_prime = 1;
};

/// max |<XY> + <XY'> + <X'Y> - <X'Y'>| over all 5^4 vertex choices.
ChshMaximum max_chsh(const EntangledState& state, const PentagramFrame& frame);

}  // namespace kcbs
