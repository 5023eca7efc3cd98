#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <catch2/catch_amalgamated.hpp>

#include "kcbs/quantum.hpp"

using namespace kcbs;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kTol = 1e-12;
const double kSqrt5 = std::sqrt(5.0);
const double kCaseIII = std::pow((kSqrt5 - 1) / 2, 2) / 3;

// For (1/sqrt3) sum_k |k>|k> with real vectors, p11 = <a|b>^2 / 3.
double closed_form_p11(const UnitVector3& a, const UnitVector3& b) {
  double o = dot(a, b);
  return o * o / 3.0;
}

std::array<QutritState, 3> rotated_basis(const Eigen::Matrix3d& q) {
  auto col = [&](int c) { return QutritState::checked({q(0, c), q(1, c), q(2, c)}, 1e-9); };
  return {col(0), col(1), col(2)};
}

Eigen::Matrix3d random_orthogonal(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = n(rng);
  }
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(m);
  return qr.householderQ();
}

}  // namespace

TEST_CASE("single-particle Klyachko sum is sqrt5", "[quantum]") {
  const auto f = build_pentagram();
  REQUIRE_THAT(single_particle_klyachko_sum(f), WithinAbs(kSqrt5, kTol));
  REQUIRE_THAT(single_particle_klyachko_sum(f), WithinAbs(2.2360680, 1e-7));
  auto psi = QutritState::from_direction(f.psi);
  for (const auto& v : f.vertices) REQUIRE_THAT(born_probability(psi, v), WithinAbs(1.0 / kSqrt5, kTol));
}

TEST_CASE("state validation", "[quantum]") {
  REQUIRE_THROWS_AS(QutritState::checked({1.0, 1.0, 0.0}), std::invalid_argument);
  auto e = [](int k) {
    std::array<double, 3> a{};
    a[k] = 1.0;
    return QutritState::checked(a);
  };
  std::array<QutritState, 3> bad{e(0), e(0), e(2)};
  REQUIRE_THROWS_AS(make_entangled_state(bad), std::invalid_argument);
  std::array<double, 9> amp{};
  amp[0] = 1.0;
  amp[4] = 1.0;
  REQUIRE_THROWS_AS(EntangledState::checked(amp, {e(0), e(1), e(2)}), std::invalid_argument);
  const auto psi = canonical_entangled_state();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      REQUIRE_THAT(psi.amplitude(i, j), WithinAbs(i == j ? 1.0 / std::sqrt(3.0) : 0.0, kTol));
    }
  }
}

TEST_CASE("joint distributions match the closed form", "[quantum][oracle]") {
  const auto f = build_pentagram();
  const auto psi = canonical_entangled_state();
  for (int a = 1; a <= 5; ++a) {
    for (int b = 1; b <= 5; ++b) {
      auto j = joint_distribution(psi, Vertex(a), Vertex(b), f);
      double p11 = closed_form_p11(f.vertex(Vertex(a)), f.vertex(Vertex(b)));
      REQUIRE_THAT(j.p11, WithinAbs(p11, kTol));
      REQUIRE_THAT(j.p10, WithinAbs(1.0 / 3 - p11, kTol));
      REQUIRE_THAT(j.p01, WithinAbs(1.0 / 3 - p11, kTol));
      REQUIRE_THAT(j.p00, WithinAbs(1.0 / 3 + p11, kTol));
      REQUIRE_THAT(j.p11 + j.p10 + j.p01 + j.p00, WithinAbs(1.0, kTol));
      // No signalling.
      REQUIRE_THAT(j.a_marginal(), WithinAbs(1.0 / 3, kTol));
      REQUIRE_THAT(j.b_marginal(), WithinAbs(1.0 / 3, kTol));
    }
  }
}

TEST_CASE("the three measurement cases", "[quantum]") {
  const auto f = build_pentagram();
  const auto psi = canonical_entangled_state();
  for (int k = 1; k <= 5; ++k) {
    Vertex v(k);
    REQUIRE_THAT(joint_distribution(psi, v, v, f).agreement(), WithinAbs(1.0, kTol));
    REQUIRE_THAT(joint_distribution(psi, v, v.shifted(1), f).p11, WithinAbs(0.0, kTol));
    REQUIRE_THAT(joint_distribution(psi, v, v.shifted(2), f).p11, WithinAbs(kCaseIII, kTol));
  }
  REQUIRE_THAT(kCaseIII, WithinAbs(0.12732, 5e-6));
  REQUIRE_THAT(pentagon_sum_quantum(psi, f), WithinAbs(5 * kCaseIII, kTol));
  REQUIRE_THAT(pentagon_sum_quantum(psi, f), WithinAbs(0.636610, 1e-5));
  REQUIRE(pentagon_sum_quantum(psi, f) < 2.0 / 3);
}

TEST_CASE("the entangled state looks the same in every orthonormal basis", "[quantum][property]") {
  const auto f = build_pentagram();
  const auto reference = canonical_entangled_state();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto psi = make_entangled_state(rotated_basis(random_orthogonal(rng)));
    for (std::size_t i = 0; i < 9; ++i) {
      REQUIRE_THAT(psi.amplitudes()[i], WithinAbs(reference.amplitudes()[i], 1e-12));
    }
    for (int a = 1; a <= 5; ++a) {
      for (int b = 1; b <= 5; ++b) {
        auto j = joint_distribution(psi, Vertex(a), Vertex(b), f);
        REQUIRE_THAT(j.p11, WithinAbs(joint_distribution(reference, Vertex(a), Vertex(b), f).p11, 1e-12));
      }
    }
  }
}

TEST_CASE("CHSH correlators", "[quantum]") {
  const auto f = build_pentagram();
  const auto psi = canonical_entangled_state();
  const double pentagon = (5.0 - 2.0 * kSqrt5) / 3.0;
  for (int k = 1; k <= 5; ++k) {
    Vertex v(k);
    REQUIRE_THAT(chsh_correlator(psi, v, v, f), WithinAbs(1.0, kTol));
    REQUIRE_THAT(chsh_correlator(psi, v, v.shifted(1), f), WithinAbs(-1.0 / 3, kTol));
    REQUIRE_THAT(chsh_correlator(psi, v, v.shifted(2), f), WithinAbs(pentagon, kTol));
    REQUIRE(std::abs(chsh_correlator(psi, v, v.shifted(2), f)) <= 1.0 / 3);
  }
  REQUIRE_THAT(pentagon, WithinAbs(0.17595468, 1e-8));
}

TEST_CASE("max CHSH over all quadruples does not exceed 2", "[quantum][oracle]") {
  const auto f = build_pentagram();
  const auto m = max_chsh(canonical_entangled_state(), f);

  // Oracle: E(a, b) = 4 <a|b>^2 / 3 - 1/3, scanned independently.
  double best = 0.0;
  auto E = [&](int a, int b) {
    double o = dot(f.vertex(Vertex(a)), f.vertex(Vertex(b)));
    return 4.0 * o * o / 3.0 - 1.0 / 3.0;
  };
  for (int x = 1; x <= 5; ++x)
    for (int xp = 1; xp <= 5; ++xp)
      for (int y = 1; y <= 5; ++y)
        for (int yp = 1; yp <= 5; ++yp)
          best = std::max(best, std::abs(E(x, y) + E(x, yp) + E(xp, y) - E(xp, yp)));

  REQUIRE_THAT(m.value, WithinAbs(best, kTol));
  REQUIRE(m.value <= 2.0 + kTol);
  REQUIRE_THAT(m.value, WithinAbs(2.0, kTol));
  const double at_argmax = chsh_correlator(canonical_entangled_state(), Vertex(m.x), Vertex(m.y), f) +
                           chsh_correlator(canonical_entangled_state(), Vertex(m.x), Vertex(m.y_prime), f) +
                           chsh_correlator(canonical_entangled_state(), Vertex(m.x_prime), Vertex(m.y), f) -
                           chsh_correlator(canonical_entangled_state(), Vertex(m.x_prime), Vertex(m.y_prime), f);
  REQUIRE_THAT(std::abs(at_argmax), WithinAbs(m.value, kTol));
}
