#include <cmath>
#include <numbers>

#include <catch2/catch_amalgamated.hpp>

#include "kcbs/geometry.hpp"

using namespace kcbs;
using Catch::Matchers::WithinAbs;

namespace {
const double kSqrt5 = std::sqrt(5.0);
constexpr double kTol = 1e-12;
}  // namespace

TEST_CASE("vertex labels are checked", "[geometry]") {
  REQUIRE_THROWS_AS(Vertex(0), std::out_of_range);
  REQUIRE_THROWS_AS(Vertex(6), std::out_of_range);
  REQUIRE(Vertex(5).shifted(1) == Vertex(1));
  REQUIRE(Vertex(1).shifted(-2) == Vertex(4));
  REQUIRE(Vertex(3).index() == 2);
}

TEST_CASE("edge tables", "[geometry]") {
  for (const auto& [a, b] : pentagram_edges()) {
    REQUIRE(is_pentagram_edge(a, b));
    REQUIRE(is_pentagram_edge(b, a));
    REQUIRE_FALSE(is_pentagon_edge(a, b));
  }
  for (const auto& [a, b] : pentagon_edges()) {
    REQUIRE(is_pentagon_edge(a, b));
    REQUIRE_FALSE(is_pentagram_edge(a, b));
  }
  REQUIRE(pentagon_edges()[0].first == Vertex(1));
  REQUIRE(pentagon_edges()[0].second == Vertex(4));
  REQUIRE_FALSE(is_pentagram_edge(Vertex(2), Vertex(2)));
}

TEST_CASE("canonical pentagram satisfies the exact identities", "[geometry]") {
  const PentagramFrame f = build_pentagram();

  SECTION("s = 1 / (sqrt2 cos(pi/10))") {
    REQUIRE_THAT(f.s, WithinAbs(1.0 / (std::sqrt(2.0) * std::cos(std::numbers::pi / 10)), kTol));
    REQUIRE_THAT(f.s, WithinAbs(0.743496, 1e-6));
  }
  SECTION("pentagram edges are orthogonal") {
    for (const auto& [a, b] : pentagram_edges()) {
      REQUIRE_THAT(dot(f.vertex(a), f.vertex(b)), WithinAbs(0.0, kTol));
    }
  }
  SECTION("<v_i, psi>^2 = 1/sqrt5 and cos phi = r") {
    for (const auto& v : f.vertices) {
      double o = dot(v, f.psi);
      REQUIRE_THAT(o * o, WithinAbs(1.0 / kSqrt5, kTol));
      REQUIRE_THAT(o * o, WithinAbs(0.4472136, 1e-7));
    }
    REQUIRE_THAT(std::cos(f.phi), WithinAbs(f.r, kTol));
    REQUIRE_THAT(f.r * f.r, WithinAbs(1.0 / kSqrt5, kTol));
    REQUIRE_THAT(f.r * f.r, WithinAbs(1.0 - f.s * f.s, kTol));
  }
  SECTION("unit radii") {
    for (const auto& v : f.vertices) REQUIRE_THAT(v.vec().norm(), WithinAbs(1.0, kTol));
  }
  SECTION("pentagon overlap is the inverse golden ratio") {
    for (int k = 1; k <= 5; ++k) {
      Vertex v(k);
      REQUIRE_THAT(dot(f.vertex(v), f.vertex(v.shifted(2))), WithinAbs((kSqrt5 - 1) / 2, kTol));
    }
    REQUIRE_THAT(std::cos(f.chi), WithinAbs((kSqrt5 - 1) / 2, kTol));
  }
  SECTION("r^2 + s^2 = 1") { REQUIRE_THAT(f.r * f.r + f.s * f.s, WithinAbs(1.0, kTol)); }
}

TEST_CASE("frame is symmetric under relabelling plus rotation", "[geometry][property]") {
  const PentagramFrame f = build_pentagram();
  for (int k = 1; k <= 5; ++k) {
    Vertex v(k);
    Vector3 rotated = rotate_z(f.vertex(v).vec(), 4.0 * std::numbers::pi / 5.0);
    REQUIRE((rotated - f.vertex(v.shifted(1)).vec()).norm() < kTol);
  }
  REQUIRE(frame_residuals(f).max() < kTol);
}

TEST_CASE("angle_between", "[geometry]") {
  const PentagramFrame f = build_pentagram();
  const double chi = angle_between(f.vertex(Vertex(1)), f.vertex(Vertex(3)));
  REQUIRE_THAT(std::sin(chi / 2), WithinAbs(std::sqrt(2.0) * (kSqrt5 - 1) / 4, kTol));
  REQUIRE_THAT(std::sin(chi / 2), WithinAbs(0.437016, 1e-6));
  REQUIRE_THAT(angle_between(f.psi, f.psi), WithinAbs(0.0, 1e-7));
  REQUIRE_THAT(angle_between(f.vertex(Vertex(1)), f.vertex(Vertex(2))),
               WithinAbs(std::numbers::pi / 2, kTol));

  SECTION("clamps rounding just past 1") {
    auto u = UnitVector3::checked({1.0 + 1e-15, 0.0, 0.0});
    REQUIRE(angle_between(u, u) == 0.0);
  }
  SECTION("rejects non-unit input") {
    REQUIRE_THROWS_AS(angle_between(Vector3{2.0, 0.0, 0.0}, Vector3{1.0, 0.0, 0.0}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(UnitVector3::checked({NAN, 0.0, 0.0}), std::invalid_argument);
    REQUIRE_NOTHROW(angle_between(Vector3{1.0, 0.0, 0.0}, Vector3{0.0, 1.0, 0.0}));
  }
}

TEST_CASE("context bases", "[geometry]") {
  const PentagramFrame f = build_pentagram();
  const auto bases = context_bases(f);

  SECTION("the first basis completes edge 12") {
    const auto& b = bases[0];
    REQUIRE(b.edge.first == Vertex(1));
    REQUIRE(b.edge.second == Vertex(2));
    REQUIRE_THAT(dot(b.triple[2], f.vertex(Vertex(1))), WithinAbs(0.0, kTol));
    REQUIRE_THAT(dot(b.triple[2], f.vertex(Vertex(2))), WithinAbs(0.0, kTol));
  }
  SECTION("Gram matrix of each triple is the identity") {
    for (const auto& b : bases) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          REQUIRE_THAT(dot(b.triple[i], b.triple[j]), WithinAbs(i == j ? 1.0 : 0.0, kTol));
        }
      }
    }
  }
  SECTION("every vertex belongs to exactly two contexts") {
    for (int k = 1; k <= 5; ++k) {
      int hits = 0;
      for (const auto& b : bases) hits += (b.edge.first == Vertex(k) || b.edge.second == Vertex(k));
      REQUIRE(hits == 2);
    }
  }
  SECTION("a corrupted frame with parallel edge vertices is rejected") {
    PentagramFrame broken = f;
    broken.vertices[1] = broken.vertices[0];
    REQUIRE_THROWS_AS(context_bases(broken), std::invalid_argument);
  }
}
