#include "kcbs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kcbs {

namespace {

const double kSqrt5 = std::sqrt(5.0);
const double kInverseGolden = (kSqrt5 - 1.0) / 2.0;

}  // namespace

Vertex::Vertex(int label) : label_(label) {
  if (label < 1 || label > kVertexCount) {
    throw std::out_of_range("vertex label must be in 1..5, got " + std::to_string(label));
  }
}

Vertex Vertex::shifted(int steps) const {
  int zero_based = ((label_ - 1 + steps) % kVertexCount + kVertexCount) % kVertexCount;
  return Vertex(zero_based + 1);
}

const std::array<VertexPair, 5>& pentagram_edges() {
  static const std::array<VertexPair, 5> edges = {{
      {Vertex(1), Vertex(2)},
      {Vertex(2), Vertex(3)},
      {Vertex(3), Vertex(4)},
      {Vertex(4), Vertex(5)},
      {Vertex(5), Vertex(1)},
  }};
  return edges;
}

const std::array<VertexPair, 5>& pentagon_edges() {
  static const std::array<VertexPair, 5> edges = {{
      {Vertex(1), Vertex(4)},
      {Vertex(4), Vertex(2)},
      {Vertex(2), Vertex(5)},
      {Vertex(5), Vertex(3)},
      {Vertex(3), Vertex(1)},
  }};
  return edges;
}

bool is_pentagram_edge(Vertex a, Vertex b) noexcept {
  int d = (b.label() - a.label() + kVertexCount) % kVertexCount;
  return d == 1 || d == 4;
}

bool is_pentagon_edge(Vertex a, Vertex b) noexcept {
  int d = (b.label() - a.label() + kVertexCount) % kVertexCount;
  return d == 2 || d == 3;
}

double Vector3::norm() const noexcept { return std::sqrt(dot(*this, *this)); }

bool Vector3::is_finite() const noexcept {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
}

Vector3 operator+(const Vector3& a, const Vector3& b) noexcept {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}

Vector3 operator-(const Vector3& a, const Vector3& b) noexcept {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

Vector3 operator*(double k, const Vector3& v) noexcept { return {k * v.x, k * v.y, k * v.z}; }

double dot(const Vector3& a, const Vector3& b) noexcept {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

Vector3 cross(const Vector3& a, const Vector3& b) noexcept {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

UnitVector3 UnitVector3::checked(const Vector3& v, double tolerance) {
  if (!v.is_finite()) {
    throw std::invalid_argument("unit vector has non-finite components");
  }
  if (std::abs(v.norm() - 1.0) > tolerance) {
    throw std::invalid_argument("vector is not of unit length (norm " +
                                std::to_string(v.norm()) + ")");
  }
  return UnitVector3(v);
}

UnitVector3 UnitVector3::normalized(const Vector3& v) {
  double n = v.norm();
  if (!std::isfinite(n) || n < 1e-300) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  return UnitVector3((1.0 / n) * v);
}

double angle_between(const UnitVector3& u, const UnitVector3& v) noexcept {
  return std::acos(std::clamp(dot(u, v), -1.0, 1.0));
}

double angle_between(const Vector3& u, const Vector3& v, double tolerance) {
  return angle_between(UnitVector3::checked(u, tolerance), UnitVector3::checked(v, tolerance));
}

Vector3 rotate_z(const Vector3& v, double angle) noexcept {
  double c = std::cos(angle);
  double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

PentagramFrame build_pentagram() {
  using std::numbers::pi;
  // Height at which the 4pi/5 azimuth step between pentagram neighbours
  // becomes a right angle at O: s^2 cos(4pi/5) + h^2 = 0 with s^2 + h^2 = 1.
  const double height = std::pow(5.0, -0.25);
  const double radius = std::sqrt(1.0 - 1.0 / kSqrt5);

  auto make_vertex = [&](int k) {
    double azimuth = 4.0 * pi * (k - 1) / 5.0;
    return UnitVector3::checked(
        {radius * std::cos(azimuth), radius * std::sin(azimuth), height});
  };

  PentagramFrame frame{
      .vertices = {make_vertex(1), make_vertex(2), make_vertex(3), make_vertex(4), make_vertex(5)},
      .psi = UnitVector3::checked({0.0, 0.0, 1.0}),
  };
  const Vector3 centre = dot(frame.psi, frame.vertices[0]) * frame.psi.vec();
  frame.r = centre.norm();
  frame.s = (frame.vertices[0].vec() - centre).norm();
  frame.phi = angle_between(frame.psi, frame.vertices[0]);
  frame.chi = angle_between(frame.vertices[0], frame.vertices[2]);
  return frame;
}

namespace {

ContextBasis make_context(const PentagramFrame& frame, const VertexPair& edge) {
  constexpr double kDegenerate = 1e-9;
  const UnitVector3& a = frame.vertex(edge.first);
  const UnitVector3& b = frame.vertex(edge.second);
  Vector3 c = cross(a.vec(), b.vec());
  if (c.norm() < kDegenerate) {
    throw std::invalid_argument("degenerate context: vertices " +
                                std::to_string(edge.first.label()) + " and " +
                                std::to_string(edge.second.label()) + " are parallel");
  }
  return {edge, {a, b, UnitVector3::normalized(c)}};
}

}  // namespace

std::array<ContextBasis, 5> context_bases(const PentagramFrame& frame) {
  const auto& edges = pentagram_edges();
  return {make_context(frame, edges[0]), make_context(frame, edges[1]),
          make_context(frame, edges[2]), make_context(frame, edges[3]),
          make_context(frame, edges[4])};
}

double FrameResiduals::max() const noexcept {
  return std::max({unit_norm, pentagram_orthogonality, psi_overlap, pentagon_overlap,
                   r2_plus_s2, s_closed_form, cos_phi, cos_chi, chi_half_angle,
                   context_orthonormality, rotation_symmetry});
}

FrameResiduals frame_residuals(const PentagramFrame& frame) {
  using std::numbers::pi;
  FrameResiduals res;
  for (int k = 1; k <= kVertexCount; ++k) {
    Vertex v(k);
    const Vector3& p = frame.vertex(v).vec();
    res.unit_norm = std::max(res.unit_norm, std::abs(p.norm() - 1.0));
    res.pentagram_orthogonality =
        std::max(res.pentagram_orthogonality, std::abs(dot(p, frame.vertex(v.shifted(1)).vec())));
    double overlap = dot(p, frame.psi.vec());
    res.psi_overlap = std::max(res.psi_overlap, std::abs(overlap * overlap - 1.0 / kSqrt5));
    res.pentagon_overlap = std::max(
        res.pentagon_overlap,
        std::abs(dot(p, frame.vertex(v.shifted(2)).vec()) - kInverseGolden));
    res.rotation_symmetry = std::max(
        res.rotation_symmetry,
        (rotate_z(p, 4.0 * pi / 5.0) - frame.vertex(v.shifted(1)).vec()).norm());
  }
  res.r2_plus_s2 = std::abs(frame.r * frame.r + frame.s * frame.s - 1.0);
  res.s_closed_form = std::abs(frame.s - 1.0 / (std::sqrt(2.0) * std::cos(pi / 10.0)));
  res.cos_phi = std::abs(std::cos(frame.phi) - frame.r);
  res.cos_chi = std::abs(std::cos(frame.chi) - kInverseGolden);
  res.chi_half_angle =
      std::abs(std::sin(frame.chi / 2.0) - std::sqrt(2.0) * (kSqrt5 - 1.0) / 4.0);

  for (const ContextBasis& basis : context_bases(frame)) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        double expected = i == j ? 1.0 : 0.0;
        res.context_orthonormality =
            std::max(res.context_orthonormality,
                     std::abs(dot(basis.triple[i], basis.triple[j]) - expected));
      }
    }
  }
  return res;
}

}  // namespace kcbs
