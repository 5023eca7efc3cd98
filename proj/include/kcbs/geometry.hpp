#pragma once

#include <array>
#include <cstddef>
#include <utility>

namespace kcbs {

inline constexpr double kDefaultTolerance = 1e-12;
inline constexpr int kVertexCount = 5;

/// A vertex label of the pentagram, 1 through 5.
class Vertex {
public:
  /// Throws std::out_of_range unless 1 <= label <= 5.
  explicit Vertex(int label);

  [[nodiscard]] constexpr int label() const noexcept { return label_; }
  [[nodiscard]] constexpr std::size_t index() const noexcept {
    return static_cast<std::size_t>(label_ - 1);
  }
  /// Label shifted cyclically by `steps` (mod 5).
  [[nodiscard]] Vertex shifted(int steps) const;

  friend constexpr bool operator==(Vertex, Vertex) = default;

private:
  int label_;
};

using VertexPair = std::pair<Vertex, Vertex>;

/// Consecutive labels 12, 23, 34, 45, 51: orthogonal directions, i.e. the
/// five measurement contexts.
const std::array<VertexPair, 5>& pentagram_edges();

/// Labels two steps apart, in the order e1..e5 = 14, 42, 25, 53, 31. The
/// first entry of each pair is the A-side vertex, the second the B-side.
const std::array<VertexPair, 5>& pentagon_edges();

bool is_pentagram_edge(Vertex a, Vertex b) noexcept;
bool is_pentagon_edge(Vertex a, Vertex b) noexcept;

struct Vector3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  [[nodiscard]] double norm() const noexcept;
  [[nodiscard]] bool is_finite() const noexcept;
};

Vector3 operator+(const Vector3& a, const Vector3& b) noexcept;
Vector3 operator-(const Vector3& a, const Vector3& b) noexcept;
Vector3 operator*(double k, const Vector3& v) noexcept;
double dot(const Vector3& a, const Vector3& b) noexcept;
Vector3 cross(const Vector3& a, const Vector3& b) noexcept;

/// A Vector3 known to lie on the unit sphere.
class UnitVector3 {
public:
  /// Accepts `v` as-is when | |v| - 1 | <= tolerance; throws
  /// std::invalid_argument otherwise (or for non-finite components).
  static UnitVector3 checked(const Vector3& v, double tolerance = kDefaultTolerance);
  /// Scales `v` onto the sphere. Throws std::invalid_argument for a
  /// (numerically) zero or non-finite vector.
  static UnitVector3 normalized(const Vector3& v);

  [[nodiscard]] const Vector3& vec() const noexcept { return v_; }
  [[nodiscard]] double x() const noexcept { return v_.x; }
  [[nodiscard]] double y() const noexcept { return v_.y; }
  [[nodiscard]] double z() const noexcept { return v_.z; }

private:
  explicit UnitVector3(const Vector3& v) : v_(v) {}
  Vector3 v_;
};

inline double dot(const UnitVector3& a, const UnitVector3& b) noexcept {
  return dot(a.vec(), b.vec());
}

/// Angle in [0, pi]; the inner product is clamped to [-1, 1].
double angle_between(const UnitVector3& u, const UnitVector3& v) noexcept;
/// Validating overload: throws std::invalid_argument if either input is
/// off the unit sphere by more than `tolerance`.
double angle_between(const Vector3& u, const Vector3& v,
                     double tolerance = kDefaultTolerance);

/// The pentagram inscribed in the circle of the unit sphere on which
/// consecutive vertex directions are orthogonal, together with the state
/// direction through the circle's centre.
struct PentagramFrame {
  std::array<UnitVector3, kVertexCount> vertices;
  UnitVector3 psi;
  double r = 0.0;    ///< |OP|, the height of the circle's centre P
  double s = 0.0;    ///< |P - vertex|, the circle radius
  double phi = 0.0;  ///< angle between psi and any vertex
  double chi = 0.0;  ///< angle at O across a pentagon edge

  [[nodiscard]] const UnitVector3& vertex(Vertex v) const noexcept {
    return vertices[v.index()];
  }
};

/// Canonical frame: vertex k at azimuth 4*pi*(k-1)/5 and height 5^(-1/4),
/// psi along +z.
PentagramFrame build_pentagram();

struct ContextBasis {
  VertexPair edge;
  /// Both edge vertices followed by their normalized cross product.
  std::array<UnitVector3, 3> triple;
};

/// One orthonormal basis per pentagram edge, in pentagram_edges() order.
/// Throws std::invalid_argument if an edge's vertices are (nearly) parallel.
std::array<ContextBasis, 5> context_bases(const PentagramFrame& frame);

/// Deviations of a frame from the exact pentagram identities. Every entry
/// is an absolute residual; a canonical frame keeps them all near 1e-16.
struct FrameResiduals {
  double unit_norm = 0.0;              ///< max | |v_i| - 1 |
  double pentagram_orthogonality = 0.0;  ///< max |<v_i, v_{i+1}>|
  double psi_overlap = 0.0;            ///< max |<v_i, psi>^2 - 1/sqrt5|
  double pentagon_overlap = 0.0;       ///< max |<v_i, v_{i+2}> - (sqrt5-1)/2|
  double r2_plus_s2 = 0.0;             ///< |r^2 + s^2 - 1|
  double s_closed_form = 0.0;          ///< |s - 1/(sqrt2 cos(pi/10))|
  double cos_phi = 0.0;                ///< |cos(phi) - r|
  double cos_chi = 0.0;                ///< |cos(chi) - (sqrt5-1)/2|
  double chi_half_angle = 0.0;         ///< |sin(chi/2) - sqrt2 (sqrt5-1)/4|
  double context_orthonormality = 0.0; ///< max |G - I| over context triples
  double rotation_symmetry = 0.0;      ///< max |R v_i - v_{i+1}|, R = rot_z(4pi/5)

  [[nodiscard]] double max() const noexcept;
};

FrameResiduals frame_residuals(const PentagramFrame& frame);

/// Rotation of `v` about the z axis by `angle` radians.
Vector3 rotate_z(const Vector3& v, double angle) noexcept;

}  // namespace kcbs
