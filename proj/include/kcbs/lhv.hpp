#pragma once

// Noncontextual hidden-variable models: mixtures of charts, their vertex
// marginals and shared-chart joint probabilities, the marginal-1/3 polytope
// and its pentagon-sum bounds, and context-dependent (biased) chart
// distributions.
//
// Mixture arithmetic is generic over the scalar so that the same code runs
// in double precision and in exact rational arithmetic.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/rational.hpp>

#include "kcbs/charts.hpp"
#include "kcbs/geometry.hpp"

namespace kcbs {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& q);
double to_double(const Rational& q) noexcept;

/// A pentagon edge e1..e5 with its A-side and B-side vertex.
class PentagonEdge {
public:
  /// Throws std::out_of_range unless 1 <= label <= 5.
  static PentagonEdge from_label(int label);
  /// Throws std::invalid_argument unless (a, b) is one of the ordered pairs
  /// (1,4), (4,2), (2,5), (5,3), (3,1).
  static PentagonEdge from_vertices(Vertex a, Vertex b);

  [[nodiscard]] int label() const noexcept { return label_; }
  [[nodiscard]] Vertex a_vertex() const noexcept { return pentagon_edges()[label_ - 1].first; }
  [[nodiscard]] Vertex b_vertex() const noexcept { return pentagon_edges()[label_ - 1].second; }

private:
  explicit PentagonEdge(int label) : label_(label) {}
  int label_;
};

/// Probability distribution over the eleven charts in canonical order.
template <class T>
class BasicMixture {
public:
  using Scalar = T;
  using Weights = std::array<T, kChartCount>;

  /// Throws std::invalid_argument for a negative (or non-finite) weight or a
  /// total differing from 1 (by more than `tolerance` for floating point,
  /// at all for rationals).
  static BasicMixture checked(const Weights& w, double tolerance = kDefaultTolerance) {
    T total{0};
    for (std::size_t j = 0; j < w.size(); ++j) {
      if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(w[j])) {
          throw std::invalid_argument("mixture weight " + std::to_string(j + 1) + " is not finite");
        }
      }
      if (w[j] < T{0}) {
        throw std::invalid_argument("mixture weight " + std::to_string(j + 1) + " is negative");
      }
      total += w[j];
    }
    bool normalized;
    if constexpr (std::is_floating_point_v<T>) {
      normalized = std::abs(total - 1.0) <= tolerance;
    } else {
      (void)tolerance;
      normalized = total == T{1};
    }
    if (!normalized) {
      throw std::invalid_argument("mixture weights do not sum to 1");
    }
    return BasicMixture(w);
  }

  static BasicMixture point_mass(std::size_t chart) {
    if (chart >= kChartCount) throw std::out_of_range("chart index out of range");
    Weights w{};
    w[chart] = T{1};
    return BasicMixture(w);
  }

  /// Spreads `mass` uniformly over every chart of each listed class.
  static BasicMixture from_classes(const std::array<T, 3>& class_mass,
                                   double tolerance = kDefaultTolerance) {
    Weights w{};
    for (int c = 0; c < 3; ++c) {
      auto members = chart_indices(static_cast<ChartClass>(c));
      for (std::size_t j : members) {
        w[j] = class_mass[c] / static_cast<T>(static_cast<std::int64_t>(members.size()));
      }
    }
    return checked(w, tolerance);
  }

  [[nodiscard]] const Weights& weights() const noexcept { return w_; }
  [[nodiscard]] const T& operator[](std::size_t j) const noexcept { return w_[j]; }

  friend bool operator==(const BasicMixture&, const BasicMixture&) = default;

private:
  explicit BasicMixture(const Weights& w) : w_(w) {}
  Weights w_;
};

using MixtureWeights = BasicMixture<double>;
using ExactMixture = BasicMixture<Rational>;

MixtureWeights to_double(const ExactMixture& w);

/// p(v(vertex) = 1) = sum_j v(vertex | lambda_j) p(lambda_j).
template <class T>
T mixture_marginal(const BasicMixture<T>& w, Vertex vertex) {
  const auto& charts = enumerate_charts();
  T p{0};
  for (std::size_t j = 0; j < charts.size(); ++j) {
    if (charts[j].value(vertex) == 1) p += w[j];
  }
  return p;
}

/// Sum of the five vertex marginals; at most 2 for every mixture.
template <class T>
T klyachko_sum(const BasicMixture<T>& w) {
  T total{0};
  for (int k = 1; k <= kVertexCount; ++k) total += mixture_marginal(w, Vertex(k));
  return total;
}

/// Probability that both vertices read 1 when A and B share one chart drawn
/// from `w`.
template <class T>
T shared_chart_joint(const BasicMixture<T>& w, Vertex a, Vertex b) {
  const auto& charts = enumerate_charts();
  T p{0};
  for (std::size_t j = 0; j < charts.size(); ++j) {
    if (charts[j].value(a) == 1 && charts[j].value(b) == 1) p += w[j];
  }
  return p;
}

template <class T>
T pentagon_edge_joint(const BasicMixture<T>& w, PentagonEdge edge) {
  return shared_chart_joint(w, edge.a_vertex(), edge.b_vertex());
}

/// p(e1) + ... + p(e5).
template <class T>
T pentagon_sum(const BasicMixture<T>& w) {
  T total{0};
  for (int e = 1; e <= 5; ++e) total += pentagon_edge_joint(w, PentagonEdge::from_label(e));
  return total;
}

/// Total weight carried by each chart class, indexed by ChartClass.
template <class T>
std::array<T, 3> class_weights(const BasicMixture<T>& w) {
  std::array<T, 3> mass{T{0}, T{0}, T{0}};
  const auto& charts = enumerate_charts();
  for (std::size_t j = 0; j < charts.size(); ++j) {
    mass[static_cast<int>(classify(charts[j]))] += w[j];
  }
  return mass;
}

struct MarginalMixtures {
  ExactMixture m21;  ///< C2 and C1 charts only
  ExactMixture m20;  ///< C2 and C0 charts only
};

/// The two-class mixtures whose every vertex marginal equals 1/3, obtained by
/// solving x * (2/5) + y * q = 1/3, x + y = 1 with q the per-vertex marginal
/// of the second class (1/5 for C1, 0 for C0).
MarginalMixtures solve_marginal_mixtures();

/// Every vertex of the polytope {w >= 0, sum w = 1, all marginals = 1/3},
/// found by exhaustive enumeration of basic feasible solutions. Sorted
/// lexicographically by weight vector, duplicates removed.
std::vector<ExactMixture> marginal_polytope_vertices();

struct PentagonBounds {
  Rational min;
  Rational max;
  ExactMixture argmin;
  ExactMixture argmax;
};

/// Extremes of pentagon_sum over the marginal-1/3 polytope.
PentagonBounds pentagon_sum_bounds();

/// Context-dependent chart distributions: entry i is the distribution the
/// measurement of pentagram edge i (in pentagram_edges() order) draws from.
template <class T>
struct BasicBiasSpec {
  std::array<BasicMixture<T>, 5> per_context;

  static BasicBiasSpec context_independent(const BasicMixture<T>& w) {
    return {{w, w, w, w, w}};
  }
};

using BiasSpec = BasicBiasSpec<double>;
using ExactBiasSpec = BasicBiasSpec<Rational>;

BiasSpec to_double(const ExactBiasSpec& bias);

/// Each context (i, i+1) puts mass 1/2 on the charts with v(i)=1, v(i+1)=0
/// and 1/2 on those with v(i)=0, v(i+1)=1, uniformly within each group.
ExactBiasSpec half_half_bias();

/// Each context (i, i+1) puts mass 1/sqrt5 on each of the two single-endpoint
/// groups and the remaining 1 - 2/sqrt5 uniformly on charts with neither
/// endpoint set.
BiasSpec quantum_matching_bias();

/// Builds a context whose groups {v(i)=1,v(i+1)=0}, {v(i)=0,v(i+1)=1} and
/// {v(i)=v(i+1)=0} carry the given masses, spread uniformly.
template <class T>
BasicMixture<T> endpoint_group_mixture(const VertexPair& context, const T& first_only,
                                       const T& second_only, const T& neither,
                                       double tolerance = kDefaultTolerance) {
  const auto& charts = enumerate_charts();
  std::array<std::vector<std::size_t>, 3> groups;
  for (std::size_t j = 0; j < charts.size(); ++j) {
    int a = charts[j].value(context.first);
    int b = charts[j].value(context.second);
    groups[a == 1 ? 0 : (b == 1 ? 1 : 2)].push_back(j);
  }
  const std::array<T, 3> mass{first_only, second_only, neither};
  typename BasicMixture<T>::Weights w{};
  for (std::size_t g = 0; g < 3; ++g) {
    for (std::size_t j : groups[g]) {
      w[j] = mass[g] / static_cast<T>(static_cast<std::int64_t>(groups[g].size()));
    }
  }
  return BasicMixture<T>::checked(w, tolerance);
}

/// p(v(i)=1) observed when contexts are measured with equal frequency and
/// each measurement draws its chart from that context's distribution: the
/// average over the two contexts containing vertex i.
template <class T>
std::array<T, kVertexCount> biased_marginals(const BasicBiasSpec<T>& bias) {
  std::array<T, kVertexCount> out{};
  const auto& edges = pentagram_edges();
  for (int k = 1; k <= kVertexCount; ++k) {
    Vertex v(k);
    T total{0};
    int contexts = 0;
    for (std::size_t c = 0; c < edges.size(); ++c) {
      if (edges[c].first == v || edges[c].second == v) {
        total += mixture_marginal(bias.per_context[c], v);
        ++contexts;
      }
    }
    out[v.index()] = total / static_cast<T>(contexts);
  }
  return out;
}

}  // namespace kcbs
