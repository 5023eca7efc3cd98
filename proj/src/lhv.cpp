#include "kcbs/lhv.hpp"

#include <algorithm>
#include <optional>

namespace kcbs {

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

double to_double(const Rational& q) noexcept {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

PentagonEdge PentagonEdge::from_label(int label) {
  if (label < 1 || label > 5) {
    throw std::out_of_range("pentagon edge label must be in 1..5, got " + std::to_string(label));
  }
  return PentagonEdge(label);
}

PentagonEdge PentagonEdge::from_vertices(Vertex a, Vertex b) {
  const auto& edges = pentagon_edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].first == a && edges[i].second == b) return PentagonEdge(static_cast<int>(i) + 1);
  }
  throw std::invalid_argument("(" + std::to_string(a.label()) + ", " + std::to_string(b.label()) +
                              ") is not a pentagon edge e1..e5");
}

MixtureWeights to_double(const ExactMixture& w) {
  MixtureWeights::Weights out{};
  for (std::size_t j = 0; j < kChartCount; ++j) out[j] = to_double(w[j]);
  return MixtureWeights::checked(out);
}

namespace {

const Rational kOneThird{1, 3};

// x * hi + (1 - x) * lo = target  =>  x = (target - lo) / (hi - lo)
Rational solve_two_class_weight(Rational hi, Rational lo, Rational target) {
  return (target - lo) / (hi - lo);
}

using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

// Reduced row echelon form in place; returns the pivot column of each
// nonzero row.
std::vector<std::size_t> row_reduce(Matrix& m, std::size_t columns) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == Rational{0}) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    const Rational lead = m[row][col];
    for (auto& x : m[row]) x /= lead;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == Rational{0}) continue;
      const Rational f = m[r][col];
      for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Equality system of the marginal-1/3 polytope as an augmented matrix
// [A | b]: one row per vertex marginal, then normalization.
Matrix marginal_constraints() {
  const auto& charts = enumerate_charts();
  Matrix m;
  for (int k = 1; k <= kVertexCount; ++k) {
    Row row(kChartCount + 1, Rational{0});
    for (std::size_t j = 0; j < kChartCount; ++j) row[j] = charts[j].value(Vertex(k));
    row[kChartCount] = kOneThird;
    m.push_back(std::move(row));
  }
  m.emplace_back(kChartCount + 1, Rational{1});
  return m;
}

// Solves the square system restricted to `basis` columns; nullopt when the
// basis matrix is singular.
std::optional<std::vector<Rational>> solve_basis(const Matrix& system,
                                                 const std::vector<std::size_t>& basis) {
  Matrix m;
  for (const Row& full : system) {
    Row row;
    for (std::size_t j : basis) row.push_back(full[j]);
    row.push_back(full.back());
    m.push_back(std::move(row));
  }
  auto pivots = row_reduce(m, basis.size());
  if (pivots.size() != basis.size()) return std::nullopt;
  std::vector<Rational> x(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) x[i] = m[i].back();
  return x;
}

bool lexicographic_less(const ExactMixture& a, const ExactMixture& b) {
  return std::lexicographical_compare(a.weights().begin(), a.weights().end(),
                                      b.weights().begin(), b.weights().end());
}

}  // namespace

MarginalMixtures solve_marginal_mixtures() {
  const Rational c2_marginal{2, 5};
  const Rational c1_marginal{1, 5};
  const Rational c0_marginal{0};

  Rational x21 = solve_two_class_weight(c2_marginal, c1_marginal, kOneThird);
  Rational x20 = solve_two_class_weight(c2_marginal, c0_marginal, kOneThird);
  return {
      ExactMixture::from_classes({Rational{0}, 1 - x21, x21}),
      ExactMixture::from_classes({1 - x20, Rational{0}, x20}),
  };
}

std::vector<ExactMixture> marginal_polytope_vertices() {
  Matrix system = marginal_constraints();
  {
    Matrix reduced = system;
    auto pivots = row_reduce(reduced, kChartCount + 1);
    if (!pivots.empty() && pivots.back() == kChartCount) {
      throw std::logic_error("marginal constraints are inconsistent");
    }
    reduced.resize(pivots.size());
    system = std::move(reduced);
  }
  const std::size_t rank = system.size();

  std::vector<ExactMixture> vertices;
  // Walk every rank-sized column subset via a selection mask.
  std::vector<bool> select(kChartCount, false);
  std::fill(select.begin(), select.begin() + static_cast<std::ptrdiff_t>(rank), true);
  do {
    std::vector<std::size_t> basis;
    for (std::size_t j = 0; j < kChartCount; ++j) {
      if (select[j]) basis.push_back(j);
    }
    auto x = solve_basis(system, basis);
    if (!x || std::any_of(x->begin(), x->end(), [](const Rational& v) { return v < 0; })) {
      continue;
    }
    ExactMixture::Weights w{};
    for (std::size_t i = 0; i < basis.size(); ++i) w[basis[i]] = (*x)[i];
    vertices.push_back(ExactMixture::checked(w));
  } while (std::prev_permutation(select.begin(), select.end()));

  std::sort(vertices.begin(), vertices.end(), lexicographic_less);
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

PentagonBounds pentagon_sum_bounds() {
  const auto vertices = marginal_polytope_vertices();
  if (vertices.empty()) throw std::logic_error("marginal polytope is empty");

  std::size_t lo = 0;
  std::size_t hi = 0;
  std::vector<Rational> values;
  values.reserve(vertices.size());
  for (const auto& v : vertices) values.push_back(pentagon_sum(v));
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[lo]) lo = i;
    if (values[i] > values[hi]) hi = i;
  }
  return {values[lo], values[hi], vertices[lo], vertices[hi]};
}

BiasSpec to_double(const ExactBiasSpec& bias) {
  return {{to_double(bias.per_context[0]), to_double(bias.per_context[1]),
           to_double(bias.per_context[2]), to_double(bias.per_context[3]),
           to_double(bias.per_context[4])}};
}

ExactBiasSpec half_half_bias() {
  const auto& edges = pentagram_edges();
  const Rational half{1, 2};
  auto context = [&](std::size_t c) {
    return endpoint_group_mixture(edges[c], half, half, Rational{0});
  };
  return {{context(0), context(1), context(2), context(3), context(4)}};
}

BiasSpec quantum_matching_bias() {
  const auto& edges = pentagram_edges();
  const double p = 1.0 / std::sqrt(5.0);
  auto context = [&](std::size_t c) { return endpoint_group_mixture(edges[c], p, p, 1.0 - 2.0 * p); };
  return {{context(0), context(1), context(2), context(3), context(4)}};
}

}  // namespace kcbs
