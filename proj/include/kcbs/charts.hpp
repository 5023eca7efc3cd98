#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kcbs/geometry.hpp"

namespace kcbs {

inline constexpr std::size_t kChartCount = 11;

using Assignment = std::array<std::uint8_t, kVertexCount>;

/// True iff every entry is 0 or 1 and no pentagram edge has both ends at 1.
bool is_valid_chart(const Assignment& values) noexcept;

/// A noncontextual 0/1 value assignment to the five vertices that respects
/// the orthogonality constraint on every pentagram edge.
class Chart {
public:
  /// Throws std::invalid_argument if `values` is not a valid chart.
  explicit Chart(const Assignment& values);

  [[nodiscard]] const Assignment& values() const noexcept { return values_; }
  [[nodiscard]] int value(Vertex v) const noexcept { return values_[v.index()]; }
  [[nodiscard]] int ones() const noexcept;
  /// e.g. "10100"
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Chart&, const Chart&) = default;

private:
  Assignment values_;
};

enum class ChartClass { C0 = 0, C1 = 1, C2 = 2 };

const char* to_string(ChartClass c) noexcept;

/// Class by number of ones. Throws std::invalid_argument for an invalid
/// assignment.
ChartClass classify(const Assignment& values);
ChartClass classify(const Chart& chart) noexcept;

/// The eleven charts in canonical order: the empty chart; the five
/// single-vertex charts by vertex; the five pentagon-edge charts in edge
/// order 14, 42, 25, 53, 31. Mixture weights are indexed in this order.
const std::vector<Chart>& enumerate_charts();

/// Positions in canonical order of the charts belonging to `c`.
std::vector<std::size_t> chart_indices(ChartClass c);

}  // namespace kcbs
