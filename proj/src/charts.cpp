#include "kcbs/charts.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kcbs {

bool is_valid_chart(const Assignment& values) noexcept {
  if (std::any_of(values.begin(), values.end(), [](std::uint8_t b) { return b > 1; })) {
    return false;
  }
  return std::none_of(pentagram_edges().begin(), pentagram_edges().end(), [&](const VertexPair& e) {
    return values[e.first.index()] == 1 && values[e.second.index()] == 1;
  });
}

Chart::Chart(const Assignment& values) : values_(values) {
  if (!is_valid_chart(values)) {
    std::string bits;
    for (auto b : values) bits += std::to_string(b);
    throw std::invalid_argument("assignment " + bits + " violates the orthogonality constraint");
  }
}

int Chart::ones() const noexcept { return std::accumulate(values_.begin(), values_.end(), 0); }

std::string Chart::to_string() const {
  std::string s;
  for (auto b : values_) s += static_cast<char>('0' + b);
  return s;
}

const char* to_string(ChartClass c) noexcept {
  switch (c) {
    case ChartClass::C0: return "C0";
    case ChartClass::C1: return "C1";
    case ChartClass::C2: return "C2";
  }
  return "?";
}

ChartClass classify(const Chart& chart) noexcept { return static_cast<ChartClass>(chart.ones()); }

ChartClass classify(const Assignment& values) { return classify(Chart(values)); }

namespace {

// (class, position within class) ordering key.
std::pair<int, int> canonical_key(const Chart& chart) {
  switch (classify(chart)) {
    case ChartClass::C0:
      return {0, 0};
    case ChartClass::C1: {
      const auto& v = chart.values();
      return {1, static_cast<int>(std::find(v.begin(), v.end(), 1) - v.begin())};
    }
    case ChartClass::C2: {
      const auto& edges = pentagon_edges();
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (chart.value(edges[i].first) == 1 && chart.value(edges[i].second) == 1) {
          return {2, static_cast<int>(i)};
        }
      }
      break;
    }
  }
  throw std::logic_error("chart " + chart.to_string() + " has no canonical position");
}

std::vector<Chart> scan_charts() {
  std::vector<Chart> charts;
  for (unsigned mask = 0; mask < (1u << kVertexCount); ++mask) {
    Assignment values{};
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = (mask >> i) & 1u;
    if (is_valid_chart(values)) charts.emplace_back(values);
  }
  std::sort(charts.begin(), charts.end(), [](const Chart& a, const Chart& b) {
    return canonical_key(a) < canonical_key(b);
  });
  if (charts.size() != kChartCount) {
    throw std::logic_error("expected 11 charts, found " + std::to_string(charts.size()));
  }
  return charts;
}

}  // namespace

const std::vector<Chart>& enumerate_charts() {
  static const std::vector<Chart> charts = scan_charts();
  return charts;
}

std::vector<std::size_t> chart_indices(ChartClass c) {
  std::vector<std::size_t> out;
  const auto& charts = enumerate_charts();
  for (std::size_t j = 0; j < charts.size(); ++j) {
    if (classify(charts[j]) == c) out.push_back(j);
  }
  return out;
}

}  // namespace kcbs
