#include "kcbs/weights_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kcbs {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read weights file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<double> parse_weights(std::string_view text) {
  std::vector<double> out;
  std::istringstream lines{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": '" + tok +
                                    "' is not a decimal number");
      }
      out.push_back(value);
    }
  }
  return out;
}

MixtureWeights parse_mixture(std::string_view text) {
  auto values = parse_weights(text);
  if (values.size() != kChartCount) {
    throw std::invalid_argument("mixture needs 11 weights, got " + std::to_string(values.size()));
  }
  MixtureWeights::Weights w{};
  std::copy(values.begin(), values.end(), w.begin());
  return MixtureWeights::checked(w);
}

BiasSpec parse_bias(std::string_view text) {
  auto values = parse_weights(text);
  if (values.size() != 5 * kChartCount) {
    throw std::invalid_argument("bias needs 5 x 11 = 55 weights, got " +
                                std::to_string(values.size()));
  }
  auto context = [&](std::size_t c) {
    MixtureWeights::Weights w{};
    std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(c * kChartCount), kChartCount, w.begin());
    return MixtureWeights::checked(w);
  };
  return {{context(0), context(1), context(2), context(3), context(4)}};
}

MixtureWeights read_mixture_file(const std::string& path) { return parse_mixture(slurp(path)); }

BiasSpec read_bias_file(const std::string& path) { return parse_bias(slurp(path)); }

}  // namespace kcbs
