#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kcbs/lhv.hpp"

namespace kcbs {

/// Whitespace-separated decimal numbers; '#' starts a comment running to
/// the end of the line. Throws std::invalid_argument on a malformed token.
std::vector<double> parse_weights(std::string_view text);

/// Eleven weights in canonical chart order.
MixtureWeights parse_mixture(std::string_view text);
/// Five contexts (pentagram edges 12, 23, 34, 45, 51) of eleven weights each.
BiasSpec parse_bias(std::string_view text);

/// File variants; throw std::runtime_error when the file cannot be read.
MixtureWeights read_mixture_file(const std::string& path);
BiasSpec read_bias_file(const std::string& path);

}  // namespace kcbs
