#pragma once

// Command runner shared by the CLI and the Python module. Every command
// produces a JSON document with the top-level fields
//   command, config, results, residuals, verdicts, runtime_ms
// and can be rendered as text, JSON or CSV.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "kcbs/experiment.hpp"
#include "kcbs/geometry.hpp"

namespace kcbs {

enum class Command { Geometry, Charts, Inequalities, LhvBounds, Simulate, Chsh };
enum class OutputFormat { Text, Json, Csv };
enum class ModelKind { Quantum, Lhv, Biased };
enum class TargetSet { Model, Quantum };

const char* to_string(Command c) noexcept;
const char* to_string(OutputFormat f) noexcept;
const char* to_string(ModelKind m) noexcept;
const char* to_string(TargetSet t) noexcept;

struct RunConfig {
  Command command = Command::Geometry;
  std::uint64_t seed = 42;
  std::uint64_t trials = 100000;
  ModelKind model = ModelKind::Quantum;
  std::string mixture = "m21";       ///< m21 | m20 | path to a mixture file
  std::string bias = "half";         ///< half | quantum-matching | path to a bias file
  std::string pairing = "mixed";     ///< mixed | same | pentagram | pentagon | independent
  TargetSet targets = TargetSet::Model;
  double tolerance = kDefaultTolerance;
  double sigma = 4.0;
  unsigned workers = 0;
  OutputFormat format = OutputFormat::Json;
  std::optional<std::string> out;

  /// Throws std::invalid_argument for trials == 0 (simulate), a
  /// non-positive tolerance or sigma, or an unknown pairing name.
  void validate() const;
};

PairingScheme pairing_from_name(const std::string& name);
/// m21 | m20 | file path.
MixtureWeights mixture_from_selector(const std::string& selector);
/// half | quantum-matching | file path.
BiasSpec bias_from_selector(const std::string& selector);
ModelSpec model_from_config(const RunConfig& config);

struct Report {
  nlohmann::json document;
  /// False when a residual exceeds tolerance or a statistical check fails.
  bool ok = true;
};

Report run_command(const RunConfig& config);

std::string render(const Report& report, OutputFormat format);

}  // namespace kcbs
