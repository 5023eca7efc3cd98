#pragma once

// Monte Carlo simulation of the two-particle protocol (and of the biased
// single-particle loophole), with per-case tallies and a statistical
// comparison against analytic targets.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kcbs/geometry.hpp"
#include "kcbs/lhv.hpp"
#include "kcbs/quantum.hpp"

namespace kcbs {

struct QuantumModel {
  EntangledState state = canonical_entangled_state();
};

/// Both particles answer from one chart drawn per pair from `mixture`.
struct SharedChartModel {
  MixtureWeights mixture;
};

/// One particle; the chart is drawn after the context is chosen, from that
/// context's distribution.
struct BiasedSingleParticleModel {
  BiasSpec bias;
};

using ModelSpec = std::variant<QuantumModel, SharedChartModel, BiasedSingleParticleModel>;

bool is_two_particle(const ModelSpec& model) noexcept;
const char* model_name(const ModelSpec& model) noexcept;

enum class PairingCase { Independent = 0, SameVertex = 1, PentagramPartner = 2, PentagonPartner = 3 };

/// How B's vertex is chosen given A's. Each trial picks a case with
/// probability proportional to its weight; partner cases pick one of the
/// two partners of A's vertex with equal probability.
class PairingScheme {
public:
  /// Throws std::invalid_argument for negative/non-finite weights or an
  /// all-zero weight vector.
  static PairingScheme with_proportions(const std::array<double, 4>& weights);
  static PairingScheme pure(PairingCase c);
  /// Equal thirds of same-vertex, pentagram-partner and pentagon-partner.
  static PairingScheme mixed();

  /// Normalized, indexed by PairingCase.
  [[nodiscard]] const std::array<double, 4>& proportions() const noexcept { return p_; }

  friend bool operator==(const PairingScheme&, const PairingScheme&) = default;

private:
  explicit PairingScheme(const std::array<double, 4>& p) : p_(p) {}
  std::array<double, 4> p_;
};

struct TrialRecord {
  Vertex a_vertex{1};
  std::optional<Vertex> b_vertex;
  int a_outcome = 0;
  std::optional<int> b_outcome;
};

/// Bernoulli tally over one subsample.
struct Tally {
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;

  [[nodiscard]] double frequency() const noexcept;
  /// sqrt(f (1 - f) / n); zero for an empty tally.
  [[nodiscard]] double standard_error() const noexcept;

  void record(bool hit) noexcept {
    ++samples;
    hits += hit ? 1 : 0;
  }
  Tally& operator+=(const Tally& o) noexcept {
    hits += o.hits;
    samples += o.samples;
    return *this;
  }
  friend bool operator==(const Tally&, const Tally&) = default;
};

/// A named estimate derived from ExperimentStats.
struct Estimate {
  std::string name;
  double value = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
};

/// Integer tallies only, so merging partial results is exact and
/// independent of order.
struct ExperimentStats {
  bool two_particle = true;
  std::uint64_t trial_count = 0;
  std::array<Tally, kVertexCount> a_marginal{};
  std::array<Tally, kVertexCount> b_marginal{};
  Tally agreement;                          ///< Case I: same vertex, outcomes equal
  Tally pentagram_double_one;               ///< Case II: orthogonal vertices, both 1
  std::array<Tally, 5> pentagon_double_one{};  ///< Case III by edge e1..e5, either orientation

  void record(const TrialRecord& trial);
  ExperimentStats& operator+=(const ExperimentStats& o);
  friend bool operator==(const ExperimentStats&, const ExperimentStats&) = default;

  /// Sum of the five Case III frequencies; SE adds the per-edge SEs in
  /// quadrature (disjoint subsamples).
  [[nodiscard]] Estimate pentagon_sum() const;
  /// Sum of the five A-side vertex frequencies (single-particle runs).
  [[nodiscard]] Estimate klyachko_sum() const;

  /// Every quantity with at least one sample, in a fixed order:
  /// marginal_a_k, marginal_b_k, agreement, pentagram_double_one,
  /// pentagon_edge_k, pentagon_sum (two-particle); marginal_a_k,
  /// klyachko_sum (single-particle).
  [[nodiscard]] std::vector<Estimate> estimates() const;
};

struct RunOptions {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  PairingScheme pairing = PairingScheme::mixed();
  /// Worker threads; 0 picks the hardware concurrency. Does not affect
  /// results.
  unsigned workers = 1;
};

/// The outcome of trial `index`: a pure function of (model, frame, seed,
/// pairing, index).
TrialRecord simulate_trial(const ModelSpec& model, const PentagramFrame& frame,
                           const PairingScheme& pairing, std::uint64_t seed, std::uint64_t index);

/// Throws std::invalid_argument when options.trials == 0.
ExperimentStats run_trials(const ModelSpec& model, const PentagramFrame& frame,
                           const RunOptions& options);

using Predictions = std::map<std::string, double>;

/// Analytic value of every quantity `estimates()` can report for `model`.
Predictions predict(const ModelSpec& model, const PentagramFrame& frame);

enum class InequalityStatus { NotMeasured, Satisfied, Violated };
const char* to_string(InequalityStatus s) noexcept;

struct QuantityCheck {
  std::string name;
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  double target = 0.0;
  bool pass = false;
};

struct Verdict {
  double sigma = 0.0;
  std::vector<QuantityCheck> checks;
  bool all_pass = true;
  /// sum_i p(v(i)=1) <= 2, violated when the estimate exceeds 2 by more
  /// than sigma SE.
  InequalityStatus klyachko = InequalityStatus::NotMeasured;
  /// p(e1) + ... + p(e5) >= 2/3, violated when the estimate falls short by
  /// more than sigma SE.
  InequalityStatus pentagon = InequalityStatus::NotMeasured;
};

/// Checks |estimate - target| <= sigma * SE for every predicted quantity.
/// Throws std::invalid_argument for an empty run, sigma <= 0, or a
/// prediction naming a quantity the stats do not contain.
Verdict evaluate(const ExperimentStats& stats, const Predictions& predictions, double sigma);

}  // namespace kcbs
