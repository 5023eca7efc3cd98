#include "kcbs/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "kcbs/rng.hpp"

namespace kcbs {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kSnap = 1e-12;

// Inverse-CDF sampler whose zero-probability categories are unreachable:
// probabilities below kSnap are treated as exact zeros and the cumulative
// table is pinned to 1 from the last nonzero category onwards.
class DiscreteSampler {
public:
  DiscreteSampler() = default;

  template <std::size_t N>
  explicit DiscreteSampler(const std::array<double, N>& probabilities) {
    std::vector<double> p(probabilities.begin(), probabilities.end());
    double total = 0.0;
    for (double& x : p) {
      if (x < kSnap) x = 0.0;
      total += x;
    }
    if (total <= 0.0) throw std::invalid_argument("distribution has no mass");
    cumulative_.resize(p.size());
    double run = 0.0;
    std::size_t last = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      run += p[k] / total;
      cumulative_[k] = run;
      if (p[k] > 0.0) last = k;
    }
    std::fill(cumulative_.begin() + static_cast<std::ptrdiff_t>(last), cumulative_.end(), 1.0);
  }

  [[nodiscard]] std::size_t sample(double u) const noexcept {
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return static_cast<std::size_t>(it - cumulative_.begin());
  }

private:
  std::vector<double> cumulative_;
};

// Model with its sampling tables precomputed for a given frame.
struct CompiledModel {
  enum class Kind { Quantum, SharedChart, Biased } kind;
  // Quantum: outcome (11, 10, 01, 00) per ordered pair, index 5*a + b.
  std::array<DiscreteSampler, 25> pair_outcomes;
  // SharedChart uses entry 0; Biased has one per context.
  std::array<DiscreteSampler, 5> charts;
};

CompiledModel compile(const ModelSpec& model, const PentagramFrame& frame) {
  CompiledModel out{};
  std::visit(Overloaded{
                 [&](const QuantumModel& q) {
                   out.kind = CompiledModel::Kind::Quantum;
                   for (int a = 1; a <= 5; ++a) {
                     for (int b = 1; b <= 5; ++b) {
                       JointDistribution d = joint_distribution(q.state, Vertex(a), Vertex(b), frame);
                       out.pair_outcomes[5 * (a - 1) + (b - 1)] =
                           DiscreteSampler(std::array<double, 4>{d.p11, d.p10, d.p01, d.p00});
                     }
                   }
                 },
                 [&](const SharedChartModel& m) {
                   out.kind = CompiledModel::Kind::SharedChart;
                   out.charts[0] = DiscreteSampler(m.mixture.weights());
                 },
                 [&](const BiasedSingleParticleModel& m) {
                   out.kind = CompiledModel::Kind::Biased;
                   for (std::size_t c = 0; c < 5; ++c) {
                     out.charts[c] = DiscreteSampler(m.bias.per_context[c].weights());
                   }
                 },
             },
             model);
  return out;
}

PairingCase pick_case(const PairingScheme& pairing, double u) {
  const auto& p = pairing.proportions();
  double run = 0.0;
  std::size_t last = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] <= 0.0) continue;
    last = k;
    run += p[k];
    if (u < run) return static_cast<PairingCase>(k);
  }
  return static_cast<PairingCase>(last);
}

TrialRecord simulate(const CompiledModel& model, const PairingScheme& pairing,
                     std::uint64_t seed, std::uint64_t index) {
  TrialStream rng(seed, index);
  const auto& charts = enumerate_charts();
  TrialRecord t;
  t.a_vertex = Vertex(1 + static_cast<int>(rng.next_below(5)));

  if (model.kind == CompiledModel::Kind::Biased) {
    // Vertex a sits in contexts (a-1, a) and (a, a+1); pentagram edge c
    // joins labels c+1 and c+2.
    int context = t.a_vertex.label() - 1;
    if (rng.next_below(2) == 1) context = (context + 4) % 5;
    const Chart& chart = charts[model.charts[context].sample(rng.next_double())];
    t.a_outcome = chart.value(t.a_vertex);
    return t;
  }

  Vertex b = t.a_vertex;
  switch (pick_case(pairing, rng.next_double())) {
    case PairingCase::Independent:
      b = Vertex(1 + static_cast<int>(rng.next_below(5)));
      break;
    case PairingCase::SameVertex:
      break;
    case PairingCase::PentagramPartner:
      b = t.a_vertex.shifted(rng.next_below(2) == 0 ? 1 : -1);
      break;
    case PairingCase::PentagonPartner:
      b = t.a_vertex.shifted(rng.next_below(2) == 0 ? 2 : -2);
      break;
  }
  t.b_vertex = b;

  if (model.kind == CompiledModel::Kind::Quantum) {
    std::size_t k = model.pair_outcomes[5 * t.a_vertex.index() + b.index()].sample(rng.next_double());
    t.a_outcome = (k == 0 || k == 1) ? 1 : 0;
    t.b_outcome = (k == 0 || k == 2) ? 1 : 0;
  } else {
    const Chart& chart = charts[model.charts[0].sample(rng.next_double())];
    t.a_outcome = chart.value(t.a_vertex);
    t.b_outcome = chart.value(b);
  }
  return t;
}

int pentagon_edge_index(Vertex a, Vertex b) {
  const auto& edges = pentagon_edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if ((edges[i].first == a && edges[i].second == b) ||
        (edges[i].first == b && edges[i].second == a)) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

Estimate make_estimate(std::string name, const Tally& t) {
  return {std::move(name), t.frequency(), t.standard_error(), t.samples};
}

Estimate sum_estimate(std::string name, const std::array<Tally, 5>& tallies) {
  Estimate e{std::move(name), 0.0, 0.0, 0};
  double var = 0.0;
  for (const Tally& t : tallies) {
    e.value += t.frequency();
    var += t.standard_error() * t.standard_error();
    e.samples += t.samples;
  }
  e.standard_error = std::sqrt(var);
  return e;
}

}  // namespace

bool is_two_particle(const ModelSpec& model) noexcept {
  return !std::holds_alternative<BiasedSingleParticleModel>(model);
}

const char* model_name(const ModelSpec& model) noexcept {
  switch (model.index()) {
    case 0: return "quantum";
    case 1: return "lhv";
    default: return "biased";
  }
}

PairingScheme PairingScheme::with_proportions(const std::array<double, 4>& weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("pairing weight must be >= 0");
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("pairing weights are all zero");
  std::array<double, 4> p{};
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = weights[k] / total;
  return PairingScheme(p);
}

PairingScheme PairingScheme::pure(PairingCase c) {
  std::array<double, 4> w{};
  w[static_cast<std::size_t>(c)] = 1.0;
  return with_proportions(w);
}

PairingScheme PairingScheme::mixed() { return with_proportions({0.0, 1.0, 1.0, 1.0}); }

double Tally::frequency() const noexcept {
  return samples == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(samples);
}

double Tally::standard_error() const noexcept {
  if (samples == 0) return 0.0;
  double f = frequency();
  return std::sqrt(f * (1.0 - f) / static_cast<double>(samples));
}

void ExperimentStats::record(const TrialRecord& trial) {
  ++trial_count;
  a_marginal[trial.a_vertex.index()].record(trial.a_outcome == 1);
  if (!trial.b_vertex || !trial.b_outcome) return;

  const Vertex a = trial.a_vertex;
  const Vertex b = *trial.b_vertex;
  const bool a_one = trial.a_outcome == 1;
  const bool b_one = *trial.b_outcome == 1;
  b_marginal[b.index()].record(b_one);
  if (a == b) {
    agreement.record(a_one == b_one);
  } else if (is_pentagram_edge(a, b)) {
    pentagram_double_one.record(a_one && b_one);
  } else {
    pentagon_double_one[static_cast<std::size_t>(pentagon_edge_index(a, b))].record(a_one && b_one);
  }
}

ExperimentStats& ExperimentStats::operator+=(const ExperimentStats& o) {
  if (two_particle != o.two_particle) {
    throw std::invalid_argument("cannot merge single- and two-particle statistics");
  }
  trial_count += o.trial_count;
  for (std::size_t k = 0; k < kVertexCount; ++k) {
    a_marginal[k] += o.a_marginal[k];
    b_marginal[k] += o.b_marginal[k];
  }
  agreement += o.agreement;
  pentagram_double_one += o.pentagram_double_one;
  for (std::size_t e = 0; e < pentagon_double_one.size(); ++e) {
    pentagon_double_one[e] += o.pentagon_double_one[e];
  }
  return *this;
}

Estimate ExperimentStats::pentagon_sum() const {
  return sum_estimate("pentagon_sum", pentagon_double_one);
}

Estimate ExperimentStats::klyachko_sum() const { return sum_estimate("klyachko_sum", a_marginal); }

std::vector<Estimate> ExperimentStats::estimates() const {
  std::vector<Estimate> out;
  auto add = [&](Estimate e) {
    if (e.samples > 0) out.push_back(std::move(e));
  };
  for (int k = 1; k <= kVertexCount; ++k) {
    add(make_estimate("marginal_a_" + std::to_string(k), a_marginal[k - 1]));
  }
  if (!two_particle) {
    if (std::all_of(a_marginal.begin(), a_marginal.end(), [](const Tally& t) { return t.samples > 0; })) {
      add(klyachko_sum());
    }
    return out;
  }
  for (int k = 1; k <= kVertexCount; ++k) {
    add(make_estimate("marginal_b_" + std::to_string(k), b_marginal[k - 1]));
  }
  add(make_estimate("agreement", agreement));
  add(make_estimate("pentagram_double_one", pentagram_double_one));
  for (int e = 1; e <= 5; ++e) {
    add(make_estimate("pentagon_edge_" + std::to_string(e), pentagon_double_one[e - 1]));
  }
  if (std::all_of(pentagon_double_one.begin(), pentagon_double_one.end(),
                  [](const Tally& t) { return t.samples > 0; })) {
    add(pentagon_sum());
  }
  return out;
}

TrialRecord simulate_trial(const ModelSpec& model, const PentagramFrame& frame,
                           const PairingScheme& pairing, std::uint64_t seed, std::uint64_t index) {
  return simulate(compile(model, frame), pairing, seed, index);
}

ExperimentStats run_trials(const ModelSpec& model, const PentagramFrame& frame,
                           const RunOptions& options) {
  if (options.trials == 0) throw std::invalid_argument("trial count must be at least 1");
  const CompiledModel compiled = compile(model, frame);

  unsigned workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.workers;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, options.trials));

  ExperimentStats empty;
  empty.two_particle = is_two_particle(model);
  std::vector<ExperimentStats> partial(workers, empty);

  auto run_range = [&](unsigned w) {
    const std::uint64_t begin = options.trials * w / workers;
    const std::uint64_t end = options.trials * (w + 1) / workers;
    for (std::uint64_t i = begin; i < end; ++i) {
      partial[w].record(simulate(compiled, options.pairing, options.seed, i));
    }
  };

  if (workers == 1) {
    run_range(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_range, w);
    for (auto& t : pool) t.join();
  }

  ExperimentStats total = empty;
  for (const auto& p : partial) total += p;
  return total;
}

Predictions predict(const ModelSpec& model, const PentagramFrame& frame) {
  Predictions out;
  std::visit(
      Overloaded{
          [&](const QuantumModel& q) {
            double agree = 0.0;
            double orth = 0.0;
            for (int k = 1; k <= kVertexCount; ++k) {
              Vertex v(k);
              out["marginal_a_" + std::to_string(k)] =
                  joint_distribution(q.state, v, v, frame).a_marginal();
              out["marginal_b_" + std::to_string(k)] =
                  joint_distribution(q.state, v, v, frame).b_marginal();
              agree += joint_distribution(q.state, v, v, frame).agreement() / 5.0;
              orth += (joint_distribution(q.state, v, v.shifted(1), frame).p11 +
                       joint_distribution(q.state, v, v.shifted(-1), frame).p11) /
                      10.0;
            }
            out["agreement"] = agree;
            out["pentagram_double_one"] = orth;
            double sum = 0.0;
            for (int e = 1; e <= 5; ++e) {
              auto [a, b] = pentagon_edges()[e - 1];
              double p = 0.5 * (joint_distribution(q.state, a, b, frame).p11 +
                                joint_distribution(q.state, b, a, frame).p11);
              out["pentagon_edge_" + std::to_string(e)] = p;
              sum += p;
            }
            out["pentagon_sum"] = sum;
          },
          [&](const SharedChartModel& m) {
            for (int k = 1; k <= kVertexCount; ++k) {
              double p = mixture_marginal(m.mixture, Vertex(k));
              out["marginal_a_" + std::to_string(k)] = p;
              out["marginal_b_" + std::to_string(k)] = p;
            }
            out["agreement"] = 1.0;
            out["pentagram_double_one"] = 0.0;
            for (int e = 1; e <= 5; ++e) {
              out["pentagon_edge_" + std::to_string(e)] =
                  pentagon_edge_joint(m.mixture, PentagonEdge::from_label(e));
            }
            out["pentagon_sum"] = pentagon_sum(m.mixture);
          },
          [&](const BiasedSingleParticleModel& m) {
            auto marginals = biased_marginals(m.bias);
            double sum = 0.0;
            for (int k = 1; k <= kVertexCount; ++k) {
              out["marginal_a_" + std::to_string(k)] = marginals[k - 1];
              sum += marginals[k - 1];
            }
            out["klyachko_sum"] = sum;
          },
      },
      model);
  return out;
}

const char* to_string(InequalityStatus s) noexcept {
  switch (s) {
    case InequalityStatus::NotMeasured: return "not_measured";
    case InequalityStatus::Satisfied: return "satisfied";
    case InequalityStatus::Violated: return "violated";
  }
  return "?";
}

Verdict evaluate(const ExperimentStats& stats, const Predictions& predictions, double sigma) {
  if (stats.trial_count == 0) throw std::invalid_argument("cannot evaluate an empty run");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");

  // Slack for targets met exactly by a zero-variance estimate.
  constexpr double kAbsoluteSlack = 1e-12;

  const auto estimates = stats.estimates();
  for (const auto& [name, target] : predictions) {
    bool found = std::any_of(estimates.begin(), estimates.end(),
                             [&](const Estimate& e) { return e.name == name; });
    if (!found) throw std::invalid_argument("no estimate for predicted quantity '" + name + "'");
  }

  Verdict v;
  v.sigma = sigma;
  for (const Estimate& e : estimates) {
    const double band = sigma * e.standard_error + kAbsoluteSlack;
    if (auto it = predictions.find(e.name); it != predictions.end()) {
      QuantityCheck c{e.name, e.value, e.standard_error, e.samples, it->second,
                      std::abs(e.value - it->second) <= band};
      v.all_pass = v.all_pass && c.pass;
      v.checks.push_back(std::move(c));
    }
    if (e.name == "klyachko_sum") {
      v.klyachko = e.value - band > 2.0 ? InequalityStatus::Violated : InequalityStatus::Satisfied;
    } else if (e.name == "pentagon_sum") {
      v.pentagon =
          e.value + band < 2.0 / 3.0 ? InequalityStatus::Violated : InequalityStatus::Satisfied;
    }
  }
  return v;
}

}  // namespace kcbs
