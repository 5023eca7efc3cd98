#include "kcbs/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kcbs/charts.hpp"
#include "kcbs/lhv.hpp"
#include "kcbs/quantum.hpp"
#include "kcbs/weights_file.hpp"

namespace kcbs {

using nlohmann::json;

const char* to_string(Command c) noexcept {
  switch (c) {
    case Command::Geometry: return "geometry";
    case Command::Charts: return "charts";
    case Command::Inequalities: return "inequalities";
    case Command::LhvBounds: return "lhv-bounds";
    case Command::Simulate: return "simulate";
    case Command::Chsh: return "chsh";
  }
  return "?";
}

const char* to_string(OutputFormat f) noexcept {
  switch (f) {
    case OutputFormat::Text: return "text";
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
  }
  return "?";
}

const char* to_string(ModelKind m) noexcept {
  switch (m) {
    case ModelKind::Quantum: return "quantum";
    case ModelKind::Lhv: return "lhv";
    case ModelKind::Biased: return "biased";
  }
  return "?";
}

const char* to_string(TargetSet t) noexcept {
  return t == TargetSet::Model ? "model" : "quantum";
}

void RunConfig::validate() const {
  if (command == Command::Simulate && trials == 0) {
    throw std::invalid_argument("--trials must be at least 1");
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("--tolerance must be positive");
  if (!(sigma > 0.0)) throw std::invalid_argument("--sigma must be positive");
  (void)pairing_from_name(pairing);
}

PairingScheme pairing_from_name(const std::string& name) {
  if (name == "mixed") return PairingScheme::mixed();
  if (name == "same") return PairingScheme::pure(PairingCase::SameVertex);
  if (name == "pentagram") return PairingScheme::pure(PairingCase::PentagramPartner);
  if (name == "pentagon") return PairingScheme::pure(PairingCase::PentagonPartner);
  if (name == "independent") return PairingScheme::pure(PairingCase::Independent);
  throw std::invalid_argument("unknown pairing '" + name + "'");
}

MixtureWeights mixture_from_selector(const std::string& selector) {
  if (selector == "m21") return to_double(solve_marginal_mixtures().m21);
  if (selector == "m20") return to_double(solve_marginal_mixtures().m20);
  return read_mixture_file(selector);
}

BiasSpec bias_from_selector(const std::string& selector) {
  if (selector == "half") return to_double(half_half_bias());
  if (selector == "quantum-matching") return quantum_matching_bias();
  return read_bias_file(selector);
}

ModelSpec model_from_config(const RunConfig& config) {
  switch (config.model) {
    case ModelKind::Quantum: return QuantumModel{};
    case ModelKind::Lhv: return SharedChartModel{mixture_from_selector(config.mixture)};
    case ModelKind::Biased: return BiasedSingleParticleModel{bias_from_selector(config.bias)};
  }
  throw std::invalid_argument("unknown model");
}

namespace {

json to_json(const Vector3& v) { return json::array({v.x, v.y, v.z}); }

json weights_json(const ExactMixture& w) {
  json exact = json::array();
  json approx = json::array();
  for (const Rational& q : w.weights()) {
    exact.push_back(to_string(q));
    approx.push_back(to_double(q));
  }
  auto mass = class_weights(w);
  return {{"weights", approx},
          {"weights_exact", exact},
          {"class_weights_exact",
           {{"C0", to_string(mass[0])}, {"C1", to_string(mass[1])}, {"C2", to_string(mass[2])}}}};
}

json config_json(const RunConfig& c) {
  json j = {{"seed", c.seed},       {"tolerance", c.tolerance}, {"format", to_string(c.format)}};
  if (c.command == Command::Simulate) {
    j["trials"] = c.trials;
    j["model"] = to_string(c.model);
    if (c.model == ModelKind::Lhv) j["mixture"] = c.mixture;
    if (c.model == ModelKind::Biased) j["bias"] = c.bias;
    if (c.model != ModelKind::Biased) j["pairing"] = c.pairing;
    j["targets"] = to_string(c.targets);
    j["sigma"] = c.sigma;
    j["workers"] = c.workers;
  }
  if (c.out) j["out"] = *c.out;
  return j;
}

void geometry_report(const RunConfig& config, json& doc, bool& ok) {
  const PentagramFrame frame = build_pentagram();
  json vertices = json::array();
  for (const auto& v : frame.vertices) vertices.push_back(to_json(v.vec()));
  json bases = json::array();
  for (const ContextBasis& b : context_bases(frame)) {
    bases.push_back({{"edge", {b.edge.first.label(), b.edge.second.label()}},
                     {"triple",
                      {to_json(b.triple[0].vec()), to_json(b.triple[1].vec()),
                       to_json(b.triple[2].vec())}}});
  }
  const double overlap = dot(frame.psi, frame.vertices[0]);
  doc["results"] = {
      {"vertices", vertices},
      {"psi", to_json(frame.psi.vec())},
      {"r", frame.r},
      {"s", frame.s},
      {"phi", frame.phi},
      {"chi", frame.chi},
      {"cos_phi", std::cos(frame.phi)},
      {"cos_chi", std::cos(frame.chi)},
      {"sin_half_chi", std::sin(frame.chi / 2.0)},
      {"vertex_probability", overlap * overlap},
      {"context_bases", bases},
  };

  const FrameResiduals r = frame_residuals(frame);
  doc["residuals"] = {
      {"unit_norm", r.unit_norm},
      {"pentagram_orthogonality", r.pentagram_orthogonality},
      {"psi_overlap", r.psi_overlap},
      {"pentagon_overlap", r.pentagon_overlap},
      {"r2_plus_s2", r.r2_plus_s2},
      {"s_closed_form", r.s_closed_form},
      {"cos_phi", r.cos_phi},
      {"cos_chi", r.cos_chi},
      {"chi_half_angle", r.chi_half_angle},
      {"context_orthonormality", r.context_orthonormality},
      {"rotation_symmetry", r.rotation_symmetry},
  };
  ok = r.max() <= config.tolerance;
  doc["verdicts"] = {{"residuals_within_tolerance", ok}};
}

void charts_report(json& doc, bool& ok) {
  json charts = json::array();
  std::array<int, 3> counts{};
  const auto& all = enumerate_charts();
  for (std::size_t j = 0; j < all.size(); ++j) {
    ChartClass c = classify(all[j]);
    ++counts[static_cast<int>(c)];
    charts.push_back({{"index", j + 1}, {"values", all[j].to_string()}, {"class", to_string(c)}});
  }
  doc["results"] = {
      {"count", all.size()},
      {"class_counts", {{"C0", counts[0]}, {"C1", counts[1]}, {"C2", counts[2]}}},
      {"charts", charts},
  };
  doc["residuals"] = json::object();
  ok = all.size() == 11 && counts == std::array<int, 3>{1, 5, 5};
  doc["verdicts"] = {{"census_matches", ok}};
}

void inequalities_report(json& doc, bool& ok) {
  const PentagramFrame frame = build_pentagram();
  const EntangledState state = canonical_entangled_state();
  const auto mixtures = solve_marginal_mixtures();
  const PentagonBounds bounds = pentagon_sum_bounds();
  const auto e1 = PentagonEdge::from_label(1);
  const double klyachko = single_particle_klyachko_sum(frame);
  const double pentagon = pentagon_sum_quantum(state, frame);
  const ChshMaximum chsh = max_chsh(state, frame);

  doc["results"] = {
      {"klyachko_quantum", klyachko},
      {"klyachko_noncontextual_bound", 2.0},
      {"case_iii_quantum", joint_distribution(state, e1.a_vertex(), e1.b_vertex(), frame).p11},
      {"pentagon_quantum", pentagon},
      {"pentagon_noncontextual_min", to_double(bounds.min)},
      {"pentagon_noncontextual_min_exact", to_string(bounds.min)},
      {"pentagon_noncontextual_max", to_double(bounds.max)},
      {"pentagon_noncontextual_max_exact", to_string(bounds.max)},
      {"m21_edge_joint", to_double(pentagon_edge_joint(mixtures.m21, e1))},
      {"m21_edge_joint_exact", to_string(pentagon_edge_joint(mixtures.m21, e1))},
      {"m20_edge_joint", to_double(pentagon_edge_joint(mixtures.m20, e1))},
      {"m20_edge_joint_exact", to_string(pentagon_edge_joint(mixtures.m20, e1))},
      {"chsh_max", chsh.value},
      {"chsh_bound", 2.0},
  };
  doc["residuals"] = {
      {"klyachko_quantum_vs_sqrt5", std::abs(klyachko - std::sqrt(5.0))},
      {"pentagon_gap", to_double(bounds.min) - pentagon},
  };
  const bool klyachko_violated = klyachko > 2.0;
  const bool pentagon_violated = pentagon < to_double(bounds.min);
  const bool chsh_satisfied = chsh.value <= 2.0 + kDefaultTolerance;
  doc["verdicts"] = {
      {"klyachko_violated_by_quantum", klyachko_violated},
      {"pentagon_violated_by_quantum", pentagon_violated},
      {"chsh_satisfied_by_quantum", chsh_satisfied},
  };
  ok = klyachko_violated && pentagon_violated && chsh_satisfied;
}

void lhv_bounds_report(json& doc, bool& ok) {
  const auto vertices = marginal_polytope_vertices();
  const PentagonBounds bounds = pentagon_sum_bounds();
  const auto mixtures = solve_marginal_mixtures();
  json vertex_list = json::array();
  for (const auto& v : vertices) {
    json entry = weights_json(v);
    entry["pentagon_sum_exact"] = to_string(pentagon_sum(v));
    vertex_list.push_back(entry);
  }
  doc["results"] = {
      {"min", to_double(bounds.min)},
      {"min_exact", to_string(bounds.min)},
      {"max", to_double(bounds.max)},
      {"max_exact", to_string(bounds.max)},
      {"argmin", weights_json(bounds.argmin)},
      {"argmax", weights_json(bounds.argmax)},
      {"vertex_count", vertices.size()},
      {"vertices", vertex_list},
      {"m21", weights_json(mixtures.m21)},
      {"m20", weights_json(mixtures.m20)},
  };
  // Closed form: the pentagon sum is the C2 mass, and 5/3 = 2 C2 + C1.
  const Rational c2_min = class_weights(bounds.argmin)[2];
  const Rational c2_max = class_weights(bounds.argmax)[2];
  doc["residuals"] = {
      {"min_minus_argmin_c2_mass", to_double(bounds.min - c2_min)},
      {"max_minus_argmax_c2_mass", to_double(bounds.max - c2_max)},
  };
  ok = bounds.min == c2_min && bounds.max == c2_max;
  doc["verdicts"] = {{"closed_form_confirmed", ok}};
}

void chsh_report(json& doc, bool& ok) {
  const PentagramFrame frame = build_pentagram();
  const EntangledState state = canonical_entangled_state();
  json matrix = json::array();
  for (int a = 1; a <= 5; ++a) {
    json row = json::array();
    for (int b = 1; b <= 5; ++b) row.push_back(chsh_correlator(state, Vertex(a), Vertex(b), frame));
    matrix.push_back(row);
  }
  const ChshMaximum best = max_chsh(state, frame);
  doc["results"] = {
      {"correlators", matrix},
      {"same_vertex", chsh_correlator(state, Vertex(1), Vertex(1), frame)},
      {"pentagram_edge", chsh_correlator(state, Vertex(1), Vertex(2), frame)},
      {"pentagon_edge", chsh_correlator(state, Vertex(1), Vertex(4), frame)},
      {"max", best.value},
      {"argmax", {{"x", best.x}, {"x_prime", best.x_prime}, {"y", best.y}, {"y_prime", best.y_prime}}},
      {"bound", 2.0},
  };
  doc["residuals"] = {
      {"same_vertex_minus_one", std::abs(chsh_correlator(state, Vertex(1), Vertex(1), frame) - 1.0)},
      {"pentagram_edge_plus_third",
       std::abs(chsh_correlator(state, Vertex(1), Vertex(2), frame) + 1.0 / 3.0)},
  };
  ok = best.value <= 2.0 + kDefaultTolerance;
  doc["verdicts"] = {{"chsh_satisfied", ok}};
}

Predictions quantum_targets(const ModelSpec& model, const PentagramFrame& frame) {
  if (is_two_particle(model)) return predict(QuantumModel{}, frame);
  Predictions out;
  const QutritState psi = QutritState::from_direction(frame.psi);
  for (int k = 1; k <= kVertexCount; ++k) {
    out["marginal_a_" + std::to_string(k)] = born_probability(psi, frame.vertex(Vertex(k)));
  }
  out["klyachko_sum"] = single_particle_klyachko_sum(frame);
  return out;
}

void simulate_report(const RunConfig& config, json& doc, bool& ok) {
  const PentagramFrame frame = build_pentagram();
  const ModelSpec model = model_from_config(config);
  RunOptions options{config.trials, config.seed, pairing_from_name(config.pairing), config.workers};
  const ExperimentStats stats = run_trials(model, frame, options);
  Predictions targets = config.targets == TargetSet::Model ? predict(model, frame)
                                                           : quantum_targets(model, frame);
  // Pure pairings leave some quantities unmeasured.
  const auto measured = stats.estimates();
  std::erase_if(targets, [&](const auto& kv) {
    return std::none_of(measured.begin(), measured.end(),
                        [&](const Estimate& e) { return e.name == kv.first; });
  });
  const Verdict verdict = evaluate(stats, targets, config.sigma);

  json quantities = json::array();
  for (const Estimate& e : stats.estimates()) {
    json q = {{"name", e.name},
              {"estimate", e.value},
              {"standard_error", e.standard_error},
              {"samples", e.samples}};
    for (const QuantityCheck& c : verdict.checks) {
      if (c.name == e.name) {
        q["target"] = c.target;
        q["pass"] = c.pass;
      }
    }
    quantities.push_back(q);
  }
  doc["results"] = {
      {"model", model_name(model)},
      {"trial_count", stats.trial_count},
      {"quantities", quantities},
  };
  json residuals = json::object();
  for (const QuantityCheck& c : verdict.checks) {
    residuals[c.name] = c.standard_error > 0.0 ? (c.estimate - c.target) / c.standard_error
                                               : c.estimate - c.target;
  }
  doc["residuals"] = residuals;
  doc["verdicts"] = {
      {"all_pass", verdict.all_pass},
      {"sigma", verdict.sigma},
      {"klyachko_inequality", to_string(verdict.klyachko)},
      {"pentagon_inequality", to_string(verdict.pentagon)},
  };
  ok = verdict.all_pass;
}

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

Report run_command(const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Report report;
  json& doc = report.document;
  doc["command"] = to_string(config.command);
  doc["config"] = config_json(config);
  switch (config.command) {
    case Command::Geometry: geometry_report(config, doc, report.ok); break;
    case Command::Charts: charts_report(doc, report.ok); break;
    case Command::Inequalities: inequalities_report(doc, report.ok); break;
    case Command::LhvBounds: lhv_bounds_report(doc, report.ok); break;
    case Command::Simulate: simulate_report(config, doc, report.ok); break;
    case Command::Chsh: chsh_report(doc, report.ok); break;
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  doc["runtime_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
  return report;
}

std::string render(const Report& report, OutputFormat format) {
  const json& doc = report.document;
  switch (format) {
    case OutputFormat::Json:
      return doc.dump(2) + "\n";
    case OutputFormat::Text: {
      std::vector<std::pair<std::string, std::string>> rows;
      for (const char* section : {"results", "residuals", "verdicts"}) {
        flatten(doc.at(section), section, rows);
      }
      std::ostringstream os;
      os << "command = " << doc.at("command").get<std::string>() << "\n";
      for (const auto& [k, v] : rows) os << k << " = " << v << "\n";
      os << "runtime_ms = " << doc.at("runtime_ms").dump() << "\n";
      return os.str();
    }
    case OutputFormat::Csv: {
      std::ostringstream os;
      if (doc.at("command") == "simulate") {
        os << "quantity,estimate,standard_error,samples,target,pass\n";
        for (const json& q : doc.at("results").at("quantities")) {
          os << q.at("name").get<std::string>() << "," << q.at("estimate").dump() << ","
             << q.at("standard_error").dump() << "," << q.at("samples").dump() << ","
             << (q.contains("target") ? q.at("target").dump() : "") << ","
             << (q.contains("pass") ? q.at("pass").dump() : "") << "\n";
        }
        return os.str();
      }
      std::vector<std::pair<std::string, std::string>> rows;
      for (const char* section : {"results", "residuals", "verdicts"}) {
        flatten(doc.at(section), section, rows);
      }
      os << "key,value\n";
      for (const auto& [k, v] : rows) os << csv_field(k) << "," << csv_field(v) << "\n";
      return os.str();
    }
  }
  return {};
}

}  // namespace kcbs
