#include <map>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kcbs/charts.hpp"
#include "kcbs/experiment.hpp"
#include "kcbs/geometry.hpp"
#include "kcbs/lhv.hpp"
#include "kcbs/quantum.hpp"
#include "kcbs/report.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;

namespace {

std::array<double, 3> coords(const kcbs::UnitVector3& u) { return {u.x(), u.y(), u.z()}; }

py::dict frame_dict(const kcbs::PentagramFrame& f) {
  py::list vertices;
  for (const auto& v : f.vertices) vertices.append(coords(v));
  py::dict d;
  d["vertices"] = vertices;
  d["psi"] = coords(f.psi);
  d["r"] = f.r;
  d["s"] = f.s;
  d["phi"] = f.phi;
  d["chi"] = f.chi;
  return d;
}

py::tuple fraction(const kcbs::Rational& q) { return py::make_tuple(q.numerator(), q.denominator()); }

py::list exact_weights(const kcbs::ExactMixture& w) {
  py::list out;
  for (const auto& q : w.weights()) out.append(fraction(q));
  return out;
}

kcbs::MixtureWeights mixture_from(const std::array<double, kcbs::kChartCount>& w) {
  return kcbs::MixtureWeights::checked(w);
}

kcbs::ModelKind model_kind(const std::string& model) {
  if (model == "quantum") return kcbs::ModelKind::Quantum;
  if (model == "lhv") return kcbs::ModelKind::Lhv;
  if (model == "biased") return kcbs::ModelKind::Biased;
  throw std::invalid_argument("unknown model '" + model + "'");
}

kcbs::ModelSpec model_from(const std::string& model, const std::string& mixture,
                           const std::string& bias) {
  kcbs::RunConfig c;
  c.model = model_kind(model);
  c.mixture = mixture;
  c.bias = bias;
  return kcbs::model_from_config(c);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pentagram (KCBS) contextuality: geometry, charts, hidden-variable bounds, "
            "quantum probabilities and Monte Carlo simulation.";

  m.def("build_pentagram", [] { return frame_dict(kcbs::build_pentagram()); },
        "Canonical pentagram frame as a dict of vertices, psi, r, s, phi, chi.");

  m.def("enumerate_charts", [] {
    py::list out;
    for (const auto& c : kcbs::enumerate_charts()) out.append(c.values());
    return out;
  });
  m.def("is_valid_chart", [](const kcbs::Assignment& v) { return kcbs::is_valid_chart(v); });
  m.def("classify", [](const kcbs::Assignment& v) { return kcbs::to_string(kcbs::classify(v)); });

  m.def("mixture_marginal", [](const std::array<double, kcbs::kChartCount>& w, int vertex) {
    return kcbs::mixture_marginal(mixture_from(w), kcbs::Vertex(vertex));
  });
  m.def("klyachko_sum", [](const std::array<double, kcbs::kChartCount>& w) {
    return kcbs::klyachko_sum(mixture_from(w));
  });
  m.def("pentagon_edge_joint", [](const std::array<double, kcbs::kChartCount>& w, int edge) {
    return kcbs::pentagon_edge_joint(mixture_from(w), kcbs::PentagonEdge::from_label(edge));
  });
  m.def("solve_marginal_mixtures", [] {
    auto mm = kcbs::solve_marginal_mixtures();
    py::dict d;
    d["m21"] = exact_weights(mm.m21);
    d["m20"] = exact_weights(mm.m20);
    return d;
  }, "Exact M21 / M20 weights as (numerator, denominator) pairs.");
  m.def("pentagon_sum_bounds", [] {
    auto b = kcbs::pentagon_sum_bounds();
    py::dict d;
    d["min"] = fraction(b.min);
    d["max"] = fraction(b.max);
    d["argmin"] = exact_weights(b.argmin);
    d["argmax"] = exact_weights(b.argmax);
    return d;
  });
  m.def("biased_marginals", [](const std::string& bias) {
    return kcbs::biased_marginals(kcbs::bias_from_selector(bias));
  }, py::arg("bias") = "half");

  m.def("single_particle_klyachko_sum",
        [] { return kcbs::single_particle_klyachko_sum(kcbs::build_pentagram()); });
  m.def("joint_distribution", [](int a, int b) {
    auto d = kcbs::joint_distribution(kcbs::canonical_entangled_state(), kcbs::Vertex(a),
                                      kcbs::Vertex(b), kcbs::build_pentagram());
    py::dict out;
    out["p11"] = d.p11;
    out["p10"] = d.p10;
    out["p01"] = d.p01;
    out["p00"] = d.p00;
    return out;
  }, "Outcome distribution for vertex a on A and vertex b on B in the maximally entangled state.");
  m.def("pentagon_sum_quantum", [] {
    return kcbs::pentagon_sum_quantum(kcbs::canonical_entangled_state(), kcbs::build_pentagram());
  });
  m.def("chsh_correlator", [](int a, int b) {
    return kcbs::chsh_correlator(kcbs::canonical_entangled_state(), kcbs::Vertex(a),
                                 kcbs::Vertex(b), kcbs::build_pentagram());
  });
  m.def("max_chsh", [] {
    auto best = kcbs::max_chsh(kcbs::canonical_entangled_state(), kcbs::build_pentagram());
    return py::make_tuple(best.value, py::make_tuple(best.x, best.x_prime, best.y, best.y_prime));
  });

  m.def("run_trials",
        [](const std::string& model, std::uint64_t trials, std::uint64_t seed,
           const std::string& pairing, const std::string& mixture, const std::string& bias,
           unsigned workers) {
          auto spec = model_from(model, mixture, bias);
          kcbs::RunOptions opts{trials, seed, kcbs::pairing_from_name(pairing), workers};
          kcbs::ExperimentStats stats;
          {
            py::gil_scoped_release release;
            stats = kcbs::run_trials(spec, kcbs::build_pentagram(), opts);
          }
          py::dict out;
          for (const auto& e : stats.estimates()) {
            out[py::str(e.name)] = py::make_tuple(e.value, e.standard_error, e.samples);
          }
          return out;
        },
        py::arg("model") = "quantum", py::arg("trials") = 100000, py::arg("seed") = 42,
        py::arg("pairing") = "mixed", py::arg("mixture") = "m21", py::arg("bias") = "half",
        py::arg("workers") = 1,
        "Returns {quantity: (estimate, standard_error, samples)}.");

  m.def("run_command",
        [](const std::string& command, const py::dict& options) {
          static const std::map<std::string, kcbs::Command> commands{
              {"geometry", kcbs::Command::Geometry},   {"charts", kcbs::Command::Charts},
              {"inequalities", kcbs::Command::Inequalities},
              {"lhv-bounds", kcbs::Command::LhvBounds}, {"simulate", kcbs::Command::Simulate},
              {"chsh", kcbs::Command::Chsh}};
          kcbs::RunConfig c;
          auto it = commands.find(command);
          if (it == commands.end()) throw std::invalid_argument("unknown command '" + command + "'");
          c.command = it->second;
          if (options.contains("seed")) c.seed = options["seed"].cast<std::uint64_t>();
          if (options.contains("trials")) c.trials = options["trials"].cast<std::uint64_t>();
          if (options.contains("model")) c.model = model_kind(options["model"].cast<std::string>());
          if (options.contains("mixture")) c.mixture = options["mixture"].cast<std::string>();
          if (options.contains("bias")) c.bias = options["bias"].cast<std::string>();
          if (options.contains("pairing")) c.pairing = options["pairing"].cast<std::string>();
          if (options.contains("sigma")) c.sigma = options["sigma"].cast<double>();
          if (options.contains("tolerance")) c.tolerance = options["tolerance"].cast<double>();
          if (options.contains("workers")) c.workers = options["workers"].cast<unsigned>();
          if (options.contains("targets")) {
            auto t = options["targets"].cast<std::string>();
            if (t != "model" && t != "quantum") throw std::invalid_argument("unknown targets '" + t + "'");
            c.targets = t == "quantum" ? kcbs::TargetSet::Quantum : kcbs::TargetSet::Model;
          }
          kcbs::Report r = kcbs::run_command(c);
          return py::make_tuple(r.document.dump(), r.ok);
        },
        py::arg("command"), py::arg("options") = py::dict(),
        "Runs a CLI command; returns (json_text, ok).");

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
