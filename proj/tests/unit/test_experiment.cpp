#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "kcbs/experiment.hpp"

using namespace kcbs;
using Catch::Matchers::WithinAbs;

namespace {

const double kCaseIII = std::pow((std::sqrt(5.0) - 1) / 2, 2) / 3;

ExperimentStats run(const ModelSpec& model, std::uint64_t trials, std::uint64_t seed,
                    PairingScheme pairing = PairingScheme::mixed(), unsigned workers = 1) {
  return run_trials(model, build_pentagram(), RunOptions{trials, seed, pairing, workers});
}

const Estimate& find(const std::vector<Estimate>& es, const std::string& name) {
  for (const auto& e : es) {
    if (e.name == name) return e;
  }
  FAIL("missing estimate " << name);
  return es.front();
}

SharedChartModel lhv(const ExactMixture& m) { return {to_double(m)}; }

}  // namespace

TEST_CASE("pairing schemes", "[experiment]") {
  auto p = PairingScheme::mixed().proportions();
  REQUIRE(p[0] == 0.0);
  REQUIRE_THAT(p[1], WithinAbs(1.0 / 3, 1e-15));
  REQUIRE(PairingScheme::pure(PairingCase::PentagonPartner).proportions()[3] == 1.0);
  REQUIRE_THROWS_AS(PairingScheme::with_proportions({0, 0, 0, 0}), std::invalid_argument);
  REQUIRE_THROWS_AS(PairingScheme::with_proportions({-1, 1, 0, 0}), std::invalid_argument);
}

TEST_CASE("tallies", "[experiment]") {
  Tally t;
  REQUIRE(t.frequency() == 0.0);
  REQUIRE(t.standard_error() == 0.0);
  t.record(true);
  t.record(false);
  REQUIRE(t.frequency() == 0.5);
  REQUIRE_THAT(t.standard_error(), WithinAbs(0.5 / std::sqrt(2.0), 1e-15));
}

TEST_CASE("trials are pure functions of their index", "[experiment]") {
  const auto f = build_pentagram();
  const ModelSpec model = QuantumModel{};
  const auto pairing = PairingScheme::mixed();
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto a = simulate_trial(model, f, pairing, 42, i);
    auto b = simulate_trial(model, f, pairing, 42, i);
    REQUIRE(a.a_vertex == b.a_vertex);
    REQUIRE(a.b_vertex == b.b_vertex);
    REQUIRE(a.a_outcome == b.a_outcome);
    REQUIRE(a.b_outcome == b.b_outcome);
  }
}

TEST_CASE("results do not depend on the worker count", "[experiment]") {
  const ModelSpec model = QuantumModel{};
  auto one = run(model, 20011, 9, PairingScheme::mixed(), 1);
  auto four = run(model, 20011, 9, PairingScheme::mixed(), 4);
  auto seven = run(model, 20011, 9, PairingScheme::mixed(), 7);
  REQUIRE(one == four);
  REQUIRE(one == seven);
  REQUIRE(one.trial_count == 20011);
  REQUIRE_FALSE(one == run(model, 20011, 10));
}

TEST_CASE("run_trials rejects an empty run", "[experiment]") {
  REQUIRE_THROWS_AS(run(QuantumModel{}, 0, 1), std::invalid_argument);
}

TEST_CASE("shared-chart models agree and respect orthogonality exactly", "[experiment]") {
  const auto [m21, m20] = solve_marginal_mixtures();
  for (const auto& m : {m21, m20}) {
    auto stats = run(lhv(m), 30000, 3);
    REQUIRE(stats.agreement.samples > 0);
    REQUIRE(stats.agreement.hits == stats.agreement.samples);
    REQUIRE(stats.pentagram_double_one.samples > 0);
    REQUIRE(stats.pentagram_double_one.hits == 0);
  }
}

TEST_CASE("quantum model agrees and respects orthogonality exactly", "[experiment]") {
  auto stats = run(QuantumModel{}, 30000, 4);
  REQUIRE(stats.agreement.hits == stats.agreement.samples);
  REQUIRE(stats.pentagram_double_one.hits == 0);
}

TEST_CASE("estimates converge to their predictions", "[experiment]") {
  const auto f = build_pentagram();
  SECTION("quantum") {
    ModelSpec model = QuantumModel{};
    auto stats = run(model, 200000, 42);
    auto v = evaluate(stats, predict(model, f), 4.0);
    REQUIRE(v.all_pass);
    REQUIRE_THAT(predict(model, f).at("pentagon_edge_1"), WithinAbs(kCaseIII, 1e-12));

    // The 0.03 gap below 2/3 needs the pentagon-only pairing to resolve at 4 SE.
    auto pent = run(model, 200000, 42, PairingScheme::pure(PairingCase::PentagonPartner));
    auto pv = evaluate(pent, {{"pentagon_sum", 5 * kCaseIII}}, 4.0);
    REQUIRE(pv.all_pass);
    REQUIRE(pv.pentagon == InequalityStatus::Violated);
  }
  SECTION("M20 shared chart") {
    ModelSpec model = lhv(solve_marginal_mixtures().m20);
    auto stats = run(model, 200000, 42);
    auto v = evaluate(stats, predict(model, f), 4.0);
    REQUIRE(v.all_pass);
    REQUIRE(v.pentagon == InequalityStatus::Satisfied);
    REQUIRE_THAT(find(stats.estimates(), "pentagon_sum").value, WithinAbs(5.0 / 6, 0.02));
  }
  SECTION("biased single particle") {
    ModelSpec model = BiasedSingleParticleModel{to_double(half_half_bias())};
    auto stats = run(model, 100000, 42);
    REQUIRE_FALSE(stats.two_particle);
    auto v = evaluate(stats, predict(model, f), 4.0);
    REQUIRE(v.all_pass);
    REQUIRE(v.klyachko == InequalityStatus::Violated);
    REQUIRE(v.pentagon == InequalityStatus::NotMeasured);
    REQUIRE_THAT(predict(model, f).at("klyachko_sum"), WithinAbs(2.5, 1e-12));
  }
  SECTION("context-independent single particle stays within the bound") {
    ModelSpec model =
        BiasedSingleParticleModel{BiasSpec::context_independent(MixtureWeights::point_mass(6))};
    auto stats = run(model, 50000, 1);
    auto v = evaluate(stats, predict(model, f), 4.0);
    REQUIRE(v.all_pass);
    REQUIRE(v.klyachko == InequalityStatus::Satisfied);
  }
}

TEST_CASE("a noncontextual model fails the quantum targets", "[experiment]") {
  const auto f = build_pentagram();
  auto stats = run(lhv(solve_marginal_mixtures().m20), 200000, 42);
  auto v = evaluate(stats, predict(QuantumModel{}, f), 4.0);
  REQUIRE_FALSE(v.all_pass);
  bool sum_failed = false;
  for (const auto& c : v.checks) {
    if (c.name == "pentagon_sum") sum_failed = !c.pass;
  }
  REQUIRE(sum_failed);
}

TEST_CASE("evaluate rejects malformed input", "[experiment]") {
  const auto f = build_pentagram();
  ExperimentStats empty;
  REQUIRE_THROWS_AS(evaluate(empty, predict(QuantumModel{}, f), 4.0), std::invalid_argument);
  auto stats = run(QuantumModel{}, 1000, 1);
  REQUIRE_THROWS_AS(evaluate(stats, predict(QuantumModel{}, f), 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(evaluate(stats, {{"klyachko_sum", 2.0}}, 4.0), std::invalid_argument);

  // A pure pentagon pairing never measures agreement.
  auto pent = run(QuantumModel{}, 1000, 1, PairingScheme::pure(PairingCase::PentagonPartner));
  REQUIRE(pent.agreement.samples == 0);
  REQUIRE_THROWS_AS(evaluate(pent, predict(QuantumModel{}, f), 4.0), std::invalid_argument);
}

TEST_CASE("merging partial stats is exact", "[experiment]") {
  auto a = run(QuantumModel{}, 5000, 2);
  auto b = run(QuantumModel{}, 7000, 3);
  auto ab = a;
  ab += b;
  auto ba = b;
  ba += a;
  REQUIRE(ab == ba);
  REQUIRE(ab.trial_count == 12000);
}

TEST_CASE("Monte Carlo error shrinks like n^(-1/2)", "[experiment][slow]") {
  const auto pairing = PairingScheme::pure(PairingCase::PentagonPartner);
  const double target = 5 * kCaseIII;
  std::vector<double> logn, logrms;
  for (std::uint64_t n : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
    const int seeds = n >= 1000000 ? 4 : 16;
    double sq = 0.0;
    for (int s = 0; s < seeds; ++s) {
      auto stats = run(QuantumModel{}, n, 1000 + s, pairing, 0);
      double err = find(stats.estimates(), "pentagon_sum").value - target;
      sq += err * err;
    }
    logn.push_back(std::log(static_cast<double>(n)));
    logrms.push_back(0.5 * std::log(sq / seeds));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < logn.size(); ++i) {
    mx += logn[i] / logn.size();
    my += logrms[i] / logn.size();
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < logn.size(); ++i) {
    sxy += (logn[i] - mx) * (logrms[i] - my);
    sxx += (logn[i] - mx) * (logn[i] - mx);
  }
  const double slope = sxy / sxx;
  INFO("slope " << slope);
  REQUIRE(std::abs(slope + 0.5) <= 0.15);
}
