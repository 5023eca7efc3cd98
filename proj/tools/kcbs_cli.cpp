// kcbs: command-line front end for the pentagram contextuality toolkit.
//
// Exit status: 0 on success, 1 when a residual or statistical check fails,
// 2 on a usage or input error.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kcbs/report.hpp"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

template <class T>
std::vector<std::string> keys(const std::map<std::string, T>& m) {
  std::vector<std::string> out;
  for (const auto& kv : m) out.push_back(kv.first);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pentagram (KCBS) contextuality: geometry, hidden-variable bounds, "
               "quantum predictions and Monte Carlo tests"};
  app.require_subcommand(1);
  app.fallthrough();

  kcbs::RunConfig config;
  std::string out_path;

  const std::map<std::string, kcbs::ModelKind> models{
      {"quantum", kcbs::ModelKind::Quantum},
      {"lhv", kcbs::ModelKind::Lhv},
      {"biased", kcbs::ModelKind::Biased}};
  const std::map<std::string, kcbs::OutputFormat> formats{
      {"text", kcbs::OutputFormat::Text},
      {"json", kcbs::OutputFormat::Json},
      {"csv", kcbs::OutputFormat::Csv}};
  const std::map<std::string, kcbs::TargetSet> target_sets{
      {"model", kcbs::TargetSet::Model}, {"quantum", kcbs::TargetSet::Quantum}};

  app.add_option("--seed", config.seed, "RNG seed")->capture_default_str();
  app.add_option("--trials", config.trials, "Monte Carlo trials")->capture_default_str();
  std::string model = "quantum";
  app.add_option("--model", model, "quantum | lhv | biased")
      ->check(CLI::IsMember(keys(models), CLI::ignore_case).description(""))
      ->capture_default_str();
  app.add_option("--mixture", config.mixture, "m21 | m20 | <file> (11 weights)")
      ->capture_default_str();
  app.add_option("--bias", config.bias, "half | quantum-matching | <file> (5 x 11 weights)")
      ->capture_default_str();
  app.add_option("--pairing", config.pairing, "mixed | same | pentagram | pentagon | independent")
      ->capture_default_str();
  std::string targets = "model";
  app.add_option("--targets", targets, "model | quantum: analytic values to test against")
      ->check(CLI::IsMember(keys(target_sets), CLI::ignore_case).description(""))
      ->capture_default_str();
  app.add_option("--tolerance", config.tolerance, "Residual tolerance")->capture_default_str();
  app.add_option("--sigma", config.sigma, "Pass band in standard errors")->capture_default_str();
  app.add_option("--workers", config.workers, "Worker threads (0 = all cores)")
      ->capture_default_str();
  std::string format = "json";
  app.add_option("--format", format, "text | json | csv")
      ->check(CLI::IsMember(keys(formats), CLI::ignore_case).description(""))
      ->capture_default_str();
  app.add_option("--out", out_path, "Write the report here instead of stdout");

  const std::map<std::string, kcbs::Command> commands{
      {"geometry", kcbs::Command::Geometry},
      {"charts", kcbs::Command::Charts},
      {"inequalities", kcbs::Command::Inequalities},
      {"lhv-bounds", kcbs::Command::LhvBounds},
      {"simulate", kcbs::Command::Simulate},
      {"chsh", kcbs::Command::Chsh}};
  const std::map<std::string, std::string> blurbs{
      {"geometry", "Pentagram frame, derived lengths and angles, invariant residuals"},
      {"charts", "The eleven noncontextual charts"},
      {"inequalities", "Headline quantum values against their noncontextual bounds"},
      {"lhv-bounds", "Exact pentagon-sum bounds over marginal-1/3 chart mixtures"},
      {"simulate", "Monte Carlo run of the two-particle (or biased) experiment"},
      {"chsh", "CHSH correlators and their maximum over vertex choices"}};
  for (const auto& [name, blurb] : blurbs) app.add_subcommand(name, blurb);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  config.command = commands.at(app.get_subcommands().front()->get_name());
  config.model = models.at(lower(model));
  config.targets = target_sets.at(lower(targets));
  config.format = formats.at(lower(format));
  if (!out_path.empty()) config.out = out_path;

  kcbs::Report report;
  try {
    report = kcbs::run_command(config);
  } catch (const std::exception& e) {
    std::cerr << "kcbs: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string rendered = kcbs::render(report, config.format);
  if (config.out) {
    std::ofstream out(*config.out);
    if (!out) {
      std::cerr << "kcbs: cannot write '" << *config.out << "'\n";
      return kExitUsage;
    }
    out << rendered;
  } else {
    std::cout << rendered;
  }
  return report.ok ? 0 : kExitCheckFailed;
}
