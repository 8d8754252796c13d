#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "jbstar/error.hpp"
#include "jbstar/suites.hpp"

namespace {

constexpr int kUsage = 2;

int emit(const jbstar::ReportDocument& doc, const std::optional<std::filesystem::path>& out) {
  if (out) {
    std::ofstream f(*out, std::ios::binary);
    if (!f) {
      std::cerr << "jbstar: cannot write " << out->string() << "\n";
      return kUsage;
    }
    f << doc.to_json() << "\n";
  }
  std::cout << doc.summary();
  return jbstar::exit_status(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Desk-scale checks for JB*-algebras and unitary preservers", "jbstar"};
  app.set_version_flag("--version", jbstar::tool_version());
  app.require_subcommand(1);

  jbstar::RunConfig cfg;
  std::string algebra, map, theta, out;
  double abs_eps = cfg.tol.abs_eps, rel_eps = cfg.tol.rel_eps, cluster_eps = cfg.tol.cluster_eps;
  double epsilon = 0.0;

  app.add_subcommand("list", "List the available suites");
  for (const auto& s : jbstar::list_suites()) {
    CLI::App* sub = app.add_subcommand(s.name, s.description);
    sub->add_option("--algebra", algebra, "Algebra descriptor (JSON file)")->check(CLI::ExistingFile);
    sub->add_option("--map", map, "Map descriptor (JSON file)")->check(CLI::ExistingFile);
    sub->add_option("--theta", theta, "Reference isomorphism for factor-dichotomy (JSON file)")
        ->check(CLI::ExistingFile);
    sub->add_option("--trials", cfg.trials, "Trials per check")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Base seed")->capture_default_str()->envname("JBSTAR_SEED");
    sub->add_option("--abs-eps", abs_eps, "Absolute tolerance")->capture_default_str();
    sub->add_option("--rel-eps", rel_eps, "Relative tolerance")->capture_default_str();
    sub->add_option("--cluster-eps", cluster_eps, "Eigenvalue merging radius")->capture_default_str();
    sub->add_option("--epsilon", epsilon, "Angle-warp parameter of the counterexample");
    sub->add_flag("--exploratory", cfg.exploratory, "linearity: run on type I2 input and report");
    sub->add_flag("--warn-mixed-i2", cfg.warn_mixed_i2, "linearity: warn instead of refusing mixed H2 sums");
    sub->add_flag("--gate-isometry", cfg.gate_isometry, "structure-recovery: fail on sampled isometry defects");
    sub->add_option("--out", out, "Write the JSON report here");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->get_name() == "list") {
    for (const auto& s : jbstar::list_suites()) std::cout << s.name << "\t" << s.description << "\n";
    return 0;
  }

  cfg.command = sub->get_name();
  if (!algebra.empty()) cfg.algebra_path = algebra;
  if (!map.empty()) cfg.map_path = map;
  if (!theta.empty()) cfg.theta_path = theta;
  if (!out.empty()) cfg.out_path = out;
  if (sub->count("--epsilon")) cfg.epsilon = epsilon;
  cfg.tol = {abs_eps, rel_eps, cluster_eps};

  try {
    return emit(jbstar::run_suite(cfg), cfg.out_path);
  } catch (const jbstar::UsageError& e) {
    std::cerr << "jbstar: " << e.what() << "\n";
    return kUsage;
  } catch (const jbstar::Error& e) {
    std::cerr << "jbstar: " << e.what() << "\n";
    return 1;
  }
}
