#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stablegap/config.hpp"
#include "stablegap/csv.hpp"
#include "stablegap/errors.hpp"
#include "stablegap/experiments.hpp"

namespace {

enum ExitCode : int { kOk = 0, kInvariant = 1, kArgument = 2, kIo = 3 };

// Flags shared by every experiment subcommand; each maps onto one config key.
struct CommonFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::vector<std::string> settings;
};

void add_common(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--config", flags.config_path, "key=value config file")->check(CLI::ExistingFile);
  const std::pair<const char*, const char*> keyed[] = {
      {"seed", "RNG seed (required here or in the config)"},
      {"out", "output CSV path; a .plot.csv is written next to it"},
      {"alpha", "comma-separated alpha grid in (1, 2]"},
      {"dim", "comma-separated dimension grid"},
      {"samples", "points per empirical measure / paths per run"},
      {"small-samples", "points per measure for the exact small-n comparison"},
      {"replicates", "independent replicates"},
      {"bootstrap", "bootstrap resamples"},
      {"steps", "Euler steps per unit time"},
      {"t-max", "time horizon"},
      {"burn-in", "burn-in time for ergodic sampling"},
      {"thinning", "time between retained ergodic samples"},
      {"checkpoints", "recorded times along the horizon"},
      {"estimator", "assignment | sliced | mean-norm"},
      {"drift", "ou | custom"},
      {"coupling", "shared | independent"},
      {"projections", "directions for the sliced estimator"},
      {"x0", "start of the first process"},
      {"y0", "start of the second process"},
      {"epsilon", "finite-difference step"},
      {"clip", "clip level of the test function"},
      {"test-function", "norm | coordinate"},
  };
  for (const auto& [key, help] : keyed) {
    const std::string k = key;
    sub->add_option_function<std::string>("--" + k, [&flags, k](const std::string& v) { flags.values[k] = v; },
                                          help);
  }
  sub->add_option("--set", flags.settings, "extra key=value settings")->take_all();
}

stablegap::ExperimentConfig build_config(stablegap::Experiment experiment, const CommonFlags& flags) {
  stablegap::ExperimentConfig cfg;
  if (!flags.config_path.empty()) cfg = stablegap::load_config(flags.config_path);
  cfg.experiment = experiment;
  for (const auto& kv : flags.settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw stablegap::ArgumentError("--set expects key=value, got '" + kv + "'");
    stablegap::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  for (const auto& [k, v] : flags.values) stablegap::apply_setting(cfg, k, v);
  cfg.validate();
  return cfg;
}

std::filesystem::path plot_path(const std::filesystem::path& out) {
  auto p = out;
  p.replace_extension();
  return p.string() + ".plot.csv";
}

int run(const stablegap::ExperimentConfig& cfg) {
  const auto report = stablegap::run_experiment(cfg);
  const auto hash = cfg.hash();
  if (cfg.output_path.empty()) {
    std::cout << stablegap::to_csv(report.table, hash);
  } else {
    stablegap::write_csv(cfg.output_path, report.table, hash);
    stablegap::write_csv(plot_path(cfg.output_path), report.plot, hash);
  }
  for (const auto& note : report.notes) std::cerr << "# " << note << '\n';
  std::cerr << "# config hash " << hash << '\n';
  return report.invariants_ok ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable vs Brownian SDE stationary-distance experiments"};
  app.require_subcommand(1);

  const std::pair<stablegap::Experiment, const char*> experiments[] = {
      {stablegap::Experiment::alpha_sweep, "W1 between stable and Gaussian stationary laws over an alpha grid"},
      {stablegap::Experiment::dim_sweep, "closed-form lower bound and estimators over a dimension grid"},
      {stablegap::Experiment::transient, "W1 between the two laws along time from fixed starts"},
      {stablegap::Experiment::contraction, "synchronous-coupling distance decay"},
      {stablegap::Experiment::gradient_check, "finite-difference semigroup gradients"},
      {stablegap::Experiment::selftest, "fast internal consistency checks"},
  };
  std::vector<CommonFlags> flags(std::size(experiments));
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(experiments); ++i) {
    auto* sub = app.add_subcommand(std::string(stablegap::to_string(experiments[i].first)), experiments[i].second);
    add_common(sub, flags[i]);
    subs.push_back(sub);
  }

  std::vector<std::string> merge_inputs;
  std::string merge_out;
  auto* merge = app.add_subcommand("merge", "concatenate result CSVs that share a config hash");
  merge->add_option("inputs", merge_inputs)->required()->check(CLI::ExistingFile);
  merge->add_option("--out", merge_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kArgument;
  }

  try {
    if (merge->parsed()) {
      std::vector<stablegap::LoadedTable> parts;
      for (const auto& p : merge_inputs) parts.push_back(stablegap::read_csv(p));
      const auto merged = stablegap::merge_tables(parts);
      stablegap::write_csv(merge_out, merged.table, merged.config_hash);
      return kOk;
    }
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (subs[i]->parsed()) return run(build_config(experiments[i].first, flags[i]));
  } catch (const stablegap::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const stablegap::ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kArgument;
  } catch (const stablegap::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kArgument;
  } catch (const stablegap::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kArgument;
  } catch (const stablegap::IntegrationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvariant;
  }
  return kArgument;
}
