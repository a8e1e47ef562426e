#include <doctest.h>

#include <cmath>
#include <vector>

#include "stablegap/errors.hpp"
#include "stablegap/experiments.hpp"

using namespace stablegap;

namespace {

ExperimentConfig small_config(Experiment e) {
  ExperimentConfig cfg;
  cfg.experiment = e;
  cfg.seed = 2024;
  cfg.n_samples = 512;
  cfg.n_small = 32;
  cfg.replicates = 4;
  cfg.bootstrap = 50;
  cfg.steps_per_unit = 200;
  cfg.checkpoints = 11;
  return cfg;
}

}  // namespace

TEST_CASE("rate fit recovers pure power laws") {
  std::vector<double> alphas{1.8, 1.85, 1.9, 1.95, 1.99, 2.0};
  std::vector<double> lin, ulog;
  for (double a : alphas) {
    const double u = 2.0 - a;
    lin.push_back(a < 2.0 ? 0.3 * u : 0.0);
    ulog.push_back(a < 2.0 ? 0.3 * u * std::log(1.0 / u) : 0.0);
  }
  const auto f1 = fit_rate(alphas, lin, RateFit::Transform::log_2ma);
  CHECK(f1.slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f1.n_points == 5);
  const auto f2 = fit_rate(alphas, ulog, RateFit::Transform::log_2ma_loglog);
  CHECK(f2.slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f2.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_rate({1.9, 2.0}, {0.1, 0.0}, RateFit::Transform::log_2ma), ArgumentError);
}

TEST_CASE("alpha sweep produces a table and is byte-identical on rerun") {
  auto cfg = small_config(Experiment::alpha_sweep);
  cfg.alpha_grid = {1.8, 1.9, 1.95, 2.0};
  const auto a = run_alpha_sweep(cfg);
  const auto b = run_alpha_sweep(cfg);
  CHECK(a.rows.size() == 4);
  CHECK(to_csv(a.report.table, cfg.hash()) == to_csv(b.report.table, cfg.hash()));
  CHECK(to_csv(a.report.plot, cfg.hash()) == to_csv(b.report.plot, cfg.hash()));
  CHECK(std::isnan(a.rows.back().lower_exact));
  CHECK(a.rows[0].w1 > a.rows[2].w1);
  CHECK(a.report.invariants_ok);
  CHECK(a.self_floor > 0.0);
}

TEST_CASE("alpha sweep with every estimator and the custom drift") {
  auto cfg = small_config(Experiment::alpha_sweep);
  cfg.alpha_grid = {1.7, 1.8, 1.9};
  cfg.d_grid = {2};
  cfg.n_samples = 96;
  for (Estimator e : {Estimator::assignment, Estimator::sliced, Estimator::mean_norm}) {
    cfg.estimator = e;
    const auto r = run_alpha_sweep(cfg);
    CHECK(r.rows.size() == 3);
    for (const auto& row : r.rows) CHECK(row.w1 >= 0.0);
  }
  cfg.estimator = Estimator::assignment;
  cfg.drift = DriftChoice::custom;
  cfg.burn_in = 2.0;
  cfg.thinning = 0.2;
  const auto r = run_alpha_sweep(cfg);
  CHECK(r.rows.size() == 3);
}

TEST_CASE("dimension sweep keeps the lower bounds under the exact value") {
  auto cfg = small_config(Experiment::dim_sweep);
  cfg.alpha_grid = {1.8};
  cfg.d_grid = {1, 2, 4, 8};
  const auto r = run_dim_sweep(cfg);
  CHECK(r.report.invariants_ok);
  CHECK(r.rows.size() == 4);
  // The exact bound grows like sqrt(d): slope 1/2 against log d.
  CHECK(r.slope_vs_d == doctest::Approx(0.5).epsilon(0.1));
  for (const auto& row : r.rows) CHECK(row.small_mean_norm <= row.small_assignment + 1e-12);
  cfg.alpha_grid = {2.0};
  CHECK_THROWS_AS(run_dim_sweep(cfg), ArgumentError);
}

TEST_CASE("contraction rate of the OU coupling is the Euler rate") {
  auto cfg = small_config(Experiment::contraction);
  cfg.alpha_grid = {1.5};
  cfg.steps_per_unit = 1000;
  cfg.t_max = 2.0;
  const auto r = run_contraction(cfg);
  CHECK(r.never_expands);
  CHECK(r.rate == doctest::Approx(-std::log(1.0 - 1e-3) / 1e-3).epsilon(1e-9));
  CHECK(r.prefactor == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("contraction with identical starts stays at zero") {
  auto cfg = small_config(Experiment::contraction);
  cfg.x0 = std::vector<double>{0.0};
  const auto r = run_contraction(cfg);
  CHECK(std::isnan(r.rate));
  for (const auto& row : r.rows) CHECK(row.mean_distance == 0.0);
}

TEST_CASE("transient curve starts at |x - y|") {
  auto cfg = small_config(Experiment::transient);
  cfg.alpha_grid = {1.9};
  cfg.n_samples = 256;
  cfg.t_max = 6.0;
  cfg.steps_per_unit = 100;
  const auto r = run_transient(cfg);
  REQUIRE(r.rows.size() == 11);
  CHECK(r.rows.front().t == 0.0);
  CHECK(r.rows.front().w1 == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(r.rows.back().t == doctest::Approx(6.0));
  CHECK(r.rows[1].w1 < r.rows[0].w1);
  CHECK(r.decay_rate == doctest::Approx(1.0).epsilon(0.25));
}

TEST_CASE("gradient check includes the Brownian reference") {
  auto cfg = small_config(Experiment::gradient_check);
  cfg.alpha_grid = {1.5, 1.99};
  const auto r = run_gradient_check(cfg);
  CHECK(r.rows.size() == 30);
  CHECK(r.reference_max > 0.0);
  CHECK(r.reference_max <= 1.0);
  CHECK(r.stable_max <= 1.05 * r.reference_max);
  cfg.test_function = TestFunction::coordinate;
  const auto c = run_gradient_check(cfg);
  // Clipped coordinate of the OU flow: derivative e^{-t} while far from the clip.
  CHECK(c.rows.front().gradient == doctest::Approx(std::exp(-0.1)).epsilon(0.02));
}

TEST_CASE("selftest passes and its negative control fails") {
  const auto cfg = small_config(Experiment::selftest);
  const auto ok = run_selftest(cfg);
  CHECK(ok.passed());
  const auto bad = run_selftest(cfg, SelftestOptions{1.1});
  CHECK_FALSE(bad.passed());
  CHECK_FALSE(bad.checks.front().passed);
}

TEST_CASE("runners reject invalid configurations") {
  auto cfg = small_config(Experiment::alpha_sweep);
  cfg.n_samples = 0;
  CHECK_THROWS_AS(run_experiment(cfg), ArgumentError);
  cfg = small_config(Experiment::transient);
  cfg.x0 = std::vector<double>{1.0, 2.0};
  cfg.d_grid = {3};
  CHECK_THROWS_AS(run_transient(cfg), ArgumentError);
}
