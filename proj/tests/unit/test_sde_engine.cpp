#include <doctest.h>

#include <cmath>
#include <vector>

#include "stablegap/errors.hpp"
#include "stablegap/ou_analytics.hpp"
#include "stablegap/sde_engine.hpp"
#include "stablegap/stats.hpp"

using namespace stablegap;

namespace {

DriftSpec sine_drift(int d) {
  return DriftSpec::custom(
      d,
      [](std::span<const double> x, std::span<double> out) {
        for (std::size_t k = 0; k < x.size(); ++k) out[k] = -2.0 * x[k] + std::sin(x[k]);
      },
      1.0, 0.0, 3.0, 1.0, 1.0,
      [d](std::span<const double> x, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (int k = 0; k < d; ++k) out[static_cast<std::size_t>(k * d + k)] = -2.0 + std::cos(x[static_cast<std::size_t>(k)]);
      });
}

}  // namespace

TEST_CASE("OU drift constants") {
  const auto b = DriftSpec::ornstein_uhlenbeck(3);
  CHECK(b.theta0 == 1.0);
  CHECK(b.K == 0.0);
  CHECK(b.default_step() == 1e-3);
  CHECK(b.default_burn_in() == 10.0);
  std::vector<double> out(3);
  b.eval(std::vector<double>{1.0, -2.0, 0.5}, out);
  CHECK(out == std::vector<double>{-1.0, 2.0, -0.5});
}

TEST_CASE("custom drift is checked for dissipativity") {
  CHECK_NOTHROW(sine_drift(2));
  CHECK(sine_drift(1).default_step() == doctest::Approx(1e-3 / 3.0));
  CHECK_THROWS_AS(DriftSpec::custom(
                      1, [](std::span<const double> x, std::span<double> out) { out[0] = x[0]; }, 1.0, 0.0,
                      1.0, 0.0, 0.0),
                  ArgumentError);
}

TEST_CASE("synchronous coupling of OU contracts by (1 - h) per step") {
  const StableModel model(2, 1.4);
  const auto drift = DriftSpec::ornstein_uhlenbeck(2);
  RngStream rng(20, 0);
  const std::vector<double> x0{3.0, -1.0}, y0{0.0, 1.0};
  const auto [px, py] = integrate_coupled(model, NoiseKind::stable, drift, x0, y0, 2.0, 400, rng);
  const double h = 2.0 / 400.0;
  for (std::size_t k : {0UL, 1UL, 100UL, 400UL}) {
    const double want = std::pow(1.0 - h, static_cast<double>(k));
    CHECK(px.state(k)[0] - py.state(k)[0] == doctest::Approx(3.0 * want).epsilon(1e-12));
    CHECK(px.state(k)[1] - py.state(k)[1] == doctest::Approx(-2.0 * want).epsilon(1e-12));
  }
  CHECK(px.times.back() == doctest::Approx(2.0));
}

TEST_CASE("recorded integration reproduces the full path") {
  const StableModel model(1, 1.7);
  const auto drift = sine_drift(1);
  const std::vector<double> x0{0.5};
  RngStream a(21, 0), b(21, 0);
  const auto full = integrate(model, NoiseKind::stable, drift, x0, 1.0, 500, a);
  const std::vector<std::size_t> rec{0, 10, 250, 500};
  const auto part = integrate_recorded(model, NoiseKind::stable, drift, x0, 1.0, 500, rec, b);
  for (std::size_t i = 0; i < rec.size(); ++i) CHECK(part[i] == full.state(rec[i])[0]);
}

TEST_CASE("Euler blow-up is reported with its step index") {
  const StableModel model(1, 2.0);
  const auto drift = DriftSpec::ornstein_uhlenbeck(1);
  RngStream rng(22, 0);
  const std::vector<double> x0{1.0};
  try {
    // h = 10 makes the scheme multiply by -9 each step.
    integrate(model, NoiseKind::brownian, drift, x0, 1000.0, 100, rng);
    FAIL("expected IntegrationError");
  } catch (const IntegrationError& e) {
    CHECK(e.step() >= 10);
    CHECK(e.step() <= 15);
  }
  CHECK_THROWS_AS(integrate(model, NoiseKind::brownian, drift, x0, -1.0, 10, rng), ArgumentError);
  CHECK_THROWS_AS(integrate(model, NoiseKind::brownian, drift, x0, 1.0, 0, rng), ArgumentError);
  CHECK_THROWS_AS(integrate(model, NoiseKind::brownian, drift, std::vector<double>{1.0, 2.0}, 1.0, 10, rng),
                  ArgumentError);
}

TEST_CASE("variational flow matches finite differences of coupled paths") {
  const StableModel model(2, 1.6);
  const auto drift = sine_drift(2);
  const std::vector<double> x0{0.3, -0.7}, v{1.0, 0.5};
  const double eps = 1e-6;
  std::vector<double> x1 = x0;
  x1[0] += eps * v[0];
  x1[1] += eps * v[1];
  RngStream rng(23, 0);
  const auto [pa, pb] = integrate_coupled(model, NoiseKind::stable, drift, x0, x1, 1.0, 1000, rng);
  const auto flow = variational_flow(pa, drift, v);
  for (std::size_t k : {0UL, 500UL, 1000UL}) {
    for (std::size_t c = 0; c < 2; ++c) {
      const double fd = (pb.state(k)[c] - pa.state(k)[c]) / eps;
      CHECK(flow.at(k)[c] == doctest::Approx(fd).epsilon(1e-4));
    }
  }
  const auto no_jacobian = DriftSpec::custom(
      2, [](std::span<const double> x, std::span<double> out) {
        for (std::size_t k = 0; k < x.size(); ++k) out[k] = -x[k];
      },
      1.0, 0.0, 1.0, 0.0, 0.0);
  CHECK_THROWS_AS(variational_flow(pa, no_jacobian, v), ArgumentError);
}

TEST_CASE("Euler OU transient law matches the closed-form characteristic function") {
  const double alpha = 1.5, t = 1.0;
  const StableModel model(1, alpha);
  const auto drift = DriftSpec::ornstein_uhlenbeck(1);
  const std::vector<double> x0{2.0};
  constexpr std::size_t kPaths = 20000;
  std::vector<double> cs(kPaths), sn(kPaths);
  const double xi = 0.9;
  RngStream rng(24, 0);
  const std::vector<std::size_t> rec{1000};
  for (std::size_t i = 0; i < kPaths; ++i) {
    const auto end = integrate_recorded(model, NoiseKind::stable, drift, x0, t, 1000, rec, rng);
    cs[i] = std::cos(xi * end[0]);
    sn[i] = std::sin(xi * end[0]);
  }
  const auto re = stats::mean_with_stderr(cs);
  const auto im = stats::mean_with_stderr(sn);
  const std::vector<double> xiv{xi};
  const auto want = ou::ou_transient_char(xiv, t, x0, alpha);
  // 3 SE plus an O(h) allowance for the Euler bias.
  CHECK(std::abs(re.mean - want.real()) <= 3.0 * re.std_error + 2e-3);
  CHECK(std::abs(im.mean - want.imag()) <= 3.0 * im.std_error + 2e-3);
}

TEST_CASE("ergodic sampling of Brownian OU has variance 1/2") {
  const StableModel model(1, 2.0);
  const auto drift = DriftSpec::ornstein_uhlenbeck(1);
  RngStream rng(25, 0);
  const auto cloud = ergodic_sample(model, NoiseKind::brownian, drift, 10.0, 20000, 2.0, 200, rng);
  CHECK(cloud.n() == 20000);
  std::vector<double> sq;
  for (double v : cloud.coordinate(0)) sq.push_back(v * v);
  const auto m = stats::mean_with_stderr(sq);
  CHECK(m.mean == doctest::Approx(0.5).epsilon(0.05));
}
