#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "stablegap/errors.hpp"
#include "stablegap/stable_sampling.hpp"
#include "stablegap/stats.hpp"

using namespace stablegap;

namespace {

constexpr double kKsLevel = 1e-3;

}  // namespace

TEST_CASE("positive 1/2-stable matches the Levy law 1 / (2 G^2)") {
  RngStream rng(10, 0), ref(10, 1);
  constexpr int kN = 50000;
  std::vector<double> a(kN), b(kN);
  for (int i = 0; i < kN; ++i) {
    a[i] = sample_positive_stable(0.5, rng);
    const double g = ref.normal();
    b[i] = 1.0 / (2.0 * g * g);
  }
  const double ks = stats::ks_statistic(a, b);
  CHECK(stats::ks_pvalue(ks, kN, kN) > kKsLevel);
}

TEST_CASE("positive stable sampler stays finite close to beta = 1") {
  RngStream rng(11, 0);
  for (double beta : {0.9, 0.99, 0.995, 0.9995}) {
    for (int i = 0; i < 20000; ++i) {
      const double v = sample_positive_stable(beta, rng);
      REQUIRE(std::isfinite(v));
      REQUIRE(v > 0.0);
    }
  }
}

TEST_CASE("subordinator Laplace transform") {
  RngStream rng(12, 0);
  for (double alpha : {1.2, 1.8}) {
    for (double t : {0.5, 2.0}) {
      std::vector<double> v(100000);
      for (auto& x : v) x = std::exp(-0.5 * sample_subordinator_increment(alpha, t, rng));
      const auto est = stats::mean_with_stderr(v);
      const double want = std::exp(-0.5 * t * std::pow(1.0, alpha / 2.0));
      CAPTURE(alpha);
      CAPTURE(t);
      CHECK(std::abs(est.mean - want) <= 3.0 * est.std_error);
    }
  }
  CHECK(sample_subordinator_increment(2.0, 0.37, rng) == 0.37);
  CHECK_THROWS_AS(sample_subordinator_increment(1.5, 0.0, rng), ArgumentError);
  CHECK_THROWS_AS(sample_subordinator_increment(1.5, -1.0, rng), ArgumentError);
}

TEST_CASE("alpha = 1 increments are Cauchy with scale 1/2") {
  const StableModel model(1, 1.0);
  RngStream rng(13, 0), ref(13, 1);
  const auto cloud = sample_stable_cloud(model, 1.0, 40000, rng);
  std::vector<double> cauchy(40000);
  for (auto& c : cauchy) c = 0.5 * std::tan(std::numbers::pi * (ref.uniform_open() - 0.5));
  const double ks = stats::ks_statistic(cloud.coordinate(0), cauchy);
  CHECK(stats::ks_pvalue(ks, 40000, 40000) > kKsLevel);
}

TEST_CASE("self-similarity L_t = t^{1/alpha} L_1 in law") {
  const double alpha = 1.6, t = 3.0;
  const StableModel model(1, alpha);
  RngStream r1(14, 0), r2(14, 1);
  const auto at_t = sample_stable_cloud(model, t, 40000, r1);
  auto at_one = sample_stable_cloud(model, 1.0, 40000, r2).coordinate(0);
  for (auto& v : at_one) v *= std::pow(t, 1.0 / alpha);
  const double ks = stats::ks_statistic(at_t.coordinate(0), at_one);
  CHECK(stats::ks_pvalue(ks, 40000, 40000) > kKsLevel);
}

TEST_CASE("characteristic function exp(-t |xi|^alpha / 2) in d = 1 and d = 3") {
  for (int d : {1, 3}) {
    const StableModel model(d, 1.5);
    RngStream rng(15, static_cast<std::uint64_t>(d));
    const auto cloud = sample_stable_cloud(model, 0.5, 100000, rng);
    std::vector<double> xi(static_cast<std::size_t>(d), 0.0);
    xi[0] = 0.8;
    if (d == 3) xi[2] = -0.6;
    const auto est = empirical_char_function(cloud, xi);
    const double want = std::exp(-0.5 * 0.5 * std::pow(1.0 * (d == 3 ? 1.0 : 0.8), 1.5));
    CAPTURE(d);
    CHECK(std::abs(est.re - want) <= 3.0 * est.re_stderr);
    CHECK(std::abs(est.im) <= 3.0 * est.im_stderr);
  }
}

TEST_CASE("Gaussian increments have variance dt and dt = 0 gives zeros") {
  RngStream rng(16, 0);
  std::vector<double> sq(100000);
  for (auto& v : sq) {
    const auto g = sample_gaussian_increment(1, 0.25, rng);
    v = g[0] * g[0];
  }
  const auto est = stats::mean_with_stderr(sq);
  CHECK(std::abs(est.mean - 0.25) <= 3.0 * est.std_error);
  const auto z = sample_gaussian_increment(3, 0.0, rng);
  CHECK(z == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("sigma is applied and validated") {
  Eigen::MatrixXd sigma(2, 2);
  sigma << 2.0, 0.0, 0.0, 0.5;
  const StableModel model(1.7, sigma);
  CHECK_FALSE(model.sigma_is_identity());
  const std::vector<double> in{1.0, 4.0};
  std::vector<double> out(2);
  model.apply_sigma(in, out);
  CHECK(out == std::vector<double>{2.0, 2.0});

  Eigen::MatrixXd singular(2, 2);
  singular << 1.0, 1.0, 1.0, 1.0;
  CHECK_THROWS_AS(StableModel(1.5, singular), ArgumentError);
  CHECK_THROWS_AS(StableModel(1.5, Eigen::MatrixXd(2, 3)), ArgumentError);
  CHECK_THROWS_AS(StableModel(0, 1.5), ArgumentError);
  CHECK_THROWS_AS(StableModel(1, 2.5), ArgumentError);
  CHECK(StableModel(2, 2.0).is_brownian());
}

TEST_CASE("sampling is reproducible per stream") {
  const StableModel model(2, 1.3);
  RngStream a(17, 5), b(17, 5);
  const auto x = sample_stable_cloud(model, 1.0, 100, a);
  const auto y = sample_stable_cloud(model, 1.0, 100, b);
  CHECK(std::vector<double>(x.data().begin(), x.data().end()) ==
        std::vector<double>(y.data().begin(), y.data().end()));
}
