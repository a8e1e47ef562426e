#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "stablegap/config.hpp"
#include "stablegap/csv.hpp"
#include "stablegap/errors.hpp"

using namespace stablegap;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "stablegap_unit";
  std::filesystem::create_directories(dir);
  return dir / name;
}

ExperimentConfig seeded() {
  ExperimentConfig cfg;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("validation rejects degenerate configurations") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);  // no seed
  cfg.seed = 1;
  CHECK_NOTHROW(cfg.validate());

  auto bad = cfg;
  bad.n_samples = 0;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  bad = cfg;
  bad.alpha_grid = {};
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  bad = cfg;
  bad.alpha_grid = {1.0};
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  bad = cfg;
  bad.alpha_grid = {2.1};
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  bad = cfg;
  bad.d_grid = {0};
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  bad = cfg;
  bad.t_max = -1.0;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
}

TEST_CASE("settings accept dashes or underscores and reject unknown keys") {
  auto cfg = seeded();
  apply_setting(cfg, "t-max", "3.5");
  apply_setting(cfg, "small_samples", "64");
  apply_setting(cfg, "alpha", "1.5, 1.9");
  apply_setting(cfg, "dim", "1,2,4");
  apply_setting(cfg, "estimator", "mean-norm");
  apply_setting(cfg, "coupling", "independent");
  apply_setting(cfg, "experiment", "gradient-check");
  CHECK(*cfg.t_max == 3.5);
  CHECK(cfg.n_small == 64);
  CHECK(cfg.alpha_grid == std::vector<double>{1.5, 1.9});
  CHECK(cfg.d_grid == std::vector<int>{1, 2, 4});
  CHECK(cfg.estimator == Estimator::mean_norm);
  CHECK(cfg.coupling_or(Coupling::shared) == Coupling::independent);
  CHECK(cfg.experiment == Experiment::gradient_check);
  CHECK_THROWS_AS(apply_setting(cfg, "colour", "blue"), ArgumentError);
  CHECK_THROWS_AS(apply_setting(cfg, "samples", "-3"), ArgumentError);
  CHECK_THROWS_AS(apply_setting(cfg, "alpha", "1.5,abc"), ArgumentError);
  CHECK_THROWS_AS(apply_setting(cfg, "dim", "1.5"), ArgumentError);
  CHECK_THROWS_AS(apply_setting(cfg, "estimator", "exact"), ArgumentError);
}

TEST_CASE("config files load with comments") {
  const auto path = temp_path("cfg.txt");
  {
    std::ofstream out(path);
    out << "# sweep\nexperiment = dim-sweep\nseed=42  # trailing\n\ndim=1,3\nout=results/x.csv\n";
  }
  const auto cfg = load_config(path);
  CHECK(cfg.experiment == Experiment::dim_sweep);
  CHECK(*cfg.seed == 42);
  CHECK(cfg.d_grid == std::vector<int>{1, 3});
  CHECK(cfg.output_path == "results/x.csv");
  CHECK_THROWS_AS(load_config(temp_path("missing.txt")), IoError);
  {
    std::ofstream out(path);
    out << "seed 42\n";
  }
  CHECK_THROWS_AS(load_config(path), ArgumentError);
}

TEST_CASE("config hash is stable and ignores the output path") {
  auto a = seeded();
  auto b = seeded();
  b.output_path = "elsewhere.csv";
  CHECK(a.hash() == b.hash());
  CHECK(a.hash().size() == 16);
  b.n_samples = 4095;
  CHECK(a.hash() != b.hash());
  auto c = seeded();
  c.seed = 8;
  CHECK(a.hash() != c.hash());
  // Setting a value equal to the default still changes nothing in the canonical form.
  auto d = seeded();
  apply_setting(d, "samples", "4096");
  CHECK(a.hash() == d.hash());
}

TEST_CASE("CSV round trip and hash column") {
  Table t;
  t.columns = {"a", "b"};
  t.add_row({1.0, 0.1});
  t.add_row({-2.5, 1e-300});
  CHECK_THROWS_AS(t.add_row({1.0}), ArgumentError);
  const auto path = temp_path("t.csv");
  write_csv(path, t, "00000000deadbeef");
  const auto loaded = read_csv(path);
  CHECK(loaded.config_hash == "00000000deadbeef");
  CHECK(loaded.table.columns == t.columns);
  CHECK(loaded.table.rows == t.rows);
  CHECK(to_csv(t, "h").rfind("config_hash,a,b\nh,1,", 0) == 0);
}

TEST_CASE("mixing configurations is refused") {
  Table t;
  t.columns = {"x"};
  t.add_row({1.0});
  const auto p1 = temp_path("m1.csv");
  const auto p2 = temp_path("m2.csv");
  write_csv(p1, t, "aaaaaaaaaaaaaaaa");
  write_csv(p2, t, "bbbbbbbbbbbbbbbb");
  const auto a = read_csv(p1);
  const auto b = read_csv(p2);
  CHECK(merge_tables({a, a}).table.rows.size() == 2);
  CHECK_THROWS_AS(merge_tables({a, b}), ArgumentError);

  const auto mixed = temp_path("mixed.csv");
  {
    std::ofstream out(mixed);
    out << "config_hash,x\naaaaaaaaaaaaaaaa,1\nbbbbbbbbbbbbbbbb,2\n";
  }
  CHECK_THROWS_AS(read_csv(mixed), ArgumentError);
  CHECK_THROWS_AS(write_csv("/proc/definitely/not/writable.csv", t, "h"), IoError);
}
