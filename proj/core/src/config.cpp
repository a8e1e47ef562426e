#include "stablegap/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stablegap/csv.hpp"
#include "stablegap/errors.hpp"

namespace stablegap {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string normalize_key(std::string_view key) {
  std::string k = trim(key);
  for (char& c : k)
    if (c == '-') c = '_';
  return k;
}

double parse_real(std::string_view s) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ArgumentError("not a real number: '" + t + "'");
  return v;
}

template <typename Int>
Int parse_integer(std::string_view s) {
  const std::string t = trim(s);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ArgumentError("not a non-negative integer: '" + t + "'");
  return v;
}

std::string join_reals(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_real(v[i]);
  }
  return out;
}

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view s, const Enum (&values)[N], std::string_view what) {
  const std::string t = trim(s);
  for (Enum e : values)
    if (to_string(e) == t) return e;
  throw ArgumentError("unknown " + std::string(what) + ": '" + t + "'");
}

constexpr Experiment kExperiments[] = {Experiment::alpha_sweep, Experiment::dim_sweep,
                                       Experiment::transient,   Experiment::contraction,
                                       Experiment::gradient_check, Experiment::selftest};
constexpr Estimator kEstimators[] = {Estimator::assignment, Estimator::sliced, Estimator::mean_norm};
constexpr DriftChoice kDrifts[] = {DriftChoice::ou, DriftChoice::custom};
constexpr Coupling kCouplings[] = {Coupling::shared, Coupling::independent};
constexpr TestFunction kTestFunctions[] = {TestFunction::norm, TestFunction::coordinate};

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::alpha_sweep: return "alpha-sweep";
    case Experiment::dim_sweep: return "dim-sweep";
    case Experiment::transient: return "transient";
    case Experiment::contraction: return "contraction";
    case Experiment::gradient_check: return "gradient-check";
    case Experiment::selftest: return "selftest";
  }
  return "unknown";
}

std::string_view to_string(Estimator e) {
  switch (e) {
    case Estimator::assignment: return "assignment";
    case Estimator::sliced: return "sliced";
    case Estimator::mean_norm: return "mean-norm";
  }
  return "unknown";
}

std::string_view to_string(DriftChoice e) { return e == DriftChoice::ou ? "ou" : "custom"; }
std::string_view to_string(Coupling e) { return e == Coupling::shared ? "shared" : "independent"; }
std::string_view to_string(TestFunction e) { return e == TestFunction::norm ? "norm" : "coordinate"; }

Experiment parse_experiment(std::string_view s) { return parse_enum(s, kExperiments, "experiment"); }

std::vector<double> parse_real_list(std::string_view s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto item = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
    if (!trim(item).empty()) out.push_back(parse_real(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<int> parse_int_list(std::string_view s) {
  std::vector<int> out;
  for (double v : parse_real_list(s)) {
    if (v != static_cast<int>(v)) throw ArgumentError("expected integers in list");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

void apply_setting(ExperimentConfig& cfg, std::string_view raw_key, std::string_view value) {
  const std::string key = normalize_key(raw_key);
  if (key == "experiment") cfg.experiment = parse_experiment(value);
  else if (key == "alpha") cfg.alpha_grid = parse_real_list(value);
  else if (key == "dim") cfg.d_grid = parse_int_list(value);
  else if (key == "samples") cfg.n_samples = parse_integer<std::size_t>(value);
  else if (key == "small_samples") cfg.n_small = parse_integer<std::size_t>(value);
  else if (key == "replicates") cfg.replicates = parse_integer<std::size_t>(value);
  else if (key == "bootstrap") cfg.bootstrap = parse_integer<int>(value);
  else if (key == "steps") cfg.steps_per_unit = parse_integer<std::size_t>(value);
  else if (key == "t_max") cfg.t_max = parse_real(value);
  else if (key == "burn_in") cfg.burn_in = parse_real(value);
  else if (key == "thinning") cfg.thinning = parse_real(value);
  else if (key == "checkpoints") cfg.checkpoints = parse_integer<std::size_t>(value);
  else if (key == "seed") cfg.seed = parse_integer<std::uint64_t>(value);
  else if (key == "out") cfg.output_path = trim(value);
  else if (key == "estimator") cfg.estimator = parse_enum(value, kEstimators, "estimator");
  else if (key == "drift") cfg.drift = parse_enum(value, kDrifts, "drift");
  else if (key == "coupling") cfg.coupling = parse_enum(value, kCouplings, "coupling");
  else if (key == "projections") cfg.projections = parse_integer<std::size_t>(value);
  else if (key == "x0") cfg.x0 = parse_real_list(value);
  else if (key == "y0") cfg.y0 = parse_real_list(value);
  else if (key == "epsilon") cfg.epsilon = parse_real(value);
  else if (key == "clip") cfg.clip = parse_real(value);
  else if (key == "test_function") cfg.test_function = parse_enum(value, kTestFunctions, "test function");
  else throw ArgumentError("unknown config key '" + key + "'");
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ArgumentError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    apply_setting(base, std::string_view(body).substr(0, eq), std::string_view(body).substr(eq + 1));
  }
  return base;
}

void ExperimentConfig::validate() const {
  if (!seed) throw ArgumentError("a seed is required (--seed or seed=...)");
  if (alpha_grid.empty()) throw ArgumentError("alpha grid is empty");
  for (double a : alpha_grid)
    if (!(a > 1.0 && a <= 2.0)) throw ArgumentError("alpha values must lie in (1, 2]");
  if (d_grid.empty()) throw ArgumentError("dimension grid is empty");
  for (int d : d_grid)
    if (d < 1) throw ArgumentError("dimensions must be >= 1");
  if (n_samples == 0) throw ArgumentError("samples must be >= 1");
  if (n_small == 0) throw ArgumentError("small_samples must be >= 1");
  if (replicates == 0) throw ArgumentError("replicates must be >= 1");
  if (bootstrap < 0) throw ArgumentError("bootstrap must be >= 0");
  if (steps_per_unit == 0) throw ArgumentError("steps must be >= 1");
  if (checkpoints < 2) throw ArgumentError("checkpoints must be >= 2");
  if (projections == 0) throw ArgumentError("projections must be >= 1");
  if (t_max && !(*t_max > 0.0)) throw ArgumentError("t_max must be positive");
  if (burn_in && !(*burn_in > 0.0)) throw ArgumentError("burn_in must be positive");
  if (!(thinning > 0.0)) throw ArgumentError("thinning must be positive");
  if (!(epsilon > 0.0)) throw ArgumentError("epsilon must be positive");
  if (!(clip > 0.0)) throw ArgumentError("clip must be positive");
  if ((x0 && x0->empty()) || y0.empty()) throw ArgumentError("x0 and y0 must be non-empty");
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string("auto"); };
  std::vector<double> dims(d_grid.begin(), d_grid.end());
  // Keys in lexicographic order.
  os << "alpha=" << join_reals(alpha_grid) << '\n'
     << "bootstrap=" << bootstrap << '\n'
     << "burn_in=" << opt(burn_in) << '\n'
     << "checkpoints=" << checkpoints << '\n'
     << "clip=" << format_real(clip) << '\n'
     << "coupling=" << (coupling ? std::string(to_string(*coupling)) : std::string("default")) << '\n'
     << "dim=" << join_reals(dims) << '\n'
     << "drift=" << to_string(drift) << '\n'
     << "epsilon=" << format_real(epsilon) << '\n'
     << "estimator=" << to_string(estimator) << '\n'
     << "experiment=" << to_string(experiment) << '\n'
     << "projections=" << projections << '\n'
     << "replicates=" << replicates << '\n'
     << "samples=" << n_samples << '\n'
     << "seed=" << (seed ? std::to_string(*seed) : std::string("none")) << '\n'
     << "small_samples=" << n_small << '\n'
     << "steps=" << steps_per_unit << '\n'
     << "t_max=" << opt(t_max) << '\n'
     << "test_function=" << to_string(test_function) << '\n'
     << "thinning=" << format_real(thinning) << '\n'
     << "x0=" << (x0 ? join_reals(*x0) : std::string("default")) << '\n'
     << "y0=" << join_reals(y0) << '\n';
  return os.str();
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace stablegap
