#include "stablegap/empirical_measure.hpp"

#include <cmath>
#include <utility>

#include "stablegap/errors.hpp"

namespace stablegap {

EmpiricalMeasure::EmpiricalMeasure(std::size_t n, std::size_t d) : data_(n * d, 0.0), d_(d) {
  if (d == 0) throw ArgumentError("EmpiricalMeasure: dimension must be positive");
}

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> data, std::size_t d)
    : data_(std::move(data)), d_(d) {
  if (d == 0) throw ArgumentError("EmpiricalMeasure: dimension must be positive");
  if (data_.size() % d != 0) throw ArgumentError("EmpiricalMeasure: data size not a multiple of d");
  validate();
}

std::vector<double> EmpiricalMeasure::coordinate(std::size_t k) const {
  std::vector<double> out(n());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = data_[i * d_ + k];
  return out;
}

std::vector<double> EmpiricalMeasure::norms() const {
  std::vector<double> out(n());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = 0.0;
    for (double v : point(i)) s += v * v;
    out[i] = std::sqrt(s);
  }
  return out;
}

void EmpiricalMeasure::validate() const {
  if (n() == 0) throw ArgumentError("EmpiricalMeasure: no points");
  for (double v : data_)
    if (!std::isfinite(v)) throw ArgumentError("EmpiricalMeasure: non-finite entry");
}

}  // namespace stablegap
