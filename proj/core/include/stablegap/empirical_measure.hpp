#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stablegap {

/// Uniform empirical measure on n points in R^d, stored row-major.
class EmpiricalMeasure {
 public:
  EmpiricalMeasure() = default;
  /// Zero-initialised cloud of n points in dimension d.
  EmpiricalMeasure(std::size_t n, std::size_t d);
  /// Takes ownership of row-major data; data.size() must equal n * d and all entries be finite.
  EmpiricalMeasure(std::vector<double> data, std::size_t d);

  std::size_t n() const noexcept { return d_ == 0 ? 0 : data_.size() / d_; }
  std::size_t d() const noexcept { return d_; }

  std::span<const double> point(std::size_t i) const { return {data_.data() + i * d_, d_}; }
  std::span<double> point(std::size_t i) { return {data_.data() + i * d_, d_}; }

  std::span<const double> data() const noexcept { return data_; }

  /// First coordinate of every point; convenient in d = 1.
  std::vector<double> coordinate(std::size_t k) const;
  /// Euclidean norm of every point.
  std::vector<double> norms() const;

  /// Throws ArgumentError when the cloud is empty or holds a non-finite entry.
  void validate() const;

 private:
  std::vector<double> data_;
  std::size_t d_ = 0;
};

}  // namespace stablegap
