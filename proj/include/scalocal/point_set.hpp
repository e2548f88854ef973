#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace scalocal {

/// N points in the box [0, L]^d, stored row-major.
class PointSet {
 public:
  /// Throws InvalidArgument if d == 0, L <= 0, coords is empty, its size is
  /// not a multiple of d, or any coordinate lies outside [0, L].
  PointSet(std::size_t d, double side, std::vector<double> coords);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return coords_.size() / dim_; }
  double side() const noexcept { return side_; }

  std::span<const double> coords() const noexcept { return coords_; }
  std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }
  double coord(std::size_t i, std::size_t axis) const noexcept {
    return coords_[i * dim_ + axis];
  }

  /// Copy with every coordinate and the side multiplied by factor > 0.
  PointSet scaled(double factor) const;

 private:
  std::size_t dim_;
  double side_;
  std::vector<double> coords_;
};

}  // namespace scalocal
