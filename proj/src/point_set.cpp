#include "scalocal/point_set.hpp"

#include <cmath>
#include <string>

#include "scalocal/errors.hpp"

namespace scalocal {

PointSet::PointSet(std::size_t d, double side, std::vector<double> coords)
    : dim_(d), side_(side), coords_(std::move(coords)) {
  if (dim_ == 0) throw InvalidArgument("point set dimension must be >= 1");
  if (!(side_ > 0.0) || !std::isfinite(side_))
    throw InvalidArgument("point set side L must be positive and finite");
  if (coords_.empty()) throw InvalidArgument("point set must hold at least one point");
  if (coords_.size() % dim_ != 0)
    throw InvalidArgument("coordinate count is not a multiple of the dimension");
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    const double x = coords_[k];
    if (!(x >= 0.0 && x <= side_)) {
      throw InvalidArgument("point " + std::to_string(k / dim_) + " axis " +
                            std::to_string(k % dim_) + " outside [0, L]");
    }
  }
}

PointSet PointSet::scaled(double factor) const {
  if (!(factor > 0.0)) throw InvalidArgument("scale factor must be positive");
  std::vector<double> out(coords_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = coords_[k] * factor;
  return PointSet(dim_, side_ * factor, std::move(out));
}

}  // namespace scalocal
