#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scalocal/point_set.hpp"

namespace scalocal {

/// Grid offset per axis, in units of the bin width; each component in [0, 1).
class PhaseVector {
 public:
  explicit PhaseVector(std::vector<double> phases);

  std::size_t dim() const noexcept { return phases_.size(); }
  double operator[](std::size_t axis) const noexcept { return phases_[axis]; }
  std::span<const double> values() const noexcept { return phases_; }

  friend bool operator==(const PhaseVector&, const PhaseVector&) = default;

 private:
  std::vector<double> phases_;
};

/// Occupied bins of one (scale, phase) partition.
///
/// Bins are held sorted lexicographically by their integer coordinates and
/// only bins with a positive count are stored, so occupied() is M(e).
class OccupancyMap {
 public:
  std::size_t dim() const noexcept { return widths_.size(); }
  std::span<const double> widths() const noexcept { return widths_; }
  const PhaseVector& phase() const noexcept { return phase_; }

  std::size_t occupied() const noexcept { return counts_.size(); }
  std::uint64_t total() const noexcept { return total_; }

  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::span<const std::int64_t> bin(std::size_t k) const noexcept {
    return {bins_.data() + k * dim(), dim()};
  }

  /// Count stored for a bin coordinate tuple; 0 for a void bin.
  std::uint64_t count_at(std::span<const std::int64_t> key) const;

 private:
  friend OccupancyMap assign_bins(const PointSet&, std::span<const double>,
                                  const PhaseVector&);
  OccupancyMap(std::vector<double> widths, PhaseVector phase)
      : widths_(std::move(widths)), phase_(std::move(phase)) {}

  std::vector<double> widths_;
  PhaseVector phase_;
  std::vector<std::int64_t> bins_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Bins every point on the grid with per-axis widths, shifted by phase.
///
/// The bin index on axis i is floor((x_i + phase_i * width_i) / width_i).
/// Throws InvalidArgument for a non-positive width or a dimension mismatch.
OccupancyMap assign_bins(const PointSet& points, std::span<const double> widths,
                         const PhaseVector& phase);

/// Isotropic overload: every axis uses the same width.
OccupancyMap assign_bins(const PointSet& points, double width, const PhaseVector& phase);

/// Counts of the occupied bins of an isotropic partition, in the same order
/// assign_bins stores them. Skips materializing the bin coordinates.
std::vector<std::uint64_t> occupancy_counts(const PointSet& points, double width,
                                            const PhaseVector& phase);

/// J dithering phases for d axes.
///
/// Each axis is stratified: its J phases are ((k + 0.5)/J + r_axis) mod 1 for
/// k = 0..J-1, so sorted they are equally spaced by 1/J. The stratum order is
/// an independent random permutation per axis (a Latin hypercube), which keeps
/// multi-axis averages unbiased. The offsets r_axis and the permutations come
/// from `seed` only. Throws InvalidArgument if J == 0 or d == 0.
std::vector<PhaseVector> phase_sequence(std::size_t count, std::size_t d,
                                        std::uint64_t seed);

/// Sum over occupied bins of (count / N)^q. For q = 0 this is M.
///
/// Throws UnsupportedRank for q < 0 or q == 1, InvalidArgument if N is not
/// the total count of occ.
double correlation_integral(const OccupancyMap& occ, double q, std::uint64_t n);

/// Natural log of the correlation integral of a count multiset summing to n.
/// Evaluated as q*log(c_max/n) + log(sum (c/c_max)^q) so extreme ranks do not
/// underflow. The rank is not validated here.
double log_correlation_integral(std::span<const std::uint64_t> counts, double q,
                                std::uint64_t n);

}  // namespace scalocal
