#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "scalocal/curve.hpp"

namespace scalocal {

/// Closed-form uniform reference: continuum (BUD) when `points` is empty,
/// N-point random realization (BRUD) otherwise.
struct ReferenceSpec {
  std::size_t dim = 2;
  double side = 1.0;
  std::optional<std::uint64_t> points;
  double q = 0.0;

  /// Throws InvalidArgument / UnsupportedRank on violated invariants.
  void validate() const;
};

/// Per-axis BUD entropy over all scales:
///   e <= L: log(L/e) + log(1 + a e/L) / (1-q)
///   e >= L: log(1 + a L/e) / (1-q)
/// with a = (1-q)/(1+q).
double bud_entropy_axis(double e, double side, double q);

/// Isotropic BUD entropy, dim * bud_entropy_axis. Ignores spec.points.
double bud_entropy(double e, const ReferenceSpec& spec);

/// Anisotropic BUD entropy: sum of per-axis terms, one width per axis.
double bud_entropy(std::span<const double> widths, double side, double q);

/// Mean bin occupancy N (min(e, L)/L)^d. Requires spec.points.
double mean_occupancy(double e, const ReferenceSpec& spec);

/// Occupied-bin fraction f(e) = 1 - exp(-mean_occupancy). Requires spec.points.
double bud_occupancy_factor(double e, const ReferenceSpec& spec);

/// log f(e), series-expanded for very small occupancy.
double log_occupancy_factor(double e, const ReferenceSpec& spec);

/// bud_entropy + log f(e). Requires spec.points.
double brud_entropy(double e, const ReferenceSpec& spec);

/// -dS/dlog e of bud_entropy_axis.
double bud_dimension_axis(double e, double side, double q);

double bud_dimension(double e, const ReferenceSpec& spec);

/// BUD dimension minus d * mu/(exp(mu) - 1) for e <= L; equal to the BUD
/// dimension above the boundary, where the occupancy is constant.
double brud_dimension(double e, const ReferenceSpec& spec);

/// BRUD when spec.points is set, BUD otherwise.
double reference_entropy(double e, const ReferenceSpec& spec);
double reference_dimension(double e, const ReferenceSpec& spec);

/// Analytic entropy / dimension curves sampled on a grid.
Curve reference_entropy_curve(const ReferenceSpec& spec, const ScaleGrid& grid);
Curve reference_dimension_curve(const ReferenceSpec& spec, const ScaleGrid& grid);

}  // namespace scalocal
