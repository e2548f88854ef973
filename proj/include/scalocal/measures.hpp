#pragma once

#include <span>
#include <vector>

#include "scalocal/curve.hpp"

namespace scalocal {

/// Object curve paired with the reference it is compared against.
struct CurvePair {
  Curve reference;
  Curve object;
};

/// I_q = S_ref - S_obj at every scale. Standard errors add in quadrature.
/// Throws IncompatibleCurves on a rank or grid mismatch, or if either curve
/// is not an entropy curve.
Curve information(const CurvePair& pair);

/// d_q = -dS_q/dlog e by finite differences on the stored grid: three-point
/// central differences inside, second-order one-sided stencils at the ends.
/// Needs an entropy curve with at least 3 scales.
Curve dimension_curve(const Curve& entropy);

/// +dI_q/dlog e with the same stencil, which equals
/// dimension_curve(object) - dimension_curve(reference): positive where the
/// object has more dimension than the reference.
Curve dimension_transport(const Curve& info);

/// d values / d log e on the grid using the stencil above.
std::vector<double> log_derivative(const ScaleGrid& grid, std::span<const double> values);

/// Standard-error propagation of log_derivative for independent errors.
std::vector<double> log_derivative_error(const ScaleGrid& grid, std::span<const double> errors);

}  // namespace scalocal
