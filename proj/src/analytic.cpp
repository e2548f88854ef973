#include "scalocal/analytic.hpp"

#include <cmath>

#include "scalocal/errors.hpp"

namespace scalocal {

namespace {

void check_scale(double e) {
  if (!(e > 0.0) || !std::isfinite(e)) throw InvalidArgument("scale must be positive and finite");
}

void check_side(double side) {
  if (!(side > 0.0) || !std::isfinite(side))
    throw InvalidArgument("support side L must be positive and finite");
}

std::uint64_t require_points(const ReferenceSpec& spec) {
  if (!spec.points) throw InvalidArgument("BRUD reference requires a point count N");
  return *spec.points;
}

double rank_slope(double q) { return (1.0 - q) / (1.0 + q); }

}  // namespace

void ReferenceSpec::validate() const {
  if (dim == 0) throw InvalidArgument("reference dimension must be >= 1");
  check_side(side);
  if (points && *points == 0) throw InvalidArgument("reference point count must be >= 1");
  validate_rank(q);
}

double bud_entropy_axis(double e, double side, double q) {
  check_scale(e);
  check_side(side);
  validate_rank(q);
  const double x = e / side;
  const double a = rank_slope(q);
  if (x <= 1.0) return -std::log(x) + std::log1p(a * x) / (1.0 - q);
  return std::log1p(a / x) / (1.0 - q);
}

double bud_entropy(double e, const ReferenceSpec& spec) {
  spec.validate();
  return static_cast<double>(spec.dim) * bud_entropy_axis(e, spec.side, spec.q);
}

double bud_entropy(std::span<const double> widths, double side, double q) {
  if (widths.empty()) throw InvalidArgument("at least one axis width is required");
  double s = 0.0;
  for (double w : widths) s += bud_entropy_axis(w, side, q);
  return s;
}

double mean_occupancy(double e, const ReferenceSpec& spec) {
  spec.validate();
  check_scale(e);
  const auto n = static_cast<double>(require_points(spec));
  const double x = std::min(e / spec.side, 1.0);
  return n * std::pow(x, static_cast<double>(spec.dim));
}

double bud_occupancy_factor(double e, const ReferenceSpec& spec) {
  return -std::expm1(-mean_occupancy(e, spec));
}

double log_occupancy_factor(double e, const ReferenceSpec& spec) {
  const double mu = mean_occupancy(e, spec);
  if (mu < 1e-8) return std::log(mu) - 0.5 * mu;
  return std::log(-std::expm1(-mu));
}

double brud_entropy(double e, const ReferenceSpec& spec) {
  return bud_entropy(e, spec) + log_occupancy_factor(e, spec);
}

double bud_dimension_axis(double e, double side, double q) {
  check_scale(e);
  check_side(side);
  validate_rank(q);
  const double x = e / side;
  const double a = rank_slope(q);
  if (x <= 1.0) return 1.0 - (a * x) / ((1.0 - q) * (1.0 + a * x));
  return (a / x) / ((1.0 - q) * (1.0 + a / x));
}

double bud_dimension(double e, const ReferenceSpec& spec) {
  spec.validate();
  return static_cast<double>(spec.dim) * bud_dimension_axis(e, spec.side, spec.q);
}

double brud_dimension(double e, const ReferenceSpec& spec) {
  const double base = bud_dimension(e, spec);
  if (e > spec.side) {
    require_points(spec);
    return base;
  }
  // d log f / d log e = d * mu exp(-mu) / (1 - exp(-mu)) = d * mu / expm1(mu)
  const double mu = mean_occupancy(e, spec);
  const double term = mu < 1e-300 ? 1.0 : mu / std::expm1(mu);
  return base - static_cast<double>(spec.dim) * term;
}

double reference_entropy(double e, const ReferenceSpec& spec) {
  return spec.points ? brud_entropy(e, spec) : bud_entropy(e, spec);
}

double reference_dimension(double e, const ReferenceSpec& spec) {
  return spec.points ? brud_dimension(e, spec) : bud_dimension(e, spec);
}

namespace {

template <class F>
Curve sample(const ReferenceSpec& spec, const ScaleGrid& grid, CurveKind kind, F f) {
  spec.validate();
  Curve c{.q = spec.q, .grid = grid, .values = {}, .kind = kind, .source = CurveSource::analytic};
  c.values.reserve(grid.size());
  for (double e : grid.scales()) c.values.push_back(f(e, spec));
  return c;
}

}  // namespace

Curve reference_entropy_curve(const ReferenceSpec& spec, const ScaleGrid& grid) {
  return sample(spec, grid, CurveKind::entropy, reference_entropy);
}

Curve reference_dimension_curve(const ReferenceSpec& spec, const ScaleGrid& grid) {
  return sample(spec, grid, CurveKind::dimension, reference_dimension);
}

}  // namespace scalocal
