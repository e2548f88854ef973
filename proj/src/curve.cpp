#include "scalocal/curve.hpp"

#include <cmath>

#include "scalocal/errors.hpp"

namespace scalocal {

ScaleGrid::ScaleGrid(std::vector<double> scales, std::optional<GridSpec> spec)
    : scales_(std::move(scales)), spec_(spec) {}

ScaleGrid ScaleGrid::log_spaced(double e_min, double e_max, double per_decade) {
  if (!(e_min > 0.0) || !std::isfinite(e_min) || !std::isfinite(e_max))
    throw InvalidArgument("grid e_min must be positive and finite");
  if (!(e_min <= e_max)) throw InvalidArgument("grid requires e_min <= e_max");
  if (!(per_decade > 0.0) || !std::isfinite(per_decade))
    throw InvalidArgument("grid points per decade must be positive");

  const double span = per_decade * std::log10(e_max / e_min);
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  if (n > 1'000'000) throw InvalidArgument("grid has too many points");
  std::vector<double> scales(n);
  for (std::size_t k = 0; k < n; ++k)
    scales[k] = e_min * std::pow(10.0, static_cast<double>(k) / per_decade);
  return ScaleGrid(std::move(scales), GridSpec{e_min, e_max, per_decade});
}

ScaleGrid ScaleGrid::from_scales(std::vector<double> scales) {
  if (scales.empty()) throw InvalidArgument("scale grid must not be empty");
  for (std::size_t k = 0; k < scales.size(); ++k) {
    if (!(scales[k] > 0.0) || !std::isfinite(scales[k]))
      throw InvalidArgument("grid scales must be positive and finite");
    if (k > 0 && !(scales[k] > scales[k - 1]))
      throw InvalidArgument("grid scales must be strictly increasing");
  }
  if (scales.size() >= 3) {
    const double step = std::log(scales[1] / scales[0]);
    for (std::size_t k = 2; k < scales.size(); ++k) {
      const double s = std::log(scales[k] / scales[k - 1]);
      if (std::fabs(s - step) > 1e-12 * std::fabs(step) + 1e-15)
        throw InvalidArgument("grid scales are not log-uniform");
    }
  }
  return ScaleGrid(std::move(scales), std::nullopt);
}

bool ScaleGrid::matches(const ScaleGrid& other, double rel) const {
  if (size() != other.size()) return false;
  for (std::size_t k = 0; k < size(); ++k) {
    if (std::fabs(scales_[k] - other.scales_[k]) > rel * std::fabs(scales_[k])) return false;
  }
  return true;
}

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::entropy: return "entropy";
    case CurveKind::information: return "information";
    case CurveKind::dimension: return "dimension";
    case CurveKind::transport: return "transport";
  }
  return "unknown";
}

std::string_view to_string(CurveSource source) {
  return source == CurveSource::monte_carlo ? "monte-carlo" : "analytic";
}

void Curve::validate() const {
  const std::size_t n = grid.size();
  if (values.size() != n) throw InvalidArgument("curve values do not match grid length");
  if (!phase_spread.empty() && phase_spread.size() != n)
    throw InvalidArgument("curve phase spread does not match grid length");
  if (!standard_error.empty() && standard_error.size() != n)
    throw InvalidArgument("curve standard error does not match grid length");
}

}  // namespace scalocal
