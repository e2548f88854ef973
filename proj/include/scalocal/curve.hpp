#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace scalocal {

/// Construction parameters of a log-spaced grid.
struct GridSpec {
  double e_min;
  double e_max;
  double per_decade;
};

/// Strictly increasing, log-uniformly spaced partition scales.
class ScaleGrid {
 public:
  /// e_k = e_min * 10^(k / per_decade) for every k with e_k <= e_max.
  static ScaleGrid log_spaced(double e_min, double e_max, double per_decade);

  /// Grid from explicit scales (e.g. read back from a curve file). Must be
  /// positive, strictly increasing and log-uniform within 1e-12 relative.
  static ScaleGrid from_scales(std::vector<double> scales);

  std::size_t size() const noexcept { return scales_.size(); }
  double operator[](std::size_t k) const noexcept { return scales_[k]; }
  std::span<const double> scales() const noexcept { return scales_; }
  const std::optional<GridSpec>& spec() const noexcept { return spec_; }

  /// Same length and element-wise equal within `rel` relative tolerance.
  bool matches(const ScaleGrid& other, double rel = 1e-12) const;

 private:
  explicit ScaleGrid(std::vector<double> scales, std::optional<GridSpec> spec);

  std::vector<double> scales_;
  std::optional<GridSpec> spec_;
};

enum class CurveKind { entropy, information, dimension, transport };
enum class CurveSource { monte_carlo, analytic };

std::string_view to_string(CurveKind kind);
std::string_view to_string(CurveSource source);

/// A rank-q quantity sampled on a scale grid.
///
/// `phase_spread` (entropy curves from Monte Carlo only) is the per-scale
/// standard deviation of single-phase entropy estimates; `standard_error` is
/// the per-scale standard error of `values`. Either may be empty.
struct Curve {
  double q = 0.0;
  ScaleGrid grid;
  std::vector<double> values;
  CurveKind kind = CurveKind::entropy;
  CurveSource source = CurveSource::analytic;
  std::vector<double> phase_spread;
  std::vector<double> standard_error;
  std::size_t phase_count = 0;

  std::size_t size() const noexcept { return values.size(); }
  bool has_error() const noexcept { return !standard_error.empty(); }
  double error_at(std::size_t k) const noexcept {
    return standard_error.empty() ? 0.0 : standard_error[k];
  }

  /// Throws InvalidArgument unless every per-scale vector matches the grid.
  void validate() const;
};

}  // namespace scalocal
