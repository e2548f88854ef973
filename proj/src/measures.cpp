#include "scalocal/measures.hpp"

#include <array>
#include <cmath>

#include "scalocal/errors.hpp"

namespace scalocal {

namespace {

struct Stencil {
  std::size_t first;  // index of the first of three samples
  std::array<double, 3> w;
};

// Three-point stencil for the first derivative at sample k of abscissae t.
Stencil stencil_at(std::span<const double> t, std::size_t k) {
  const std::size_t n = t.size();
  if (k == 0) {
    const double h1 = t[1] - t[0];
    const double h2 = t[2] - t[1];
    return {0, {-(2.0 * h1 + h2) / (h1 * (h1 + h2)), (h1 + h2) / (h1 * h2),
                -h1 / (h2 * (h1 + h2))}};
  }
  if (k == n - 1) {
    const double h1 = t[n - 2] - t[n - 3];
    const double h2 = t[n - 1] - t[n - 2];
    return {n - 3, {h2 / (h1 * (h1 + h2)), -(h1 + h2) / (h1 * h2),
                    (h1 + 2.0 * h2) / (h2 * (h1 + h2))}};
  }
  const double h1 = t[k] - t[k - 1];
  const double h2 = t[k + 1] - t[k];
  return {k - 1, {-h2 / (h1 * (h1 + h2)), (h2 - h1) / (h1 * h2), h1 / (h2 * (h1 + h2))}};
}

std::vector<double> log_abscissae(const ScaleGrid& grid) {
  if (grid.size() < 3) throw InvalidArgument("differentiation needs at least 3 scales");
  std::vector<double> t(grid.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = std::log(grid[k]);
  return t;
}

Curve derived(const Curve& src, CurveKind kind, double sign) {
  Curve out{.q = src.q, .grid = src.grid, .values = {}, .kind = kind, .source = src.source};
  out.values = log_derivative(src.grid, src.values);
  for (double& v : out.values) v *= sign;
  if (src.has_error()) out.standard_error = log_derivative_error(src.grid, src.standard_error);
  out.phase_count = src.phase_count;
  return out;
}

}  // namespace

std::vector<double> log_derivative(const ScaleGrid& grid, std::span<const double> values) {
  if (values.size() != grid.size()) throw InvalidArgument("values do not match grid length");
  const std::vector<double> t = log_abscissae(grid);
  std::vector<double> out(values.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Stencil s = stencil_at(t, k);
    out[k] = s.w[0] * values[s.first] + s.w[1] * values[s.first + 1] +
             s.w[2] * values[s.first + 2];
  }
  return out;
}

std::vector<double> log_derivative_error(const ScaleGrid& grid, std::span<const double> errors) {
  if (errors.size() != grid.size()) throw InvalidArgument("errors do not match grid length");
  const std::vector<double> t = log_abscissae(grid);
  std::vector<double> out(errors.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Stencil s = stencil_at(t, k);
    double v = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const double term = s.w[i] * errors[s.first + i];
      v += term * term;
    }
    out[k] = std::sqrt(v);
  }
  return out;
}

Curve information(const CurvePair& pair) {
  const Curve& ref = pair.reference;
  const Curve& obj = pair.object;
  if (ref.kind != CurveKind::entropy || obj.kind != CurveKind::entropy)
    throw IncompatibleCurves("information needs two entropy curves");
  if (ref.q != obj.q) throw IncompatibleCurves("curves have different ranks");
  if (!ref.grid.matches(obj.grid)) throw IncompatibleCurves("curves have different scale grids");
  ref.validate();
  obj.validate();

  Curve out{.q = obj.q,
            .grid = obj.grid,
            .values = std::vector<double>(obj.size()),
            .kind = CurveKind::information,
            .source = obj.source};
  for (std::size_t k = 0; k < out.size(); ++k) out.values[k] = ref.values[k] - obj.values[k];
  if (ref.has_error() || obj.has_error()) {
    out.standard_error.resize(out.size());
    for (std::size_t k = 0; k < out.size(); ++k)
      out.standard_error[k] = std::hypot(ref.error_at(k), obj.error_at(k));
  }
  out.phase_count = obj.phase_count;
  return out;
}

Curve dimension_curve(const Curve& entropy) {
  if (entropy.kind != CurveKind::entropy)
    throw InvalidArgument("dimension_curve needs an entropy curve");
  entropy.validate();
  return derived(entropy, CurveKind::dimension, -1.0);
}

Curve dimension_transport(const Curve& info) {
  if (info.kind != CurveKind::information)
    throw InvalidArgument("dimension_transport needs an information curve");
  info.validate();
  return derived(info, CurveKind::transport, 1.0);
}

}  // namespace scalocal
