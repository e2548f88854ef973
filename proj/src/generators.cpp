#include "scalocal/generators.hpp"

#include <algorithm>
#include <cmath>

#include "scalocal/errors.hpp"
#include "scalocal/random.hpp"

namespace scalocal {

namespace {

void check_box(std::size_t d, double side) {
  if (d == 0) throw InvalidArgument("dimension must be >= 1");
  if (!(side > 0.0) || !std::isfinite(side))
    throw InvalidArgument("support side L must be positive and finite");
}

void check_width(double width, double side) {
  if (!(width > 0.0) || !std::isfinite(width))
    throw InvalidArgument("cluster width must be positive");
  if (width > side) throw InvalidArgument("cluster width must not exceed L");
}

}  // namespace

void HierarchySpec::validate() const {
  check_box(dim, side);
  if (sites == 0) throw InvalidArgument("cluster site count must be >= 1");
  if (per_site == 0) throw InvalidArgument("points per cluster must be >= 1");
  check_width(width, side);
}

PointSet uniform_points(std::size_t n, std::size_t d, double side, std::uint64_t seed) {
  check_box(d, side);
  if (n == 0) throw InvalidArgument("point count must be >= 1");
  Rng rng(seed);
  std::vector<double> coords(n * d);
  for (double& x : coords) x = side * rng.uniform();
  return PointSet(d, side, std::move(coords));
}

PointSet cluster_points(std::span<const std::size_t> per_site, double width, double side,
                        std::size_t d, std::uint64_t seed) {
  check_box(d, side);
  check_width(width, side);
  if (per_site.empty()) throw InvalidArgument("at least one cluster site is required");
  std::size_t total = 0;
  for (std::size_t c : per_site) total += c;
  if (total == 0) throw InvalidArgument("clusters hold no points");

  Rng rng(seed);
  std::vector<double> coords;
  coords.reserve(total * d);
  std::vector<double> center(d);
  const double inset = side - width;
  for (std::size_t count : per_site) {
    for (double& c : center) c = 0.5 * width + inset * rng.uniform();
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t a = 0; a < d; ++a) {
        const double x = center[a] + width * (rng.uniform() - 0.5);
        coords.push_back(std::clamp(x, 0.0, side));
      }
    }
  }
  return PointSet(d, side, std::move(coords));
}

PointSet hierarchy_points(const HierarchySpec& spec) {
  spec.validate();
  const std::vector<std::size_t> per_site(spec.sites, spec.per_site);
  return cluster_points(per_site, spec.width, spec.side, spec.dim, spec.seed);
}

std::vector<PointSet> condensation_sequence(std::size_t total,
                                            std::span<const std::size_t> site_counts,
                                            double width, double side, std::size_t d,
                                            std::uint64_t seed) {
  if (site_counts.empty()) throw InvalidArgument("site count list must not be empty");
  if (total == 0) throw InvalidArgument("total point count must be >= 1");
  std::vector<PointSet> out;
  out.reserve(site_counts.size());
  for (std::size_t k = 0; k < site_counts.size(); ++k) {
    const std::size_t sites = site_counts[k];
    if (sites == 0 || sites > total)
      throw InvalidArgument("site count must lie in [1, total]");
    std::vector<std::size_t> per_site(sites, total / sites);
    for (std::size_t i = 0; i < total % sites; ++i) ++per_site[i];
    out.push_back(cluster_points(per_site, width, side, d, derive_seed(seed, k)));
  }
  return out;
}

}  // namespace scalocal
