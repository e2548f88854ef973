#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scalocal/point_set.hpp"

namespace scalocal {

/// Two-tier cluster hierarchy: `sites` cluster centers, `per_site` points
/// uniform in an axis-aligned cube of side `width` around each center.
struct HierarchySpec {
  std::size_t sites = 1;     // N0
  std::size_t per_site = 1;  // N1
  double width = 0.0;        // delta1
  double side = 1.0;         // L
  std::size_t dim = 2;
  std::uint64_t seed = 0;

  void validate() const;
};

/// N i.i.d. uniform points in [0, L]^d.
PointSet uniform_points(std::size_t n, std::size_t d, double side, std::uint64_t seed);

/// Site centers are uniform in the inset box [w/2, L - w/2]^d so every
/// cluster cube lies inside the support. Points are ordered site by site.
PointSet hierarchy_points(const HierarchySpec& spec);

/// Clusters with an explicit point count per site (zero counts allowed).
PointSet cluster_points(std::span<const std::size_t> per_site, double width, double side,
                        std::size_t d, std::uint64_t seed);

/// One clustered set of exactly `total` points per entry of `site_counts`.
/// When a site count does not divide the total, the remainder goes one extra
/// point per site in site order. Member k uses a seed derived from (seed, k).
std::vector<PointSet> condensation_sequence(std::size_t total,
                                            std::span<const std::size_t> site_counts,
                                            double width, double side, std::size_t d,
                                            std::uint64_t seed);

}  // namespace scalocal
