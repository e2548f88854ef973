#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "scalocal/curve.hpp"
#include "scalocal/point_set.hpp"

namespace scalocal {

/// Shortest-safe decimal form of a double: 17 significant digits, so the
/// text round-trips bit-exactly.
std::string format_double(double v);

/// Point-set text format:
///
///   # scalocal-points v1 d=<d> n=<N> L=<L>
///   x_0 y_0 ...
///   ...
///
/// one whitespace-separated row of d coordinates per point.
void write_points(std::ostream& os, const PointSet& points);

/// Parses the format above. Throws ParseError naming the 1-based line.
PointSet read_points(std::istream& is);

/// File wrappers; failure to open or write throws IoError.
void save_points(const std::filesystem::path& path, const PointSet& points);
PointSet load_points(const std::filesystem::path& path);

/// Entropy curves (one per rank) read back from a curve CSV file: the
/// `scale`, `q` and `S` columns are required, others are ignored. Rows of
/// one rank must be in increasing scale order. `S` is multiplied by
/// `to_natural` to undo a reporting log base.
std::vector<Curve> read_entropy_csv(std::istream& is, double to_natural = 1.0);

}  // namespace scalocal
