#include "scalocal/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "scalocal/errors.hpp"
#include "scalocal/random.hpp"

namespace scalocal {

namespace {

// |index| must stay well inside int64 and exactly representable as a double.
constexpr double kMaxIndex = 0x1.0p52;

struct BinIndices {
  std::size_t dim = 0;
  std::vector<std::int64_t> idx;  // N x d, row-major
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;
};

BinIndices compute_indices(const PointSet& points, std::span<const double> widths,
                           const PhaseVector& phase) {
  const std::size_t d = points.dim();
  if (widths.size() != d) throw InvalidArgument("bin width count does not match dimension");
  if (phase.dim() != d) throw InvalidArgument("phase dimension does not match point set");
  for (double w : widths) {
    if (!(w > 0.0) || !std::isfinite(w))
      throw InvalidArgument("bin width must be positive and finite");
  }

  BinIndices out;
  out.dim = d;
  out.idx.resize(points.size() * d);
  out.lo.assign(d, std::numeric_limits<std::int64_t>::max());
  out.hi.assign(d, std::numeric_limits<std::int64_t>::min());

  std::vector<double> shift(d);
  for (std::size_t a = 0; a < d; ++a) shift[a] = phase[a] * widths[a];

  const auto coords = points.coords();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      const double t = std::floor((coords[i * d + a] + shift[a]) / widths[a]);
      if (!(std::fabs(t) < kMaxIndex))
        throw InvalidArgument("bin width too small for the coordinate range");
      const auto k = static_cast<std::int64_t>(t);
      out.idx[i * d + a] = k;
      out.lo[a] = std::min(out.lo[a], k);
      out.hi[a] = std::max(out.hi[a], k);
    }
  }
  return out;
}

// Mixed-radix strides when the packed key fits in 64 bits.
bool packed_strides(const BinIndices& b, std::vector<std::uint64_t>& strides) {
  strides.assign(b.dim, 0);
  std::uint64_t span = 1;
  for (std::size_t a = b.dim; a-- > 0;) {
    strides[a] = span;
    const auto range = static_cast<std::uint64_t>(b.hi[a] - b.lo[a]) + 1;
    if (span > std::numeric_limits<std::uint64_t>::max() / range) return false;
    span *= range;
  }
  return true;
}

// Sorted permutation of the points by lexicographic bin tuple, plus the run
// boundaries of equal tuples. `first` receives the row index of the first
// point of every run, `counts` the run lengths.
void group_bins(const BinIndices& b, std::vector<std::size_t>* first,
                std::vector<std::uint64_t>& counts) {
  const std::size_t d = b.dim;
  const std::size_t n = b.idx.size() / d;
  counts.clear();
  if (first) first->clear();

  std::vector<std::uint64_t> strides;
  if (packed_strides(b, strides)) {
    std::vector<std::uint64_t> keys(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t key = 0;
      for (std::size_t a = 0; a < d; ++a)
        key += static_cast<std::uint64_t>(b.idx[i * d + a] - b.lo[a]) * strides[a];
      keys[i] = key;
    }
    if (first) {
      // Need a representative row per run, so sort (key, row) pairs.
      std::vector<std::pair<std::uint64_t, std::size_t>> kr(n);
      for (std::size_t i = 0; i < n; ++i) kr[i] = {keys[i], i};
      std::sort(kr.begin(), kr.end());
      for (std::size_t i = 0; i < n;) {
        std::size_t j = i + 1;
        while (j < n && kr[j].first == kr[i].first) ++j;
        first->push_back(kr[i].second);
        counts.push_back(j - i);
        i = j;
      }
    } else {
      std::sort(keys.begin(), keys.end());
      for (std::size_t i = 0; i < n;) {
        std::size_t j = i + 1;
        while (j < n && keys[j] == keys[i]) ++j;
        counts.push_back(j - i);
        i = j;
      }
    }
    return;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto row = [&](std::size_t i) { return b.idx.begin() + static_cast<std::ptrdiff_t>(i * d); };
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::lexicographical_compare(row(x), row(x) + static_cast<std::ptrdiff_t>(d),
                                        row(y), row(y) + static_cast<std::ptrdiff_t>(d));
  });
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && std::equal(row(order[i]), row(order[i]) + static_cast<std::ptrdiff_t>(d),
                               row(order[j])))
      ++j;
    if (first) first->push_back(order[i]);
    counts.push_back(j - i);
    i = j;
  }
}

}  // namespace

PhaseVector::PhaseVector(std::vector<double> phases) : phases_(std::move(phases)) {
  for (double p : phases_) {
    if (!(p >= 0.0 && p < 1.0)) throw InvalidArgument("phase components must lie in [0, 1)");
  }
}

std::uint64_t OccupancyMap::count_at(std::span<const std::int64_t> key) const {
  if (key.size() != dim()) throw InvalidArgument("bin key dimension mismatch");
  std::size_t lo = 0;
  std::size_t hi = occupied();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const auto b = bin(mid);
    if (std::lexicographical_compare(b.begin(), b.end(), key.begin(), key.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < occupied() && std::equal(key.begin(), key.end(), bin(lo).begin()))
    return counts_[lo];
  return 0;
}

OccupancyMap assign_bins(const PointSet& points, std::span<const double> widths,
                         const PhaseVector& phase) {
  const BinIndices b = compute_indices(points, widths, phase);
  OccupancyMap occ({widths.begin(), widths.end()}, phase);
  std::vector<std::size_t> first;
  group_bins(b, &first, occ.counts_);
  const std::size_t d = points.dim();
  occ.bins_.reserve(first.size() * d);
  for (std::size_t row : first)
    occ.bins_.insert(occ.bins_.end(), b.idx.begin() + static_cast<std::ptrdiff_t>(row * d),
                     b.idx.begin() + static_cast<std::ptrdiff_t>((row + 1) * d));
  occ.total_ = points.size();
  return occ;
}

OccupancyMap assign_bins(const PointSet& points, double width, const PhaseVector& phase) {
  const std::vector<double> widths(points.dim(), width);
  return assign_bins(points, widths, phase);
}

std::vector<std::uint64_t> occupancy_counts(const PointSet& points, double width,
                                            const PhaseVector& phase) {
  const std::vector<double> widths(points.dim(), width);
  const BinIndices b = compute_indices(points, widths, phase);
  std::vector<std::uint64_t> counts;
  group_bins(b, nullptr, counts);
  return counts;
}

std::vector<PhaseVector> phase_sequence(std::size_t count, std::size_t d, std::uint64_t seed) {
  if (count == 0) throw InvalidArgument("dither count J must be >= 1");
  if (d == 0) throw InvalidArgument("phase dimension must be >= 1");

  std::vector<std::vector<double>> rows(count, std::vector<double>(d));
  std::vector<std::size_t> strata(count);
  for (std::size_t a = 0; a < d; ++a) {
    Rng rng(derive_seed(seed, a));
    const double offset = rng.uniform();
    std::iota(strata.begin(), strata.end(), std::size_t{0});
    for (std::size_t k = count; k > 1; --k) std::swap(strata[k - 1], strata[rng.below(k)]);
    for (std::size_t j = 0; j < count; ++j) {
      double p = (static_cast<double>(strata[j]) + 0.5) / static_cast<double>(count) + offset;
      if (p >= 1.0) p -= 1.0;
      rows[j][a] = p;
    }
  }

  std::vector<PhaseVector> out;
  out.reserve(count);
  for (auto& r : rows) out.emplace_back(std::move(r));
  return out;
}

double log_correlation_integral(std::span<const std::uint64_t> counts, double q,
                                std::uint64_t n) {
  if (q == 0.0) return std::log(static_cast<double>(counts.size()));
  const std::uint64_t cmax = *std::max_element(counts.begin(), counts.end());
  const double inv = 1.0 / static_cast<double>(cmax);
  double sum = 0.0;
  for (std::uint64_t c : counts) sum += std::pow(static_cast<double>(c) * inv, q);
  return q * std::log(static_cast<double>(cmax) / static_cast<double>(n)) + std::log(sum);
}

double correlation_integral(const OccupancyMap& occ, double q, std::uint64_t n) {
  validate_rank(q);
  if (n != occ.total()) throw InvalidArgument("N does not match the occupancy total");
  if (q == 0.0) return static_cast<double>(occ.occupied());
  const double inv = 1.0 / static_cast<double>(n);
  double sum = 0.0;
  for (std::uint64_t c : occ.counts()) sum += std::pow(static_cast<double>(c) * inv, q);
  return sum;
}

}  // namespace scalocal
