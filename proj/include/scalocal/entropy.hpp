#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scalocal/curve.hpp"
#include "scalocal/partition.hpp"
#include "scalocal/point_set.hpp"

namespace scalocal {

/// Dither-averaged entropy at one scale.
struct DitheredEntropy {
  double value = 0.0;           ///< (1/(1-q)) log <C_q>_phi
  double phase_spread = 0.0;    ///< sd of single-phase estimates, entropy units
  double standard_error = 0.0;  ///< phase_spread / sqrt(J)
};

/// Averages the per-phase correlation integrals for every rank in `qs` at an
/// isotropic scale and returns one result per rank. The spread is the sample
/// standard deviation of C_q over phases, carried to entropy units by the
/// first-order relation dS = dC / ((1-q) C).
std::vector<DitheredEntropy> dithered_entropies(const PointSet& points,
                                                std::span<const double> qs, double scale,
                                                std::span<const PhaseVector> phases);

/// (1/(1-q)) log <C_q>_phi over phase_sequence(J, d, seed). Natural log.
double dithered_entropy(const PointSet& points, double q, double scale, std::size_t dither_count,
                        std::uint64_t seed);

/// One Monte Carlo entropy curve per rank, each scale evaluated independently
/// with the same phase sequence. `threads` == 0 uses default_thread_count().
/// Results do not depend on the thread count.
std::vector<Curve> entropy_sweep(const PointSet& points, std::span<const double> qs,
                                 const ScaleGrid& grid, std::size_t dither_count,
                                 std::uint64_t seed, std::size_t threads = 0);

/// SCALOCAL_THREADS when set to a positive integer, else the hardware
/// concurrency (at least 1).
std::size_t default_thread_count();

}  // namespace scalocal
