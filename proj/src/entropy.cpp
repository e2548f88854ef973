#include "scalocal/entropy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "scalocal/errors.hpp"

namespace scalocal {

std::vector<DitheredEntropy> dithered_entropies(const PointSet& points,
                                                std::span<const double> qs, double scale,
                                                std::span<const PhaseVector> phases) {
  for (double q : qs) validate_rank(q);
  if (phases.empty()) throw InvalidArgument("dither count J must be >= 1");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw InvalidArgument("scale must be positive and finite");

  const std::size_t nq = qs.size();
  const std::size_t nphase = phases.size();
  const auto n = static_cast<std::uint64_t>(points.size());

  // log C_q per (q, phase)
  std::vector<double> logc(nq * nphase);
  std::vector<double> occupied(nphase);
  for (std::size_t j = 0; j < nphase; ++j) {
    const std::vector<std::uint64_t> counts = occupancy_counts(points, scale, phases[j]);
    occupied[j] = static_cast<double>(counts.size());
    for (std::size_t iq = 0; iq < nq; ++iq)
      logc[iq * nphase + j] = log_correlation_integral(counts, qs[iq], n);
  }

  std::vector<DitheredEntropy> out(nq);
  const double jn = static_cast<double>(nphase);
  for (std::size_t iq = 0; iq < nq; ++iq) {
    const double q = qs[iq];
    const std::span<const double> l(logc.data() + iq * nphase, nphase);

    double log_mean;
    std::vector<double> ratio(nphase);
    if (q == 0.0) {
      // M is an integer; average it directly so plateaus are exact.
      double sum = 0.0;
      for (double m : occupied) sum += m;
      const double mean = sum / jn;
      log_mean = std::log(mean);
      for (std::size_t j = 0; j < nphase; ++j) ratio[j] = occupied[j] / mean;
    } else {
      const double lmax = *std::max_element(l.begin(), l.end());
      double sum = 0.0;
      for (double v : l) sum += std::exp(v - lmax);
      log_mean = lmax + std::log(sum / jn);
      for (std::size_t j = 0; j < nphase; ++j) ratio[j] = std::exp(l[j] - log_mean);
    }

    double spread = 0.0;
    if (nphase > 1) {
      double ss = 0.0;
      for (double r : ratio) ss += (r - 1.0) * (r - 1.0);
      spread = std::sqrt(ss / (jn - 1.0)) / std::fabs(1.0 - q);
    }
    out[iq].value = log_mean / (1.0 - q);
    out[iq].phase_spread = spread;
    out[iq].standard_error = spread / std::sqrt(jn);
  }
  return out;
}

double dithered_entropy(const PointSet& points, double q, double scale, std::size_t dither_count,
                        std::uint64_t seed) {
  validate_rank(q);
  const auto phases = phase_sequence(dither_count, points.dim(), seed);
  const double qs[] = {q};
  return dithered_entropies(points, qs, scale, phases).front().value;
}

std::size_t default_thread_count() {
  if (const char* env = std::getenv("SCALOCAL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<Curve> entropy_sweep(const PointSet& points, std::span<const double> qs,
                                 const ScaleGrid& grid, std::size_t dither_count,
                                 std::uint64_t seed, std::size_t threads) {
  if (qs.empty()) throw InvalidArgument("at least one rank is required");
  for (double q : qs) validate_rank(q);
  const auto phases = phase_sequence(dither_count, points.dim(), seed);

  const std::size_t ns = grid.size();
  std::vector<std::vector<DitheredEntropy>> cells(ns);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < ns; k = next++) {
      try {
        cells[k] = dithered_entropies(points, qs, grid[k], phases);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = ns;
      }
    }
  };

  const std::size_t nthreads = std::min(threads == 0 ? default_thread_count() : threads, ns);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Curve> curves;
  curves.reserve(qs.size());
  for (std::size_t iq = 0; iq < qs.size(); ++iq) {
    Curve c{.q = qs[iq],
            .grid = grid,
            .values = std::vector<double>(ns),
            .kind = CurveKind::entropy,
            .source = CurveSource::monte_carlo,
            .phase_spread = std::vector<double>(ns),
            .standard_error = std::vector<double>(ns),
            .phase_count = dither_count};
    for (std::size_t k = 0; k < ns; ++k) {
      c.values[k] = cells[k][iq].value;
      c.phase_spread[k] = cells[k][iq].phase_spread;
      c.standard_error[k] = cells[k][iq].standard_error;
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

}  // namespace scalocal
