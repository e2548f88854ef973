#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "scalocal/errors.hpp"
#include "scalocal/generators.hpp"
#include "scalocal/partition.hpp"

using namespace scalocal;

TEST_CASE("single point occupies one bin") {
  const PointSet p(3, 2.0, {0.3, 1.7, 2.0});
  for (double e : {1e-3, 0.4, 5.0}) {
    const auto occ = assign_bins(p, e, PhaseVector({0.25, 0.5, 0.75}));
    CHECK(occ.occupied() == 1);
    CHECK(occ.counts()[0] == 1);
    CHECK(occ.total() == 1);
  }
}

TEST_CASE("corners of the unit square land in distinct bins") {
  const PointSet p(2, 1.0, {0, 0, 1, 0, 0, 1, 1, 1});
  const auto occ = assign_bins(p, 0.6, PhaseVector({0.0, 0.0}));
  REQUIRE(occ.occupied() == 4);
  for (auto c : occ.counts()) CHECK(c == 1);
  const std::int64_t key[] = {1, 1};
  CHECK(occ.count_at(key) == 1);
  const std::int64_t empty[] = {2, 0};
  CHECK(occ.count_at(empty) == 0);
}

TEST_CASE("bin index follows floor((x + phi e) / e)") {
  const PointSet p(1, 1.0, {0.0, 0.35, 1.0});
  const auto occ = assign_bins(p, 0.5, PhaseVector({0.4}));
  REQUIRE(occ.occupied() == 3);
  CHECK(occ.bin(0)[0] == 0);
  CHECK(occ.bin(1)[0] == 1);
  CHECK(occ.bin(2)[0] == 2);
}

TEST_CASE("two-point split fraction over phases") {
  const PointSet p(1, 1.0, {0.1, 0.9});
  const int steps = 1000;
  int split = 0;
  for (int s = 0; s < steps; ++s) {
    const auto occ = assign_bins(p, 1.0, PhaseVector({(s + 0.5) / steps}));
    if (occ.occupied() == 2) ++split;
  }
  CHECK(double(split) / steps == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(oracles::split_fraction(0.1, 0.9, 1.0, steps) == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("anisotropic widths") {
  const PointSet p(2, 1.0, {0.1, 0.1, 0.9, 0.15});
  const double widths[] = {0.5, 0.1};
  const auto occ = assign_bins(p, widths, PhaseVector({0.0, 0.0}));
  CHECK(occ.occupied() == 2);
  const double coarse[] = {2.0, 2.0};
  CHECK(assign_bins(p, coarse, PhaseVector({0.0, 0.0})).occupied() == 1);
}

TEST_CASE("conservation and stored counts") {
  const PointSet p = uniform_points(5000, 3, 1.0, 3);
  for (const auto& ph : phase_sequence(8, 3, 11)) {
    for (double e : {1e-3, 0.02, 0.3, 4.0}) {
      const auto occ = assign_bins(p, e, ph);
      const auto c = occ.counts();
      CHECK(std::accumulate(c.begin(), c.end(), std::uint64_t{0}) == 5000);
      CHECK(std::all_of(c.begin(), c.end(), [](auto v) { return v >= 1; }));
      double norm = 0.0;
      for (auto v : c) norm += double(v) / 5000.0;
      CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("keys are sorted and unique") {
  const PointSet p = uniform_points(2000, 2, 1.0, 5);
  const auto occ = assign_bins(p, 0.05, PhaseVector({0.3, 0.7}));
  for (std::size_t k = 1; k < occ.occupied(); ++k) {
    const auto a = occ.bin(k - 1), b = occ.bin(k);
    CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
  }
}

TEST_CASE("counts do not depend on point order") {
  const PointSet p = uniform_points(1000, 2, 1.0, 9);
  std::vector<double> rev;
  for (std::size_t i = p.size(); i-- > 0;) {
    rev.push_back(p.coord(i, 0));
    rev.push_back(p.coord(i, 1));
  }
  const PointSet q(2, 1.0, rev);
  const PhaseVector ph({0.1, 0.6});
  CHECK(occupancy_counts(p, 0.03, ph) == occupancy_counts(q, 0.03, ph));
}

TEST_CASE("scale covariance for power-of-two factors") {
  const PointSet p = uniform_points(3000, 2, 1.0, 4);
  const PhaseVector ph({0.37, 0.81});
  for (double lambda : {0.5, 4.0}) {
    const PointSet s = p.scaled(lambda);
    for (double e : {0.001, 0.01, 0.1, 2.0})
      CHECK(occupancy_counts(p, e, ph) == occupancy_counts(s, lambda * e, ph));
  }
}

TEST_CASE("per-phase Renyi entropy is non-increasing in rank") {
  const PointSet p = hierarchy_points(HierarchySpec{.sites = 20, .per_site = 50, .width = 0.01,
                                                    .side = 1.0, .dim = 2, .seed = 2});
  const auto counts = occupancy_counts(p, 0.004, PhaseVector({0.2, 0.9}));
  double prev = 1e300;
  for (double q : {0.0, 0.5, 2.0, 3.0, 5.0, 10.0}) {
    const double s = log_correlation_integral(counts, q, p.size()) / (1.0 - q);
    CHECK(s <= prev + 1e-12);
    prev = s;
  }
}

TEST_CASE("correlation integral") {
  const std::size_t n = 50;
  const PointSet same(1, 1.0, std::vector<double>(n, 0.5));
  const auto one = assign_bins(same, 0.1, PhaseVector({0.0}));
  CHECK(correlation_integral(one, 2.0, n) == doctest::Approx(1.0));

  std::vector<double> spread(n);
  for (std::size_t i = 0; i < n; ++i) spread[i] = (i + 0.5) / n;
  const auto distinct = assign_bins(PointSet(1, 1.0, spread), 1e-3, PhaseVector({0.0}));
  CHECK(correlation_integral(distinct, 2.0, n) == doctest::Approx(1.0 / n));
  CHECK(correlation_integral(distinct, 0.0, n) == doctest::Approx(double(n)));
  CHECK(std::exp(log_correlation_integral(distinct.counts(), 2.0, n)) ==
        doctest::Approx(1.0 / n));

  CHECK_THROWS_AS(correlation_integral(distinct, 1.0, n), UnsupportedRank);
  CHECK_THROWS_AS(correlation_integral(distinct, -0.5, n), UnsupportedRank);
  CHECK_THROWS_AS(correlation_integral(distinct, 2.0, n + 1), InvalidArgument);
}

TEST_CASE("phase sequence") {
  const auto one = phase_sequence(1, 3, 17);
  REQUIRE(one.size() == 1);
  CHECK(one[0].dim() == 3);

  const auto four = phase_sequence(4, 3, 17);
  for (std::size_t a = 0; a < 3; ++a) {
    std::vector<double> v;
    for (const auto& ph : four) v.push_back(ph[a]);
    std::sort(v.begin(), v.end());
    for (std::size_t j = 1; j < v.size(); ++j) CHECK(v[j] - v[j - 1] == doctest::Approx(0.25));
    // J = 1 uses the same per-axis offset: its phase is one of the strata centres
    const double r = std::fmod(one[0][a] - 0.5 + 1.0, 1.0);
    CHECK(std::fmod(v[0] - r + 1.0 + 1e-12, 0.25) == doctest::Approx(0.125).epsilon(1e-9));
  }

  CHECK(phase_sequence(16, 2, 5) == phase_sequence(16, 2, 5));
  CHECK_FALSE(phase_sequence(16, 2, 5) == phase_sequence(16, 2, 6));
  for (const auto& ph : phase_sequence(64, 4, 1))
    for (double x : ph.values()) CHECK((x >= 0.0 && x < 1.0));
  CHECK_THROWS_AS(phase_sequence(0, 2, 1), InvalidArgument);
}

TEST_CASE("argument errors") {
  const PointSet p(2, 1.0, {0.5, 0.5});
  CHECK_THROWS_AS(assign_bins(p, 0.0, PhaseVector({0.0, 0.0})), InvalidArgument);
  CHECK_THROWS_AS(assign_bins(p, -1.0, PhaseVector({0.0, 0.0})), InvalidArgument);
  CHECK_THROWS_AS(assign_bins(p, 0.1, PhaseVector({0.0})), InvalidArgument);
  CHECK_THROWS_AS(PhaseVector({1.0}), InvalidArgument);
  CHECK_THROWS_AS(PhaseVector({-0.1}), InvalidArgument);
  CHECK_THROWS_AS(PointSet(2, 1.0, {0.5, 1.5}), InvalidArgument);
  CHECK_THROWS_AS(PointSet(2, 1.0, {0.5}), InvalidArgument);
}

TEST_CASE("very small widths fall back to the general key path") {
  const PointSet p = uniform_points(500, 4, 1.0, 8);
  const auto occ = assign_bins(p, 1e-9, PhaseVector({0, 0, 0, 0}));
  CHECK(occ.occupied() == 500);
  CHECK_THROWS_AS(assign_bins(p, 1e-17, PhaseVector({0, 0, 0, 0})), InvalidArgument);
}
