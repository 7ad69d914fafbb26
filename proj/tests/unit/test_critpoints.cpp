#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "lemni/critpoints.hpp"
#include "oracles.hpp"

using namespace lemni;

namespace {

void check_invariants(const RootedPolynomial& poly, const CriticalSet& crit) {
  REQUIRE(crit.converged);
  REQUIRE(crit.points.size() == poly.degree() - 1);
  for (std::size_t i = 0; i < crit.points.size(); ++i) {
    CHECK(std::abs(crit.points[i]) <= 1.0 + 1e-9);
    CHECK(crit.residuals[i] < 1e-10);
    for (std::size_t j = i + 1; j < crit.points.size(); ++j)
      CHECK(std::abs(crit.points[i] - crit.points[j]) >= 1e-12);
  }
}

// Distance between two unordered pairs.
double pair_distance(const std::vector<cplx>& got, const std::array<cplx, 2>& want) {
  const double d1 = std::max(std::abs(got[0] - want[0]), std::abs(got[1] - want[1]));
  const double d2 = std::max(std::abs(got[0] - want[1]), std::abs(got[1] - want[0]));
  return std::min(d1, d2);
}

}  // namespace

TEST_CASE("n = 1 has no critical points") {
  RngStream s(1, 0);
  const CriticalSet c = find_critical_points(RootedPolynomial({cplx{0.3, 0.0}}), s);
  CHECK(c.converged);
  CHECK(c.points.empty());
}

TEST_CASE("n = 2 gives the midpoint") {
  RngStream s(1, 0);
  const RootedPolynomial poly({cplx{0.2, 0.0}, cplx{-0.4, 0.0}});
  const CriticalSet c = find_critical_points(poly, s);
  REQUIRE(c.points.size() == 1);
  CHECK(std::abs(c.points[0] - cplx{-0.1, 0.0}) < 1e-12);
  CHECK(c.residuals[0] < 1e-12);
}

TEST_CASE("roots {0, 1, i} match the quadratic formula") {
  const RootedPolynomial poly({cplx{0, 0}, cplx{1, 0}, cplx{0, 1}}, RootDomain::AnyFinite);
  RngStream s(2, 0);
  const CriticalSet c = find_critical_points(poly, s);
  REQUIRE(c.converged);
  const auto want = oracle::quadratic(3.0, -2.0 * cplx{1, 1}, cplx{0, 1});
  CHECK(pair_distance(c.points, want) < 1e-10);
}

TEST_CASE("random cubics match the quadratic formula") {
  std::mt19937_64 eng(99);
  RngStream s(3, 0);
  for (int t = 0; t < 2000; ++t) {
    const auto roots = oracle::random_roots(eng, 3);
    const auto c = oracle::expand(roots);
    const auto want = oracle::quadratic(3.0 * c[3], 2.0 * c[2], c[1]);
    const CriticalSet crit = find_critical_points(RootedPolynomial(roots), s);
    REQUIRE(crit.converged);
    CHECK(pair_distance(crit.points, want) < 1e-10);
  }
}

TEST_CASE("every zero of P' in a box is found (winding number)") {
  std::mt19937_64 eng(5);
  RngStream s(4, 0);
  for (std::size_t n : {5, 9, 14}) {
    const auto roots = oracle::random_roots(eng, n);
    const RootedPolynomial poly(roots);
    const CriticalSet crit = find_critical_points(poly, s);
    check_invariants(poly, crit);
    const auto d = oracle::derivative(oracle::expand(roots));
    auto f = [&](cplx z) { return oracle::horner(d, z); };
    for (const auto& box : {std::array<double, 4>{-1.01, 0.013, -1.017, 0.021},
                            std::array<double, 4>{0.013, 1.03, -0.2, 1.02}}) {
      int inside = 0;
      for (cplx b : crit.points)
        inside += b.real() > box[0] && b.real() < box[1] && b.imag() > box[2] && b.imag() < box[3];
      CAPTURE(n);
      CHECK(oracle::winding_number(f, box[0], box[1], box[2], box[3], 20000) == inside);
    }
  }
}

TEST_CASE("sampled polynomials satisfy the certificates") {
  for (std::size_t n : {10, 100, 300}) {
    for (std::uint64_t t = 0; t < 5; ++t) {
      RngStream base = derive_substream(11, t);
      RngStream roots = lane_of(base, Lane::Roots);
      RngStream solver = lane_of(base, Lane::Solver);
      const RootedPolynomial poly = RootedPolynomial::sample(n, roots);
      const CriticalSet crit = find_critical_points(poly, solver);
      CAPTURE(n);
      check_invariants(poly, crit);
      for (std::size_t i = 0; i < crit.points.size(); ++i)
        CHECK(crit.residuals[i] == doctest::Approx(critical_residual(poly, crit.points[i])));
    }
  }
}

TEST_CASE("the result is deterministic in the stream") {
  RngStream r1(21, 0), r2(21, 0);
  const RootedPolynomial poly = RootedPolynomial::sample(60, r1);
  RngStream a(21, 1), b(21, 1);
  const CriticalSet c1 = find_critical_points(poly, a);
  const CriticalSet c2 = find_critical_points(poly, b);
  CHECK(c1.points == c2.points);
}

TEST_CASE("rotating the roots rotates the critical set") {
  RngStream r(22, 0);
  const RootedPolynomial poly = RootedPolynomial::sample(40, r);
  const cplx phase = std::polar(1.0, 1.1);
  RngStream a(22, 1), b(22, 2);
  const CriticalSet c1 = find_critical_points(poly, a);
  const CriticalSet c2 = find_critical_points(poly.rotated(phase), b);
  REQUIRE(c1.points.size() == c2.points.size());
  for (cplx p : c1.points) {
    double best = INFINITY;
    for (cplx q : c2.points) best = std::min(best, std::abs(p * phase - q));
    CHECK(best < 1e-9);
  }
}

TEST_CASE("initial guesses sit at 1e-3 of the nearest-root distance") {
  RngStream r(30, 0), g(30, 1);
  const RootedPolynomial poly = RootedPolynomial::sample(50, r);
  const auto guesses = initial_guesses(poly, g);
  REQUIRE(guesses.size() == 49);
  for (std::size_t k = 0; k < guesses.size(); ++k) {
    double d = INFINITY;
    for (std::size_t j = 0; j < poly.degree(); ++j)
      if (j != k) d = std::min(d, std::abs(poly.root(k) - poly.root(j)));
    CHECK(std::abs(guesses[k] - poly.root(k)) == doctest::Approx(1e-3 * d).epsilon(1e-9));
    for (std::size_t j = k + 1; j < guesses.size(); ++j) CHECK(guesses[k] != guesses[j]);
  }
}

TEST_CASE("pairing distances") {
  RngStream s(1, 0);
  const RootedPolynomial pm({cplx{0.3, 0.0}, cplx{-0.3, 0.0}});
  const CriticalSet c = find_critical_points(pm, s);
  const auto d = pairing_distances(pm, c);
  REQUIRE(d.size() == 1);
  CHECK(d[0] == doctest::Approx(0.3).epsilon(1e-12));

  CriticalSet bad = c;
  bad.converged = false;
  CHECK_THROWS_AS(pairing_distances(pm, bad), std::invalid_argument);
}

TEST_CASE("critical points pair with roots at large n") {
  const std::size_t n = 1000;
  RngStream base = derive_substream(8, 0);
  RngStream roots = lane_of(base, Lane::Roots);
  RngStream solver = lane_of(base, Lane::Solver);
  const RootedPolynomial poly = RootedPolynomial::sample(n, roots);
  const CriticalSet crit = find_critical_points(poly, solver);
  check_invariants(poly, crit);
  const auto d = pairing_distances(poly, crit);
  CHECK(std::is_sorted(d.begin(), d.end()));
  CHECK(d.front() > 0.0);
  const double median = d[d.size() / 2];
  CHECK(median < 1.0 / std::sqrt(static_cast<double>(n)));
  // 95th percentile under the empirically calibrated 5 n^{-3/4}.
  CHECK(d[static_cast<std::size_t>(0.95 * static_cast<double>(d.size()))] < 5.0 * std::pow(n, -0.75));
}
