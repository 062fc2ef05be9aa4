#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperlm/cert.hpp"
#include "hyperlm/margin.hpp"
#include "hyperlm/synth.hpp"
#include "oracles.hpp"

using namespace hyperlm;

namespace {

const double kR2 = std::sqrt(2.0);

void check_feasible(const LorentzPoint& x, const AdvExample& e, double alpha) {
  const auto& z = e.point.vec();
  CHECK(std::abs(minkowski(z, z) - 1.0) <= 1e-9 * std::max(1.0, z[0] * z[0]));
  double spatial = 0.0;
  for (double c : z.spatial()) spatial += c * c;
  CHECK(std::abs(spatial - (z[0] * z[0] - 1.0)) <= 1e-9 * std::max(1.0, z[0] * z[0]));
  CHECK(minkowski(x, z) <= std::cosh(alpha) + 1e-9 * std::max(1.0, x[0] * z[0]));
  CHECK(lorentz_distance(x, e.point) <= alpha + 1e-9);
}

}  // namespace

TEST_CASE("feasible z0 interval examples") {
  const LorentzPoint x(AmbientVector{kR2, 1, 0});
  const Z0Interval zero = feasible_z0_interval(x, 0.0);
  CHECK(zero.lo == doctest::Approx(kR2));
  CHECK(zero.hi == doctest::Approx(kR2));

  const Z0Interval iv = feasible_z0_interval(x, 0.5);
  const double center = kR2 * std::cosh(0.5);
  const double half = std::sqrt((2.0 - 1.0) * (std::cosh(0.5) * std::cosh(0.5) - 1.0));
  CHECK(half == doctest::Approx(std::sinh(0.5)).epsilon(1e-14));
  CHECK(iv.center == doctest::Approx(center).epsilon(1e-14));
  CHECK(iv.half_width == doctest::Approx(half).epsilon(1e-14));
  CHECK(iv.lo == doctest::Approx(center - half).epsilon(1e-14));
  CHECK(iv.hi == doctest::Approx(center + half).epsilon(1e-14));
  CHECK(iv.half_width == doctest::Approx(0.52110).epsilon(1e-5));
  CHECK(iv.hi == doctest::Approx(2.11581).epsilon(1e-5));

  const LorentzPoint apex(AmbientVector{1, 0, 0});
  const Z0Interval a = feasible_z0_interval(apex, 0.7);
  CHECK(a.lo == doctest::Approx(std::cosh(0.7)));
  CHECK(a.hi == doctest::Approx(std::cosh(0.7)));

  // x at distance r from the apex: the ends are cosh(r - a) and cosh(r + a)
  const LorentzPoint far(AmbientVector{std::cosh(0.2), std::sinh(0.2), 0});
  CHECK(feasible_z0_interval(far, 1.0).lo == doctest::Approx(std::cosh(0.2 - 1.0)).epsilon(1e-14));
  CHECK(feasible_z0_interval(far, 1.0).hi == doctest::Approx(std::cosh(0.2 + 1.0)).epsilon(1e-14));
}

TEST_CASE("solve_cert_at: b value and identities") {
  const Hypothesis w(AmbientVector{0, 1, 0});
  const LorentzPoint x(AmbientVector{kR2, 1, 0});
  const double alpha = 0.5, z0 = 1.59460;
  const double b = (std::cosh(alpha) - kR2 * z0) / (1.0 * std::sqrt(z0 * z0 - 1.0));
  CHECK(b == doctest::Approx(-0.90774).epsilon(1e-5));

  const auto e = solve_cert_at(w, x, 1, alpha, z0);
  REQUIRE(e.has_value());
  const auto& z = e->point.vec();
  CHECK(z[0] == doctest::Approx(z0));
  // x~ = (z0, sqrt(z0^2-1) (b xc + sqrt(1-b^2) xp)) with xc = -(1, 0): first spatial = -sqrt(z0^2-1) b
  CHECK(z[1] == doctest::Approx(-std::sqrt(z0 * z0 - 1.0) * b).epsilon(1e-12));
  CHECK(std::abs(z[2]) == doctest::Approx(std::sqrt(z0 * z0 - 1.0) * std::sqrt(1 - b * b)).epsilon(1e-12));
  CHECK(minkowski(z, z) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(minkowski(x, z) == doctest::Approx(std::cosh(alpha)).epsilon(1e-12));
  CHECK(e->objective == doctest::Approx(-minkowski(w, z)).epsilon(1e-14));

  const Z0Interval iv = feasible_z0_interval(x, alpha);
  CHECK_FALSE(solve_cert_at(w, x, 1, alpha, iv.hi + 0.05).has_value());
  CHECK_FALSE(solve_cert_at(w, x, 1, alpha, std::max(1.0, iv.lo - 0.05)).has_value());
}

TEST_CASE("solve_cert_at: interior b keeps both constraints tight") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const std::size_t d = 2 + k % 4;
    const LorentzPoint x(AmbientVector(oracle::lifted(oracle::gauss(rng, d))));
    const Hypothesis w(AmbientVector(oracle::random_hypothesis(rng, d)));
    const double alpha = 0.05 + u(rng);
    const Z0Interval iv = feasible_z0_interval(x, alpha);
    const double z0 = iv.lo + (iv.hi - iv.lo) * (0.05 + 0.9 * u(rng));
    const auto e = solve_cert_at(w, x, k % 2 ? 1 : -1, alpha, z0);
    REQUIRE(e.has_value());
    check_feasible(x, *e, alpha);
    CHECK(minkowski(x, e->point) == doctest::Approx(std::cosh(alpha)).epsilon(1e-9));
  }
}

TEST_CASE("apex and parallel configurations stay on the manifold") {
  const Hypothesis w(AmbientVector{0.3, 1, 0.5});
  const LorentzPoint apex(AmbientVector{1, 0, 0});
  const AdvExample a = worst_case_perturbation(w, apex, 1, 0.8);
  check_feasible(apex, a, 0.8);
  CHECK(lorentz_distance(apex, a.point) == doctest::Approx(0.8).epsilon(1e-9));

  // w_s parallel to x_s
  const Hypothesis wp(AmbientVector{0.2, 2, 0});
  const LorentzPoint x(AmbientVector{kR2, 1, 0});
  const Z0Interval iv = feasible_z0_interval(x, 0.5);
  const auto e = solve_cert_at(wp, x, 1, 0.5, iv.center);
  REQUIRE(e.has_value());
  check_feasible(x, *e, 0.5);
}

TEST_CASE("closed form beats the brute-force cap grid") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.05, 1.2);
  for (int k = 0; k < 40; ++k) {
    const std::size_t d = 2 + k % 2;
    const auto xs = oracle::lifted(oracle::gauss(rng, d));
    const auto ws = oracle::random_hypothesis(rng, d);
    const int y = k % 3 ? 1 : -1;
    const double alpha = u(rng);
    const LorentzPoint x{AmbientVector(xs)};
    const AdvExample e = worst_case_perturbation(Hypothesis(AmbientVector(ws)), x, y, alpha);
    const double brute = oracle::cap_grid_max(ws, xs, y, alpha, 200'000);
    CHECK(e.objective >= brute - 1e-3);
    CHECK(e.objective == doctest::Approx(-y * oracle::mink(ws, oracle::to_std(e.point.vec()))));
    check_feasible(x, e, alpha);
  }
}

TEST_CASE("find_adversarial") {
  const Hypothesis w(AmbientVector{0, -1, 0});
  for (double dist : {0.2, 2.0}) {
    const LorentzPoint x(AmbientVector{std::cosh(dist), std::sinh(dist), 0});
    CHECK(boundary_distance(w, x) == doctest::Approx(dist));
    CHECK_FALSE(find_adversarial(w, x, 1, 0.0).has_value());
    const auto e = find_adversarial(w, x, 1, 0.5);
    const double brute = oracle::cap_grid_max(oracle::to_std(w.vec()), oracle::to_std(x.vec()), 1, 0.5);
    if (dist < 0.5) {
      REQUIRE(e.has_value());
      CHECK(e->misclassifies);
      CHECK(decide(w, e->point) == -1);
      CHECK(lorentz_distance(x, e->point) <= 0.5 + 1e-9);
      CHECK(brute > 0.0);
    } else {
      CHECK_FALSE(e.has_value());
      CHECK(brute < 0.0);
    }
  }
}

TEST_CASE("worst case with zero budget is the point itself") {
  const Hypothesis w(AmbientVector{0.1, 1, 0.3});
  const LorentzPoint x(AmbientVector{kR2, 1, 0});
  const AdvExample e = worst_case_perturbation(w, x, 1, 0.0);
  for (std::size_t i = 0; i < 3; ++i) CHECK(e.point[i] == doctest::Approx(x[i]).epsilon(1e-12));
}

TEST_CASE("optimal objective is non-decreasing in the budget") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 30; ++k) {
    const LorentzPoint x(AmbientVector(oracle::lifted(oracle::gauss(rng, 3))));
    const Hypothesis w(AmbientVector(oracle::random_hypothesis(rng, 3)));
    double prev = -1e300;
    for (double a = 0.0; a <= 1.5; a += 0.1) {
      const double obj = worst_case_perturbation(w, x, 1, a).objective;
      CHECK(obj >= prev - 1e-9);
      prev = obj;
    }
  }
}

TEST_CASE("perturbations lose at most alpha of the planted margin") {
  const double gamma = 0.3;
  const SeparableSample s = sample_separable(3, 80, gamma, 41);
  std::mt19937_64 rng(3);
  for (double alpha : {0.1, 0.25, 0.5, 1.0}) {
    for (int k = 0; k < 10; ++k) {
      const Hypothesis w(AmbientVector(oracle::random_hypothesis(rng, 3)));
      for (std::size_t i = 0; i < s.set.size(); ++i) {
        const int y = s.set.label(i);
        const double m = signed_margin(s.planted, s.set.point(i), y);
        const AdvExample e = worst_case_perturbation(w, s.set.point(i), y, alpha);
        CHECK(y * minkowski(s.planted, e.point) >= std::sinh(m - alpha) - 1e-9);
      }
    }
  }
}

TEST_CASE("a perturbation can fall below sinh(gamma) / cosh(alpha)") {
  // Support vector at margin gamma under w_bar = (0,-1,0); the worst case
  // against w_bar itself walks straight towards the boundary.
  const double gamma = 0.3, alpha = 0.25;
  const Hypothesis wbar(AmbientVector{0, -1, 0});
  const LorentzPoint x(AmbientVector{std::cosh(gamma), std::sinh(gamma), 0});
  const AdvExample e = worst_case_perturbation(wbar, x, 1, alpha);
  const double reached = minkowski(wbar, e.point);
  CHECK(reached == doctest::Approx(std::sinh(gamma - alpha)).epsilon(1e-9));
  CHECK(reached < std::sinh(gamma) / std::cosh(alpha));
}
