#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperlm/error.hpp"
#include "hyperlm/margin.hpp"
#include "hyperlm/synth.hpp"

using namespace hyperlm;

TEST_CASE("decide examples") {
  const Hypothesis w(AmbientVector{0, 1, 0});
  const LorentzPoint x(AmbientVector{std::sqrt(2.0), 1, 0});
  CHECK(minkowski(w, x) == doctest::Approx(-1.0));
  CHECK(decide(w, x) == -1);

  const double ep = 0.2;
  const Hypothesis wt(AmbientVector{ep, std::sqrt(1 + ep * ep), 0});
  const LorentzPoint x1(AmbientVector{1, 0, 0});
  CHECK(minkowski(wt, x1) == doctest::Approx(ep));
  CHECK(decide(wt, x1) == 1);

  const Hypothesis w0(AmbientVector{0, 1, 0});
  CHECK(minkowski(w0, x1) == 0.0);
  CHECK(decide(w0, x1) == -1);
}

TEST_CASE("boundary distance examples") {
  const Hypothesis w(AmbientVector{0, 1, 0});
  const LorentzPoint on(AmbientVector{1, 0, 0});
  CHECK(boundary_distance(w, on) == 0.0);

  const double ep = std::sinh(0.3);
  const Hypothesis wt(AmbientVector{ep, std::sqrt(1 + ep * ep), 0});
  CHECK(boundary_distance(wt, on) == doctest::Approx(0.3).epsilon(1e-14));
  const Hypothesis w5(5.0 * wt.vec());
  CHECK(boundary_distance(w5, on) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("signed margin examples") {
  const double eps = 0.05;
  const double ep = std::sinh(eps);
  const Hypothesis wt(AmbientVector{ep, std::sqrt(1 + ep * ep), 0, 0});
  const LorentzPoint x1(AmbientVector{1, 0, 0, 0});
  CHECK(signed_margin(wt, x1, 1) == doctest::Approx(eps).epsilon(1e-14));
  CHECK(signed_margin(wt, x1, -1) == doctest::Approx(-eps).epsilon(1e-14));

  // support vector at exactly gamma: x = cosh(g) e0 + sinh(g) e1 against w = (0,-1,0)
  const double g = 0.7;
  const Hypothesis w(AmbientVector{0, -1, 0});
  const LorentzPoint sv(AmbientVector{std::cosh(g), std::sinh(g), 0});
  CHECK(signed_margin(w, sv, 1) == doctest::Approx(g).epsilon(1e-14));
}

TEST_CASE("dataset margin examples") {
  const double eps = 0.05;
  const double ep = std::sinh(eps);
  const Hypothesis wt(AmbientVector{ep, std::sqrt(1 + ep * ep), 0});
  const LabeledSet two(2,
                       {LorentzPoint(AmbientVector{1, 0, 0}, Sheet::Either),
                        LorentzPoint(AmbientVector{-1, 0, 0}, Sheet::Either)},
                       {1, -1}, Sheet::Either);
  const MarginReport m = dataset_margin(wt, two);
  CHECK(m.margin == doctest::Approx(eps).epsilon(1e-14));

  const Hypothesis w(AmbientVector{0, -1, 0});
  const LabeledSet one(2, {LorentzPoint(AmbientVector{std::cosh(0.5), std::sinh(0.5), 0})}, {1});
  const MarginReport r = dataset_margin(w, one);
  CHECK(r.margin == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.argmin_index == 0);

  const LabeledSet wrong(2, {LorentzPoint(AmbientVector{std::cosh(0.5), std::sinh(0.5), 0})}, {-1});
  CHECK(dataset_margin(w, wrong).margin < 0.0);

  const LabeledSet empty(2, {}, {});
  CHECK_THROWS(dataset_margin(w, empty));
}

TEST_CASE("verify_separator") {
  const SeparableSample s = sample_separable(3, 60, 0.3, 17);
  CHECK(verify_separator(s.planted, s.set, 0.3));
  const LabeledSet empty(3, {}, {});
  CHECK(verify_separator(s.planted, empty, 0.3));
  CHECK_THROWS(verify_separator(Hypothesis(2.0 * s.planted.vec()), s.set, 0.3));

  int rejected = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SeparableSample t = sample_separable(2, 50, 0.3, seed);
    if (!verify_separator(t.planted, t.set, 0.3 * 1.01)) ++rejected;
  }
  CHECK(rejected > 0);
}

TEST_CASE("margin properties") {
  const SeparableSample s = sample_separable(4, 80, 0.2, 2);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int k = 0; k < 50; ++k) {
    AmbientVector v{g(rng), 3 + g(rng), g(rng), g(rng), g(rng)};
    if (minkowski(v, v) >= 0) continue;
    const Hypothesis w(v);
    const Hypothesis w7(7.5 * v);
    const MarginReport a = dataset_margin(w, s.set), b = dataset_margin(w7, s.set);
    CHECK(a.argmin_index == b.argmin_index);
    CHECK(std::abs(a.margin - b.margin) <= 1e-12);
    for (std::size_t i = 0; i < s.set.size(); ++i) {
      CHECK(a.margin <= signed_margin(w, s.set.point(i), s.set.label(i)));
      CHECK((decide(w, s.set.point(i)) == 1) == (signed_margin(w, s.set.point(i), 1) > 0));
    }
  }
}
