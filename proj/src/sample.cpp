#include <algorithm>
#include <cmath>
#include <random>

#include "hyperlm/error.hpp"
#include "hyperlm/synth.hpp"

namespace hyperlm {

namespace {

std::vector<double> gaussian(std::mt19937_64& rng, std::size_t d, double sd) {
  std::normal_distribution<double> n(0.0, sd);
  std::vector<double> v(d);
  for (double& c : v) c = n(rng);
  return v;
}

std::vector<double> unit_vector(std::mt19937_64& rng, std::size_t d) {
  for (;;) {
    std::vector<double> v = gaussian(rng, d, 1.0);
    double s = 0.0;
    for (double c : v) s += c * c;
    if (s < 1e-24) continue;
    const double n = std::sqrt(s);
    for (double& c : v) c /= n;
    return v;
  }
}

}  // namespace

SeparableSample sample_separable(std::size_t d, std::size_t n, double gamma, std::uint64_t seed,
                                 const SampleOptions& opts) {
  if (d < 2) throw InvalidArgument("sample_separable: d must be >= 2");
  if (n < 2) throw InvalidArgument("sample_separable: n must be >= 2");
  if (!(gamma > 0.0)) throw InvalidArgument("sample_separable: gamma must be positive");
  if (!(opts.x0_cap > std::cosh(gamma))) {
    throw InvalidArgument("sample_separable: x0_cap must exceed cosh(gamma)");
  }
  if (!(opts.slack > 1.0) || !(opts.spread > 0.0)) {
    throw InvalidArgument("sample_separable: slack must be > 1 and spread > 0");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const double tilt = unif(rng) - 0.5;
  const std::vector<double> u = unit_vector(rng, d);
  std::vector<double> wc(d + 1);
  wc[0] = std::sinh(tilt);
  for (std::size_t i = 0; i < d; ++i) wc[i + 1] = std::cosh(tilt) * u[i];
  const Hypothesis planted = normalize_hypothesis(AmbientVector(wc), NormalizeMode::Full);

  const double sg = std::sinh(gamma);
  std::vector<LorentzPoint> pts;
  std::vector<int> labels;
  pts.reserve(n);
  labels.reserve(n);
  std::size_t attempts = 0;
  auto spend = [&] {
    if (++attempts > opts.max_attempts) {
      throw NumericalFailure("sample_separable: rejection budget exhausted");
    }
  };

  // One support vector per class, pushed to a controlled distance from the boundary.
  for (int y : {1, -1}) {
    for (;;) {
      spend();
      const LorentzPoint x = lift(gaussian(rng, d, opts.spread));
      const double t0 = std::asinh(minkowski(planted, x));
      const AmbientVector p = (x.vec() + std::sinh(t0) * planted.vec()) / std::cosh(t0);
      const double target = y * sg * (1.0 + (opts.slack - 1.0) * (0.02 + 0.96 * unif(rng)));
      const double t = std::asinh(target);
      const AmbientVector moved = std::cosh(t) * p - std::sinh(t) * planted.vec();
      if (!(moved.time() > 0.0)) continue;
      const std::vector<double> spatial(moved.spatial().begin(), moved.spatial().end());
      const LorentzPoint sv = lift(spatial);
      const double s = y * minkowski(planted, sv);
      if (sv.vec().time() > opts.x0_cap || s < sg || s > opts.slack * sg) continue;
      pts.push_back(sv);
      labels.push_back(y);
      break;
    }
  }

  while (pts.size() < n) {
    spend();
    LorentzPoint x = lift(gaussian(rng, d, opts.spread));
    if (x.vec().time() > opts.x0_cap) continue;
    const double s = minkowski(planted, x);
    if (std::abs(s) < sg) continue;
    labels.push_back(s > 0.0 ? 1 : -1);
    pts.push_back(std::move(x));
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<LorentzPoint> shuffled;
  std::vector<int> shuffled_labels;
  shuffled.reserve(n);
  for (std::size_t i : order) {
    shuffled.push_back(pts[i]);
    shuffled_labels.push_back(labels[i]);
  }
  return {LabeledSet(d, std::move(shuffled), std::move(shuffled_labels)), planted};
}

}  // namespace hyperlm
