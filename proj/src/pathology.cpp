#include <cmath>
#include <numbers>
#include <random>

#include "hyperlm/error.hpp"
#include "hyperlm/synth.hpp"

namespace hyperlm {

std::vector<std::vector<double>> greedy_spherical_code(std::size_t d, double theta,
                                                       std::uint64_t seed,
                                                       std::size_t max_rejections) {
  if (d < 1) throw InvalidArgument("spherical code: d must be positive");
  const double limit = std::cos(theta);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::vector<double>> code;
  std::vector<double> v(d);
  std::size_t rejected = 0;
  while (rejected < max_rejections) {
    double s = 0.0;
    for (double& c : v) {
      c = g(rng);
      s += c * c;
    }
    if (s < 1e-24) continue;
    const double n = std::sqrt(s);
    for (double& c : v) c /= n;
    bool ok = true;
    for (const auto& u : code) {
      double ip = 0.0;
      for (std::size_t i = 0; i < d; ++i) ip += u[i] * v[i];
      if (ip > limit) {
        ok = false;
        break;
      }
    }
    if (ok) {
      code.push_back(v);
      rejected = 0;
    } else {
      ++rejected;
    }
  }
  return code;
}

PathologyWitness build_erm_pathology(std::size_t d, double epsilon, double alpha, double rho,
                                     std::uint64_t seed, std::size_t max_rejections) {
  if (d < 2) throw InvalidArgument("pathology: d must be >= 2");
  if (!(epsilon > 0.0) || !(epsilon < alpha)) throw InvalidArgument("pathology: need 0 < eps < alpha");
  if (!(rho > 0.0) || !(rho < 1.0)) throw InvalidArgument("pathology: need 0 < rho < 1");

  const double ep = std::sinh(epsilon);
  const double delta = std::sqrt(std::cosh(alpha) * std::cosh(alpha) - 1.0);
  const double cos_theta =
      rho * ep * std::sqrt(1.0 + delta * delta) / (delta * std::sqrt(1.0 + ep * ep));
  const double theta = std::acos(cos_theta);

  std::vector<double> apex(d + 1, 0.0);
  apex[0] = 1.0;
  std::vector<double> anti(d + 1, 0.0);
  anti[0] = -1.0;
  LabeledSet set(d, {LorentzPoint(AmbientVector(apex)), LorentzPoint(AmbientVector(anti), Sheet::Either)},
                 {1, -1}, Sheet::Either);

  auto code = greedy_spherical_code(d, theta, seed, max_rejections);
  if (code.size() < 2) throw NumericalFailure("pathology: spherical code stalled below 2 vectors");

  std::vector<Hypothesis> ws;
  std::vector<std::pair<LorentzPoint, LorentzPoint>> adv;
  const double lift_w = std::sqrt(1.0 + ep * ep);
  const double lift_x = std::sqrt(1.0 + delta * delta);
  for (const auto& v : code) {
    std::vector<double> w(d + 1);
    std::vector<double> x(d + 1);
    w[0] = ep;
    x[0] = lift_x;
    for (std::size_t i = 0; i < d; ++i) {
      w[i + 1] = lift_w * v[i];
      x[i + 1] = delta * v[i];
    }
    ws.emplace_back(AmbientVector(w));
    const AmbientVector xv(x);
    adv.emplace_back(LorentzPoint(xv), LorentzPoint(-xv, Sheet::Either));
  }
  return PathologyWitness{std::move(set), std::move(code), std::move(ws), std::move(adv),
                          epsilon, alpha, delta, rho, theta};
}

PathologyChecks validate_pathology(const PathologyWitness& w, double tol) {
  PathologyChecks c;
  const double cos_theta = std::cos(w.theta);
  for (std::size_t t = 0; t < w.classifiers.size(); ++t) {
    const Hypothesis& wt = w.classifiers[t];
    if (std::abs(minkowski(wt, wt) + 1.0) > tol) c.unit_classifiers = false;

    const double m = dataset_margin(wt, w.set).margin;
    c.max_margin_error = std::max(c.max_margin_error, std::abs(m - w.epsilon));

    const auto& [x1, x2] = w.adversarial[t];
    const double d1 = lorentz_distance(w.set.point(0), x1);
    const double d2 = lorentz_distance(w.set.point(1), x2);
    c.max_distance_error =
        std::max({c.max_distance_error, std::abs(d1 - w.alpha), std::abs(d2 - w.alpha)});

    if (decide(wt, x1) == decide(wt, w.set.point(0))) c.round_flips = false;
    if (decide(wt, x2) == decide(wt, w.set.point(1))) c.round_flips = false;

    for (std::size_t i = 0; i < w.set.size(); ++i) {
      if (decide(wt, w.set.point(i)) != w.set.label(i)) c.cumulative_separation = false;
    }
    for (std::size_t i = 0; i < t; ++i) {
      if (decide(wt, w.adversarial[i].first) != 1) c.cumulative_separation = false;
      if (decide(wt, w.adversarial[i].second) != -1) c.cumulative_separation = false;
      double ip = 0.0;
      for (std::size_t k = 0; k < w.code[t].size(); ++k) ip += w.code[t][k] * w.code[i][k];
      if (ip > cos_theta + tol) c.code_angles = false;
    }
  }
  c.margin_exact = c.max_margin_error <= tol;
  c.perturbation_exact = c.max_distance_error <= tol;
  return c;
}

double shannon_lower_bound(std::size_t d, double theta) {
  if (d < 1) throw InvalidArgument("shannon bound: d must be positive");
  if (!(theta > 0.0) || !(theta < std::numbers::pi / 2)) {
    throw InvalidArgument("shannon bound: theta must lie in (0, pi/2)");
  }
  return std::sqrt(2.0 * std::numbers::pi * static_cast<double>(d)) * std::cos(theta) /
         std::pow(std::sin(theta), static_cast<double>(d) - 1.0);
}

GdWitness gd_lower_bound_witness(std::size_t d) {
  if (d < 1) throw InvalidArgument("witness: d must be positive");
  std::vector<double> up(d + 1, 0.0);
  up[0] = 1.0;
  std::vector<double> down(d + 1, 0.0);
  down[0] = -1.0;
  LabeledSet s(d, {LorentzPoint(AmbientVector(up)), LorentzPoint(AmbientVector(down), Sheet::Either)},
               {1, -1}, Sheet::Either);
  return {std::move(s), default_hypothesis(d)};
}

}  // namespace hyperlm
