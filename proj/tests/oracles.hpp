#pragma once

// Independent reference computations for the tests. Nothing here calls the
// code under test except for the basic value types.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hyperlm/geometry.hpp"
#include "hyperlm/loss.hpp"

namespace oracle {

using hyperlm::AmbientVector;

inline double mink(const std::vector<double>& a, const std::vector<double>& b) {
  double s = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) s -= a[i] * b[i];
  return s;
}

inline std::vector<double> to_std(const AmbientVector& v) {
  return {v.coords().begin(), v.coords().end()};
}

// Minkowski-orthonormal basis of the tangent space at x (u*u = -1, u*x = 0).
inline std::vector<std::vector<double>> tangent_basis(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> basis;
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> v(n, 0.0);
    v[k] = 1.0;
    const double px = mink(v, x);
    for (std::size_t i = 0; i < n; ++i) v[i] -= px * x[i];
    for (const auto& u : basis) {
      const double pu = mink(v, u);
      for (std::size_t i = 0; i < n; ++i) v[i] += pu * u[i];
    }
    const double nn = std::sqrt(-mink(v, v));
    for (auto& c : v) c /= nn;
    basis.push_back(v);
  }
  return basis;
}

// max of -y (w*z) over z on the cap {d(x, z) <= alpha}, d in {2, 3}, on a grid
// of about `points` samples: z = cosh(r) x + sinh(r) u, u a unit tangent.
inline double cap_grid_max(const std::vector<double>& w, const std::vector<double>& x, int y,
                           double alpha, std::size_t points = 1'000'000) {
  const auto b = tangent_basis(x);
  const std::size_t d = x.size() - 1;
  double best = -y * mink(w, x);
  const double wx = mink(w, x);
  std::vector<double> wb(d);
  for (std::size_t k = 0; k < d; ++k) wb[k] = mink(w, b[k]);
  // -y (cosh r (w*x) + sinh r (w*u)) over the directions, for one radius
  auto sweep = [&](double r, const std::vector<double>& wu) {
    const double ch = std::cosh(r) * wx, sh = std::sinh(r);
    for (double v : wu) best = std::max(best, -y * (ch + sh * v));
  };
  if (d == 2) {
    const std::size_t nr = 1000, nphi = points / nr;
    std::vector<double> wu(nphi);
    for (std::size_t j = 0; j < nphi; ++j) {
      const double phi = 2 * M_PI * static_cast<double>(j) / nphi;
      wu[j] = std::cos(phi) * wb[0] + std::sin(phi) * wb[1];
    }
    for (std::size_t i = 0; i < nr; ++i) sweep(alpha * static_cast<double>(i + 1) / nr, wu);
  } else {
    const std::size_t side = static_cast<std::size_t>(std::cbrt(static_cast<double>(points)));
    std::vector<double> wu;
    wu.reserve(side * side);
    for (std::size_t j = 0; j < side; ++j) {
      const double th = M_PI * (static_cast<double>(j) + 0.5) / side;
      for (std::size_t k = 0; k < side; ++k) {
        const double phi = 2 * M_PI * static_cast<double>(k) / side;
        wu.push_back(std::sin(th) * std::cos(phi) * wb[0] + std::sin(th) * std::sin(phi) * wb[1] +
                     std::cos(th) * wb[2]);
      }
    }
    for (std::size_t i = 0; i < side; ++i) sweep(alpha * static_cast<double>(i + 1) / side, wu);
  }
  return best;
}

// Central differences of w -> loss(w) with step h per coordinate.
template <class F>
std::vector<double> fd_gradient(F&& loss, std::vector<double> w, double h) {
  std::vector<double> g(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double keep = w[i];
    w[i] = keep + h;
    const double up = loss(w);
    w[i] = keep - h;
    const double dn = loss(w);
    w[i] = keep;
    g[i] = (up - dn) / (2 * h);
  }
  return g;
}

// The three losses written out from their definitions.
inline double hinge(double s) { return std::max(0.0, std::asinh(1.0) - std::asinh(s)); }
inline double square(double s) {
  if (s > 1.0) return 0.0;
  const double t = std::asinh(1.0) - std::asinh(s);
  return 0.5 * t * t;
}
inline double logistic(double s, double r) { return std::log1p(std::exp(-std::asinh(s / (2 * r)))); }

inline std::vector<double> gauss(std::mt19937_64& rng, std::size_t n, double sd = 1.0) {
  std::normal_distribution<double> g(0.0, sd);
  std::vector<double> v(n);
  for (auto& c : v) c = g(rng);
  return v;
}

inline std::vector<double> lifted(const std::vector<double>& s) {
  double q = 1.0;
  for (double c : s) q += c * c;
  std::vector<double> x{std::sqrt(q)};
  x.insert(x.end(), s.begin(), s.end());
  return x;
}

// A random time-like w: a random spatial direction with a random tilt.
inline std::vector<double> random_hypothesis(std::mt19937_64& rng, std::size_t d) {
  std::uniform_real_distribution<double> tilt(-1.5, 1.5);
  std::uniform_real_distribution<double> scale(0.5, 3.0);
  auto u = gauss(rng, d);
  double n = 0.0;
  for (double c : u) n += c * c;
  n = std::sqrt(n);
  const double t = tilt(rng), s = scale(rng);
  std::vector<double> w{s * std::sinh(t)};
  for (double c : u) w.push_back(s * std::cosh(t) * c / n);
  return w;
}

}  // namespace oracle
