#include "hyperlm/cert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hyperlm/error.hpp"
#include "hyperlm/margin.hpp"

namespace hyperlm {

namespace {

constexpr double kNoSolution = -std::numeric_limits<double>::infinity();

double norm_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Unit vector orthogonal to the unit vector u; empty in one dimension.
std::vector<double> any_orthogonal(const std::vector<double>& u) {
  if (u.size() < 2) return {};
  std::size_t k = 0;
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (std::abs(u[i]) < std::abs(u[k])) k = i;
  }
  std::vector<double> e(u.size(), 0.0);
  e[k] = 1.0;
  const double p = u[k];
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= p * u[i];
  const double n = norm_of(e);
  for (double& c : e) c /= n;
  return e;
}

AdvExample make_example(const Hypothesis& w, const LorentzPoint& x, int y, AmbientVector v) {
  LorentzPoint p(std::move(v));
  const double objective = -y * minkowski(w, p);
  const double used = lorentz_distance(x, p);
  const bool flips = decide(w, p) != decide(w, x);
  return AdvExample{std::move(p), 0, used, flips, objective};
}

double objective_at(const Hypothesis& w, const LorentzPoint& x, int y, double alpha, double z0) {
  const auto r = solve_cert_at(w, x, y, alpha, z0);
  return r ? r->objective : kNoSolution;
}

}  // namespace

Z0Interval feasible_z0_interval(const LorentzPoint& x, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("budget must be >= 0");
  const double x0 = x[0];
  const double center = x0 * std::cosh(alpha);
  // (x0^2 - 1)(cosh^2 a - 1) = |x_s|^2 sinh^2 a
  const double delta = x.vec().spatial_norm() * std::sinh(alpha);
  return Z0Interval{std::max(1.0, center - delta), center + delta, center, delta};
}

std::optional<AdvExample> solve_cert_at(const Hypothesis& w, const LorentzPoint& x, int y,
                                        double alpha, double z0) {
  if (!(z0 >= 1.0)) throw InvalidArgument("z0 must be >= 1");
  if (!(alpha >= 0.0)) throw InvalidArgument("budget must be >= 0");
  const std::size_t d = x.dim();
  const double ca = std::cosh(alpha);
  const double x0 = x[0];

  std::vector<double> ws(d);
  for (std::size_t i = 0; i < d; ++i) ws[i] = y * w[i + 1];
  const double wn = norm_of(ws);
  for (double& c : ws) c /= wn;

  const double radius = std::sqrt(z0 * z0 - 1.0);
  if (radius == 0.0) {
    if (x0 > ca * (1.0 + 1e-12)) return std::nullopt;
    return make_example(w, x, y, AmbientVector::basis(d, 0));
  }

  const double r = x.vec().spatial_norm();
  std::vector<double> xc(d);
  double b;
  if (r == 0.0) {
    // At the apex every direction is admissible; pick the one that helps the attacker.
    if (z0 > ca * (1.0 + 1e-12)) return std::nullopt;
    for (std::size_t i = 0; i < d; ++i) xc[i] = -ws[i];
    b = -1.0;
  } else {
    for (std::size_t i = 0; i < d; ++i) xc[i] = -x[i + 1] / r;
    b = (ca - x0 * z0) / (r * radius);
    const double slack = 1e-9 * std::max(1.0, x0 * z0);
    if (std::abs(b) > 1.0 + slack) return std::nullopt;
    b = std::clamp(b, -1.0, 1.0);
  }

  std::vector<double> xp(d);
  const double zeta = dot(ws, xc);
  for (std::size_t i = 0; i < d; ++i) xp[i] = ws[i] - zeta * xc[i];
  const double pn = norm_of(xp);
  const double side = std::sqrt(std::max(0.0, 1.0 - b * b));
  if (pn > 1e-12) {
    for (double& c : xp) c /= pn;
  } else {
    xp = any_orthogonal(xc);
    if (xp.empty()) {
      if (side > 1e-12) return std::nullopt;
      xp.assign(d, 0.0);
    }
  }

  std::vector<double> spatial(d);
  for (std::size_t i = 0; i < d; ++i) spatial[i] = radius * (b * xc[i] + side * xp[i]);
  return make_example(w, x, y, AmbientVector::from_parts(z0, spatial));
}

AdvExample worst_case_perturbation(const Hypothesis& w, const LorentzPoint& x, int y, double alpha,
                                   const CertSearch& search) {
  const Z0Interval iv = feasible_z0_interval(x, alpha);
  const std::size_t n = std::max<std::size_t>(search.grid_size, 2);
  const double width = iv.hi - iv.lo;

  double best_z = iv.lo;
  double best = objective_at(w, x, y, alpha, iv.lo);
  std::size_t best_k = 0;
  if (width > 0.0) {
    for (std::size_t k = 1; k < n; ++k) {
      const double z = k + 1 == n ? iv.hi : iv.lo + width * static_cast<double>(k) / (n - 1);
      const double f = objective_at(w, x, y, alpha, z);
      if (f > best) {
        best = f;
        best_z = z;
        best_k = k;
      }
    }
    const double step = width / static_cast<double>(n - 1);
    double a = best_k == 0 ? iv.lo : iv.lo + step * static_cast<double>(best_k - 1);
    double c = std::min(iv.hi, iv.lo + step * static_cast<double>(best_k + 1));
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double p = c - g * (c - a);
    double q = a + g * (c - a);
    double fp = objective_at(w, x, y, alpha, p);
    double fq = objective_at(w, x, y, alpha, q);
    while (c - a > search.tol) {
      if (fp >= fq) {
        c = q;
        q = p;
        fq = fp;
        p = c - g * (c - a);
        fp = objective_at(w, x, y, alpha, p);
      } else {
        a = p;
        p = q;
        fp = fq;
        q = a + g * (c - a);
        fq = objective_at(w, x, y, alpha, q);
      }
    }
    const double z = 0.5 * (a + c);
    if (objective_at(w, x, y, alpha, z) > best) best_z = z;
  }

  if (auto r = solve_cert_at(w, x, y, alpha, best_z)) return *r;
  // Round-off pushed every candidate out of range; x itself is always feasible.
  return make_example(w, x, y, x.vec());
}

std::optional<AdvExample> find_adversarial(const Hypothesis& w, const LorentzPoint& x, int y,
                                           double alpha, const CertSearch& search) {
  AdvExample e = worst_case_perturbation(w, x, y, alpha, search);
  if (!e.misclassifies) return std::nullopt;
  return e;
}

}  // namespace hyperlm
