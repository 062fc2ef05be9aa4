#include "hyperlm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hyperlm/error.hpp"

namespace hyperlm {

namespace {

void require_same_dim(const AmbientVector& u, const AmbientVector& v) {
  if (u.size() != v.size()) {
    throw DimensionMismatch("ambient dimension mismatch: " + std::to_string(u.size()) + " vs " +
                            std::to_string(v.size()));
  }
}

double squared_norm(std::span<const double> v) {
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

// cosh d = 1 + delta, evaluated without the cancellation acosh suffers near 1.
double distance_from_excess(double delta) {
  return 2.0 * std::asinh(std::sqrt(std::max(delta, 0.0) / 2.0));
}

}  // namespace

AmbientVector::AmbientVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw InvalidArgument("ambient vector needs at least 2 coordinates");
  }
  check_finite();
}

AmbientVector::AmbientVector(std::initializer_list<double> coords)
    : AmbientVector(std::vector<double>(coords)) {}

AmbientVector AmbientVector::zeros(std::size_t dim) {
  return AmbientVector(std::vector<double>(dim + 1, 0.0));
}

AmbientVector AmbientVector::basis(std::size_t dim, std::size_t k) {
  std::vector<double> c(dim + 1, 0.0);
  c.at(k) = 1.0;
  return AmbientVector(std::move(c));
}

AmbientVector AmbientVector::from_parts(double time, std::span<const double> spatial) {
  std::vector<double> c;
  c.reserve(spatial.size() + 1);
  c.push_back(time);
  c.insert(c.end(), spatial.begin(), spatial.end());
  return AmbientVector(std::move(c));
}

void AmbientVector::check_finite() const {
  for (double c : coords_) {
    if (!std::isfinite(c)) throw InvalidArgument("ambient vector has a non-finite entry");
  }
}

double AmbientVector::euclidean_norm() const { return std::sqrt(squared_norm(coords_)); }

double AmbientVector::spatial_norm() const { return std::sqrt(squared_norm(spatial())); }

AmbientVector AmbientVector::hat() const {
  AmbientVector out = *this;
  for (std::size_t i = 1; i < out.coords_.size(); ++i) out.coords_[i] = -out.coords_[i];
  return out;
}

AmbientVector& AmbientVector::operator+=(const AmbientVector& o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

AmbientVector& AmbientVector::operator-=(const AmbientVector& o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

AmbientVector& AmbientVector::operator*=(double s) {
  for (double& c : coords_) c *= s;
  check_finite();
  return *this;
}

AmbientVector& AmbientVector::operator/=(double s) {
  for (double& c : coords_) c /= s;
  check_finite();
  return *this;
}

LorentzPoint::LorentzPoint(AmbientVector v, Sheet sheet, double tol) : v_(std::move(v)) {
  const double q = minkowski(v_, v_);
  // x*x carries round-off proportional to x0^2, so the tolerance is relative.
  const double scale = std::max(1.0, v_.time() * v_.time());
  if (!(std::abs(q - 1.0) <= tol * scale)) {
    throw OffManifold("point is off the hyperboloid: x*x = " + std::to_string(q));
  }
  if (sheet == Sheet::Upper && v_.time() < 1.0 - tol) {
    throw OffManifold("point is not on the upper sheet: x0 = " + std::to_string(v_.time()));
  }
}

Hypothesis::Hypothesis(AmbientVector w) : w_(std::move(w)) {
  if (!(minkowski(w_, w_) < 0.0)) {
    throw InvalidHypothesis("classifier must satisfy w*w < 0");
  }
}

double Hypothesis::norm() const { return std::sqrt(-minkowski(w_, w_)); }

double minkowski(const AmbientVector& u, const AmbientVector& v) {
  require_same_dim(u, v);
  double s = u[0] * v[0];
  for (std::size_t i = 1; i < u.size(); ++i) s -= u[i] * v[i];
  return s;
}

double lorentz_distance(const LorentzPoint& x, const LorentzPoint& y, double clamp_tol) {
  const double p = minkowski(x, y);
  if (p < 1.0 - clamp_tol) {
    throw OffManifold("x*y = " + std::to_string(p) + " < 1: inputs are not on a common sheet");
  }
  if (p > 2.0) return std::acosh(p);
  // -(x - y)*(x - y) = 2 (x*y - 1) = 4 sinh^2(d/2)
  const AmbientVector diff = x.vec() - y.vec();
  const double q = -minkowski(diff, diff);
  return 2.0 * std::asinh(std::sqrt(std::max(q, 0.0)) / 2.0);
}

LorentzPoint lift(std::span<const double> v) {
  const double x0 = std::sqrt(1.0 + squared_norm(v));
  return LorentzPoint(AmbientVector::from_parts(x0, v), Sheet::Upper, kManifoldTol);
}

Hypothesis normalize_hypothesis(const AmbientVector& w, NormalizeMode mode) {
  const double q = minkowski(w, w);
  if (!(q < 0.0)) throw InvalidHypothesis("cannot normalize w with w*w >= 0");
  const double n = std::sqrt(-q);
  const double scale = mode == NormalizeMode::Full ? n : std::min(1.0, n);
  return Hypothesis(w / scale);
}

double cosh_angle(const AmbientVector& u, const AmbientVector& v) {
  const double uu = minkowski(u, u);
  const double vv = minkowski(v, v);
  if (!(uu < 0.0) || !(vv < 0.0)) throw InvalidArgument("cosh_angle needs space-like inputs");
  return -minkowski(u, v) / (std::sqrt(-uu) * std::sqrt(-vv));
}

Hypothesis default_hypothesis(std::size_t dim) {
  if (dim < 1) throw InvalidArgument("dimension must be positive");
  return Hypothesis(AmbientVector::basis(dim, 1));
}

BallPoint::BallPoint(std::vector<double> coords) : c_(std::move(coords)) {
  if (c_.empty()) throw InvalidArgument("ball point needs at least one coordinate");
  for (double c : c_) {
    if (!std::isfinite(c)) throw InvalidArgument("ball point has a non-finite entry");
  }
  if (!(squared_norm(c_) < 1.0)) throw OffManifold("ball point must satisfy |x| < 1");
}

HalfPlanePoint::HalfPlanePoint(double x, double y) : x_(x), y_(y) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw InvalidArgument("non-finite half-plane point");
  if (!(y > 0.0)) throw OffManifold("half-plane point must have y > 0");
}

double ball_distance(const BallPoint& a, const BallPoint& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("ball dimension mismatch");
  double diff2 = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) diff2 += (a[i] - b[i]) * (a[i] - b[i]);
  const double na = 1.0 - squared_norm(a.coords());
  const double nb = 1.0 - squared_norm(b.coords());
  return distance_from_excess(2.0 * diff2 / (na * nb));
}

double half_plane_distance(const HalfPlanePoint& a, const HalfPlanePoint& b) {
  const double dx = a.x() - b.x();
  const double dy = a.y() - b.y();
  return distance_from_excess((dx * dx + dy * dy) / (2.0 * a.y() * b.y()));
}

BallPoint lorentz_to_ball(const LorentzPoint& x) {
  if (!x.upper()) throw OffManifold("the ball chart covers the upper sheet only");
  std::vector<double> c(x.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = x[i + 1] / (1.0 + x[0]);
  return BallPoint(std::move(c));
}

LorentzPoint ball_to_lorentz(const BallPoint& b) {
  const double denom = 1.0 - squared_norm(b.coords());
  std::vector<double> spatial(b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i) spatial[i] = 2.0 * b[i] / denom;
  return lift(spatial);
}

// With b viewed as a complex number, the map is p = i (1 - b) / (1 + b).
HalfPlanePoint ball_to_half_plane(const BallPoint& b) {
  if (b.dim() != 2) throw DimensionMismatch("half-plane map is defined for d = 2 only");
  const std::complex<double> z(b[0], b[1]);
  const std::complex<double> p = std::complex<double>(0.0, 1.0) * (1.0 - z) / (1.0 + z);
  return HalfPlanePoint(p.real(), p.imag());
}

BallPoint half_plane_to_ball(const HalfPlanePoint& p) {
  const std::complex<double> q = std::complex<double>(0.0, -1.0) * std::complex<double>(p.x(), p.y());
  const std::complex<double> z = (1.0 - q) / (1.0 + q);
  return BallPoint({z.real(), z.imag()});
}

}  // namespace hyperlm
