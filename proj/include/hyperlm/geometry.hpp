#pragma once

// Minkowski algebra on R^{d+1}, points of the Lorentz model, classifier
// vectors, and the maps to the Poincare ball and the upper half-plane.
//
// Convention: index 0 is the time-like coordinate and
//   u * v = u0 v0 - sum_{i>=1} ui vi.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hyperlm {

inline constexpr double kManifoldTol = 1e-9;
inline constexpr double kDistanceClampTol = 1e-9;

class AmbientVector {
 public:
  AmbientVector() = default;
  explicit AmbientVector(std::vector<double> coords);
  AmbientVector(std::initializer_list<double> coords);

  static AmbientVector zeros(std::size_t dim);
  // e_k in R^{dim+1}.
  static AmbientVector basis(std::size_t dim, std::size_t k);
  // (t, s_1, ..., s_d).
  static AmbientVector from_parts(double time, std::span<const double> spatial);

  std::size_t dim() const { return coords_.size() - 1; }
  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double time() const { return coords_[0]; }
  std::span<const double> coords() const { return coords_; }
  std::span<const double> spatial() const { return std::span<const double>(coords_).subspan(1); }

  // Euclidean norm of the whole ambient vector.
  double euclidean_norm() const;
  // Euclidean norm of (x1, ..., xd).
  double spatial_norm() const;
  // (x0, -x1, ..., -xd): the Euclidean gradient of w -> w * x.
  AmbientVector hat() const;

  AmbientVector& operator+=(const AmbientVector& o);
  AmbientVector& operator-=(const AmbientVector& o);
  AmbientVector& operator*=(double s);
  AmbientVector& operator/=(double s);

  friend AmbientVector operator+(AmbientVector a, const AmbientVector& b) { return a += b; }
  friend AmbientVector operator-(AmbientVector a, const AmbientVector& b) { return a -= b; }
  friend AmbientVector operator*(double s, AmbientVector a) { return a *= s; }
  friend AmbientVector operator*(AmbientVector a, double s) { return a *= s; }
  friend AmbientVector operator/(AmbientVector a, double s) { return a /= s; }
  friend AmbientVector operator-(AmbientVector a) { return a *= -1.0; }
  friend bool operator==(const AmbientVector&, const AmbientVector&) = default;

 private:
  void check_finite() const;
  std::vector<double> coords_;
};

enum class Sheet { Upper, Either };

// x * x = 1. Data points live on the upper sheet (x0 >= 1); a few
// constructions use the lower sheet explicitly and ask for Sheet::Either.
class LorentzPoint {
 public:
  explicit LorentzPoint(AmbientVector v, Sheet sheet = Sheet::Upper, double tol = kManifoldTol);

  const AmbientVector& vec() const { return v_; }
  operator const AmbientVector&() const { return v_; }
  std::size_t dim() const { return v_.dim(); }
  double operator[](std::size_t i) const { return v_[i]; }
  bool upper() const { return v_.time() > 0.0; }

  friend bool operator==(const LorentzPoint&, const LorentzPoint&) = default;

 private:
  AmbientVector v_;
};

// Time-like normal of a geodesic decision boundary: w * w < 0.
class Hypothesis {
 public:
  explicit Hypothesis(AmbientVector w);

  const AmbientVector& vec() const { return w_; }
  operator const AmbientVector&() const { return w_; }
  std::size_t dim() const { return w_.dim(); }
  double operator[](std::size_t i) const { return w_[i]; }
  // sqrt(-w * w).
  double norm() const;

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;

 private:
  AmbientVector w_;
};

double minkowski(const AmbientVector& u, const AmbientVector& v);

double lorentz_distance(const LorentzPoint& x, const LorentzPoint& y,
                        double clamp_tol = kDistanceClampTol);

// Inverse chart: v -> (sqrt(1 + |v|^2), v).
LorentzPoint lift(std::span<const double> v);

enum class NormalizeMode {
  Perceptron,  // divide by min{1, sqrt(-w*w)}
  Full,        // divide by sqrt(-w*w)
};

Hypothesis normalize_hypothesis(const AmbientVector& w, NormalizeMode mode);

// cosh of the angle between two space-like vectors.
double cosh_angle(const AmbientVector& u, const AmbientVector& v);

// The canonical (0, 1, 0, ..., 0) classifier.
Hypothesis default_hypothesis(std::size_t dim);

class BallPoint {
 public:
  explicit BallPoint(std::vector<double> coords);
  std::span<const double> coords() const { return c_; }
  std::size_t dim() const { return c_.size(); }
  double operator[](std::size_t i) const { return c_[i]; }

 private:
  std::vector<double> c_;
};

class HalfPlanePoint {
 public:
  HalfPlanePoint(double x, double y);
  double x() const { return x_; }
  double y() const { return y_; }

 private:
  double x_;
  double y_;
};

double ball_distance(const BallPoint& a, const BallPoint& b);
double half_plane_distance(const HalfPlanePoint& a, const HalfPlanePoint& b);

BallPoint lorentz_to_ball(const LorentzPoint& x);
LorentzPoint ball_to_lorentz(const BallPoint& b);
// Inversion in the circle centred at (-1, 0); d = 2 only.
HalfPlanePoint ball_to_half_plane(const BallPoint& b);
BallPoint half_plane_to_ball(const HalfPlanePoint& p);

}  // namespace hyperlm
