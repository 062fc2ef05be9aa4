#include "hyperlm/margin.hpp"

#include <cmath>
#include <limits>

#include "hyperlm/error.hpp"

namespace hyperlm {

LabeledSet::LabeledSet(std::size_t dim, std::vector<LorentzPoint> points, std::vector<int> labels,
                       Sheet sheet)
    : dim_(dim), points_(std::move(points)), labels_(std::move(labels)), sheet_(sheet) {
  if (dim_ < 1) throw InvalidArgument("labeled set dimension must be positive");
  if (points_.size() != labels_.size()) {
    throw InvalidArgument("labeled set: points and labels differ in length");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].dim() != dim_) throw DimensionMismatch("labeled set: point of wrong dimension");
    if (labels_[i] != 1 && labels_[i] != -1) throw InvalidArgument("labels must be -1 or +1");
    if (sheet_ == Sheet::Upper && !points_[i].upper()) {
      throw OffManifold("labeled set: point on the lower sheet");
    }
  }
}

int decide(const Hypothesis& w, const AmbientVector& x) { return minkowski(w, x) > 0.0 ? 1 : -1; }

double boundary_distance(const Hypothesis& w, const AmbientVector& x) {
  return std::abs(std::asinh(minkowski(w, x) / w.norm()));
}

double signed_margin(const Hypothesis& w, const AmbientVector& x, int y) {
  return std::asinh(static_cast<double>(y) * minkowski(w, x) / w.norm());
}

MarginReport dataset_margin(const Hypothesis& w, const LabeledSet& s) {
  if (s.empty()) throw InvalidArgument("margin of an empty set is undefined");
  MarginReport r{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double m = signed_margin(w, s.point(i), s.label(i));
    if (m < r.margin) r = {m, i};
  }
  return r;
}

bool verify_separator(const Hypothesis& w, const LabeledSet& s, double gamma, double unit_tol) {
  if (std::abs(w.norm() - 1.0) > unit_tol) {
    throw InvalidHypothesis("verify_separator expects sqrt(-w*w) = 1");
  }
  const double threshold = std::sinh(gamma);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.label(i) * minkowski(w, s.point(i)) < threshold) return false;
  }
  return true;
}

double training_error(const Hypothesis& w, const LabeledSet& s) {
  if (s.empty()) return 0.0;
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (decide(w, s.point(i)) != s.label(i)) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(s.size());
}

}  // namespace hyperlm
