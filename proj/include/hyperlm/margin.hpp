#pragma once

#include <cstddef>
#include <vector>

#include "hyperlm/geometry.hpp"

namespace hyperlm {

// Immutable labelled sample on the hyperboloid. Labels are -1 or +1.
class LabeledSet {
 public:
  LabeledSet(std::size_t dim, std::vector<LorentzPoint> points, std::vector<int> labels,
             Sheet sheet = Sheet::Upper);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  Sheet sheet() const { return sheet_; }
  const LorentzPoint& point(std::size_t i) const { return points_[i]; }
  int label(std::size_t i) const { return labels_[i]; }
  const std::vector<LorentzPoint>& points() const { return points_; }
  const std::vector<int>& labels() const { return labels_; }

 private:
  std::size_t dim_;
  std::vector<LorentzPoint> points_;
  std::vector<int> labels_;
  Sheet sheet_;
};

struct MarginReport {
  double margin;
  std::size_t argmin_index;
};

// +1 iff w*x > 0; an exact zero maps to -1.
int decide(const Hypothesis& w, const AmbientVector& x);

// |asinh(w*x / sqrt(-w*w))|
double boundary_distance(const Hypothesis& w, const AmbientVector& x);

// asinh(y (w*x) / sqrt(-w*w))
double signed_margin(const Hypothesis& w, const AmbientVector& x, int y);

MarginReport dataset_margin(const Hypothesis& w, const LabeledSet& s);

// True iff y (w*x) >= sinh(gamma) on every sample. w must be unit: sqrt(-w*w) = 1.
bool verify_separator(const Hypothesis& w, const LabeledSet& s, double gamma,
                      double unit_tol = 1e-9);

// Fraction of samples with decide(w, x) != y.
double training_error(const Hypothesis& w, const LabeledSet& s);

}  // namespace hyperlm
