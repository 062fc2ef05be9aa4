#include "hyperlm/perceptron.hpp"

#include <cmath>

#include "hyperlm/error.hpp"

namespace hyperlm {

namespace {

// Scans S once. Returns true when an update was applied.
template <typename Probe>
bool scan_once(const LabeledSet& s, std::size_t epoch, Probe probe, PerceptronResult& r) {
  bool skipped = false;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const int y = s.label(j);
    std::optional<AmbientVector> x = probe(r.final_w, j);
    if (!x) continue;
    AmbientVector v = r.final_w.vec() + static_cast<double>(y) * *x;
    if (!(minkowski(v, v) < 0.0)) {
      ++r.skipped_updates;
      skipped = true;
      continue;
    }
    r.final_w = normalize_hypothesis(v, NormalizeMode::Perceptron);
    const double m = dataset_margin(r.final_w, s).margin;
    if (m > r.best_margin) {
      r.best_margin = m;
      r.best_w = r.final_w;
    }
    ++r.mistakes;
    r.mistake_log.push_back({epoch, j});
    return true;
  }
  if (skipped) throw NumericalFailure("perceptron: every mistake in a scan gave a degenerate update");
  return false;
}

template <typename Probe>
PerceptronResult run_scans(const LabeledSet& s, const Hypothesis& w0, std::size_t max_epochs,
                           Probe probe) {
  if (w0.dim() != s.dim()) throw DimensionMismatch("perceptron: w0 and data differ in dimension");
  if (s.empty()) throw InvalidArgument("perceptron: empty training set");
  PerceptronResult r{w0, 0, 0, false, {}, 0, w0, dataset_margin(w0, s).margin};
  for (std::size_t epoch = 0; epoch < max_epochs; ++epoch) {
    ++r.epochs;
    if (!scan_once(s, epoch, probe, r)) {
      r.converged = true;
      break;
    }
  }
  return r;
}

}  // namespace

PerceptronResult run_hyperbolic_perceptron(const LabeledSet& s, const Hypothesis& w0,
                                           std::size_t max_epochs) {
  return run_scans(s, w0, max_epochs,
                   [&](const Hypothesis& w, std::size_t j) -> std::optional<AmbientVector> {
                     if (s.label(j) * minkowski(w, s.point(j)) <= 0.0) return s.point(j).vec();
                     return std::nullopt;
                   });
}

PerceptronResult run_adversarial_perceptron(const LabeledSet& s, double alpha,
                                            const Hypothesis& w0, std::size_t max_epochs,
                                            const CertSearch& search) {
  if (!(alpha >= 0.0)) throw InvalidArgument("budget must be >= 0");
  return run_scans(s, w0, max_epochs,
                   [&](const Hypothesis& w, std::size_t j) -> std::optional<AmbientVector> {
                     const LorentzPoint& x = s.point(j);
                     const int y = s.label(j);
                     if (y * minkowski(w, x) <= 0.0) return x.vec();
                     if (alpha == 0.0) return std::nullopt;
                     if (auto e = find_adversarial(w, x, y, alpha, search)) return e->point.vec();
                     return std::nullopt;
                   });
}

EuclideanPerceptronResult run_euclidean_perceptron(const std::vector<std::vector<double>>& points,
                                                   const std::vector<int>& labels,
                                                   std::size_t max_epochs) {
  if (points.size() != labels.size()) throw InvalidArgument("points and labels differ in length");
  if (points.empty()) throw InvalidArgument("euclidean perceptron needs data");
  const std::size_t d = points.front().size();
  for (const auto& p : points) {
    if (p.size() != d) throw DimensionMismatch("euclidean perceptron: ragged input");
    for (double c : p) {
      if (!std::isfinite(c)) throw InvalidArgument("euclidean perceptron: non-finite input");
    }
  }
  EuclideanPerceptronResult r;
  r.final_w.assign(d, 0.0);
  for (std::size_t epoch = 0; epoch < max_epochs; ++epoch) {
    ++r.epochs;
    bool clean = true;
    for (std::size_t j = 0; j < points.size(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s += r.final_w[i] * points[j][i];
      if (labels[j] * s > 0.0) continue;
      for (std::size_t i = 0; i < d; ++i) r.final_w[i] += labels[j] * points[j][i];
      ++r.mistakes;
      r.mistake_log.push_back({epoch, j});
      clean = false;
    }
    if (clean) {
      r.converged = true;
      break;
    }
  }
  return r;
}

}  // namespace hyperlm
