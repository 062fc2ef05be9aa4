#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hyperlm/cert.hpp"
#include "hyperlm/geometry.hpp"
#include "hyperlm/margin.hpp"

namespace hyperlm {

struct MistakeEvent {
  std::size_t epoch;
  std::size_t index;
};

struct PerceptronResult {
  Hypothesis final_w;
  std::size_t mistakes = 0;
  std::size_t epochs = 0;
  bool converged = false;
  std::vector<MistakeEvent> mistake_log;
  // Updates skipped because w + y x was not time-like.
  std::size_t skipped_updates = 0;
  // Iterate with the largest dataset margin seen, w0 included.
  Hypothesis best_w;
  double best_margin;
};

struct EuclideanPerceptronResult {
  std::vector<double> final_w;
  std::size_t mistakes = 0;
  std::size_t epochs = 0;
  bool converged = false;
  std::vector<MistakeEvent> mistake_log;
};

// One epoch scans S in order and stops at the first mistake (y (w*x) <= 0).
// On a mistake: v = w + y x, w = v / min{1, sqrt(-v*v)}. Stops after a clean
// scan or max_epochs scans.
PerceptronResult run_hyperbolic_perceptron(const LabeledSet& s, const Hypothesis& w0,
                                           std::size_t max_epochs);

// Same scan, but a correctly classified x also counts as a mistake when some x~
// within distance alpha flips the prediction; the update then uses x~.
PerceptronResult run_adversarial_perceptron(const LabeledSet& s, double alpha,
                                            const Hypothesis& w0, std::size_t max_epochs,
                                            const CertSearch& search = {});

// Classic w += y x on the full pass, no bias term. Stops after a clean pass.
EuclideanPerceptronResult run_euclidean_perceptron(const std::vector<std::vector<double>>& points,
                                                   const std::vector<int>& labels,
                                                   std::size_t max_epochs);

}  // namespace hyperlm
