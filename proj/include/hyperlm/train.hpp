#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperlm/cert.hpp"
#include "hyperlm/geometry.hpp"
#include "hyperlm/loss.hpp"
#include "hyperlm/margin.hpp"

namespace hyperlm {

struct TrainConfig {
  // "logistic", "hinge" or "square".
  std::string loss = "logistic";
  // Fixed logistic scale; estimated from the data when empty.
  std::optional<double> r_alpha;
  double alpha = 0.0;
  // Step size; default_step_size is used when empty.
  std::optional<double> eta;
  double c = 0.5;
  // Effective batch is min(batch, |S|); a full batch is used in order.
  std::size_t batch = 32;
  std::size_t iterations = 100;
  std::uint64_t seed = 0;
  double beta = 1.0;
  double r_w = 10.0;
  // Margin used by the automatic step size; a perceptron run estimates it when empty.
  std::optional<double> gamma;
  std::optional<Hypothesis> w0;
  CertSearch search;

  void validate() const;
};

struct TraceRow {
  std::size_t iter;
  double clean_loss;
  double robust_loss;
  double margin;
  double eta;
  std::size_t adv_count;
};

struct TrainTrace {
  std::vector<TraceRow> rows;
  Hypothesis final_w;
  std::size_t adversarial_pool = 0;
  double eta = 0.0;
  double r_alpha = 0.0;
};

// c * 2 sinh^2(g) / (beta sigma^2 cosh^2(a) R^2)
double default_step_size(double gamma, double alpha, double beta, double sigma_max,
                         double r_alpha, double c);

// sqrt of the top eigenvalue of (1/n) sum x x^T, by power iteration.
double estimate_sigma_max(const std::vector<AmbientVector>& xs, double tol = 1e-8);

// Largest Euclidean norm an alpha-perturbation of a sample can reach, times r_w.
double estimate_r_alpha(const LabeledSet& s, double alpha, double r_w);

// Mean loss over S.
double clean_loss(const LossKind& kind, const Hypothesis& w, const LabeledSet& s);
// Mean worst-case loss over the alpha-ball around each sample.
double robust_loss(const LossKind& kind, const Hypothesis& w, const LabeledSet& s, double alpha);
// The same quantity through the z0 search of the closed-form attack.
double robust_loss_by_search(const LossKind& kind, const Hypothesis& w, const LabeledSet& s,
                             double alpha, const CertSearch& search = {});

// Each iteration draws a batch, replaces every sample by its worst-case
// perturbation, keeps the ones that end up misclassified, and steps
//   w <- w - eta / |S'_t| sum grad l(x~, y; w),  w <- w / sqrt(-w*w).
// With no misclassified perturbation the clean batch gradient is used.
TrainTrace run_adversarial_gd(const LabeledSet& s, const TrainConfig& cfg);

// Full-batch clean gradient descent with the same normalization.
TrainTrace run_plain_gd(const LabeledSet& s, const TrainConfig& cfg);

// Affine logistic regression in R^d trained by full-batch gradient descent.
struct EuclideanLogistic {
  std::vector<double> weights;
  double bias = 0.0;
  double training_error = 0.0;
};

EuclideanLogistic fit_euclidean_logistic(const std::vector<std::vector<double>>& points,
                                         const std::vector<int>& labels,
                                         std::size_t iterations = 5000, double eta = 0.5);

}  // namespace hyperlm
