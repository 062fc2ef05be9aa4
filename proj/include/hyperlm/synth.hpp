#pragma once

// Synthetic data and constructive witnesses: separable samples on the
// hyperboloid, tree metrics and their embeddings, distortion, and the
// spherical-code construction that keeps adversarial ERM busy.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hyperlm/geometry.hpp"
#include "hyperlm/margin.hpp"

namespace hyperlm {

// ---- separable samples ----

struct SampleOptions {
  double x0_cap = 8.0;
  // Standard deviation of the Gaussian spatial coordinates before lifting.
  double spread = 1.0;
  // Support vectors land with y (w*x) in [sinh g, slack * sinh g].
  double slack = 1.05;
  std::size_t max_attempts = 1'000'000;
};

struct SeparableSample {
  LabeledSet set;
  Hypothesis planted;
};

SeparableSample sample_separable(std::size_t d, std::size_t n, double gamma, std::uint64_t seed,
                                 const SampleOptions& opts = {});

// ---- trees ----

class TreeMetric {
 public:
  struct Edge {
    std::string parent;
    std::string child;
    double weight = 1.0;
  };

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  explicit TreeMetric(const std::vector<Edge>& edges);
  // A single node, no edges.
  static TreeMetric singleton(const std::string& name);
  // Lines `parent child [weight]`; blank lines and lines starting with '#' are skipped.
  static TreeMetric parse(std::istream& in);

  std::size_t size() const { return names_.size(); }
  std::size_t root() const { return 0; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::size_t index_of(const std::string& name) const;
  std::size_t parent(std::size_t i) const { return parent_[i]; }
  double edge_weight(std::size_t i) const { return weight_[i]; }
  const std::vector<std::size_t>& children(std::size_t i) const { return children_[i]; }
  std::vector<std::size_t> leaves() const;
  // True when `node` lies in the subtree rooted at `ancestor` (inclusive).
  bool in_subtree(std::size_t node, std::size_t ancestor) const;
  double distance(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
  std::vector<std::vector<double>> distance_matrix(const std::vector<std::size_t>& nodes) const;

 private:
  TreeMetric() = default;
  void finish();

  std::vector<std::string> names_;
  std::vector<std::size_t> parent_;
  std::vector<double> weight_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<double> dist_;
};

// Root -> {A, B}. A has `a_leaves` leaves. B has `b_groups` groups, each at the
// end of a path of `b_depth` unit edges and holding `b_leaves` leaves.
TreeMetric two_subtree_tree(std::size_t a_leaves = 10, std::size_t b_groups = 5,
                            std::size_t b_leaves = 10, std::size_t b_depth = 3);

// Complete tree with the given branching and depth (root at depth 0).
TreeMetric balanced_tree(std::size_t branching, std::size_t depth);

// Points in L^2, indexed like the tree's nodes.
std::vector<LorentzPoint> sarkar_embed(const TreeMetric& tree, double tau = 3.0);

struct StressEmbedding {
  std::vector<std::vector<double>> coords;
  double stress = 0.0;
};

// sum_{i<j} (|u_i - u_j| - d_ij)^2
double stress_of(const std::vector<std::vector<double>>& coords,
                 const std::vector<std::vector<double>>& target);

StressEmbedding euclidean_stress_embed(const std::vector<std::vector<double>>& target,
                                       std::size_t d, std::size_t iters, std::uint64_t seed);

struct DistortionReport {
  double c_m = 1.0;
  // Pair with the largest true/embedded ratio and pair with the smallest.
  std::pair<std::size_t, std::size_t> contracted{0, 0};
  std::pair<std::size_t, std::size_t> expanded{0, 0};
  // Two distinct points collapsed onto one; c_m is then +inf.
  bool degenerate = false;
};

DistortionReport measure_distortion(const std::vector<std::vector<double>>& true_d,
                                    const std::vector<std::vector<double>>& embedded_d);

std::vector<std::vector<double>> pairwise_lorentz(const std::vector<LorentzPoint>& pts);
std::vector<std::vector<double>> pairwise_euclidean(const std::vector<std::vector<double>>& pts);

// ---- lower-bound witnesses ----

struct PathologyChecks {
  bool cumulative_separation = true;
  bool round_flips = true;
  bool margin_exact = true;
  bool perturbation_exact = true;
  bool unit_classifiers = true;
  bool code_angles = true;
  double max_margin_error = 0.0;
  double max_distance_error = 0.0;
  bool all() const {
    return cumulative_separation && round_flips && margin_exact && perturbation_exact &&
           unit_classifiers && code_angles;
  }
};

struct PathologyWitness {
  LabeledSet set;
  std::vector<std::vector<double>> code;
  std::vector<Hypothesis> classifiers;
  std::vector<std::pair<LorentzPoint, LorentzPoint>> adversarial;
  double epsilon;
  double alpha;
  double delta;
  double rho;
  double theta;
};

// Greedy random spherical code on S^{d-1}: accept a uniform sample when every
// inner product with the accepted ones is <= cos(theta); stop after
// `max_rejections` consecutive rejections.
std::vector<std::vector<double>> greedy_spherical_code(std::size_t d, double theta,
                                                       std::uint64_t seed,
                                                       std::size_t max_rejections = 10'000);

PathologyWitness build_erm_pathology(std::size_t d, double epsilon, double alpha, double rho = 0.99,
                                     std::uint64_t seed = 0, std::size_t max_rejections = 10'000);

PathologyChecks validate_pathology(const PathologyWitness& w, double tol = 1e-9);

// sqrt(2 pi d) cos(theta) / sin(theta)^(d-1)
double shannon_lower_bound(std::size_t d, double theta);

// {((1,0,...),+1), ((-1,0,...),-1)} and w0 = (0,1,0,...): plain gradient
// descent grows the margin only logarithmically here.
struct GdWitness {
  LabeledSet set;
  Hypothesis w0;
};
GdWitness gd_lower_bound_witness(std::size_t d);

}  // namespace hyperlm
