#pragma once

// Closed-form adversarial examples on the hyperboloid.
//
// For a fixed time coordinate z0 the loss-maximizing perturbation of x within
// hyperbolic distance alpha is
//
//   x~ = (z0, sqrt(z0^2 - 1) (b xc + sqrt(1 - b^2) xp))
//   xc = -x_s / |x_s|,  b = (cosh a - x0 z0) / (|x_s| sqrt(z0^2 - 1))
//
// where x_s is the spatial part and xp is the unit vector orthogonal to xc in
// the plane spanned by xc and y w_s. The search over z0 is a grid followed by
// golden-section refinement.

#include <cstddef>
#include <optional>

#include "hyperlm/geometry.hpp"

namespace hyperlm {

struct AdvExample {
  LorentzPoint point;
  std::size_t source_index = 0;
  double budget_used = 0.0;
  bool misclassifies = false;
  // -y (w * x~)
  double objective = 0.0;
};

struct Z0Interval {
  double lo;
  double hi;
  double center;
  double half_width;
};

struct CertSearch {
  std::size_t grid_size = 65;
  double tol = 1e-8;
};

Z0Interval feasible_z0_interval(const LorentzPoint& x, double alpha);

// Empty when |b| > 1 or the configuration has no admissible direction.
std::optional<AdvExample> solve_cert_at(const Hypothesis& w, const LorentzPoint& x, int y,
                                        double alpha, double z0);

// Loss-maximizing perturbation over the whole feasible z0 range. Always exists.
AdvExample worst_case_perturbation(const Hypothesis& w, const LorentzPoint& x, int y, double alpha,
                                   const CertSearch& search = {});

// The worst-case perturbation if it changes the prediction on x, else empty.
std::optional<AdvExample> find_adversarial(const Hypothesis& w, const LorentzPoint& x, int y,
                                           double alpha, const CertSearch& search = {});

}  // namespace hyperlm
