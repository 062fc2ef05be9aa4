#pragma once

// Margin losses l(x, y; w) = f(y (w*x)) and their gradients in w.
//
//   hinge     f(s) = max{0, asinh(1) - asinh(s)}
//   square    f(s) = (asinh(1) - asinh(s))^2 / 2 for s <= 1, else 0
//   logistic  f(s) = ln(1 + exp(-asinh(s / (2 R))))
//
// Only the logistic loss is smooth and strictly decreasing; the other two
// are kept for comparison runs.

#include <string>
#include <string_view>

#include "hyperlm/geometry.hpp"

namespace hyperlm {

class LossKind {
 public:
  enum class Variant { HyperbolicHinge, SmoothedSquare, HyperbolicLogistic };

  static LossKind hinge() { return LossKind(Variant::HyperbolicHinge, 0.0); }
  static LossKind square() { return LossKind(Variant::SmoothedSquare, 0.0); }
  static LossKind logistic(double r_alpha);
  // "hinge", "square" or "logistic"; the logistic scale is filled in later.
  static LossKind parse(std::string_view name, double r_alpha = 1.0);

  Variant variant() const { return variant_; }
  double r_alpha() const { return r_alpha_; }
  std::string name() const;

  // f(s) and f'(s). At the hinge kink s = 1 the zero subgradient is used.
  double value(double s) const;
  double derivative(double s) const;

 private:
  LossKind(Variant v, double r) : variant_(v), r_alpha_(r) {}
  Variant variant_;
  double r_alpha_;
};

double eval_loss(const LossKind& kind, const AmbientVector& x, int y, const AmbientVector& w);

// f'(y (w*x)) * y * (x0, -x1, ..., -xd)
AmbientVector grad_loss(const LossKind& kind, const AmbientVector& x, int y,
                        const AmbientVector& w);

// ln(1 + exp(-asinh(y (w*x) / sqrt(-w*w)))): the scale-free variant. Diagnostic only;
// training uses the fixed 2 R scale.
double unscaled_logistic_loss(const AmbientVector& x, int y, const Hypothesis& w);

}  // namespace hyperlm
