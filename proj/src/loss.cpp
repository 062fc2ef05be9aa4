#include "hyperlm/loss.hpp"

#include <cmath>

#include "hyperlm/error.hpp"

namespace hyperlm {

namespace {

const double kAsinhOne = std::asinh(1.0);

// ln(1 + e^{-u}) without overflow for large negative u.
double softplus_neg(double u) {
  return u > 0.0 ? std::log1p(std::exp(-u)) : -u + std::log1p(std::exp(u));
}

// e^{-u} / (1 + e^{-u})
double logistic_weight(double u) {
  return u > 0.0 ? std::exp(-u) / (1.0 + std::exp(-u)) : 1.0 / (1.0 + std::exp(u));
}

}  // namespace

LossKind LossKind::logistic(double r_alpha) {
  if (!(r_alpha > 0.0) || !std::isfinite(r_alpha)) {
    throw InvalidArgument("logistic loss needs R_alpha > 0");
  }
  return LossKind(Variant::HyperbolicLogistic, r_alpha);
}

LossKind LossKind::parse(std::string_view name, double r_alpha) {
  if (name == "hinge") return hinge();
  if (name == "square") return square();
  if (name == "logistic") return logistic(r_alpha);
  throw InvalidArgument("unknown loss '" + std::string(name) + "'");
}

std::string LossKind::name() const {
  switch (variant_) {
    case Variant::HyperbolicHinge: return "hinge";
    case Variant::SmoothedSquare: return "square";
    case Variant::HyperbolicLogistic: return "logistic";
  }
  return "?";
}

double LossKind::value(double s) const {
  switch (variant_) {
    case Variant::HyperbolicHinge:
      return std::max(0.0, kAsinhOne - std::asinh(s));
    case Variant::SmoothedSquare: {
      if (s > 1.0) return 0.0;
      const double g = kAsinhOne - std::asinh(s);
      return 0.5 * g * g;
    }
    case Variant::HyperbolicLogistic:
      return softplus_neg(std::asinh(s / (2.0 * r_alpha_)));
  }
  return 0.0;
}

double LossKind::derivative(double s) const {
  switch (variant_) {
    case Variant::HyperbolicHinge:
      return s < 1.0 ? -1.0 / std::sqrt(1.0 + s * s) : 0.0;
    case Variant::SmoothedSquare:
      return s < 1.0 ? -(kAsinhOne - std::asinh(s)) / std::sqrt(1.0 + s * s) : 0.0;
    case Variant::HyperbolicLogistic: {
      const double t = s / (2.0 * r_alpha_);
      const double u = std::asinh(t);
      return -logistic_weight(u) / (2.0 * r_alpha_ * std::sqrt(1.0 + t * t));
    }
  }
  return 0.0;
}

double eval_loss(const LossKind& kind, const AmbientVector& x, int y, const AmbientVector& w) {
  return kind.value(y * minkowski(w, x));
}

AmbientVector grad_loss(const LossKind& kind, const AmbientVector& x, int y,
                        const AmbientVector& w) {
  const double coeff = kind.derivative(y * minkowski(w, x)) * y;
  return coeff * x.hat();
}

double unscaled_logistic_loss(const AmbientVector& x, int y, const Hypothesis& w) {
  return softplus_neg(std::asinh(y * minkowski(w, x) / w.norm()));
}

}  // namespace hyperlm
