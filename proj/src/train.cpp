#include "hyperlm/train.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hyperlm/error.hpp"
#include "hyperlm/perceptron.hpp"

namespace hyperlm {

namespace {

Hypothesis unit_start(const LabeledSet& s, const TrainConfig& cfg) {
  const Hypothesis w0 = cfg.w0.value_or(default_hypothesis(s.dim()));
  if (w0.dim() != s.dim()) throw DimensionMismatch("trainer: w0 and data differ in dimension");
  return normalize_hypothesis(w0, NormalizeMode::Full);
}

Hypothesis step(const Hypothesis& w, const AmbientVector& grad, double eta) {
  const AmbientVector v = w.vec() - eta * grad;
  if (!(minkowski(v, v) < 0.0)) {
    throw NumericalFailure("gradient step left the set of valid classifiers (w*w >= 0)");
  }
  return normalize_hypothesis(v, NormalizeMode::Full);
}

double resolve_gamma(const LabeledSet& s, const TrainConfig& cfg) {
  if (cfg.gamma) return *cfg.gamma;
  const auto r = run_hyperbolic_perceptron(s, default_hypothesis(s.dim()), 10'000);
  if (!(r.best_margin > 0.0)) {
    throw NumericalFailure("automatic step size: no separating iterate found; set gamma or eta");
  }
  return r.best_margin;
}

struct Setup {
  Hypothesis w;
  LossKind kind;
  double r_alpha;
  double eta;
};

Setup prepare(const LabeledSet& s, const TrainConfig& cfg) {
  cfg.validate();
  if (s.empty()) throw InvalidArgument("trainer: empty training set");
  const Hypothesis w = unit_start(s, cfg);
  const double r = cfg.r_alpha ? *cfg.r_alpha : estimate_r_alpha(s, cfg.alpha, cfg.r_w);
  const LossKind kind = LossKind::parse(cfg.loss, r);
  double eta;
  if (cfg.eta) {
    eta = *cfg.eta;
  } else {
    std::vector<AmbientVector> xs;
    for (std::size_t i = 0; i < s.size(); ++i) {
      xs.push_back(s.point(i).vec());
      if (cfg.alpha > 0.0) {
        xs.push_back(worst_case_perturbation(w, s.point(i), s.label(i), cfg.alpha, cfg.search).point.vec());
      }
    }
    eta = default_step_size(resolve_gamma(s, cfg), cfg.alpha, cfg.beta, estimate_sigma_max(xs), r,
                            cfg.c);
  }
  return {w, kind, r, eta};
}

TraceRow record(std::size_t iter, const Setup& st, const LabeledSet& s, const TrainConfig& cfg,
                std::size_t adv) {
  return TraceRow{iter,
                  clean_loss(st.kind, st.w, s),
                  robust_loss(st.kind, st.w, s, cfg.alpha),
                  dataset_margin(st.w, s).margin,
                  st.eta,
                  adv};
}

}  // namespace

void TrainConfig::validate() const {
  LossKind::parse(loss, 1.0);
  if (r_alpha && !(*r_alpha > 0.0)) throw InvalidArgument("r_alpha must be positive");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be >= 0");
  if (eta && (!(*eta > 0.0) || !std::isfinite(*eta))) throw InvalidArgument("eta must be positive");
  if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("c must lie in (0, 1)");
  if (batch < 1) throw InvalidArgument("batch must be >= 1");
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  if (!(r_w > 0.0)) throw InvalidArgument("r_w must be positive");
  if (gamma && !(*gamma > 0.0)) throw InvalidArgument("gamma must be positive");
}

double default_step_size(double gamma, double alpha, double beta, double sigma_max,
                         double r_alpha, double c) {
  if (!(gamma > 0.0) || !(beta > 0.0) || !(sigma_max > 0.0) || !(r_alpha > 0.0)) {
    throw InvalidArgument("step size inputs must be positive");
  }
  if (!(alpha >= 0.0)) throw InvalidArgument("alpha must be >= 0");
  if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("c must lie in (0, 1)");
  const double sg = std::sinh(gamma);
  const double ca = std::cosh(alpha);
  return c * 2.0 * sg * sg / (beta * sigma_max * sigma_max * ca * ca * r_alpha * r_alpha);
}

double estimate_sigma_max(const std::vector<AmbientVector>& xs, double tol) {
  if (xs.empty()) throw InvalidArgument("sigma_max of an empty set");
  const std::size_t k = xs.front().size();
  std::vector<double> m(k * k, 0.0);
  for (const AmbientVector& x : xs) {
    if (x.size() != k) throw DimensionMismatch("sigma_max: mixed dimensions");
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) m[i * k + j] += x[i] * x[j];
    }
  }
  for (double& v : m) v /= static_cast<double>(xs.size());

  std::vector<double> v(k, 1.0 / std::sqrt(static_cast<double>(k)));
  std::vector<double> mv(k);
  double lambda = 0.0;
  for (int it = 0; it < 100'000; ++it) {
    for (std::size_t i = 0; i < k; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < k; ++j) s += m[i * k + j] * v[j];
      mv[i] = s;
    }
    double rq = 0.0;
    double nn = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      rq += v[i] * mv[i];
      nn += mv[i] * mv[i];
    }
    nn = std::sqrt(nn);
    if (nn == 0.0) return 0.0;
    for (std::size_t i = 0; i < k; ++i) v[i] = mv[i] / nn;
    const bool done = it > 0 && std::abs(rq - lambda) <= tol * std::max(1.0, std::abs(rq));
    lambda = rq;
    if (done) break;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

double estimate_r_alpha(const LabeledSet& s, double alpha, double r_w) {
  if (!(alpha >= 0.0)) throw InvalidArgument("alpha must be >= 0");
  double reach = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const LorentzPoint& x = s.point(i);
    // Largest time coordinate inside the alpha-ball; |x~|^2 = 2 x~0^2 - 1 on the hyperboloid.
    const double t = std::abs(x[0]) * std::cosh(alpha) + x.vec().spatial_norm() * std::sinh(alpha);
    reach = std::max(reach, std::sqrt(2.0 * t * t - 1.0));
  }
  return reach * r_w;
}

double clean_loss(const LossKind& kind, const Hypothesis& w, const LabeledSet& s) {
  if (s.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) total += eval_loss(kind, s.point(i), s.label(i), w);
  return total / static_cast<double>(s.size());
}

double robust_loss(const LossKind& kind, const Hypothesis& w, const LabeledSet& s, double alpha) {
  if (!(alpha >= 0.0)) throw InvalidArgument("alpha must be >= 0");
  if (alpha == 0.0 || s.empty()) return clean_loss(kind, w, s);
  // The signed distance to the boundary is 1-Lipschitz and the geodesic through x
  // orthogonal to the boundary attains the bound, so the worst case is
  // y (w*x~) = |w| sinh(margin - alpha).
  const double n = w.norm();
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    total += kind.value(n * std::sinh(signed_margin(w, s.point(i), s.label(i)) - alpha));
  }
  return total / static_cast<double>(s.size());
}

double robust_loss_by_search(const LossKind& kind, const Hypothesis& w, const LabeledSet& s,
                             double alpha, const CertSearch& search) {
  if (alpha == 0.0 || s.empty()) return clean_loss(kind, w, s);
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const AdvExample e = worst_case_perturbation(w, s.point(i), s.label(i), alpha, search);
    total += kind.value(-e.objective);
  }
  return total / static_cast<double>(s.size());
}

TrainTrace run_adversarial_gd(const LabeledSet& s, const TrainConfig& cfg) {
  Setup st = prepare(s, cfg);
  const std::size_t n = s.size();
  const std::size_t m = std::min(cfg.batch, n);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);

  TrainTrace trace{{}, st.w, 0, st.eta, st.r_alpha};
  trace.rows.reserve(cfg.iterations);
  std::vector<std::size_t> batch(m);
  for (std::size_t t = 1; t <= cfg.iterations; ++t) {
    for (std::size_t k = 0; k < m; ++k) batch[k] = m == n ? k : pick(rng);

    AmbientVector adv_grad = AmbientVector::zeros(s.dim());
    std::size_t adv = 0;
    if (cfg.alpha > 0.0) {
      for (std::size_t i : batch) {
        const int y = s.label(i);
        const AdvExample e = worst_case_perturbation(st.w, s.point(i), y, cfg.alpha, cfg.search);
        if (decide(st.w, e.point) == y) continue;
        adv_grad += grad_loss(st.kind, e.point, y, st.w);
        ++adv;
      }
    }
    AmbientVector g = AmbientVector::zeros(s.dim());
    if (adv > 0) {
      g = adv_grad / static_cast<double>(adv);
    } else {
      for (std::size_t i : batch) g += grad_loss(st.kind, s.point(i), s.label(i), st.w);
      g /= static_cast<double>(m);
    }
    st.w = step(st.w, g, st.eta);
    trace.adversarial_pool += adv;
    trace.rows.push_back(record(t, st, s, cfg, adv));
  }
  trace.final_w = st.w;
  return trace;
}

TrainTrace run_plain_gd(const LabeledSet& s, const TrainConfig& cfg) {
  Setup st = prepare(s, cfg);
  TrainTrace trace{{}, st.w, 0, st.eta, st.r_alpha};
  trace.rows.reserve(cfg.iterations);
  for (std::size_t t = 1; t <= cfg.iterations; ++t) {
    AmbientVector g = AmbientVector::zeros(s.dim());
    for (std::size_t i = 0; i < s.size(); ++i) g += grad_loss(st.kind, s.point(i), s.label(i), st.w);
    g /= static_cast<double>(s.size());
    st.w = step(st.w, g, st.eta);
    trace.rows.push_back(record(t, st, s, cfg, 0));
  }
  trace.final_w = st.w;
  return trace;
}

EuclideanLogistic fit_euclidean_logistic(const std::vector<std::vector<double>>& points,
                                         const std::vector<int>& labels, std::size_t iterations,
                                         double eta) {
  if (points.empty() || points.size() != labels.size()) {
    throw InvalidArgument("logistic baseline: need matching, non-empty points and labels");
  }
  const std::size_t n = points.size();
  const std::size_t d = points.front().size();
  std::vector<double> mean(d, 0.0);
  std::vector<double> scale(d, 0.0);
  for (const auto& p : points) {
    if (p.size() != d) throw DimensionMismatch("logistic baseline: ragged input");
    for (std::size_t k = 0; k < d; ++k) mean[k] += p[k] / static_cast<double>(n);
  }
  for (const auto& p : points) {
    for (std::size_t k = 0; k < d; ++k) scale[k] += (p[k] - mean[k]) * (p[k] - mean[k]) / n;
  }
  for (double& v : scale) v = v > 0.0 ? std::sqrt(v) : 1.0;

  std::vector<std::vector<double>> z(n, std::vector<double>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) z[i][k] = (points[i][k] - mean[k]) / scale[k];
  }
  std::vector<double> w(d, 0.0);
  double b = 0.0;
  std::vector<double> gw(d);
  for (std::size_t it = 0; it < iterations; ++it) {
    std::fill(gw.begin(), gw.end(), 0.0);
    double gb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = b;
      for (std::size_t k = 0; k < d; ++k) s += w[k] * z[i][k];
      const double ys = labels[i] * s;
      // d/ds ln(1 + e^{-ys}) = -y / (1 + e^{ys})
      const double coeff = -labels[i] / (1.0 + std::exp(ys));
      for (std::size_t k = 0; k < d; ++k) gw[k] += coeff * z[i][k];
      gb += coeff;
    }
    for (std::size_t k = 0; k < d; ++k) w[k] -= eta * gw[k] / static_cast<double>(n);
    b -= eta * gb / static_cast<double>(n);
  }

  EuclideanLogistic out;
  out.weights.resize(d);
  out.bias = b;
  for (std::size_t k = 0; k < d; ++k) {
    out.weights[k] = w[k] / scale[k];
    out.bias -= w[k] * mean[k] / scale[k];
  }
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = out.bias;
    for (std::size_t k = 0; k < d; ++k) s += out.weights[k] * points[i][k];
    if ((s > 0.0 ? 1 : -1) != labels[i]) ++wrong;
  }
  out.training_error = static_cast<double>(wrong) / static_cast<double>(n);
  return out;
}

}  // namespace hyperlm
