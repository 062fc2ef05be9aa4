#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "hyperlm/error.hpp"
#include "hyperlm/synth.hpp"
#include "hyperlm/train.hpp"
#include "oracles.hpp"

using namespace hyperlm;

TEST_CASE("default step size") {
  CHECK(default_step_size(0.5, 0.0, 1.0, 1.0, 1.0, 0.5) ==
        doctest::Approx(std::sinh(0.5) * std::sinh(0.5)).epsilon(1e-14));
  CHECK(default_step_size(0.5, 0.0, 1.0, 1.0, 1.0, 0.5) == doctest::Approx(0.27154).epsilon(1e-5));
  const double a = default_step_size(0.3, 0.4, 2.0, 1.7, 3.0, 0.25);
  const double b = default_step_size(0.3, 0.4, 2.0, 1.7, 6.0, 0.25);
  CHECK(b == doctest::Approx(a / 4.0).epsilon(1e-14));
  CHECK(default_step_size(0.3, 40.0, 1.0, 1.0, 1.0, 0.5) < 1e-30);
  CHECK_THROWS(default_step_size(0.3, 0.0, 1.0, 1.0, 1.0, 1.0));
  CHECK_THROWS(default_step_size(0.0, 0.0, 1.0, 1.0, 1.0, 0.5));
}

TEST_CASE("sigma_max") {
  CHECK(estimate_sigma_max({AmbientVector{1, 0, 0}}) == doctest::Approx(1.0));
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t d = 1 + rep % 5;
    std::vector<AmbientVector> xs;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d + 1, d + 1);
    for (int i = 0; i < 40; ++i) {
      const auto x = oracle::lifted(oracle::gauss(rng, d));
      xs.emplace_back(x);
      const Eigen::Map<const Eigen::VectorXd> v(x.data(), x.size());
      m += v * v.transpose();
    }
    m /= 40.0;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    const double want = std::sqrt(es.eigenvalues().maxCoeff());
    const double got = estimate_sigma_max(xs);
    CHECK(got == doctest::Approx(want).epsilon(1e-6));
    std::vector<AmbientVector> doubled;
    for (const auto& x : xs) doubled.push_back(2.0 * x);
    CHECK(estimate_sigma_max(doubled) == doctest::Approx(2.0 * got).epsilon(1e-6));
  }
  CHECK_THROWS(estimate_sigma_max({}));
}

TEST_CASE("R_alpha estimate") {
  const SeparableSample s = sample_separable(3, 40, 0.3, 2);
  double biggest = 0.0;
  for (const auto& x : s.set.points()) biggest = std::max(biggest, x.vec().euclidean_norm());
  CHECK(estimate_r_alpha(s.set, 0.0, 10.0) == doctest::Approx(10.0 * biggest).epsilon(1e-12));
  // every perturbation stays inside the estimate
  const double r = estimate_r_alpha(s.set, 0.7, 1.0);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    const Hypothesis w(AmbientVector(oracle::random_hypothesis(rng, 3)));
    for (std::size_t i = 0; i < s.set.size(); ++i) {
      const AdvExample e = worst_case_perturbation(w, s.set.point(i), s.set.label(i), 0.7);
      CHECK(e.point.vec().euclidean_norm() <= r * (1 + 1e-12));
    }
  }
}

TEST_CASE("robust loss closed form matches the search") {
  const SeparableSample s = sample_separable(3, 60, 0.3, 9);
  std::mt19937_64 rng(4);
  for (const LossKind& k : {LossKind::hinge(), LossKind::square(), LossKind::logistic(5.0)}) {
    for (double a : {0.0, 0.2, 0.6, 1.0}) {
      const Hypothesis w(AmbientVector(oracle::random_hypothesis(rng, 3)));
      CHECK(robust_loss(k, w, s.set, a) ==
            doctest::Approx(robust_loss_by_search(k, w, s.set, a)).epsilon(1e-7));
      CHECK(robust_loss(k, w, s.set, a) >= clean_loss(k, w, s.set) - 1e-12);
    }
  }
}

TEST_CASE("zero budget adversarial GD equals plain GD on the full batch") {
  const SeparableSample s = sample_separable(2, 30, 0.3, 5);
  TrainConfig c;
  c.loss = "hinge";
  c.eta = 0.05;
  c.iterations = 50;
  c.batch = 64;
  const TrainTrace a = run_adversarial_gd(s.set, c);
  const TrainTrace b = run_plain_gd(s.set, c);
  CHECK(a.final_w == b.final_w);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].clean_loss == b.rows[i].clean_loss);
    CHECK(a.rows[i].margin == b.rows[i].margin);
  }
}

TEST_CASE("traces are deterministic, unit-normalized and have one row per iteration") {
  const SeparableSample s = sample_separable(3, 80, 0.3, 6);
  TrainConfig c;
  c.loss = "logistic";
  c.alpha = 0.4;
  c.eta = 0.5;
  c.iterations = 40;
  c.seed = 99;
  const TrainTrace a = run_adversarial_gd(s.set, c);
  const TrainTrace b = run_adversarial_gd(s.set, c);
  CHECK(a.rows.size() == 40);
  CHECK(a.final_w == b.final_w);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].iter == i + 1);
    CHECK(a.rows[i].robust_loss == b.rows[i].robust_loss);
    CHECK(a.rows[i].adv_count == b.rows[i].adv_count);
  }
  for (std::size_t t : {1u, 7u, 25u}) {
    TrainConfig p = c;
    p.iterations = t;
    const TrainTrace prefix = run_adversarial_gd(s.set, p);
    CHECK(minkowski(prefix.final_w, prefix.final_w) == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(prefix.rows.back().margin == a.rows[t - 1].margin);
  }
}

TEST_CASE("zero iterations return the normalized start") {
  const SeparableSample s = sample_separable(2, 20, 0.3, 1);
  TrainConfig c;
  c.iterations = 0;
  c.eta = 0.1;
  c.w0 = Hypothesis(AmbientVector{0, 3, 0});
  const TrainTrace t = run_plain_gd(s.set, c);
  CHECK(t.rows.empty());
  CHECK(t.final_w.vec() == AmbientVector{0, 1, 0});
}

TEST_CASE("theory step size gives a non-increasing robust loss") {
  const SeparableSample s = sample_separable(3, 100, 0.5, 3);
  const Hypothesis w0 = default_hypothesis(3);
  for (double a : {0.0, 0.25, 0.5}) {
    TrainConfig c;
    c.alpha = a;
    c.gamma = 0.5;
    c.iterations = 200;
    c.batch = 200;
    const TrainTrace t = run_adversarial_gd(s.set, c);

    std::vector<AmbientVector> xs;
    for (std::size_t i = 0; i < s.set.size(); ++i) {
      xs.push_back(s.set.point(i).vec());
      if (a > 0) xs.push_back(worst_case_perturbation(w0, s.set.point(i), s.set.label(i), a).point.vec());
    }
    const double eta = default_step_size(0.5, a, 1.0, estimate_sigma_max(xs), t.r_alpha, 0.5);
    CHECK(t.eta == doctest::Approx(eta).epsilon(1e-12));
    for (std::size_t i = 20; i < t.rows.size(); ++i) {
      CHECK(t.rows[i].robust_loss <= t.rows[i - 1].robust_loss + 1e-15);
    }
  }
}

TEST_CASE("adversarial batch gradient points away from the planted classifier") {
  const double gamma = 0.3;
  const SeparableSample s = sample_separable(3, 100, gamma, 12);
  const LossKind k = LossKind::logistic(20.0);
  std::mt19937_64 rng(8);
  int nonempty = 0;
  for (int rep = 0; rep < 30; ++rep) {
    const Hypothesis w(AmbientVector(oracle::random_hypothesis(rng, 3)));
    AmbientVector g = AmbientVector::zeros(3);
    int count = 0;
    for (std::size_t i = 0; i < 32; ++i) {
      const int y = s.set.label(i);
      const AdvExample e = worst_case_perturbation(w, s.set.point(i), y, 0.2);
      if (decide(w, e.point) == y) continue;
      g += grad_loss(k, e.point, y, w);
      ++count;
    }
    if (count == 0) continue;
    ++nonempty;
    double ip = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) ip += g[i] * s.planted[i];
    CHECK(ip < 0.0);
  }
  CHECK(nonempty > 0);
}

TEST_CASE("plain GD on the two-point witness stays under ln(t + 2)") {
  const GdWitness g = gd_lower_bound_witness(2);
  TrainConfig c;
  c.eta = 0.01;
  c.iterations = 2000;
  c.w0 = g.w0;
  const TrainTrace t = run_plain_gd(g.set, c);
  for (const auto& row : t.rows) CHECK(row.margin <= std::log(static_cast<double>(row.iter) + 2.0) + 1e-9);
  // margin 3 needs ln(t + 2) >= 3
  std::size_t first = 0;
  while (std::log(static_cast<double>(first) + 2.0) < 3.0) ++first;
  CHECK(first == 19);
  CHECK(first == static_cast<std::size_t>(std::ceil(std::exp(3.0))) - 2);
}

TEST_CASE("adversarial GD reaches the adversarial margin on a separable set") {
  const double gamma = 0.5;
  const SeparableSample s = sample_separable(2, 500, gamma, 7);
  for (double a : {0.0, 0.25, 0.5}) {
    TrainConfig c;
    c.loss = "hinge";
    c.alpha = a;
    c.eta = 0.01;
    c.iterations = 2000;
    c.seed = 7;
    const TrainTrace t = run_adversarial_gd(s.set, c);
    CHECK(t.rows.back().margin >= std::asinh(std::sinh(gamma) / std::cosh(a)) - 0.05);
  }
}

TEST_CASE("config validation") {
  const SeparableSample s = sample_separable(2, 20, 0.3, 1);
  TrainConfig c;
  c.c = 1.0;
  CHECK_THROWS_AS(run_plain_gd(s.set, c), InvalidArgument);
  c = {};
  c.batch = 0;
  CHECK_THROWS_AS(run_adversarial_gd(s.set, c), InvalidArgument);
  c = {};
  c.loss = "nope";
  CHECK_THROWS(run_adversarial_gd(s.set, c));
  c = {};
  c.eta = 1e9;
  c.iterations = 5;
  CHECK_THROWS_AS(run_plain_gd(s.set, c), NumericalFailure);
}

TEST_CASE("euclidean logistic regression") {
  const auto a = fit_euclidean_logistic({{0.0}, {1.0}, {3.0}, {4.0}}, {-1, -1, 1, 1});
  CHECK(a.training_error == 0.0);
  const auto b = fit_euclidean_logistic({{1, 1}, {-1, -1}, {1, -1}, {-1, 1}}, {1, 1, -1, -1});
  CHECK(b.training_error > 0.0);
}
