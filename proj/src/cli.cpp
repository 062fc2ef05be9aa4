#include "hyperlm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hyperlm/cert.hpp"
#include "hyperlm/error.hpp"
#include "hyperlm/io.hpp"
#include "hyperlm/margin.hpp"
#include "hyperlm/perceptron.hpp"
#include "hyperlm/synth.hpp"
#include "hyperlm/train.hpp"

namespace hyperlm {
namespace {

namespace fs = std::filesystem;

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

class Params {
 public:
  void set(const std::string& key, const std::string& value) { kv_[key] = value; }

  void allow(const std::vector<std::string>& keys) { allowed_.insert(keys.begin(), keys.end()); }

  void check() const {
    for (const auto& [k, v] : kv_) {
      if (!allowed_.count(k)) throw ConfigError("unknown key '" + k + "'");
    }
  }

  bool has(const std::string& k) const { return kv_.count(k) > 0; }

  std::string str(const std::string& k, const std::string& def) const {
    auto it = kv_.find(k);
    return it == kv_.end() ? def : it->second;
  }

  double num(const std::string& k, double def) const {
    auto it = kv_.find(k);
    return it == kv_.end() ? def : parse_double(it->second, k);
  }

  std::optional<double> opt_num(const std::string& k) const {
    if (!has(k)) return std::nullopt;
    return num(k, 0.0);
  }

  std::size_t count(const std::string& k, std::size_t def) const {
    auto it = kv_.find(k);
    if (it == kv_.end()) return def;
    const long long v = parse_int(it->second, k);
    if (v < 0) throw ConfigError(k + ": must be non-negative");
    return static_cast<std::size_t>(v);
  }

  std::vector<double> list(const std::string& k, std::vector<double> def) const {
    auto it = kv_.find(k);
    return it == kv_.end() ? def : parse_list(it->second, k);
  }

 private:
  std::map<std::string, std::string> kv_;
  std::set<std::string> allowed_;
};

struct Run {
  Params p;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> files;
  std::ostringstream summary;

  void emit(const std::string& name, std::string content) {
    files.emplace_back(name, std::move(content));
  }
};

void load_config_file(const std::string& path, Params& p) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config '" + path + "': expected an object");
  for (const auto& [k, v] : j.items()) {
    if (v.is_string()) {
      p.set(k, v.get<std::string>());
    } else if (v.is_number_integer()) {
      p.set(k, std::to_string(v.get<long long>()));
    } else if (v.is_number()) {
      p.set(k, format_double(v.get<double>()));
    } else if (v.is_array()) {
      std::vector<double> xs;
      for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError("config key '" + k + "': array of numbers expected");
        xs.push_back(e.get<double>());
      }
      p.set(k, format_list(xs));
    } else {
      throw ConfigError("config key '" + k + "': unsupported value");
    }
  }
}

CertSearch search_from(const Params& p) {
  CertSearch s;
  s.grid_size = p.count("grid_size", s.grid_size);
  s.tol = p.num("tol", s.tol);
  if (s.grid_size < 2) throw ConfigError("grid_size must be at least 2");
  if (!(s.tol > 0.0)) throw ConfigError("tol must be positive");
  return s;
}

const std::vector<std::string> kDataKeys = {"data", "d", "n", "gamma", "x0_cap", "spread", "slack"};
const std::vector<std::string> kSearchKeys = {"grid_size", "tol"};

SeparableSample generate(const Params& p, std::uint64_t seed) {
  const std::size_t d = p.count("d", 2);
  const std::size_t n = p.count("n", 100);
  const double gamma = p.num("gamma", 0.3);
  SampleOptions o;
  o.x0_cap = p.num("x0_cap", o.x0_cap);
  o.spread = p.num("spread", o.spread);
  o.slack = p.num("slack", o.slack);
  if (d < 1) throw ConfigError("d must be at least 1");
  if (n < 2) throw ConfigError("n must be at least 2");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (!(o.x0_cap > 1.0) || !(o.spread > 0.0) || !(o.slack >= 1.0)) {
    throw ConfigError("need x0_cap > 1, spread > 0, slack >= 1");
  }
  return sample_separable(d, n, gamma, seed, o);
}

LabeledSet dataset_from(const Params& p, std::uint64_t seed) {
  if (p.has("data")) {
    for (const char* k : {"d", "n", "gamma", "x0_cap", "spread", "slack"}) {
      if (p.has(k)) throw ConfigError(std::string("'") + k + "' conflicts with 'data'");
    }
    return read_dataset_file(p.str("data", ""));
  }
  return generate(p, seed).set;
}

std::optional<Hypothesis> hypothesis_from(const Params& p, const std::string& key,
                                          std::size_t dim) {
  if (!p.has(key)) return std::nullopt;
  const auto v = p.list(key, {});
  if (v.size() != dim + 1) {
    throw ConfigError(key + ": expected " + std::to_string(dim + 1) + " coordinates");
  }
  try {
    return Hypothesis(AmbientVector(v));
  } catch (const InvalidHypothesis& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

TreeMetric tree_from(const Params& p) {
  const std::string spec = p.str("tree", "two-subtree");
  if (spec == "two-subtree") return two_subtree_tree();
  if (spec.rfind("balanced:", 0) == 0) {
    const std::string rest = spec.substr(9);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw ConfigError("tree: expected balanced:<branching>:<depth>");
    const long long b = parse_int(rest.substr(0, colon), "tree branching");
    const long long depth = parse_int(rest.substr(colon + 1), "tree depth");
    if (b < 1 || depth < 0) throw ConfigError("tree: need branching >= 1 and depth >= 0");
    return balanced_tree(static_cast<std::size_t>(b), static_cast<std::size_t>(depth));
  }
  std::ifstream in(spec);
  if (!in) throw ConfigError("cannot open tree '" + spec + "'");
  return TreeMetric::parse(in);
}

// Sarkar coordinates in L^2, padded with zero spatial coordinates to L^d.
std::vector<LorentzPoint> sarkar_in_dim(const TreeMetric& tree, double tau, std::size_t d) {
  auto emb = sarkar_embed(tree, tau);
  if (d == 2) return emb;
  std::vector<LorentzPoint> out;
  out.reserve(emb.size());
  for (const auto& x : emb) {
    std::vector<double> c(x.vec().coords().begin(), x.vec().coords().end());
    c.resize(d + 1, 0.0);
    out.emplace_back(AmbientVector(std::move(c)));
  }
  return out;
}

std::string kv_line(const std::string& k, const std::string& v) { return k + " " + v + "\n"; }

// ---- subcommands ----

void cmd_gen(Run& r) {
  r.p.allow(kDataKeys);
  r.p.check();
  if (r.p.has("data")) throw ConfigError("gen does not read a dataset");
  const SeparableSample s = generate(r.p, r.seed);
  const MarginReport m = dataset_margin(s.planted, s.set);
  r.emit("dataset.txt", dataset_to_string(s.set));
  r.emit("planted.txt", format_list(s.planted.vec().coords()) + "\n");
  r.summary << "gen d=" << s.set.dim() << " n=" << s.set.size() << " seed=" << r.seed
            << " planted_margin=" << short_num(m.margin) << "\n";
}

void cmd_perceptron(Run& r) {
  r.p.allow(kDataKeys);
  r.p.allow(kSearchKeys);
  r.p.allow({"variant", "alpha", "max_epochs", "w0"});
  r.p.check();
  const std::string variant = r.p.str("variant", "hyperbolic");
  if (variant != "hyperbolic" && variant != "adversarial" && variant != "euclidean") {
    throw ConfigError("variant must be hyperbolic, adversarial or euclidean");
  }
  const std::size_t max_epochs = r.p.count("max_epochs", 1000);
  const double alpha = r.p.num("alpha", 0.0);
  if (alpha < 0.0) throw ConfigError("alpha must be non-negative");
  if (variant != "adversarial" && r.p.has("alpha")) throw ConfigError("alpha needs variant=adversarial");
  const CertSearch search = search_from(r.p);
  const LabeledSet s = dataset_from(r.p, r.seed);
  const auto w0 = hypothesis_from(r.p, "w0", s.dim());
  if (variant == "euclidean" && w0) throw ConfigError("w0 is not used by the euclidean variant");

  std::string report;
  std::string log = "epoch,index\n";
  if (variant == "euclidean") {
    std::vector<std::vector<double>> pts;
    for (const auto& x : s.points()) {
      const BallPoint b = lorentz_to_ball(x);
      pts.emplace_back(b.coords().begin(), b.coords().end());
    }
    const auto res = run_euclidean_perceptron(pts, s.labels(), max_epochs);
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double dot = 0.0;
      for (std::size_t k = 0; k < pts[i].size(); ++k) dot += res.final_w[k] * pts[i][k];
      if (s.label(i) * dot <= 0.0) ++wrong;
    }
    const double err = static_cast<double>(wrong) / static_cast<double>(pts.size());
    for (const auto& e : res.mistake_log) log += std::to_string(e.epoch) + "," + std::to_string(e.index) + "\n";
    report += kv_line("variant", variant);
    report += kv_line("converged", res.converged ? "1" : "0");
    report += kv_line("mistakes", std::to_string(res.mistakes));
    report += kv_line("epochs", std::to_string(res.epochs));
    report += kv_line("final_w", format_list(res.final_w));
    report += kv_line("training_error", format_double(err));
    r.summary << "perceptron variant=euclidean n=" << s.size() << " converged=" << res.converged
              << " mistakes=" << res.mistakes << " epochs=" << res.epochs
              << " training_error=" << short_num(err) << "\n";
  } else {
    const Hypothesis start = w0 ? *w0 : default_hypothesis(s.dim());
    const PerceptronResult res = variant == "hyperbolic"
                                     ? run_hyperbolic_perceptron(s, start, max_epochs)
                                     : run_adversarial_perceptron(s, alpha, start, max_epochs, search);
    for (const auto& e : res.mistake_log) log += std::to_string(e.epoch) + "," + std::to_string(e.index) + "\n";
    const double margin = dataset_margin(res.final_w, s).margin;
    const double err = training_error(res.final_w, s);
    report += kv_line("variant", variant);
    if (variant == "adversarial") report += kv_line("alpha", format_double(alpha));
    report += kv_line("converged", res.converged ? "1" : "0");
    report += kv_line("mistakes", std::to_string(res.mistakes));
    report += kv_line("epochs", std::to_string(res.epochs));
    report += kv_line("skipped_updates", std::to_string(res.skipped_updates));
    report += kv_line("final_w", format_list(res.final_w.vec().coords()));
    report += kv_line("final_margin", format_double(margin));
    report += kv_line("training_error", format_double(err));
    report += kv_line("best_w", format_list(res.best_w.vec().coords()));
    report += kv_line("best_margin", format_double(res.best_margin));
    r.summary << "perceptron variant=" << variant << " n=" << s.size()
              << " converged=" << res.converged << " mistakes=" << res.mistakes
              << " epochs=" << res.epochs << " margin=" << short_num(margin)
              << " training_error=" << short_num(err) << "\n";
  }
  r.emit("perceptron.txt", report);
  r.emit("mistakes.csv", log);
}

void cmd_cert(Run& r) {
  r.p.allow(kSearchKeys);
  r.p.allow({"x", "y", "w", "alpha", "z0"});
  r.p.check();
  if (!r.p.has("x") || !r.p.has("w")) throw ConfigError("cert needs x=... and w=...");
  const auto xs = r.p.list("x", {});
  if (xs.size() < 2) throw ConfigError("x: need at least 2 coordinates");
  std::optional<LorentzPoint> x;
  try {
    x.emplace(AmbientVector(xs), Sheet::Upper, kDatasetTol);
  } catch (const OffManifold& e) {
    throw ConfigError(std::string("x: ") + e.what());
  }
  const Hypothesis w = *hypothesis_from(r.p, "w", x->dim());
  const long long y = r.p.has("y") ? parse_int(r.p.str("y", ""), "y") : 1;
  if (y != 1 && y != -1) throw ConfigError("y must be -1 or 1");
  const double alpha = r.p.num("alpha", 0.5);
  if (alpha < 0.0) throw ConfigError("alpha must be non-negative");
  const CertSearch search = search_from(r.p);

  std::optional<AdvExample> e;
  if (r.p.has("z0")) {
    const double z0 = r.p.num("z0", 1.0);
    const Z0Interval iv = feasible_z0_interval(*x, alpha);
    if (z0 < iv.lo || z0 > iv.hi) {
      throw ConfigError("z0 outside the feasible range [" + short_num(iv.lo) + ", " +
                        short_num(iv.hi) + "]");
    }
    e = solve_cert_at(w, *x, static_cast<int>(y), alpha, z0);
    if (!e) throw NumericalFailure("no admissible perturbation at this z0");
  } else {
    e = worst_case_perturbation(w, *x, static_cast<int>(y), alpha, search);
  }
  std::string report;
  report += kv_line("x_adv", format_list(e->point.vec().coords()));
  report += kv_line("objective", format_double(e->objective));
  report += kv_line("budget_used", format_double(e->budget_used));
  report += kv_line("misclassifies", e->misclassifies ? "1" : "0");
  r.emit("cert.txt", report);
  r.summary << "cert x_adv=" << format_list(e->point.vec().coords())
            << " objective=" << format_double(e->objective)
            << " misclassifies=" << e->misclassifies << "\n";
}

std::string alpha_tag(double a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", a);
  return buf;
}

void cmd_train(Run& r) {
  r.p.allow(kDataKeys);
  r.p.allow(kSearchKeys);
  r.p.allow({"algo", "loss", "r_alpha", "alpha", "alphas", "eta", "c", "batch", "iterations",
             "beta", "r_w", "step_gamma", "w0"});
  r.p.check();
  const std::string algo = r.p.str("algo", "adversarial-gd");
  if (algo != "adversarial-gd" && algo != "plain-gd") {
    throw ConfigError("algo must be adversarial-gd or plain-gd");
  }
  if (r.p.has("alpha") && r.p.has("alphas")) throw ConfigError("give alpha or alphas, not both");
  std::vector<double> alphas = r.p.has("alpha") ? std::vector<double>{r.p.num("alpha", 0.0)}
                                                : r.p.list("alphas", {0.0, 0.25, 0.5, 0.75, 1.0});
  if (algo == "plain-gd") {
    if (r.p.has("alpha") || r.p.has("alphas")) throw ConfigError("plain-gd takes no alpha");
    alphas = {0.0};
  }
  std::set<std::string> tags;
  for (double a : alphas) {
    if (!tags.insert(alpha_tag(a)).second) throw ConfigError("alphas: duplicate value");
  }

  TrainConfig base;
  base.loss = r.p.str("loss", base.loss);
  base.r_alpha = r.p.opt_num("r_alpha");
  base.eta = r.p.opt_num("eta");
  base.c = r.p.num("c", base.c);
  base.batch = r.p.count("batch", base.batch);
  base.iterations = r.p.count("iterations", base.iterations);
  base.seed = r.seed;
  base.beta = r.p.num("beta", base.beta);
  base.r_w = r.p.num("r_w", base.r_w);
  base.gamma = r.p.opt_num("step_gamma");
  base.search = search_from(r.p);
  try {
    LossKind::parse(base.loss);
    for (double a : alphas) {
      TrainConfig c = base;
      c.alpha = a;
      c.validate();
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  const LabeledSet s = dataset_from(r.p, r.seed);
  base.w0 = hypothesis_from(r.p, "w0", s.dim());

  std::string table = "alpha,final_margin,clean_loss,robust_loss,eta,r_alpha,adv_pool\n";
  for (double a : alphas) {
    TrainConfig c = base;
    c.alpha = a;
    const TrainTrace t = algo == "plain-gd" ? run_plain_gd(s, c) : run_adversarial_gd(s, c);
    std::ostringstream csv;
    write_trace_csv(csv, t);
    const std::string name =
        algo == "plain-gd" ? std::string("trace_plain.csv") : "trace_alpha_" + alpha_tag(a) + ".csv";
    r.emit(name, csv.str());
    const double margin = dataset_margin(t.final_w, s).margin;
    const double cl = clean_loss(LossKind::parse(c.loss, t.r_alpha), t.final_w, s);
    const double rl = robust_loss(LossKind::parse(c.loss, t.r_alpha), t.final_w, s, a);
    table += format_double(a) + "," + format_double(margin) + "," + format_double(cl) + "," +
             format_double(rl) + "," + format_double(t.eta) + "," + format_double(t.r_alpha) +
             "," + std::to_string(t.adversarial_pool) + "\n";
    r.summary << "train algo=" << algo << " alpha=" << short_num(a) << " iterations=" << c.iterations
              << " eta=" << short_num(t.eta) << " margin=" << short_num(margin)
              << " robust_loss=" << short_num(rl) << " file=" << name << "\n";
  }
  r.emit("summary.csv", table);
}

void cmd_pathology(Run& r) {
  r.p.allow({"d", "eps", "alpha", "rho", "max_rejections"});
  r.p.check();
  const std::size_t d = r.p.count("d", 8);
  const double eps = r.p.num("eps", 0.05);
  const double alpha = r.p.num("alpha", 0.5);
  const double rho = r.p.num("rho", 0.99);
  const std::size_t max_rej = r.p.count("max_rejections", 10'000);
  if (d < 2) throw ConfigError("d must be at least 2");
  if (!(eps > 0.0) || !(alpha > eps)) throw ConfigError("need 0 < eps < alpha");
  if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("rho must lie in (0, 1)");
  if (max_rej == 0) throw ConfigError("max_rejections must be positive");

  const PathologyWitness w = build_erm_pathology(d, eps, alpha, rho, r.seed, max_rej);
  const PathologyChecks c = validate_pathology(w);
  const double bound = shannon_lower_bound(d, w.theta);
  const std::size_t floor_bound = bound > 0.0 ? static_cast<std::size_t>(std::floor(bound)) : 0;
  const bool ok = c.all() && w.code.size() >= floor_bound;

  std::string report;
  report += kv_line("d", std::to_string(d));
  report += kv_line("epsilon", format_double(eps));
  report += kv_line("alpha", format_double(alpha));
  report += kv_line("rho", format_double(rho));
  report += kv_line("delta", format_double(w.delta));
  report += kv_line("theta", format_double(w.theta));
  report += kv_line("code_size", std::to_string(w.code.size()));
  report += kv_line("shannon_bound", format_double(bound));
  report += kv_line("cumulative_separation", c.cumulative_separation ? "1" : "0");
  report += kv_line("round_flips", c.round_flips ? "1" : "0");
  report += kv_line("margin_exact", c.margin_exact ? "1" : "0");
  report += kv_line("perturbation_exact", c.perturbation_exact ? "1" : "0");
  report += kv_line("unit_classifiers", c.unit_classifiers ? "1" : "0");
  report += kv_line("code_angles", c.code_angles ? "1" : "0");
  report += kv_line("max_margin_error", format_double(c.max_margin_error));
  report += kv_line("max_distance_error", format_double(c.max_distance_error));
  std::string code;
  for (const auto& v : w.code) code += format_list(v) + "\n";
  std::string cls;
  for (const auto& h : w.classifiers) cls += format_list(h.vec().coords()) + "\n";
  r.emit("pathology.txt", report);
  r.emit("code.csv", code);
  r.emit("classifiers.csv", cls);
  r.summary << "pathology d=" << d << " eps=" << short_num(eps) << " alpha=" << short_num(alpha)
            << " code_size=" << w.code.size() << " shannon_bound=" << short_num(bound)
            << " checks=" << (ok ? "passed" : "FAILED") << "\n";
  if (!ok) throw NumericalFailure("pathology witness failed validation");
}

void cmd_embed(Run& r) {
  r.p.allow({"method", "tree", "tau", "d", "iters"});
  r.p.check();
  const std::string method = r.p.str("method", "sarkar");
  if (method != "sarkar" && method != "stress") throw ConfigError("method must be sarkar or stress");
  const double tau = r.p.num("tau", 3.0);
  const std::size_t d = r.p.count("d", 2);
  const std::size_t iters = r.p.count("iters", 500);
  if (!(tau > 0.0)) throw ConfigError("tau must be positive");
  if (d < (method == "sarkar" ? 2u : 1u)) throw ConfigError("d too small");
  if (method == "sarkar" && (r.p.has("iters"))) throw ConfigError("iters is for method=stress");
  if (method == "stress" && (r.p.has("tau"))) throw ConfigError("tau is for method=sarkar");
  const TreeMetric tree = tree_from(r.p);

  std::vector<std::size_t> all(tree.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto true_d = tree.distance_matrix(all);
  std::string csv = "node";
  std::string summary;
  if (method == "sarkar") {
    const auto emb = sarkar_in_dim(tree, tau, d);
    for (std::size_t k = 0; k <= d; ++k) csv += ",x" + std::to_string(k);
    csv += "\n";
    for (std::size_t i = 0; i < emb.size(); ++i) {
      csv += tree.name(i) + "," + format_list(emb[i].vec().coords()) + "\n";
    }
    const DistortionReport dr = measure_distortion(true_d, pairwise_lorentz(emb));
    r.summary << "embed method=sarkar nodes=" << tree.size() << " d=" << d
              << " tau=" << short_num(tau) << " distortion=" << short_num(dr.c_m) << "\n";
  } else {
    const StressEmbedding emb = euclidean_stress_embed(true_d, d, iters, r.seed);
    for (std::size_t k = 0; k < d; ++k) csv += ",u" + std::to_string(k);
    csv += "\n";
    for (std::size_t i = 0; i < emb.coords.size(); ++i) {
      csv += tree.name(i) + "," + format_list(emb.coords[i]) + "\n";
    }
    const DistortionReport dr = measure_distortion(true_d, pairwise_euclidean(emb.coords));
    r.summary << "embed method=stress nodes=" << tree.size() << " d=" << d
              << " stress=" << short_num(emb.stress) << " distortion=" << short_num(dr.c_m) << "\n";
  }
  r.emit("embedding.csv", csv);
}

void cmd_compare_dim(Run& r) {
  r.p.allow({"tree", "positive", "dims", "tau", "iters", "max_epochs", "logistic_iters",
             "logistic_eta"});
  r.p.check();
  const auto dims_raw = r.p.list("dims", {2.0});
  std::vector<std::size_t> dims;
  for (double v : dims_raw) {
    if (v < 2.0 || v != std::floor(v)) throw ConfigError("dims: integers >= 2 expected");
    dims.push_back(static_cast<std::size_t>(v));
  }
  const double tau = r.p.num("tau", 3.0);
  const std::size_t iters = r.p.count("iters", 500);
  const std::size_t max_epochs = r.p.count("max_epochs", 1000);
  const std::size_t lg_iters = r.p.count("logistic_iters", 5000);
  const double lg_eta = r.p.num("logistic_eta", 0.5);
  if (!(tau > 0.0) || !(lg_eta > 0.0)) throw ConfigError("tau and logistic_eta must be positive");
  const TreeMetric tree = tree_from(r.p);
  if (tree.children(tree.root()).empty()) throw ConfigError("tree has a single node");
  std::size_t pos = tree.children(tree.root()).front();
  if (r.p.has("positive")) {
    pos = tree.index_of(r.p.str("positive", ""));
  }

  const auto leaves = tree.leaves();
  std::vector<int> labels;
  for (auto l : leaves) labels.push_back(tree.in_subtree(l, pos) ? 1 : -1);
  if (std::count(labels.begin(), labels.end(), 1) == 0 ||
      std::count(labels.begin(), labels.end(), -1) == 0) {
    throw ConfigError("positive: both classes must be non-empty");
  }
  const auto true_d = tree.distance_matrix(leaves);

  std::string table =
      "dim,hyperbolic_error,hyperbolic_converged,sarkar_distortion,euclidean_error,stress\n";
  for (std::size_t d : dims) {
    const auto emb = sarkar_in_dim(tree, tau, d);
    std::vector<LorentzPoint> pts;
    for (auto l : leaves) pts.push_back(emb[l]);
    const LabeledSet s(d, pts, labels);
    const PerceptronResult pr = run_hyperbolic_perceptron(s, default_hypothesis(d), max_epochs);
    const double herr = training_error(pr.final_w, s);
    const double cm = measure_distortion(true_d, pairwise_lorentz(pts)).c_m;
    const StressEmbedding st = euclidean_stress_embed(true_d, d, iters, r.seed);
    const EuclideanLogistic lg = fit_euclidean_logistic(st.coords, labels, lg_iters, lg_eta);
    table += std::to_string(d) + "," + format_double(herr) + "," + (pr.converged ? "1" : "0") +
             "," + format_double(cm) + "," + format_double(lg.training_error) + "," +
             format_double(st.stress) + "\n";
    r.summary << "compare-dim d=" << d << " leaves=" << leaves.size()
              << " hyperbolic_error=" << short_num(herr) << " euclidean_error="
              << short_num(lg.training_error) << "\n";
  }
  r.emit("compare_dim.csv", table);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Large-margin classification in the Lorentz model"};
  app.require_subcommand(1);

  struct Common {
    std::vector<std::string> params;
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = "hyperlm_out";
  } common;

  using Handler = std::function<void(Run&)>;
  const std::vector<std::tuple<std::string, std::string, Handler>> commands = {
      {"gen", "Sample a margin-separable dataset", cmd_gen},
      {"perceptron", "Run a perceptron (hyperbolic, adversarial or euclidean)", cmd_perceptron},
      {"cert", "Solve one worst-case perturbation", cmd_cert},
      {"train", "Adversarial or plain gradient descent, optionally over an alpha sweep", cmd_train},
      {"pathology", "Build and validate the adversarial ERM witness", cmd_pathology},
      {"embed", "Embed a tree (sarkar or stress)", cmd_embed},
      {"compare-dim", "Classifier error on tree embeddings across dimensions", cmd_compare_dim},
  };
  std::map<CLI::App*, Handler> handlers;
  for (const auto& [name, help, h] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("params", common.params, "key=value settings");
    sub->add_option("--config", common.config, "JSON object of key/value settings")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", common.seed, "Random seed");
    sub->add_option("--out", common.out, "Output directory");
    handlers[sub] = h;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  Run run;
  try {
    if (!common.config.empty()) load_config_file(common.config, run.p);
    for (const auto& kv : common.params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError("expected key=value, got '" + kv + "'");
      run.p.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    run.p.allow({"seed"});
    run.seed = run.p.count("seed", 0);
    if (common.seed) run.seed = *common.seed;
    handlers.at(sub)(run);
  } catch (const NumericalFailure& e) {
    out << run.summary.str();
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const OffManifold& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    fs::create_directories(common.out);
    for (const auto& [name, content] : run.files) {
      const fs::path path = fs::path(common.out) / name;
      std::ofstream f(path, std::ios::binary);
      f << content;
      if (!f) throw ConfigError("cannot write '" + path.string() + "'");
    }
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  out << run.summary.str();
  return kExitOk;
}

}  // namespace hyperlm
