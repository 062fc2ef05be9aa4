#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "hyperlm/error.hpp"
#include "hyperlm/synth.hpp"

namespace hyperlm {

TreeMetric::TreeMetric(const std::vector<Edge>& edges) {
  if (edges.empty()) throw InvalidArgument("tree: no edges");
  std::map<std::string, std::size_t> id;
  std::vector<std::string> names;
  auto intern = [&](const std::string& s) {
    auto [it, fresh] = id.emplace(s, names.size());
    if (fresh) names.push_back(s);
    return it->second;
  };
  std::vector<std::size_t> parent;
  std::vector<double> weight;
  std::vector<std::vector<std::size_t>> kids;
  for (const Edge& e : edges) {
    if (e.parent == e.child) throw InvalidArgument("tree: self loop at '" + e.parent + "'");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InvalidArgument("tree: edge weights must be positive and finite");
    }
    const std::size_t p = intern(e.parent);
    const std::size_t c = intern(e.child);
    parent.resize(names.size(), npos);
    weight.resize(names.size(), 0.0);
    kids.resize(names.size());
    if (parent[c] != npos) throw InvalidArgument("tree: node '" + e.child + "' has two parents");
    parent[c] = p;
    weight[c] = e.weight;
    kids[p].push_back(c);
  }

  std::size_t root = npos;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (parent[i] != npos) continue;
    if (root != npos) throw InvalidArgument("tree: more than one root");
    root = i;
  }
  if (root == npos) throw InvalidArgument("tree: no root (cycle)");

  // Renumber in breadth-first order so the root is 0 and parents precede children.
  std::vector<std::size_t> order;
  std::vector<std::size_t> remap(names.size(), npos);
  std::deque<std::size_t> queue{root};
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    remap[u] = order.size();
    order.push_back(u);
    for (std::size_t c : kids[u]) queue.push_back(c);
  }
  if (order.size() != names.size()) throw InvalidArgument("tree: not connected");

  for (std::size_t u : order) {
    names_.push_back(names[u]);
    parent_.push_back(parent[u] == npos ? npos : remap[parent[u]]);
    weight_.push_back(weight[u]);
    std::vector<std::size_t> ch;
    for (std::size_t c : kids[u]) ch.push_back(remap[c]);
    children_.push_back(std::move(ch));
  }
  finish();
}

TreeMetric TreeMetric::singleton(const std::string& name) {
  TreeMetric t;
  t.names_ = {name};
  t.parent_ = {npos};
  t.weight_ = {0.0};
  t.children_ = {{}};
  t.finish();
  return t;
}

TreeMetric TreeMetric::parse(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    Edge e;
    if (!(ls >> e.parent) || e.parent.front() == '#') continue;
    if (!(ls >> e.child)) throw ConfigError("tree line " + std::to_string(lineno) + ": missing child");
    std::string w;
    if (ls >> w) {
      std::size_t used = 0;
      try {
        e.weight = std::stod(w, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != w.size()) {
        throw ConfigError("tree line " + std::to_string(lineno) + ": bad weight '" + w + "'");
      }
    }
    if (ls >> w) throw ConfigError("tree line " + std::to_string(lineno) + ": trailing fields");
    edges.push_back(std::move(e));
  }
  try {
    return TreeMetric(edges);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

void TreeMetric::finish() {
  const std::size_t n = names_.size();
  dist_.assign(n * n, 0.0);
  // Children come after their parent, so one pass per source suffices.
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      auto visit = [&](std::size_t v, double w) {
        if (seen[v]) return;
        seen[v] = true;
        dist_[s * n + v] = dist_[s * n + u] + w;
        stack.push_back(v);
      };
      if (parent_[u] != npos) visit(parent_[u], weight_[u]);
      for (std::size_t c : children_[u]) visit(c, weight_[c]);
    }
  }
}

std::size_t TreeMetric::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  throw InvalidArgument("tree: unknown node '" + name + "'");
}

std::vector<std::size_t> TreeMetric::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (children_[i].empty()) out.push_back(i);
  }
  return out;
}

bool TreeMetric::in_subtree(std::size_t node, std::size_t ancestor) const {
  for (std::size_t u = node; u != npos; u = parent_[u]) {
    if (u == ancestor) return true;
  }
  return false;
}

std::vector<std::vector<double>> TreeMetric::distance_matrix(
    const std::vector<std::size_t>& nodes) const {
  std::vector<std::vector<double>> m(nodes.size(), std::vector<double>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) m[i][j] = distance(nodes[i], nodes[j]);
  }
  return m;
}

TreeMetric two_subtree_tree(std::size_t a_leaves, std::size_t b_groups, std::size_t b_leaves,
                            std::size_t b_depth) {
  if (a_leaves == 0 || b_groups == 0 || b_leaves == 0 || b_depth == 0) {
    throw InvalidArgument("two_subtree_tree: counts must be positive");
  }
  std::vector<TreeMetric::Edge> e{{"root", "A", 1.0}, {"root", "B", 1.0}};
  for (std::size_t i = 0; i < a_leaves; ++i) e.push_back({"A", "a" + std::to_string(i), 1.0});
  for (std::size_t g = 0; g < b_groups; ++g) {
    const std::string group = "b" + std::to_string(g);
    std::string above = "B";
    for (std::size_t k = 1; k < b_depth; ++k) {
      const std::string link = group + "." + std::to_string(k);
      e.push_back({above, link, 1.0});
      above = link;
    }
    e.push_back({above, group, 1.0});
    for (std::size_t i = 0; i < b_leaves; ++i) {
      e.push_back({group, group + "_" + std::to_string(i), 1.0});
    }
  }
  return TreeMetric(e);
}

TreeMetric balanced_tree(std::size_t branching, std::size_t depth) {
  if (branching == 0) throw InvalidArgument("balanced_tree: branching must be positive");
  if (depth == 0) return TreeMetric::singleton("n0");
  std::vector<TreeMetric::Edge> e;
  std::size_t next = 1;
  std::vector<std::size_t> level{0};
  for (std::size_t l = 0; l < depth; ++l) {
    std::vector<std::size_t> below;
    for (std::size_t p : level) {
      for (std::size_t k = 0; k < branching; ++k) {
        e.push_back({"n" + std::to_string(p), "n" + std::to_string(next), 1.0});
        below.push_back(next++);
      }
    }
    level = std::move(below);
  }
  return TreeMetric(e);
}

// Each node carries a Lorentz transformation that maps the origin to the node
// and puts its parent in direction pi. Children are placed by a rotation and a
// boost in that frame, which stays accurate far from the origin.
std::vector<LorentzPoint> sarkar_embed(const TreeMetric& tree, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("sarkar_embed: tau must be > 0");
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<Eigen::Matrix3d> frame(tree.size(), Eigen::Matrix3d::Identity());
  // Breadth-first numbering: every parent is placed before its children.
  for (std::size_t u = 0; u < tree.size(); ++u) {
    const auto& kids = tree.children(u);
    if (kids.empty()) continue;
    const bool root = u == tree.root();
    const double base = root ? 0.0 : std::numbers::pi;
    const double slots = static_cast<double>(kids.size() + (root ? 0 : 1));
    for (std::size_t k = 0; k < kids.size(); ++k) {
      const double angle = base + two_pi * static_cast<double>(k + (root ? 0 : 1)) / slots;
      const double len = tau * tree.edge_weight(kids[k]);
      Eigen::Matrix3d rot;
      rot << 1, 0, 0, 0, std::cos(angle), -std::sin(angle), 0, std::sin(angle), std::cos(angle);
      Eigen::Matrix3d boost;
      boost << std::cosh(len), std::sinh(len), 0, std::sinh(len), std::cosh(len), 0, 0, 0, 1;
      frame[kids[k]] = frame[u] * rot * boost;
    }
  }
  std::vector<LorentzPoint> out;
  out.reserve(tree.size());
  for (const auto& m : frame) {
    const double s[2] = {m(1, 0), m(2, 0)};
    out.push_back(lift(s));
  }
  return out;
}

double stress_of(const std::vector<std::vector<double>>& coords,
                 const std::vector<std::vector<double>>& target) {
  double s = 0.0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    for (std::size_t j = i + 1; j < coords.size(); ++j) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < coords[i].size(); ++k) {
        d2 += (coords[i][k] - coords[j][k]) * (coords[i][k] - coords[j][k]);
      }
      const double r = std::sqrt(d2) - target[i][j];
      s += r * r;
    }
  }
  return s;
}

// Classical scaling for the start, then SMACOF (Guttman transform) iterations.
StressEmbedding euclidean_stress_embed(const std::vector<std::vector<double>>& target,
                                       std::size_t d, std::size_t iters, std::uint64_t seed) {
  const std::size_t n = target.size();
  if (d == 0) throw InvalidArgument("stress embedding: d must be positive");
  for (const auto& row : target) {
    if (row.size() != n) throw DimensionMismatch("stress embedding: target must be square");
    for (double v : row) {
      if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("stress embedding: bad distance");
    }
  }
  StressEmbedding out;
  if (n == 0) return out;

  Eigen::MatrixXd D(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) D(i, j) = 0.5 * (target[i][j] + target[j][i]);
  }
  const Eigen::MatrixXd J =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd B = -0.5 * J * D.cwiseProduct(D) * J;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(B);
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, d);
  for (std::size_t k = 0; k < d && k < n; ++k) {
    const Eigen::Index col = static_cast<Eigen::Index>(n - 1 - k);
    const double lambda = eig.eigenvalues()(col);
    if (lambda > 0.0) X.col(static_cast<Eigen::Index>(k)) = eig.eigenvectors().col(col) * std::sqrt(lambda);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> jitter(0.0, 1e-3 * std::max(1.0, D.maxCoeff()));
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index k = 0; k < X.cols(); ++k) X(i, k) += jitter(rng);
  }

  Eigen::MatrixXd Bx(n, n);
  for (std::size_t it = 0; it < iters; ++it) {
    Bx.setZero();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double dist = (X.row(i) - X.row(j)).norm();
        const double v = dist > 1e-12 ? -D(i, j) / dist : 0.0;
        Bx(i, j) = v;
        Bx(i, i) -= v;
      }
    }
    X = Bx * X / static_cast<double>(n);
  }

  out.coords.assign(n, std::vector<double>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) out.coords[i][k] = X(i, k);
  }
  out.stress = stress_of(out.coords, target);
  return out;
}

DistortionReport measure_distortion(const std::vector<std::vector<double>>& true_d,
                                    const std::vector<std::vector<double>>& embedded_d) {
  const std::size_t n = true_d.size();
  if (embedded_d.size() != n) throw DimensionMismatch("distortion: index sets differ");
  DistortionReport r;
  double hi = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (true_d[i].size() != n || embedded_d[i].size() != n) {
      throw DimensionMismatch("distortion: matrices must be square");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double t = true_d[i][j];
      const double e = embedded_d[i][j];
      if (!(t > 0.0)) continue;
      if (!(e > 0.0)) {
        r.degenerate = true;
        r.contracted = {i, j};
        continue;
      }
      const double ratio = t / e;
      if (ratio > hi) {
        hi = ratio;
        if (!r.degenerate) r.contracted = {i, j};
      }
      if (ratio < lo) {
        lo = ratio;
        r.expanded = {i, j};
      }
    }
  }
  if (r.degenerate) {
    r.c_m = std::numeric_limits<double>::infinity();
  } else if (hi > 0.0) {
    r.c_m = hi / lo;
  }
  return r;
}

std::vector<std::vector<double>> pairwise_lorentz(const std::vector<LorentzPoint>& pts) {
  std::vector<std::vector<double>> m(pts.size(), std::vector<double>(pts.size(), 0.0));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      m[i][j] = m[j][i] = lorentz_distance(pts[i], pts[j]);
    }
  }
  return m;
}

std::vector<std::vector<double>> pairwise_euclidean(const std::vector<std::vector<double>>& pts) {
  std::vector<std::vector<double>> m(pts.size(), std::vector<double>(pts.size(), 0.0));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < pts[i].size(); ++k) {
        s += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
      }
      m[i][j] = m[j][i] = std::sqrt(s);
    }
  }
  return m;
}

}  // namespace hyperlm
