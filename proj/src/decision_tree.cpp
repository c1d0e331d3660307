#include "dsim/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dsim {

namespace {

void check_label(int label, const char* what) {
  if (label < 0 || label > 3)
    throw InvalidInput(std::string(what) + " label must be in 0..3, got " +
                       std::to_string(label));
}

Vector4d normalized_probabilities(const Vector4d& v, const char* what) {
  Vector4d p = v;
  for (int i = 0; i < 4; ++i) {
    if (!std::isfinite(p[i]))
      throw InvalidInput(std::string(what) + " contains a non-finite entry");
    if (p[i] < -1e-9)
      throw InvalidInput(std::string(what) + " entry " + std::to_string(i) +
                         " is negative beyond tolerance");
    p[i] = std::max(p[i], 0.0);
  }
  const double sum = p.sum();
  if (sum < 0.98 || sum > 1.02)
    throw InvalidInput(std::string(what) + " does not normalize: sum = " +
                       std::to_string(sum) + " outside [0.98, 1.02]");
  return p / sum;
}

}  // namespace

Vector4d populations_at(const Trajectory& traj, double t) {
  if (traj.times.empty())
    throw InvalidInput("populations_at: empty trajectory");
  if (t < traj.times.front() || t > traj.times.back())
    throw InvalidInput("populations_at: t = " + std::to_string(t) +
                       " outside sampled range [" +
                       std::to_string(traj.times.front()) + ", " +
                       std::to_string(traj.times.back()) + "]");
  auto hi = std::lower_bound(traj.times.begin(), traj.times.end(), t);
  size_t i1 = hi - traj.times.begin();
  size_t i0 = (i1 == 0) ? 0 : i1 - 1;
  if (i1 == traj.times.size()) i1 = i0;
  const double t0 = traj.times[i0], t1 = traj.times[i1];
  const double w = (t1 == t0) ? 0.0 : (t - t0) / (t1 - t0);

  Vector4d p;
  for (int i = 0; i < 4; ++i) {
    const double a = traj.states[i0].rho(i, i).real();
    const double b = traj.states[i1].rho(i, i).real();
    p[i] = std::clamp((1.0 - w) * a + w * b, 0.0, 1.0);
  }
  const double sum = p.sum();
  if (std::abs(sum - 1.0) > 1e-6)
    throw IntegrityError("populations_at: probabilities sum to " +
                         std::to_string(sum) + " at t = " + std::to_string(t));
  return p / sum;
}

DecisionTree build_tree(const Vector4d& layer1, const Vector4d& shared_layer2) {
  DecisionTree tree;
  tree.layer1 = normalized_probabilities(layer1, "layer 1");
  const Vector4d l2 = normalized_probabilities(shared_layer2, "layer 2");
  tree.layer2.fill(l2);
  tree.shared_layer2 = true;
  return tree;
}

DecisionTree build_tree(const Vector4d& layer1,
                        const std::array<Vector4d, 4>& layer2) {
  DecisionTree tree;
  tree.layer1 = normalized_probabilities(layer1, "layer 1");
  for (int b = 0; b < 4; ++b) {
    tree.layer2[b] = normalized_probabilities(
        layer2[b], ("layer 2 branch " + std::to_string(b)).c_str());
  }
  tree.shared_layer2 = false;
  return tree;
}

double path_probability(const DecisionTree& tree, const PathQuery& path) {
  check_label(path.root, "path root");
  check_label(path.mid, "path intermediate");
  check_label(path.leaf, "path leaf");
  if (path.root != tree.root)
    throw InvalidInput("path root " + std::to_string(path.root) +
                       " does not match tree root " +
                       std::to_string(tree.root));
  return tree.layer1[path.mid] * tree.layer2[path.mid][path.leaf];
}

double return_probability(const DecisionTree& tree, int target) {
  check_label(target, "target");
  double p = 0.0;
  for (int m = 0; m < 4; ++m) p += tree.layer1[m] * tree.layer2[m][target];
  return p;
}

TransitionProbabilities transition_matrix(const Matrix4c& u1,
                                          const Matrix4c& u2) {
  auto check_unitary = [](const Matrix4c& u, const char* name) {
    const double dev =
        (u.adjoint() * u - Matrix4c::Identity()).cwiseAbs().maxCoeff();
    if (dev > 1e-8)
      throw InvalidInput(std::string(name) +
                         " is not unitary within 1e-8 (deviation " +
                         std::to_string(dev) + ")");
  };
  check_unitary(u1, "first propagator");
  check_unitary(u2, "second propagator");

  TransitionProbabilities out;
  const Matrix4c composed = u2 * u1;
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j < 4; ++j) {
      out.coherent(k, j) = std::norm(composed(k, j));
      double classical = 0.0;
      for (int m = 0; m < 4; ++m)
        classical += std::norm(u2(k, m)) * std::norm(u1(m, j));
      out.classical(k, j) = classical;
    }
  out.gap = out.coherent - out.classical;
  return out;
}

std::string tree_json(const DecisionTree& tree) {
  nlohmann::json doc;
  doc["root"] = tree.root;
  doc["layer1"] = {tree.layer1[0], tree.layer1[1], tree.layer1[2],
                   tree.layer1[3]};
  if (tree.shared_layer2) {
    const Vector4d& l2 = tree.layer2[0];
    doc["layer2"] = {l2[0], l2[1], l2[2], l2[3]};
  } else {
    auto arr = nlohmann::json::array();
    for (const auto& l2 : tree.layer2) arr.push_back({l2[0], l2[1], l2[2], l2[3]});
    doc["layer2"] = std::move(arr);
  }
  auto leaves = nlohmann::json::array();
  for (int m = 0; m < 4; ++m)
    for (int k = 0; k < 4; ++k) {
      leaves.push_back(
          {{"path", {tree.root, m, k}},
           {"p", tree.layer1[m] * tree.layer2[m][k]}});
    }
  doc["leaves"] = std::move(leaves);
  return doc.dump(2);
}

std::string tree_dot(const DecisionTree& tree) {
  static const char* kBranchColor[4] = {"red", "blue", "green", "magenta"};
  auto label = [](double p) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.2f", p);
    return std::string(buf);
  };
  std::ostringstream os;
  os << "digraph decision_tree {\n  rankdir=TB;\n"
     << "  root [label=\"" << tree.root << "\", shape=circle];\n";
  for (int m = 0; m < 4; ++m) {
    os << "  b" << m << " [label=\"" << m << "\", shape=circle];\n"
       << "  root -> b" << m << " [label=\"" << label(tree.layer1[m])
       << "\", color=" << kBranchColor[m] << "];\n";
  }
  for (int m = 0; m < 4; ++m)
    for (int k = 0; k < 4; ++k) {
      os << "  l" << m << k << " [label=\"" << k << "\", shape=circle];\n"
         << "  b" << m << " -> l" << m << k << " [label=\""
         << label(tree.layer2[m][k]) << "\", color=" << kBranchColor[m]
         << "];\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace dsim
