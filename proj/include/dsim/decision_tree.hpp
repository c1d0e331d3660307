#pragma once

#include <array>
#include <string>

#include "dsim/dynamics.hpp"
#include "dsim/linalg.hpp"

namespace dsim {

/// Two-layer tree of basis-state nodes rooted at a single initial state.
/// Edge weights are measurement probabilities after the first and second
/// pulse pair; layer 2 is either one distribution shared by all branches
/// or a conditional distribution per branch.
struct DecisionTree {
  int root = 0;
  Vector4d layer1 = Vector4d::Zero();
  std::array<Vector4d, 4> layer2{};
  bool shared_layer2 = true;
};

/// root -> intermediate -> leaf, all labels in 0..3.
struct PathQuery {
  int root = 0;
  int mid = 0;
  int leaf = 0;
};

/// diag(rho) at time t, linearly interpolated between stored samples,
/// clipped to [0, 1]. Renormalizes when the sum is within 1e-6 of one,
/// throws IntegrityError otherwise; throws InvalidInput out of range.
Vector4d populations_at(const Trajectory& traj, double t);

/// Clips negative dust above -1e-9 to zero and renormalizes each vector
/// whose sum lies in [0.98, 1.02] (two-decimal inputs round-trip); throws
/// InvalidInput otherwise. Root fixed at state 0.
DecisionTree build_tree(const Vector4d& layer1, const Vector4d& shared_layer2);
DecisionTree build_tree(const Vector4d& layer1,
                        const std::array<Vector4d, 4>& layer2);

/// Product of the edge probabilities along the path.
double path_probability(const DecisionTree& tree, const PathQuery& path);

/// sum_m layer1[m] * layer2_m[target]; equals the shared layer-2 entry
/// when all branches carry the same distribution.
double return_probability(const DecisionTree& tree, int target);

struct TransitionProbabilities {
  /// coherent(k, j) = |(U2 U1)_{kj}|^2: amplitudes summed over
  /// intermediate states before squaring.
  Matrix4d coherent = Matrix4d::Zero();
  /// classical(k, j) = sum_m |U2_{km}|^2 |U1_{mj}|^2: the tree's
  /// product-of-marginals reading.
  Matrix4d classical = Matrix4d::Zero();
  /// coherent - classical; nonzero entries witness path interference.
  Matrix4d gap = Matrix4d::Zero();
};

/// Throws InvalidInput unless both factors are unitary within 1e-8.
TransitionProbabilities transition_matrix(const Matrix4c& u1,
                                          const Matrix4c& u2);

/// {"root", "layer1", "layer2", "leaves"} with one leaf record per path.
std::string tree_json(const DecisionTree& tree);
/// Graphviz digraph with edge labels rounded to two decimals.
std::string tree_dot(const DecisionTree& tree);

}  // namespace dsim
