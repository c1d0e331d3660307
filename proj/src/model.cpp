#include "dsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dsim {

namespace {

bool same_profile(const PulseEnvelope& a, const PulseEnvelope& b) {
  return a.shape == b.shape && a.center == b.center && a.width == b.width &&
         a.table == b.table;
}

}  // namespace

void PulseEnvelope::validate() const {
  if (!(width > 0.0))
    throw InvalidInput("pulse width must be positive, got " +
                       std::to_string(width));
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
    throw InvalidInput("pulse amplitude must be finite and non-negative");
  if (!std::isfinite(center))
    throw InvalidInput("pulse center must be finite");
  if (shape == PulseShape::kCustomTable) {
    if (table.size() < 2)
      throw InvalidInput("pulse table needs at least two points");
    for (size_t i = 0; i < table.size(); ++i) {
      if (!std::isfinite(table[i][0]) || !std::isfinite(table[i][1]) ||
          table[i][1] < 0.0)
        throw InvalidInput("pulse table values must be finite and non-negative");
      if (i > 0 && table[i][0] <= table[i - 1][0])
        throw InvalidInput("pulse table times must be strictly increasing");
    }
  }
}

double PulseEnvelope::value(double t) const {
  switch (shape) {
    case PulseShape::kGaussian: {
      const double u = (t - center) / width;
      return amplitude * std::exp(-0.5 * u * u);
    }
    case PulseShape::kFlatTop: {
      const double d = std::abs(t - center) - width;
      if (d <= 0.0) return amplitude;
      const double ramp = width / 4.0;
      if (d >= ramp) return 0.0;
      return amplitude * 0.5 * (1.0 + std::cos(std::numbers::pi * d / ramp));
    }
    case PulseShape::kCustomTable: {
      if (t < table.front()[0] || t > table.back()[0]) return 0.0;
      auto hi = std::lower_bound(table.begin(), table.end(), t,
                                 [](const std::array<double, 2>& p, double x) {
                                   return p[0] < x;
                                 });
      if (hi == table.begin()) return amplitude * (*hi)[1];
      auto lo = hi - 1;
      const double w = ((*hi)[0] == (*lo)[0])
                           ? 0.0
                           : (t - (*lo)[0]) / ((*hi)[0] - (*lo)[0]);
      return amplitude * ((1.0 - w) * (*lo)[1] + w * (*hi)[1]);
    }
  }
  return 0.0;
}

double pulse_value(const PulseEnvelope& env, double t) { return env.value(t); }

void PulseSchedule::validate() const {
  alpha1.validate();
  beta1.validate();
  alpha2.validate();
  beta2.validate();
  if (!std::isfinite(delta)) throw InvalidInput("detuning must be finite");
  if (!same_profile(alpha1, beta1))
    throw InvalidInput("pair 1 envelopes must share shape, center and width");
  if (!same_profile(alpha2, beta2))
    throw InvalidInput("pair 2 envelopes must share shape, center and width");
  if (alpha2.center < alpha1.center)
    throw InvalidInput("pair 2 center must not precede pair 1 center");
}

Matrix4c hamiltonian_at(const PulseSchedule& sched, double t) {
  const double a1 = sched.alpha1.value(t);
  const double b1 = sched.beta1.value(t);
  const double a2 = sched.alpha2.value(t);
  const double b2 = sched.beta2.value(t);
  Matrix4c h = Matrix4c::Zero();
  h(0, 1) = h(1, 0) = a1;
  h(1, 2) = h(2, 1) = b1;
  h(2, 3) = h(3, 2) = a2;
  h(0, 3) = h(3, 0) = b2;
  h(1, 1) = h(3, 3) = 2.0 * sched.delta;
  return (kHBar / 2.0) * h;
}

GammaVector gamma_coefficients(const Matrix4c& h, const GeneratorSet& gens) {
  if (gens.dimension() != 4)
    throw InvalidInput("gamma_coefficients: generator set must have dimension 4");
  auto [trace_part, coeffs] = decompose(h, gens);
  (void)trace_part;  // the traceful part rides on the identity, not on Gamma
  return GammaVector(coeffs / kHBar);
}

Eigen::MatrixXd g_matrix(const Eigen::VectorXd& gamma,
                         const StructureTensor& f) {
  const int d = f.dimension();
  if (gamma.size() != d)
    throw InvalidInput("g_matrix: coefficient vector length " +
                       std::to_string(gamma.size()) +
                       " does not match tensor dimension " + std::to_string(d));
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
  // g[b][a] = sum_c Gamma_c f_{cba}: walk the canonical triples and scatter
  // all six permutations.
  static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                  {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  static const int signs[6] = {1, 1, 1, -1, -1, -1};
  for (const auto& [key, val] : f.canonical_entries()) {
    for (int p = 0; p < 6; ++p) {
      const int c = key[perms[p][0]];
      const int b = key[perms[p][1]];
      const int a = key[perms[p][2]];
      g(b, a) += gamma[c] * signs[p] * val;
    }
  }
  return g;
}

namespace {

// Hand-tabulated explicit block form of the 15x15 coupling matrix,
// [[0, M, 0], [-M^T, 0, K], [0, -K^T, 0]], kept exactly as tabulated.
Eigen::MatrixXd tabulated_g(double a1, double b1, double a2, double b2,
                            double delta) {
  const double s3 = std::sqrt(3.0);
  const double s6 = std::sqrt(6.0);
  Eigen::Matrix<double, 6, 6> m;
  m << -delta, 0, -b1, 0, -b2, 0,
       0, delta, a1, 0, a2, 0,
       -b1, a1, 0, -a2, 0, -b2,
       0, 0, -a2, -delta, -a1, 0,
       b2, -a2, 0, a1, 0, b2,
       0, 0, b2, 0, b2, -delta;
  Eigen::Matrix<double, 6, 3> k;
  k << -2.0 * a1, 0, 0,
       b1, -s3 * b1, 0,
       0, 0, 0,
       -b2, -s3 / 3.0 * b2, -2.0 * s6 / 3.0 * b2,
       0, 0, 0,
       0, -2.0 * s3 / 3.0 * a2, 2.0 * s6 / 3.0 * a2;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(15, 15);
  g.block<6, 6>(0, 6) = m;
  g.block<6, 6>(6, 0) = -m.transpose();
  g.block<6, 3>(6, 12) = k;
  g.block<3, 6>(12, 6) = -k.transpose();
  return g;
}

}  // namespace

BlockComparison compare_reference_blocks(const PulseSchedule& sched, double t,
                                         const StructureTensor& f) {
  sched.validate();
  static const GeneratorSet gens(4);
  const GammaVector gamma = gamma_coefficients(hamiltonian_at(sched, t), gens);
  const Eigen::MatrixXd derived = g_matrix(gamma, f);
  const Eigen::MatrixXd tabulated =
      tabulated_g(sched.alpha1.value(t), sched.beta1.value(t),
                  sched.alpha2.value(t), sched.beta2.value(t), sched.delta);

  BlockComparison cmp;
  for (int r = 0; r < 15; ++r)
    for (int c = 0; c < 15; ++c) {
      const double diff = std::abs(derived(r, c) - tabulated(r, c));
      cmp.max_abs_difference = std::max(cmp.max_abs_difference, diff);
      if (diff > 1e-9)
        cmp.mismatches.push_back({r, c, derived(r, c), tabulated(r, c)});
    }
  return cmp;
}

std::string BlockComparison::to_text() const {
  std::ostringstream os;
  os.precision(4);
  if (mismatches.empty()) {
    os << "  block form matches the derived coupling matrix\n";
    return os.str();
  }
  os << "  " << mismatches.size()
     << " entries differ from the derived coupling matrix (max |diff| "
     << max_abs_difference << "):\n";
  for (const auto& mm : mismatches) {
    os << "    g[" << mm.row + 1 << "][" << mm.col + 1 << "]: derived "
       << mm.derived << ", tabulated " << mm.tabulated << "\n";
  }
  return os.str();
}

PulseSchedule default_demo_schedule() {
  PulseSchedule sched;
  sched.alpha1 = {PulseShape::kGaussian, 1.5, 2.0, 0.8, {}};
  sched.beta1 = {PulseShape::kGaussian, 1.0, 2.0, 0.8, {}};
  sched.alpha2 = {PulseShape::kGaussian, 0.8, 6.0, 0.8, {}};
  sched.beta2 = {PulseShape::kGaussian, 1.6, 6.0, 0.8, {}};
  sched.delta = 0.5;
  return sched;
}

}  // namespace dsim
