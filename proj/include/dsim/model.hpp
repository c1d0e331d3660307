#pragma once

#include <array>
#include <vector>

#include "dsim/lie_algebra.hpp"
#include "dsim/linalg.hpp"

namespace dsim {

enum class PulseShape { kGaussian, kFlatTop, kCustomTable };

/// One Rabi-frequency envelope. For kCustomTable the table holds the unit
/// profile as strictly increasing (t, value) points and the amplitude
/// scales it, so two envelopes sharing a table differ only in amplitude.
struct PulseEnvelope {
  PulseShape shape = PulseShape::kGaussian;
  double amplitude = 0.0;
  double center = 0.0;
  double width = 1.0;
  std::vector<std::array<double, 2>> table;

  void validate() const;
  double value(double t) const;
};

double pulse_value(const PulseEnvelope& env, double t);

/// The four drive envelopes plus the common detuning. Pump alpha1 couples
/// levels 0-1, pump alpha2 couples 2-3, Stokes beta1 couples 1-2, Stokes
/// beta2 couples 0-3; levels 0-2 and 1-3 stay uncoupled.
struct PulseSchedule {
  PulseEnvelope alpha1;
  PulseEnvelope beta1;
  PulseEnvelope alpha2;
  PulseEnvelope beta2;
  double delta = 0.0;

  /// Envelopes of a pair must share shape, center, width (and table);
  /// pair 2 must not precede pair 1.
  void validate() const;
};

/// Generator-basis coefficients of the Hamiltonian, Gamma_a = Tr(H G_a)/hbar.
/// For the diamond Hamiltonian only indices 1,2,4,6,13,14,15 (1-based) can
/// be nonzero: the couplings are real and the 0-2 / 1-3 channels are absent.
using GammaVector = Vector15d;

/// (hbar/2) * [[0, a1, 0, b2], [a1, 2D, b1, 0], [0, b1, 0, a2], [b2, 0, a2, 2D]]
/// with the envelopes evaluated at t.
Matrix4c hamiltonian_at(const PulseSchedule& sched, double t);

/// Throws InvalidInput when h is not Hermitian within 1e-10. Satisfies
/// (hbar/2) sum_a Gamma_a G_a + (Tr h / 4) I = h.
GammaVector gamma_coefficients(const Matrix4c& h, const GeneratorSet& gens);

/// Coupling coefficients g[b][a] = sum_c Gamma_c f_{cba}; antisymmetric.
Eigen::MatrixXd g_matrix(const Eigen::VectorXd& gamma,
                         const StructureTensor& f);

/// Diagnostic cross-check of the first-principles coupling matrix against
/// a hand-tabulated explicit block form of the same matrix. The tabulated
/// form is kept verbatim, typos included; disagreements are reported, never
/// raised as errors.
struct BlockComparison {
  struct Mismatch {
    int row;  // 0-based generator indices
    int col;
    double derived;
    double tabulated;
  };
  std::vector<Mismatch> mismatches;
  double max_abs_difference = 0.0;
  std::string to_text() const;
};

BlockComparison compare_reference_blocks(const PulseSchedule& sched, double t,
                                         const StructureTensor& f);

/// The demonstration schedule used by the bundled config, the regression
/// tests, and the self-verification run: Gaussian pairs at t0 = 2 and 6,
/// sigma = 0.8, amplitudes (1.5, 1.0, 0.8, 1.6), delta = 0.5.
PulseSchedule default_demo_schedule();

}  // namespace dsim
