#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "dsim/lie_algebra.hpp"
#include "dsim/linalg.hpp"
#include "dsim/model.hpp"

namespace dsim {

/// Dual view of the four-level state: the density matrix and its
/// generator-basis expectation values. Both views are populated on every
/// stored sample.
struct QuantumState {
  Matrix4c rho = Matrix4c::Zero();
  Vector15d coherence = Vector15d::Zero();
};

/// - kLiteral: every matrix element is damped entrywise; the per-state
///   decay rates act on the populations with no feeding, so they leak
///   trace. With zero state decay only coherences are damped.
/// - kLindblad: same off-diagonal damping, plus population transfer that
///   refeeds the destination states, conserving trace for all settings.
enum class DissipationMode { kLiteral, kLindblad };

struct DissipationSpec {
  /// population_decay(k, m) is the rate from state m into state k.
  Matrix4d population_decay = Matrix4d::Zero();
  /// Pure dephasing rates per unordered level pair; symmetric, zero diagonal.
  Matrix4d pure_dephasing = Matrix4d::Zero();
  /// Per-state decay rates applied literally to the populations in
  /// kLiteral mode; in kLindblad mode they only broaden coherences.
  Vector4d state_decay = Vector4d::Zero();
  DissipationMode mode = DissipationMode::kLiteral;

  void validate() const;
  bool preserves_trace() const;
};

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  double step = 1e-3;
  int sample_stride = 1;

  void validate() const;
  /// Integration steps covering [t_start, t_end]; the last step may be short.
  int step_count() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<QuantumState> states;
  /// Envelope values (alpha1, beta1, alpha2, beta2) at each sample.
  std::vector<std::array<double, 4>> pulse_samples;
  /// Smallest density-matrix eigenvalue seen over the stored samples.
  double min_eigenvalue = 1.0;
  /// Largest |Tr rho - 1| seen over the stored samples.
  double max_trace_drift = 0.0;
};

/// Integrates dv/dt = g(t)^T v with g from the structure-constant
/// contraction of the instantaneous Hamiltonian coefficients. The transpose
/// (equivalently, the sign flip of the antisymmetric g) is what matches
/// direct integration of the von Neumann equation; see evolve_density.
/// Conserves |v| and reconstructs unit-trace density matrices per sample.
Trajectory evolve_coherence(const Vector15d& v0, const PulseSchedule& sched,
                            const TimeGrid& grid, const GeneratorSet& gens,
                            const StructureTensor& f);

/// Integrates drho/dt = (i/hbar)[rho, H(t)] - D(rho) with classical RK4,
/// D given by dissipator_apply (absent -> unitary). Aborts with
/// IntegrityError when a sampled eigenvalue drops below -1e-6 or, for
/// trace-preserving settings, when |Tr rho - 1| exceeds 1e-6.
Trajectory evolve_density(const Matrix4c& rho0, const PulseSchedule& sched,
                          const TimeGrid& grid,
                          const std::optional<DissipationSpec>& diss = {});

/// D(rho): entrywise damping [ (sd_m + sd_n)/2 + R_mn ] rho_mn with R the
/// total decoherence rates (R_mm = 0); the diagonal action is sd_m rho_mm
/// in kLiteral mode and the trace-free population-transfer bookkeeping in
/// kLindblad mode.
Matrix4c dissipator_apply(const DissipationSpec& diss, const Matrix4c& rho);

/// Off-diagonal total decoherence rates: dephasing plus half the summed
/// population-decay rates out of either level into third parties,
/// R_mn = deph_mn + (1/2) sum_{k != m,n} (pop(k,m) + pop(k,n)). Zero diagonal.
Matrix4d total_decoherence_rates(const DissipationSpec& diss);

using Matrix16c = Eigen::Matrix<Complex, 16, 16>;

/// (L, G) acting on row-major vec(rho), with (i/hbar) L vec(rho) - G vec(rho)
/// equal to the evolve_density right-hand side: L vec(rho) = vec([rho, H]).
std::pair<Matrix16c, Matrix16c> superoperator_matrices(
    const Matrix4c& h, const DissipationSpec& diss);

/// Time-ordered product of midpoint exponentials exp(-i H(t_mid) dt / hbar)
/// over [t0, t1]. Column j holds the amplitudes evolved from basis state j.
Matrix4c propagator(const PulseSchedule& sched, double t0, double t1,
                    double step);

/// Shared four-level generator basis (immutable, built once).
const GeneratorSet& su4_generators();
/// Structure constants of su4_generators() (immutable, built once).
const StructureTensor& su4_structure_constants();

}  // namespace dsim
