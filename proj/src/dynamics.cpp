#include "dsim/dynamics.hpp"

#include <cmath>
#include <string>

namespace dsim {

namespace {

constexpr Complex kI{0.0, 1.0};

template <typename State, typename Rhs>
State rk4_step(const State& y, double t, double h, const Rhs& rhs) {
  const State k1 = rhs(y, t);
  const State k2 = rhs(State(y + 0.5 * h * k1), t + 0.5 * h);
  const State k3 = rhs(State(y + 0.5 * h * k2), t + 0.5 * h);
  const State k4 = rhs(State(y + h * k3), t + h);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::array<double, 4> envelope_values(const PulseSchedule& sched, double t) {
  return {sched.alpha1.value(t), sched.beta1.value(t), sched.alpha2.value(t),
          sched.beta2.value(t)};
}

double min_eigenvalue_of(const Matrix4c& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Shared sampling/monitoring loop for both pictures. advance() integrates
// one step; snapshot() materializes the current QuantumState.
template <typename Advance, typename Snapshot>
Trajectory integrate(const PulseSchedule& sched, const TimeGrid& grid,
                     const Advance& advance, const Snapshot& snapshot,
                     bool check_trace) {
  const int n_steps = grid.step_count();
  Trajectory traj;
  traj.times.reserve(n_steps / grid.sample_stride + 2);

  auto store = [&](double t) {
    QuantumState state = snapshot();
    const double trace_drift = std::abs(state.rho.trace().real() - 1.0) +
                               std::abs(state.rho.trace().imag());
    const double min_eig = min_eigenvalue_of(state.rho);
    traj.max_trace_drift = std::max(traj.max_trace_drift, trace_drift);
    traj.min_eigenvalue = std::min(traj.min_eigenvalue, min_eig);
    if (min_eig < -1e-6)
      throw IntegrityError("positivity breach at t = " + std::to_string(t) +
                           ": eigenvalue " + std::to_string(min_eig));
    if (check_trace && trace_drift > 1e-6)
      throw IntegrityError("trace breach at t = " + std::to_string(t) +
                           ": |Tr rho - 1| = " + std::to_string(trace_drift));
    traj.times.push_back(t);
    traj.states.push_back(std::move(state));
    traj.pulse_samples.push_back(envelope_values(sched, t));
  };

  store(grid.t_start);
  for (int k = 0; k < n_steps; ++k) {
    const double t = grid.t_start + k * grid.step;
    const double t_next =
        (k + 1 == n_steps) ? grid.t_end : grid.t_start + (k + 1) * grid.step;
    advance(t, t_next - t);
    if ((k + 1) % grid.sample_stride == 0 || k + 1 == n_steps) store(t_next);
  }
  return traj;
}

}  // namespace

void DissipationSpec::validate() const {
  auto check = [](double r, const char* what) {
    if (!(r >= 0.0) || !std::isfinite(r))
      throw InvalidInput(std::string(what) + " rates must be finite and >= 0");
  };
  for (int i = 0; i < 4; ++i) {
    check(state_decay[i], "state decay");
    for (int j = 0; j < 4; ++j) {
      check(population_decay(i, j), "population decay");
      check(pure_dephasing(i, j), "pure dephasing");
    }
    if (pure_dephasing(i, i) != 0.0)
      throw InvalidInput("pure dephasing matrix must have zero diagonal");
  }
  if ((pure_dephasing - pure_dephasing.transpose()).cwiseAbs().maxCoeff() > 0.0)
    throw InvalidInput("pure dephasing matrix must be symmetric");
}

bool DissipationSpec::preserves_trace() const {
  return mode == DissipationMode::kLindblad ||
         state_decay.cwiseAbs().maxCoeff() == 0.0;
}

void TimeGrid::validate() const {
  if (!(t_end > t_start))
    throw InvalidInput("time grid needs t_end > t_start");
  if (!(step > 0.0) || step > t_end - t_start)
    throw InvalidInput("time grid step must be in (0, t_end - t_start]");
  if (sample_stride < 1)
    throw InvalidInput("sample stride must be >= 1");
}

int TimeGrid::step_count() const {
  return static_cast<int>(std::ceil((t_end - t_start) / step - 1e-9));
}

Matrix4d total_decoherence_rates(const DissipationSpec& diss) {
  Matrix4d rates = Matrix4d::Zero();
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      if (m == n) continue;
      double pop = 0.0;
      for (int k = 0; k < 4; ++k) {
        if (k == m || k == n) continue;
        pop += diss.population_decay(k, m) + diss.population_decay(k, n);
      }
      rates(m, n) = diss.pure_dephasing(m, n) + 0.5 * pop;
    }
  return rates;
}

Matrix4c dissipator_apply(const DissipationSpec& diss, const Matrix4c& rho) {
  const Matrix4d rates = total_decoherence_rates(diss);
  Matrix4c out = Matrix4c::Zero();
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      if (m == n) continue;
      const double coeff =
          0.5 * (diss.state_decay[m] + diss.state_decay[n]) + rates(m, n);
      out(m, n) = coeff * rho(m, n);
    }
  if (diss.mode == DissipationMode::kLiteral) {
    for (int m = 0; m < 4; ++m) out(m, m) = diss.state_decay[m] * rho(m, m);
  } else {
    // Gain from every source state, loss into every destination; the two
    // column sums cancel so the result is traceless.
    for (int m = 0; m < 4; ++m) {
      Complex gain = 0.0, loss = 0.0;
      for (int k = 0; k < 4; ++k) {
        gain += diss.population_decay(m, k) * rho(k, k);
        loss += diss.population_decay(k, m) * rho(m, m);
      }
      out(m, m) = loss - gain;
    }
  }
  return out;
}

std::pair<Matrix16c, Matrix16c> superoperator_matrices(
    const Matrix4c& h, const DissipationSpec& diss) {
  if (!is_hermitian(h, 1e-10))
    throw InvalidInput("superoperator_matrices: Hamiltonian is not Hermitian");
  auto idx = [](int m, int n) { return 4 * m + n; };  // row-major vec(rho)

  // L vec(rho) = vec([rho, H]) = vec(rho H - H rho).
  Matrix16c ell = Matrix16c::Zero();
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int k = 0; k < 4; ++k) {
        ell(idx(m, n), idx(m, k)) += h(k, n);
        ell(idx(m, n), idx(k, n)) -= h(m, k);
      }

  const Matrix4d rates = total_decoherence_rates(diss);
  Matrix16c gee = Matrix16c::Zero();
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      if (m == n) continue;
      gee(idx(m, n), idx(m, n)) =
          0.5 * (diss.state_decay[m] + diss.state_decay[n]) + rates(m, n);
    }
  if (diss.mode == DissipationMode::kLiteral) {
    for (int m = 0; m < 4; ++m)
      gee(idx(m, m), idx(m, m)) = diss.state_decay[m];
  } else {
    for (int m = 0; m < 4; ++m)
      for (int k = 0; k < 4; ++k) {
        gee(idx(m, m), idx(k, k)) -= diss.population_decay(m, k);
        gee(idx(m, m), idx(m, m)) += diss.population_decay(k, m);
      }
  }
  return {ell, gee};
}

Trajectory evolve_density(const Matrix4c& rho0, const PulseSchedule& sched,
                          const TimeGrid& grid,
                          const std::optional<DissipationSpec>& diss) {
  sched.validate();
  grid.validate();
  if (diss) diss->validate();
  if (!is_hermitian(rho0, 1e-10))
    throw InvalidInput("initial state is not Hermitian within 1e-10");
  if (std::abs(rho0.trace().real() - 1.0) > 1e-10 ||
      std::abs(rho0.trace().imag()) > 1e-10)
    throw InvalidInput("initial state must have unit trace");
  if (min_eigenvalue_of(rho0) < -1e-8)
    throw InvalidInput("initial state must be positive semidefinite");

  const bool check_trace = !diss || diss->preserves_trace();
  Matrix4c rho = rho0;
  auto rhs = [&](const Matrix4c& r, double t) -> Matrix4c {
    const Matrix4c h = hamiltonian_at(sched, t);
    Matrix4c d = (kI / kHBar) * (r * h - h * r);
    if (diss) d -= dissipator_apply(*diss, r);
    return d;
  };
  auto advance = [&](double t, double h) { rho = rk4_step(rho, t, h, rhs); };
  auto snapshot = [&]() {
    QuantumState s;
    s.rho = rho;
    auto [tr, coeffs] = decompose(rho, su4_generators());
    (void)tr;
    s.coherence = coeffs;
    return s;
  };
  return integrate(sched, grid, advance, snapshot, check_trace);
}

Trajectory evolve_coherence(const Vector15d& v0, const PulseSchedule& sched,
                            const TimeGrid& grid, const GeneratorSet& gens,
                            const StructureTensor& f) {
  sched.validate();
  grid.validate();
  if (gens.dimension() != 4 || f.dimension() != 15)
    throw InvalidInput("evolve_coherence expects the four-level basis");

  Vector15d v = v0;
  auto rhs = [&](const Vector15d& x, double t) -> Vector15d {
    const GammaVector gamma = gamma_coefficients(hamiltonian_at(sched, t), gens);
    const Eigen::MatrixXd g = g_matrix(gamma, f);
    return g.transpose() * x;
  };
  auto advance = [&](double t, double h) { v = rk4_step(v, t, h, rhs); };
  auto snapshot = [&]() {
    QuantumState s;
    s.coherence = v;
    s.rho = recompose(1.0, v, gens);
    return s;
  };
  return integrate(sched, grid, advance, snapshot, /*check_trace=*/true);
}

Matrix4c propagator(const PulseSchedule& sched, double t0, double t1,
                    double step) {
  sched.validate();
  if (t1 < t0) throw InvalidInput("propagator: t1 must be >= t0");
  if (!(step > 0.0)) throw InvalidInput("propagator: step must be positive");

  Matrix4c u = Matrix4c::Identity();
  if (t1 == t0) return u;
  const int n = static_cast<int>(std::ceil((t1 - t0) / step - 1e-9));
  for (int k = 0; k < n; ++k) {
    const double a = t0 + k * step;
    const double b = (k + 1 == n) ? t1 : t0 + (k + 1) * step;
    const Matrix4c h = hamiltonian_at(sched, 0.5 * (a + b));
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
    const Eigen::Vector4d eval = es.eigenvalues();
    Matrix4c phase = Matrix4c::Zero();
    for (int j = 0; j < 4; ++j)
      phase(j, j) = std::exp(-kI * eval[j] * (b - a) / kHBar);
    u = es.eigenvectors() * phase * es.eigenvectors().adjoint() * u;
  }
  return u;
}

const GeneratorSet& su4_generators() {
  static const GeneratorSet gens(4);
  return gens;
}

const StructureTensor& su4_structure_constants() {
  static const StructureTensor f = structure_constants(su4_generators());
  return f;
}

}  // namespace dsim
