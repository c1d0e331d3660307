// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and runtime budgets are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dsim/decision_tree.hpp"
#include "dsim/dynamics.hpp"
#include "frozen_values.hpp"

using namespace dsim;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (elapsed >= budget_seconds) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over budget");
  }
  if (!ok) ++g_failures;
  std::printf("[%s] %2d. %s (%s; %.2fs, budget %gs)\n",
              ok ? "PASS" : "FAIL", number, label.c_str(),
              detail.c_str(), elapsed, budget_seconds);
  std::fflush(stdout);
}

Matrix4c basis_state(int i) {
  Matrix4c rho = Matrix4c::Zero();
  rho(i, i) = 1.0;
  return rho;
}

Matrix4c random_density(std::mt19937& rng) {
  std::normal_distribution<double> dist;
  Matrix4c a;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a(r, c) = Complex(dist(rng), dist(rng));
  Matrix4c rho = a * a.adjoint();
  return rho / rho.trace().real();
}

PulseSchedule random_schedule(std::mt19937& rng) {
  std::uniform_real_distribution<double> amp(0.0, 2.0);
  std::uniform_real_distribution<double> det(-1.0, 1.0);
  std::uniform_real_distribution<double> width(0.3, 1.2);
  std::uniform_real_distribution<double> start(0.5, 2.5);
  std::uniform_real_distribution<double> gap(0.0, 2.0);
  PulseSchedule s;
  const double t1 = start(rng), t2 = t1 + gap(rng);
  const double w1 = width(rng), w2 = width(rng);
  s.alpha1 = {PulseShape::kGaussian, amp(rng), t1, w1, {}};
  s.beta1 = {PulseShape::kGaussian, amp(rng), t1, w1, {}};
  s.alpha2 = {PulseShape::kGaussian, amp(rng), t2, w2, {}};
  s.beta2 = {PulseShape::kGaussian, amp(rng), t2, w2, {}};
  s.delta = det(rng);
  return s;
}

PulseSchedule quiet_schedule() {
  PulseSchedule s;
  s.alpha1 = {PulseShape::kGaussian, 0.0, 0.0, 1.0, {}};
  s.beta1 = {PulseShape::kGaussian, 0.0, 0.0, 1.0, {}};
  s.alpha2 = {PulseShape::kGaussian, 0.0, 0.0, 1.0, {}};
  s.beta2 = {PulseShape::kGaussian, 0.0, 0.0, 1.0, {}};
  return s;
}

char detail_buf[256];

std::string fmt(const char* pattern, double a, double b = 0.0) {
  std::snprintf(detail_buf, sizeof detail_buf, pattern, a, b);
  return detail_buf;
}

}  // namespace

int main() {
  std::printf("acceptance: four-level diamond simulator\n");

  criterion(1, "structure constants reproduce all 29 tabulated su(4) triples",
            1.0, [](std::string& detail) {
    const GeneratorSet gens(4);
    const StructureTensor f = structure_constants(gens);
    const AlgebraReport report = verify_algebra(gens, f);
    double max_dev = 0.0;
    for (const auto& [i, j, k, v] : su4_reference_triples())
      max_dev = std::max(max_dev, std::abs(f.value(i, j, k) - v));
    detail = fmt("max dev %.2e, %0.f spurious", max_dev,
                 double(report.unexpected_triples));
    return report.reference_triples_matched == 29 &&
           report.unexpected_triples == 0 && max_dev <= 1e-12;
  });

  criterion(2, "trace orthonormality and closure for N in {2,3,4}", 1.0,
            [](std::string& detail) {
    double worst_ortho = 0.0, worst_closure = 0.0;
    for (int n : {2, 3, 4}) {
      const GeneratorSet gens(n);
      const AlgebraReport report =
          verify_algebra(gens, structure_constants(gens));
      worst_ortho = std::max(worst_ortho, report.max_orthonormality_deviation);
      worst_closure = std::max(worst_closure, report.max_closure_residual);
    }
    detail = fmt("orthonormality %.2e, closure %.2e", worst_ortho, worst_closure);
    return worst_ortho <= 1e-10 && worst_closure <= 1e-10;
  });

  criterion(3, "coherence-vector and Liouville pictures agree elementwise",
            5.0, [](std::string& detail) {
    const PulseSchedule sched = default_demo_schedule();
    const TimeGrid grid{0.0, 10.0, 1e-3, 1};
    const GeneratorSet& gens = su4_generators();
    const StructureTensor& f = su4_structure_constants();
    const Trajectory dens = evolve_density(basis_state(0), sched, grid);
    const Trajectory coh = evolve_coherence(
        decompose(basis_state(0), gens).second, sched, grid, gens, f);
    double max_dev = 0.0;
    for (size_t i = 0; i < dens.states.size(); ++i)
      max_dev =
          std::max(max_dev, max_abs(dens.states[i].rho - coh.states[i].rho));
    detail = fmt("max dev %.2e over %.0f samples", max_dev,
                 double(dens.states.size()));
    return max_dev <= 1e-8;
  });

  criterion(4, "trace, purity and vector norm conserved on 20 random runs",
            30.0, [](std::string& detail) {
    const GeneratorSet& gens = su4_generators();
    const StructureTensor& f = su4_structure_constants();
    std::mt19937 rng(2024);
    double worst_trace = 0.0, worst_purity = 0.0, worst_norm = 0.0;
    for (int run = 0; run < 20; ++run) {
      const PulseSchedule sched = random_schedule(rng);
      const Matrix4c rho0 = random_density(rng);
      const TimeGrid grid{0.0, 5.0, 1e-3, 50};
      const Trajectory dens = evolve_density(rho0, sched, grid);
      worst_trace = std::max(worst_trace, dens.max_trace_drift);
      const double p0 = (rho0 * rho0).trace().real();
      for (const auto& s : dens.states)
        worst_purity = std::max(
            worst_purity, std::abs((s.rho * s.rho).trace().real() - p0));
      const Vector15d v0 = decompose(rho0, gens).second;
      const Trajectory coh = evolve_coherence(v0, sched, grid, gens, f);
      for (const auto& s : coh.states)
        worst_norm =
            std::max(worst_norm, std::abs(s.coherence.norm() - v0.norm()));
    }
    detail = fmt("trace %.2e, purity %.2e", worst_trace, worst_purity) +
             fmt(", norm %.2e", worst_norm);
    return worst_trace <= 1e-10 && worst_purity <= 1e-8 && worst_norm <= 1e-8;
  });

  criterion(5, "single dephasing channel follows the closed-form decay", 1.0,
            [](std::string& detail) {
    DissipationSpec diss;
    diss.pure_dephasing(0, 1) = diss.pure_dephasing(1, 0) = 0.3;
    Matrix4c rho0 = Matrix4c::Zero();
    rho0(0, 0) = rho0(1, 1) = rho0(0, 1) = rho0(1, 0) = 0.5;
    const Trajectory traj =
        evolve_density(rho0, quiet_schedule(), {0.0, 10.0, 1e-3, 10}, diss);
    double worst_coh = 0.0, worst_pop = 0.0;
    for (size_t i = 0; i < traj.times.size(); ++i) {
      const auto& rho = traj.states[i].rho;
      worst_coh = std::max(worst_coh,
                           std::abs(std::abs(rho(0, 1)) -
                                    0.5 * std::exp(-0.3 * traj.times[i])));
      worst_pop = std::max({worst_pop, std::abs(rho(0, 0).real() - 0.5),
                            std::abs(rho(1, 1).real() - 0.5),
                            std::abs(rho(2, 2)), std::abs(rho(3, 3))});
    }
    detail = fmt("coherence dev %.2e, population dev %.2e", worst_coh, worst_pop);
    return worst_coh <= 1e-8 && worst_pop <= 1e-10;
  });

  criterion(6, "all-zero dissipation matches the unitary integrator", 2.0,
            [](std::string& detail) {
    const PulseSchedule sched = default_demo_schedule();
    const TimeGrid grid{0.0, 10.0, 1e-3, 10};
    const Trajectory unitary = evolve_density(basis_state(0), sched, grid);
    const Trajectory zero_rates =
        evolve_density(basis_state(0), sched, grid, DissipationSpec{});
    double max_dev = 0.0;
    for (size_t i = 0; i < unitary.states.size(); ++i)
      max_dev = std::max(
          max_dev, max_abs(unitary.states[i].rho - zero_rates.states[i].rho));
    detail = fmt("max dev %.2e", max_dev);
    return max_dev <= 1e-10;
  });

  criterion(7, "two-layer tree arithmetic on the worked example", 0.1,
            [](std::string& detail) {
    const DecisionTree tree = build_tree(Vector4d{0.59, 0.36, 0.05, 0.00},
                                         Vector4d{0.49, 0.06, 0.17, 0.28});
    const double p0 = return_probability(tree, 0);
    double leaf_sum = 0.0;
    for (int m = 0; m < 4; ++m)
      for (int k = 0; k < 4; ++k)
        leaf_sum += path_probability(tree, {0, m, k});
    detail = fmt("P(return) - 0.49 = %.2e, leaf sum - 1 = %.2e",
                 p0 - 0.49, leaf_sum - 1.0);
    return std::abs(p0 - 0.49) <= 1e-12 && std::abs(leaf_sum - 1.0) <= 1e-12;
  });

  criterion(8, "propagator unitarity, composition and column normalization",
            2.0, [](std::string& detail) {
    const PulseSchedule sched = default_demo_schedule();
    const Matrix4c whole = propagator(sched, 0.0, 10.0, 1e-3);
    const Matrix4c first = propagator(sched, 0.0, 4.0, 1e-3);
    const Matrix4c second = propagator(sched, 4.0, 10.0, 1e-3);
    const double unitarity = max_abs(
        MatrixC(whole.adjoint() * whole - Matrix4c::Identity()));
    const double composition = max_abs(MatrixC(whole - second * first));
    double column = 0.0;
    for (int j = 0; j < 4; ++j)
      column = std::max(column, std::abs(whole.col(j).squaredNorm() - 1.0));
    detail = fmt("unitarity %.2e, composition %.2e", unitarity, composition) +
             fmt(", columns %.2e", column);
    return unitarity <= 1e-8 && composition <= 1e-8 && column <= 1e-8;
  });

  criterion(9, "demo run reproduces frozen populations and transfer pattern",
            10.0, [](std::string& detail) {
    const Trajectory traj = evolve_density(
        basis_state(0), default_demo_schedule(), {0.0, 10.0, 1e-3, 10});
    const Vector4d after1 = populations_at(traj, 4.0);
    const Vector4d after2 = populations_at(traj, 10.0);
    double max_dev = 0.0;
    for (int i = 0; i < 4; ++i) {
      max_dev = std::max(max_dev,
                         std::abs(after1[i] - frozen::kPopulationsAfterPair1[i]));
      max_dev = std::max(max_dev,
                         std::abs(after2[i] - frozen::kPopulationsAfterPair2[i]));
    }
    const bool out_of_ground = after1[0] < 1.0 - 0.05;      // pair 1 drains |0>
    const bool into_top = after2[3] > after1[3] + 0.05;     // pair 2 fills |3>
    detail = fmt("max dev %.2e, trace drift %.2e", max_dev,
                 traj.max_trace_drift);
    return max_dev <= 1e-6 && out_of_ground && into_top &&
           traj.max_trace_drift <= 1e-10;
  });

  criterion(10, "pulse-pair windows interfere beyond the locked threshold",
            2.0, [](std::string& detail) {
    const PulseSchedule sched = default_demo_schedule();
    const Matrix4c u1 = propagator(sched, 0.0, 4.0, 1e-3);
    const Matrix4c u2 = propagator(sched, 4.0, 10.0, 1e-3);
    const TransitionProbabilities tp = transition_matrix(u1, u2);
    const double gap = tp.gap.cwiseAbs().maxCoeff();
    detail = fmt("max |coherent - classical| = %.4f (locked %.4f)", gap,
                 frozen::kInterferenceGap);
    return gap > 0.01 && std::abs(gap - frozen::kInterferenceGap) <= 1e-6;
  });

  if (g_failures == 0) {
    std::printf("RESULT: all 10 criteria passed\n");
    return 0;
  }
  std::printf("RESULT: %d criteria FAILED\n", g_failures);
  return 1;
}
