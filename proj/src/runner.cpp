#include "dsim/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dsim {

namespace {

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open \"" + path + "\" for writing");
  out << content;
  if (!out) throw InvalidInput("failed writing \"" + path + "\"");
}

RunOutcome failure_outcome(const std::exception& e, int code) {
  RunOutcome out;
  out.exit_code = code;
  out.error = e.what();
  return out;
}

template <typename Fn>
RunOutcome guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidInput& e) {
    return failure_outcome(e, kExitInvalidInput);
  } catch (const IntegrityError& e) {
    return failure_outcome(e, kExitIntegrityFailure);
  } catch (const std::exception& e) {
    return failure_outcome(e, kExitIntegrityFailure);
  }
}

double purity(const Matrix4c& rho) { return (rho * rho).trace().real(); }

}  // namespace

std::string trajectory_csv(const Trajectory& traj) {
  static const int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3},
                                   {1, 2}, {1, 3}, {2, 3}};
  std::ostringstream os;
  os << "t,alpha1,beta1,alpha2,beta2,rho00,rho11,rho22,rho33";
  for (const auto& p : kPairs)
    os << ",re_rho" << p[0] << p[1] << ",im_rho" << p[0] << p[1];
  for (int a = 1; a <= 15; ++a) os << ",G" << a;
  os << "\n";
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const auto& s = traj.states[i];
    os << fmt17(traj.times[i]);
    for (double v : traj.pulse_samples[i]) os << "," << fmt17(v);
    for (int d = 0; d < 4; ++d) os << "," << fmt17(s.rho(d, d).real());
    for (const auto& p : kPairs) {
      os << "," << fmt17(s.rho(p[0], p[1]).real())
         << "," << fmt17(s.rho(p[0], p[1]).imag());
    }
    for (int a = 0; a < 15; ++a) os << "," << fmt17(s.coherence[a]);
    os << "\n";
  }
  return os.str();
}

RunOutcome run_simulate(const std::string& config_path) {
  return guarded([&]() -> RunOutcome {
    const SimulationConfig cfg = SimulationConfig::from_json_file(config_path);
    const Trajectory traj = evolve_density(cfg.initial_state(), cfg.schedule,
                                           cfg.grid, cfg.dissipation);
    write_file(cfg.outputs.csv, trajectory_csv(traj));

    nlohmann::json summary;
    auto& samples = summary["samples"] = nlohmann::json::object();
    for (const auto& s : cfg.samples) {
      const Vector4d p = populations_at(traj, s.t);
      samples[s.name] = {{"t", s.t}, {"populations", {p[0], p[1], p[2], p[3]}}};
    }
    summary["final_purity"] = purity(traj.states.back().rho);
    summary["trace_drift"] = traj.max_trace_drift;
    summary["min_eigenvalue"] = traj.min_eigenvalue;
    summary["csv"] = cfg.outputs.csv;
    summary["rows"] = traj.times.size();
    const std::string text = summary.dump(2);
    write_file(cfg.outputs.summary, text);

    RunOutcome out;
    out.report = text;
    return out;
  });
}

RunOutcome run_verify(const VerifyOptions& options) {
  return guarded([&]() -> RunOutcome {
    std::ostringstream os;
    os.precision(4);
    bool pass = true;

    for (int n : {2, 3, 4}) {
      GeneratorSet gens = build_generators(n);
      StructureTensor f = structure_constants(gens);
      if (options.inject_generator_sign_flip && n == 4) {
        auto mats = gens.matrices();
        mats.back() = -mats.back();
        gens = GeneratorSet::unchecked(n, std::move(mats));
      }
      const AlgebraReport report = verify_algebra(gens, f);
      const bool ok = report.all_pass();
      pass = pass && ok;
      os << (ok ? "[PASS]" : "[FAIL]") << " su(" << n << ") basis: "
         << gens.count() << " generators\n" << report.to_text();
    }

    {
      const PulseSchedule sched = default_demo_schedule();
      const TimeGrid grid{0.0, 10.0, 1e-3, 10};
      const GeneratorSet& gens = su4_generators();
      const StructureTensor& f = su4_structure_constants();
      Matrix4c rho0 = Matrix4c::Zero();
      rho0(0, 0) = 1.0;
      const Trajectory dens = evolve_density(rho0, sched, grid);
      const Trajectory coh =
          evolve_coherence(decompose(rho0, gens).second, sched, grid, gens, f);
      double max_dev = 0.0;
      for (size_t i = 0; i < dens.states.size(); ++i)
        max_dev = std::max(max_dev,
                           max_abs(dens.states[i].rho - coh.states[i].rho));
      const bool ok = max_dev <= 1e-8;
      pass = pass && ok;
      os << (ok ? "[PASS]" : "[FAIL]")
         << " picture equivalence: max deviation " << max_dev
         << " (tolerance 1e-08)\n";

      const BlockComparison cmp =
          compare_reference_blocks(sched, 2.0, f);
      os << "[INFO] tabulated block form (informational): "
         << cmp.mismatches.size() << " entries differ, max |diff| "
         << cmp.max_abs_difference << "\n";
    }

    os << "RESULT: " << (pass ? "PASS" : "FAIL") << "\n";
    RunOutcome out;
    out.exit_code = pass ? kExitOk : kExitVerifyFailed;
    out.report = os.str();
    return out;
  });
}

std::string return_probability_table(const DecisionTree& tree) {
  std::ostringstream os;
  os << "return probabilities (root " << tree.root << "):\n";
  for (int target = 0; target < 4; ++target) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.4f", return_probability(tree, target));
    os << "  P(" << tree.root << " -> * -> " << target << ") = " << buf << "\n";
  }
  return os.str();
}

namespace {

RunOutcome emit_tree(const DecisionTree& tree, const std::string& json_path,
                     const std::string& dot_path) {
  write_file(json_path, tree_json(tree));
  write_file(dot_path, tree_dot(tree));
  RunOutcome out;
  out.report = return_probability_table(tree) + "wrote " + json_path +
               " and " + dot_path + "\n";
  return out;
}

}  // namespace

RunOutcome run_tree_from_simulation(const std::string& config_path) {
  return guarded([&]() -> RunOutcome {
    const SimulationConfig cfg = SimulationConfig::from_json_file(config_path);
    if (cfg.samples.size() < 2)
      throw InvalidInput(
          "config: tree construction needs at least two named sample "
          "instants (one per pulse pair)");
    const Trajectory traj = evolve_density(cfg.initial_state(), cfg.schedule,
                                           cfg.grid, cfg.dissipation);
    const Vector4d layer1 = populations_at(traj, cfg.samples[0].t);
    const Vector4d layer2 = populations_at(traj, cfg.samples[1].t);
    const DecisionTree tree = build_tree(layer1, layer2);
    return emit_tree(tree, cfg.outputs.tree_json, cfg.outputs.tree_dot);
  });
}

RunOutcome run_tree_from_vectors(const Vector4d& layer1,
                                 const Vector4d& layer2,
                                 const std::string& json_path,
                                 const std::string& dot_path) {
  return guarded([&]() -> RunOutcome {
    return emit_tree(build_tree(layer1, layer2), json_path, dot_path);
  });
}

RunOutcome run_dump(int n, const std::string& path) {
  return guarded([&]() -> RunOutcome {
    const GeneratorSet gens = build_generators(n);
    const StructureTensor f = structure_constants(gens);
    write_file(path, algebra_json(gens, f));
    RunOutcome out;
    out.report = "wrote " + path + "\n";
    return out;
  });
}

}  // namespace dsim
