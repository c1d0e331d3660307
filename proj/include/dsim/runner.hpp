#pragma once

#include <string>

#include "dsim/decision_tree.hpp"
#include "dsim/sim_config.hpp"

namespace dsim {

/// Stable process exit codes shared by the library runners, the C API and
/// the CLI: 0 success, 1 verification failure, 2 input/validation error,
/// 3 runtime integrity failure.
enum ExitCode {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitInvalidInput = 2,
  kExitIntegrityFailure = 3,
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::string report;  // stdout payload (summary JSON or human-readable text)
  std::string error;   // stderr payload, empty on success
};

/// Integrates the configured run and writes the trajectory CSV plus the
/// summary JSON. The report carries the summary JSON on success.
RunOutcome run_simulate(const std::string& config_path);

struct VerifyOptions {
  /// Flips the sign of one generator before checking; lets a harness
  /// confirm that a broken basis is detected and exits nonzero.
  bool inject_generator_sign_flip = false;
};

/// Algebra self-checks for N = 2, 3, 4 including the tabulated-constant
/// comparison, the two-picture equivalence run on the demo schedule, and
/// the informational block-form comparison.
RunOutcome run_verify(const VerifyOptions& options = {});

/// Builds the tree from the first two named sample instants of a simulated
/// run and writes the JSON/DOT files named by the config outputs.
RunOutcome run_tree_from_simulation(const std::string& config_path);

/// Builds the tree directly from two probability vectors and writes it to
/// the given paths.
RunOutcome run_tree_from_vectors(const Vector4d& layer1,
                                 const Vector4d& layer2,
                                 const std::string& json_path,
                                 const std::string& dot_path);

/// Writes the generator / structure-constant JSON document for su(N).
RunOutcome run_dump(int n, const std::string& path);

/// CSV serialization of a trajectory: t, the four envelopes, the four
/// populations, Re/Im of the six upper-triangle coherences, then the 15
/// coherence-vector components; 17 significant digits.
std::string trajectory_csv(const Trajectory& traj);

/// Return-probability table with four-decimal values, one line per target.
std::string return_probability_table(const DecisionTree& tree);

}  // namespace dsim
