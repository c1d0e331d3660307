#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsim/dynamics.hpp"
#include "dsim/model.hpp"

namespace dsim {

struct SampleInstant {
  std::string name;
  double t = 0.0;
};

struct OutputSpec {
  std::string csv = "trajectory.csv";
  std::string summary = "summary.json";
  std::string tree_json = "tree.json";
  std::string tree_dot = "tree.dot";
};

/// Full description of one simulation run. Parsing is strict: unknown keys
/// are rejected with a message naming the offending field, and all physics
/// validation is delegated to the owning types.
struct SimulationConfig {
  PulseSchedule schedule;
  std::optional<DissipationSpec> dissipation;
  TimeGrid grid{0.0, 10.0, 1e-3, 10};
  /// Basis-state index, ignored when initial_rho is set.
  int initial_basis = 0;
  std::optional<Matrix4c> initial_rho;
  std::vector<SampleInstant> samples;
  OutputSpec outputs;

  Matrix4c initial_state() const;
  void validate() const;

  static SimulationConfig from_json_text(const std::string& text);
  static SimulationConfig from_json_file(const std::string& path);
  std::string to_json_text() const;

  /// Mirrors the bundled default config: demo schedule, basis state 0,
  /// t in [0, 10] at step 1e-3 with stride 10, samples after each pair.
  static SimulationConfig demo_default();
};

bool operator==(const SampleInstant&, const SampleInstant&);
bool operator==(const OutputSpec&, const OutputSpec&);
bool operator==(const SimulationConfig&, const SimulationConfig&);

}  // namespace dsim
