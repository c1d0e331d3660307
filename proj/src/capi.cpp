#include "dsim.h"

#include <cstring>
#include <fstream>
#include <string>

#include "dsim/runner.hpp"

namespace {

thread_local std::string g_last_error;

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dsim::InvalidInput("cannot open \"" + path + "\" for writing");
  out << content;
  if (!out) throw dsim::InvalidInput("failed writing \"" + path + "\"");
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dsim_status to_status(int exit_code) {
  switch (exit_code) {
    case dsim::kExitOk: return DSIM_OK;
    case dsim::kExitVerifyFailed: return DSIM_VERIFY_FAILED;
    case dsim::kExitInvalidInput: return DSIM_INVALID_INPUT;
    default: return DSIM_INTEGRITY_FAILURE;
  }
}

template <typename Fn>
dsim_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const dsim::InvalidInput& e) {
    g_last_error = e.what();
    return DSIM_INVALID_INPUT;
  } catch (const dsim::IntegrityError& e) {
    g_last_error = e.what();
    return DSIM_INTEGRITY_FAILURE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DSIM_INTEGRITY_FAILURE;
  }
}

dsim_status from_outcome(const dsim::RunOutcome& outcome, char** report) {
  if (!outcome.error.empty()) g_last_error = outcome.error;
  if (report) *report = copy_string(outcome.report);
  return to_status(outcome.exit_code);
}

}  // namespace

struct dsim_algebra {
  dsim::GeneratorSet gens;
  dsim::StructureTensor tensor;
};

struct dsim_tree {
  dsim::DecisionTree tree;
};

extern "C" {

const char* dsim_last_error(void) { return g_last_error.c_str(); }

void dsim_string_free(char* s) { delete[] s; }

dsim_status dsim_algebra_create(int n, dsim_algebra** out) {
  return guarded([&]() -> dsim_status {
    if (!out) throw dsim::InvalidInput("output handle pointer is null");
    dsim::GeneratorSet gens = dsim::build_generators(n);
    dsim::StructureTensor tensor = dsim::structure_constants(gens);
    *out = new dsim_algebra{std::move(gens), std::move(tensor)};
    return DSIM_OK;
  });
}

void dsim_algebra_free(dsim_algebra* a) { delete a; }

int dsim_algebra_dimension(const dsim_algebra* a) {
  return a ? a->gens.dimension() : 0;
}

int dsim_algebra_generator_count(const dsim_algebra* a) {
  return a ? a->gens.count() : 0;
}

dsim_status dsim_algebra_generator(const dsim_algebra* a, int index,
                                   double* re, double* im) {
  return guarded([&]() -> dsim_status {
    if (!a || !re || !im) throw dsim::InvalidInput("null argument");
    if (index < 0 || index >= a->gens.count())
      throw dsim::InvalidInput("generator index out of range");
    const dsim::MatrixC& g = a->gens[index];
    const int n = a->gens.dimension();
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        re[r * n + c] = g(r, c).real();
        im[r * n + c] = g(r, c).imag();
      }
    return DSIM_OK;
  });
}

double dsim_algebra_structure_constant(const dsim_algebra* a, int i, int j,
                                       int k) {
  if (!a) return 0.0;
  const int d = a->tensor.dimension();
  if (i < 1 || j < 1 || k < 1 || i > d || j > d || k > d) return 0.0;
  return a->tensor.value(i - 1, j - 1, k - 1);
}

dsim_status dsim_algebra_write_json(const dsim_algebra* a, const char* path) {
  return guarded([&]() -> dsim_status {
    if (!a || !path) throw dsim::InvalidInput("null argument");
    write_text_file(path, dsim::algebra_json(a->gens, a->tensor));
    return DSIM_OK;
  });
}

dsim_status dsim_tree_create(const double layer1[4], const double* layer2,
                             int branches, dsim_tree** out) {
  return guarded([&]() -> dsim_status {
    if (!layer1 || !layer2 || !out)
      throw dsim::InvalidInput("null argument");
    const dsim::Vector4d l1(layer1[0], layer1[1], layer1[2], layer1[3]);
    dsim::DecisionTree tree;
    if (branches == 1) {
      const dsim::Vector4d l2(layer2[0], layer2[1], layer2[2], layer2[3]);
      tree = dsim::build_tree(l1, l2);
    } else if (branches == 4) {
      std::array<dsim::Vector4d, 4> l2;
      for (int b = 0; b < 4; ++b)
        l2[b] = dsim::Vector4d(layer2[4 * b], layer2[4 * b + 1],
                               layer2[4 * b + 2], layer2[4 * b + 3]);
      tree = dsim::build_tree(l1, l2);
    } else {
      throw dsim::InvalidInput("branches must be 1 (shared) or 4 (per branch)");
    }
    *out = new dsim_tree{std::move(tree)};
    return DSIM_OK;
  });
}

dsim_status dsim_tree_from_simulation(const char* config_path,
                                      dsim_tree** out) {
  return guarded([&]() -> dsim_status {
    if (!config_path || !out) throw dsim::InvalidInput("null argument");
    const dsim::SimulationConfig cfg =
        dsim::SimulationConfig::from_json_file(config_path);
    if (cfg.samples.size() < 2)
      throw dsim::InvalidInput(
          "config: tree construction needs at least two named sample instants");
    const dsim::Trajectory traj = dsim::evolve_density(
        cfg.initial_state(), cfg.schedule, cfg.grid, cfg.dissipation);
    const dsim::DecisionTree tree =
        dsim::build_tree(dsim::populations_at(traj, cfg.samples[0].t),
                         dsim::populations_at(traj, cfg.samples[1].t));
    *out = new dsim_tree{tree};
    return DSIM_OK;
  });
}

void dsim_tree_free(dsim_tree* t) { delete t; }

double dsim_tree_path_probability(const dsim_tree* t, int mid, int leaf) {
  if (!t || mid < 0 || mid > 3 || leaf < 0 || leaf > 3) return -1.0;
  return dsim::path_probability(t->tree, {t->tree.root, mid, leaf});
}

double dsim_tree_return_probability(const dsim_tree* t, int target) {
  if (!t || target < 0 || target > 3) return -1.0;
  return dsim::return_probability(t->tree, target);
}

dsim_status dsim_tree_write_json(const dsim_tree* t, const char* path) {
  return guarded([&]() -> dsim_status {
    if (!t || !path) throw dsim::InvalidInput("null argument");
    write_text_file(path, dsim::tree_json(t->tree));
    return DSIM_OK;
  });
}

dsim_status dsim_tree_write_dot(const dsim_tree* t, const char* path) {
  return guarded([&]() -> dsim_status {
    if (!t || !path) throw dsim::InvalidInput("null argument");
    write_text_file(path, dsim::tree_dot(t->tree));
    return DSIM_OK;
  });
}

dsim_status dsim_tree_report(const dsim_tree* t, char** report) {
  return guarded([&]() -> dsim_status {
    if (!t || !report) throw dsim::InvalidInput("null argument");
    *report = copy_string(dsim::return_probability_table(t->tree));
    return DSIM_OK;
  });
}

dsim_status dsim_run_simulate(const char* config_path, char** summary_json) {
  return guarded([&]() -> dsim_status {
    if (!config_path) throw dsim::InvalidInput("config path is null");
    return from_outcome(dsim::run_simulate(config_path), summary_json);
  });
}

dsim_status dsim_run_verify(unsigned flags, char** report) {
  return guarded([&]() -> dsim_status {
    dsim::VerifyOptions options;
    options.inject_generator_sign_flip =
        (flags & DSIM_VERIFY_FLIP_GENERATOR_SIGN) != 0;
    return from_outcome(dsim::run_verify(options), report);
  });
}

dsim_status dsim_run_tree(const char* config_path, char** report) {
  return guarded([&]() -> dsim_status {
    if (!config_path) throw dsim::InvalidInput("config path is null");
    return from_outcome(dsim::run_tree_from_simulation(config_path), report);
  });
}

dsim_status dsim_run_dump(int n, const char* path) {
  return guarded([&]() -> dsim_status {
    if (!path) throw dsim::InvalidInput("output path is null");
    return from_outcome(dsim::run_dump(n, path), nullptr);
  });
}

}  // extern "C"
