// Command-line front end. Links only the C API in dsim.h; everything else
// lives behind the shared library.

#include <cstdio>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dsim.h"

namespace {

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { dsim_string_free(s); }
};

int report_failure(dsim_status status) {
  const char* msg = dsim_last_error();
  if (msg && *msg) std::fprintf(stderr, "error: %s\n", msg);
  return static_cast<int>(status);
}

bool parse_vector4(const std::string& text, double out[4]) {
  std::stringstream ss(text);
  std::string item;
  int count = 0;
  while (std::getline(ss, item, ',')) {
    if (count >= 4) return false;
    try {
      size_t pos = 0;
      out[count] = std::stod(item, &pos);
      if (pos != item.size()) return false;
    } catch (...) {
      return false;
    }
    ++count;
  }
  return count == 4;
}

int cmd_simulate(const std::string& config_path) {
  StringGuard summary;
  const dsim_status status = dsim_run_simulate(config_path.c_str(), &summary.s);
  if (status != DSIM_OK) return report_failure(status);
  std::printf("%s\n", summary.s);
  return 0;
}

int cmd_verify(bool inject_fault) {
  StringGuard report;
  const dsim_status status = dsim_run_verify(
      inject_fault ? DSIM_VERIFY_FLIP_GENERATOR_SIGN : 0u, &report.s);
  if (report.s) std::printf("%s", report.s);
  if (status != DSIM_OK && status != DSIM_VERIFY_FAILED)
    return report_failure(status);
  return static_cast<int>(status);
}

int cmd_tree_from_simulation(const std::string& config_path) {
  StringGuard report;
  const dsim_status status = dsim_run_tree(config_path.c_str(), &report.s);
  if (status != DSIM_OK) return report_failure(status);
  std::printf("%s", report.s);
  return 0;
}

int cmd_tree_from_vectors(const std::string& layer1_text,
                          const std::string& layer2_text,
                          const std::string& json_path,
                          const std::string& dot_path) {
  double layer1[4], layer2[4];
  if (!parse_vector4(layer1_text, layer1)) {
    std::fprintf(stderr, "error: --layer1 expects 4 comma-separated numbers\n");
    return DSIM_INVALID_INPUT;
  }
  if (!parse_vector4(layer2_text, layer2)) {
    std::fprintf(stderr, "error: --layer2 expects 4 comma-separated numbers\n");
    return DSIM_INVALID_INPUT;
  }
  dsim_tree* tree = nullptr;
  dsim_status status = dsim_tree_create(layer1, layer2, 1, &tree);
  if (status != DSIM_OK) return report_failure(status);
  std::unique_ptr<dsim_tree, decltype(&dsim_tree_free)> guard(tree,
                                                              &dsim_tree_free);
  if ((status = dsim_tree_write_json(tree, json_path.c_str())) != DSIM_OK)
    return report_failure(status);
  if ((status = dsim_tree_write_dot(tree, dot_path.c_str())) != DSIM_OK)
    return report_failure(status);
  StringGuard report;
  if ((status = dsim_tree_report(tree, &report.s)) != DSIM_OK)
    return report_failure(status);
  std::printf("%s", report.s);
  std::printf("wrote %s and %s\n", json_path.c_str(), dot_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Four-level diamond-scheme quantum dynamics simulator"};
  app.require_subcommand(1);

  std::string config_path;
  auto* simulate = app.add_subcommand(
      "simulate", "Integrate a configured run; write trajectory CSV + summary");
  simulate->add_option("config", config_path, "JSON config file")->required();

  bool inject_fault = false;
  auto* verify = app.add_subcommand(
      "verify", "Self-check the generator algebra and the two dynamical pictures");
  verify->add_flag("--inject-fault", inject_fault, "")->group("");  // harness hook

  std::string from_simulation, layer1_text, layer2_text;
  std::string tree_json_path = "tree.json", tree_dot_path = "tree.dot";
  auto* tree = app.add_subcommand(
      "tree", "Build the two-layer decision tree and report return probabilities");
  auto* opt_sim = tree->add_option("--from-simulation", from_simulation,
                                   "Build from a simulated run (JSON config)");
  auto* opt_l1 = tree->add_option("--layer1", layer1_text,
                                  "First-layer probabilities a,b,c,d");
  auto* opt_l2 = tree->add_option("--layer2", layer2_text,
                                  "Second-layer probabilities a,b,c,d");
  tree->add_option("--json", tree_json_path, "Tree JSON output path");
  tree->add_option("--dot", tree_dot_path, "Tree DOT output path");
  opt_sim->excludes(opt_l1)->excludes(opt_l2);
  opt_l1->needs(opt_l2);
  opt_l2->needs(opt_l1);

  int dump_n = 0;
  std::string dump_path = "algebra.json";
  auto* dump = app.add_subcommand(
      "dump", "Write the su(N) generator / structure-constant JSON document");
  dump->add_option("--n", dump_n, "Hilbert-space dimension N")->required();
  dump->add_option("--out", dump_path, "Output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : DSIM_INVALID_INPUT;
  }

  if (simulate->parsed()) return cmd_simulate(config_path);
  if (verify->parsed()) return cmd_verify(inject_fault);
  if (tree->parsed()) {
    if (!from_simulation.empty()) return cmd_tree_from_simulation(from_simulation);
    if (!layer1_text.empty() && !layer2_text.empty())
      return cmd_tree_from_vectors(layer1_text, layer2_text, tree_json_path,
                                   tree_dot_path);
    std::fprintf(stderr,
                 "error: tree needs either --from-simulation or both "
                 "--layer1 and --layer2\n");
    return DSIM_INVALID_INPUT;
  }
  if (dump->parsed()) {
    const dsim_status status = dsim_run_dump(dump_n, dump_path.c_str());
    if (status != DSIM_OK) return report_failure(status);
    std::printf("wrote %s\n", dump_path.c_str());
    return 0;
  }
  return DSIM_INVALID_INPUT;
}
