#include "dsim/sim_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dsim {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key))
      throw InvalidInput("config: unknown key \"" + key + "\" in " + where);
  }
}

double get_number(const json& obj, const std::string& where,
                  const std::string& key) {
  if (!obj.contains(key))
    throw InvalidInput("config: missing \"" + key + "\" in " + where);
  if (!obj[key].is_number())
    throw InvalidInput("config: \"" + key + "\" in " + where +
                       " must be a number");
  return obj[key].get<double>();
}

double get_number_or(const json& obj, const std::string& where,
                     const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number())
    throw InvalidInput("config: \"" + key + "\" in " + where +
                       " must be a number");
  return obj[key].get<double>();
}

PulseShape parse_shape(const json& obj, const std::string& where) {
  const std::string s = obj.value("shape", "gaussian");
  if (s == "gaussian") return PulseShape::kGaussian;
  if (s == "flat-top") return PulseShape::kFlatTop;
  if (s == "custom-table") return PulseShape::kCustomTable;
  throw InvalidInput("config: unknown pulse shape \"" + s + "\" in " + where);
}

const char* shape_name(PulseShape s) {
  switch (s) {
    case PulseShape::kGaussian: return "gaussian";
    case PulseShape::kFlatTop: return "flat-top";
    case PulseShape::kCustomTable: return "custom-table";
  }
  return "gaussian";
}

// One pulse pair: shared shape/center/width (and table), two amplitudes.
std::pair<PulseEnvelope, PulseEnvelope> parse_pair(const json& obj,
                                                   const std::string& where) {
  if (!obj.is_object())
    throw InvalidInput("config: " + where + " must be an object");
  require_keys(obj, where,
               {"shape", "center", "width", "pump_amplitude",
                "stokes_amplitude", "table"});
  PulseEnvelope pump;
  pump.shape = parse_shape(obj, where);
  pump.center = get_number(obj, where, "center");
  pump.width = get_number(obj, where, "width");
  pump.amplitude = get_number(obj, where, "pump_amplitude");
  if (obj.contains("table")) {
    if (pump.shape != PulseShape::kCustomTable)
      throw InvalidInput("config: \"table\" in " + where +
                         " requires shape custom-table");
    for (const auto& point : obj["table"]) {
      if (!point.is_array() || point.size() != 2 || !point[0].is_number() ||
          !point[1].is_number())
        throw InvalidInput("config: \"table\" entries in " + where +
                           " must be [t, value] pairs");
      pump.table.push_back({point[0].get<double>(), point[1].get<double>()});
    }
  } else if (pump.shape == PulseShape::kCustomTable) {
    throw InvalidInput("config: shape custom-table in " + where +
                       " requires \"table\"");
  }
  PulseEnvelope stokes = pump;
  stokes.amplitude = get_number(obj, where, "stokes_amplitude");
  return {pump, stokes};
}

json pair_to_json(const PulseEnvelope& pump, const PulseEnvelope& stokes) {
  json obj;
  obj["shape"] = shape_name(pump.shape);
  obj["center"] = pump.center;
  obj["width"] = pump.width;
  obj["pump_amplitude"] = pump.amplitude;
  obj["stokes_amplitude"] = stokes.amplitude;
  if (pump.shape == PulseShape::kCustomTable) {
    auto table = json::array();
    for (const auto& p : pump.table) table.push_back({p[0], p[1]});
    obj["table"] = std::move(table);
  }
  return obj;
}

DissipationSpec parse_dissipation(const json& obj) {
  require_keys(obj, "dissipation",
               {"mode", "population_decay", "pure_dephasing", "state_decay"});
  DissipationSpec spec;
  const std::string mode = obj.value("mode", "literal");
  if (mode == "literal") {
    spec.mode = DissipationMode::kLiteral;
  } else if (mode == "lindblad") {
    spec.mode = DissipationMode::kLindblad;
  } else {
    throw InvalidInput("config: unknown dissipation mode \"" + mode + "\"");
  }
  if (obj.contains("population_decay")) {
    for (const auto& ch : obj["population_decay"]) {
      require_keys(ch, "population_decay channel", {"from", "to", "rate"});
      const int from = static_cast<int>(get_number(ch, "population_decay", "from"));
      const int to = static_cast<int>(get_number(ch, "population_decay", "to"));
      if (from < 0 || from > 3 || to < 0 || to > 3 || from == to)
        throw InvalidInput("config: population_decay channel needs distinct "
                           "from/to in 0..3");
      spec.population_decay(to, from) = get_number(ch, "population_decay", "rate");
    }
  }
  if (obj.contains("pure_dephasing")) {
    for (const auto& ch : obj["pure_dephasing"]) {
      require_keys(ch, "pure_dephasing entry", {"pair", "rate"});
      if (!ch.contains("pair") || !ch["pair"].is_array() || ch["pair"].size() != 2)
        throw InvalidInput("config: pure_dephasing entry needs \"pair\": [m, n]");
      const int m = ch["pair"][0].get<int>();
      const int n = ch["pair"][1].get<int>();
      if (m < 0 || m > 3 || n < 0 || n > 3 || m == n)
        throw InvalidInput("config: pure_dephasing pair needs distinct levels in 0..3");
      const double rate = get_number(ch, "pure_dephasing", "rate");
      spec.pure_dephasing(m, n) = rate;
      spec.pure_dephasing(n, m) = rate;
    }
  }
  if (obj.contains("state_decay")) {
    if (!obj["state_decay"].is_array() || obj["state_decay"].size() != 4)
      throw InvalidInput("config: state_decay must be an array of 4 rates");
    for (int i = 0; i < 4; ++i)
      spec.state_decay[i] = obj["state_decay"][i].get<double>();
  }
  spec.validate();
  return spec;
}

json dissipation_to_json(const DissipationSpec& spec) {
  json obj;
  obj["mode"] = spec.mode == DissipationMode::kLiteral ? "literal" : "lindblad";
  auto pop = json::array();
  for (int to = 0; to < 4; ++to)
    for (int from = 0; from < 4; ++from)
      if (spec.population_decay(to, from) != 0.0)
        pop.push_back({{"from", from}, {"to", to},
                       {"rate", spec.population_decay(to, from)}});
  obj["population_decay"] = std::move(pop);
  auto deph = json::array();
  for (int m = 0; m < 4; ++m)
    for (int n = m + 1; n < 4; ++n)
      if (spec.pure_dephasing(m, n) != 0.0)
        deph.push_back({{"pair", {m, n}}, {"rate", spec.pure_dephasing(m, n)}});
  obj["pure_dephasing"] = std::move(deph);
  obj["state_decay"] = {spec.state_decay[0], spec.state_decay[1],
                        spec.state_decay[2], spec.state_decay[3]};
  return obj;
}

}  // namespace

Matrix4c SimulationConfig::initial_state() const {
  if (initial_rho) return *initial_rho;
  Matrix4c rho = Matrix4c::Zero();
  rho(initial_basis, initial_basis) = 1.0;
  return rho;
}

void SimulationConfig::validate() const {
  schedule.validate();
  grid.validate();
  if (dissipation) dissipation->validate();
  if (!initial_rho && (initial_basis < 0 || initial_basis > 3))
    throw InvalidInput("config: initial basis index must be in 0..3");
  std::set<std::string> names;
  for (const auto& s : samples) {
    if (s.name.empty())
      throw InvalidInput("config: sample instants need non-empty names");
    if (!names.insert(s.name).second)
      throw InvalidInput("config: duplicate sample name \"" + s.name + "\"");
    if (s.t < grid.t_start || s.t > grid.t_end)
      throw InvalidInput("config: sample \"" + s.name +
                         "\" lies outside the time grid");
  }
  if (outputs.csv.empty() || outputs.summary.empty())
    throw InvalidInput("config: output paths must not be empty");
}

static SimulationConfig parse_config(const std::string& text);

SimulationConfig SimulationConfig::from_json_text(const std::string& text) {
  try {
    return parse_config(text);
  } catch (const json::exception& e) {
    // wrong JSON types anywhere in the document count as validation errors
    throw InvalidInput(std::string("config: ") + e.what());
  }
}

static SimulationConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("config: root must be an object");
  require_keys(doc, "config root",
               {"schedule", "dissipation", "grid", "initial_state", "samples",
                "outputs"});

  SimulationConfig cfg;

  if (!doc.contains("schedule"))
    throw InvalidInput("config: missing \"schedule\"");
  const json& sched = doc["schedule"];
  require_keys(sched, "schedule", {"delta", "pair1", "pair2"});
  if (!sched.contains("pair1") || !sched.contains("pair2"))
    throw InvalidInput("config: schedule needs \"pair1\" and \"pair2\"");
  std::tie(cfg.schedule.alpha1, cfg.schedule.beta1) =
      parse_pair(sched["pair1"], "schedule.pair1");
  std::tie(cfg.schedule.alpha2, cfg.schedule.beta2) =
      parse_pair(sched["pair2"], "schedule.pair2");
  cfg.schedule.delta = get_number_or(sched, "schedule", "delta", 0.0);

  if (doc.contains("dissipation") && !doc["dissipation"].is_null())
    cfg.dissipation = parse_dissipation(doc["dissipation"]);

  if (doc.contains("grid")) {
    const json& grid = doc["grid"];
    require_keys(grid, "grid", {"t_start", "t_end", "step", "sample_stride"});
    cfg.grid.t_start = get_number(grid, "grid", "t_start");
    cfg.grid.t_end = get_number(grid, "grid", "t_end");
    cfg.grid.step = get_number(grid, "grid", "step");
    cfg.grid.sample_stride =
        static_cast<int>(get_number_or(grid, "grid", "sample_stride", 1));
  }

  if (doc.contains("initial_state")) {
    const json& init = doc["initial_state"];
    require_keys(init, "initial_state", {"type", "index", "rho"});
    const std::string type = init.value("type", "basis");
    if (type == "basis") {
      cfg.initial_basis =
          static_cast<int>(get_number_or(init, "initial_state", "index", 0));
    } else if (type == "custom") {
      if (!init.contains("rho") || !init["rho"].is_array() ||
          init["rho"].size() != 4)
        throw InvalidInput("config: custom initial_state needs a 4x4 \"rho\"");
      Matrix4c rho;
      for (int r = 0; r < 4; ++r) {
        const auto& row = init["rho"][r];
        if (!row.is_array() || row.size() != 4)
          throw InvalidInput("config: initial_state rho rows must have 4 entries");
        for (int c = 0; c < 4; ++c) {
          const auto& entry = row[c];
          if (!entry.is_array() || entry.size() != 2)
            throw InvalidInput("config: initial_state rho entries must be [re, im]");
          rho(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
      }
      cfg.initial_rho = rho;
    } else {
      throw InvalidInput("config: initial_state type must be basis or custom");
    }
  }

  if (doc.contains("samples")) {
    for (const auto& s : doc["samples"]) {
      require_keys(s, "samples entry", {"name", "t"});
      if (!s.contains("name") || !s["name"].is_string())
        throw InvalidInput("config: sample entries need a string \"name\"");
      cfg.samples.push_back(
          {s["name"].get<std::string>(), get_number(s, "samples", "t")});
    }
  }

  if (doc.contains("outputs")) {
    const json& out = doc["outputs"];
    require_keys(out, "outputs", {"csv", "summary", "tree_json", "tree_dot"});
    cfg.outputs.csv = out.value("csv", cfg.outputs.csv);
    cfg.outputs.summary = out.value("summary", cfg.outputs.summary);
    cfg.outputs.tree_json = out.value("tree_json", cfg.outputs.tree_json);
    cfg.outputs.tree_dot = out.value("tree_dot", cfg.outputs.tree_dot);
  }

  cfg.validate();
  return cfg;
}

SimulationConfig SimulationConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("config: cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string SimulationConfig::to_json_text() const {
  json doc;
  doc["schedule"]["delta"] = schedule.delta;
  doc["schedule"]["pair1"] = pair_to_json(schedule.alpha1, schedule.beta1);
  doc["schedule"]["pair2"] = pair_to_json(schedule.alpha2, schedule.beta2);
  if (dissipation) doc["dissipation"] = dissipation_to_json(*dissipation);
  doc["grid"] = {{"t_start", grid.t_start},
                 {"t_end", grid.t_end},
                 {"step", grid.step},
                 {"sample_stride", grid.sample_stride}};
  if (initial_rho) {
    auto rows = json::array();
    for (int r = 0; r < 4; ++r) {
      auto row = json::array();
      for (int c = 0; c < 4; ++c)
        row.push_back({(*initial_rho)(r, c).real(), (*initial_rho)(r, c).imag()});
      rows.push_back(std::move(row));
    }
    doc["initial_state"] = {{"type", "custom"}, {"rho", std::move(rows)}};
  } else {
    doc["initial_state"] = {{"type", "basis"}, {"index", initial_basis}};
  }
  auto samples_json = json::array();
  for (const auto& s : samples)
    samples_json.push_back({{"name", s.name}, {"t", s.t}});
  doc["samples"] = std::move(samples_json);
  doc["outputs"] = {{"csv", outputs.csv},
                    {"summary", outputs.summary},
                    {"tree_json", outputs.tree_json},
                    {"tree_dot", outputs.tree_dot}};
  return doc.dump(2);
}

SimulationConfig SimulationConfig::demo_default() {
  SimulationConfig cfg;
  cfg.schedule = default_demo_schedule();
  cfg.grid = {0.0, 10.0, 1e-3, 10};
  cfg.initial_basis = 0;
  cfg.samples = {{"after_pair_1", 4.0}, {"after_pair_2", 10.0}};
  return cfg;
}

bool operator==(const SampleInstant& a, const SampleInstant& b) {
  return a.name == b.name && a.t == b.t;
}

bool operator==(const OutputSpec& a, const OutputSpec& b) {
  return a.csv == b.csv && a.summary == b.summary &&
         a.tree_json == b.tree_json && a.tree_dot == b.tree_dot;
}

bool operator==(const SimulationConfig& a, const SimulationConfig& b) {
  auto env_eq = [](const PulseEnvelope& x, const PulseEnvelope& y) {
    return x.shape == y.shape && x.amplitude == y.amplitude &&
           x.center == y.center && x.width == y.width && x.table == y.table;
  };
  auto diss_eq = [](const std::optional<DissipationSpec>& x,
                    const std::optional<DissipationSpec>& y) {
    if (x.has_value() != y.has_value()) return false;
    if (!x) return true;
    return x->mode == y->mode &&
           (x->population_decay - y->population_decay).cwiseAbs().maxCoeff() == 0.0 &&
           (x->pure_dephasing - y->pure_dephasing).cwiseAbs().maxCoeff() == 0.0 &&
           (x->state_decay - y->state_decay).cwiseAbs().maxCoeff() == 0.0;
  };
  const bool rho_eq =
      a.initial_rho.has_value() == b.initial_rho.has_value() &&
      (!a.initial_rho ||
       (*a.initial_rho - *b.initial_rho).cwiseAbs().maxCoeff() == 0.0);
  return env_eq(a.schedule.alpha1, b.schedule.alpha1) &&
         env_eq(a.schedule.beta1, b.schedule.beta1) &&
         env_eq(a.schedule.alpha2, b.schedule.alpha2) &&
         env_eq(a.schedule.beta2, b.schedule.beta2) &&
         a.schedule.delta == b.schedule.delta && diss_eq(a.dissipation, b.dissipation) &&
         a.grid.t_start == b.grid.t_start && a.grid.t_end == b.grid.t_end &&
         a.grid.step == b.grid.step &&
         a.grid.sample_stride == b.grid.sample_stride &&
         a.initial_basis == b.initial_basis && rho_eq &&
         a.samples == b.samples && a.outputs == b.outputs;
}

}  // namespace dsim
