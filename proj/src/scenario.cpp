#include "smdo_tune/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "smdo_tune/errors.hpp"

namespace smdo_tune {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ValidationError(path + ": " + message);
}

const json& member(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing required field '") + key + "'");
  return *it;
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> known) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) fail(path, "unknown key '" + item.key() + "'");
  }
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

// null stands in for +/-infinity, which JSON cannot carry.
double as_number_or_null(const json& j, const std::string& path, double null_value) {
  if (j.is_null()) return null_value;
  return as_number(j, path);
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> as_number_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

DiscreteTransferFunction parse_tf(const json& j, const std::string& path, double dt) {
  check_keys(j, path, {"num", "den"});
  DiscreteTransferFunction tf;
  tf.num = as_number_array(member(j, path, "num"), path + ".num");
  tf.den = as_number_array(member(j, path, "den"), path + ".den");
  tf.sample_time = dt;
  return tf;
}

MimoPlant parse_plant(const json& j, const std::string& path, double dt) {
  check_keys(j, path, {"type", "num", "den", "channels"});
  const std::string type = as_string(member(j, path, "type"), path + ".type");
  MimoPlant plant;
  if (type == "siso") {
    plant = siso_plant(parse_tf(j, path, dt));
  } else if (type == "mimo") {
    const json& rows = member(j, path, "channels");
    if (!rows.is_array() || rows.size() != 2)
      fail(path + ".channels", "expected 2 rows of 2 channels");
    plant.dim = 2;
    for (std::size_t i = 0; i < 2; ++i) {
      const std::string row_path = path + ".channels[" + std::to_string(i) + "]";
      if (!rows[i].is_array() || rows[i].size() != 2)
        fail(row_path, "expected 2 channels");
      for (std::size_t k = 0; k < 2; ++k)
        plant.channels.push_back(
            parse_tf(rows[i][k], row_path + "[" + std::to_string(k) + "]", dt));
    }
  } else {
    fail(path + ".type", "expected 'siso' or 'mimo'");
  }
  return plant;
}

ReferenceProfile parse_reference(const json& j, const std::string& path) {
  check_keys(j, path, {"segments"});
  const json& segs = member(j, path, "segments");
  if (!segs.is_array()) fail(path + ".segments", "expected an array");
  ReferenceProfile profile;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const std::string seg_path = path + ".segments[" + std::to_string(s) + "]";
    const json& seg = segs[s];
    ReferenceSegment out;
    if (seg.contains("t_end")) {
      check_keys(seg, seg_path, {"t", "t_end", "from", "to"});
      out.ramp = true;
      out.start = as_number(member(seg, seg_path, "t"), seg_path + ".t");
      out.end = as_number(member(seg, seg_path, "t_end"), seg_path + ".t_end");
      out.level = as_number(member(seg, seg_path, "from"), seg_path + ".from");
      out.end_level = as_number(member(seg, seg_path, "to"), seg_path + ".to");
    } else {
      check_keys(seg, seg_path, {"t", "level"});
      out.start = as_number(member(seg, seg_path, "t"), seg_path + ".t");
      out.level = as_number(member(seg, seg_path, "level"), seg_path + ".level");
    }
    profile.segments.push_back(out);
  }
  return profile;
}

LoopConfig parse_loop(const json& j, const std::string& path) {
  check_keys(j, path,
             {"gains_init", "gains_bounds", "saturation", "ci", "reference",
              "output_bias"});
  LoopConfig loop;

  const json& init = member(j, path, "gains_init");
  check_keys(init, path + ".gains_init", {"kp", "ki"});
  loop.gains_init.kp =
      as_number(member(init, path + ".gains_init", "kp"), path + ".gains_init.kp");
  loop.gains_init.ki =
      as_number(member(init, path + ".gains_init", "ki"), path + ".gains_init.ki");

  const json& bounds = member(j, path, "gains_bounds");
  check_keys(bounds, path + ".gains_bounds", {"kp", "ki"});
  const auto parse_bounds = [&](const char* key) {
    const std::string bpath = path + ".gains_bounds." + key;
    std::vector<double> pair = as_number_array(member(bounds, bpath, key), bpath);
    if (pair.size() != 2) fail(bpath, "expected [lo, hi]");
    return GainBounds{pair[0], pair[1]};
  };
  loop.kp_bounds = parse_bounds("kp");
  loop.ki_bounds = parse_bounds("ki");

  if (j.contains("saturation")) {
    const std::string spath = path + ".saturation";
    const json& sat = j["saturation"];
    check_keys(sat, spath, {"u_min", "u_max"});
    loop.saturation.u_min =
        as_number_or_null(member(sat, spath, "u_min"), spath + ".u_min", -kInf);
    loop.saturation.u_max =
        as_number_or_null(member(sat, spath, "u_max"), spath + ".u_max", kInf);
  }

  if (j.contains("ci")) {
    const std::string cpath = path + ".ci";
    const json& ci = j["ci"];
    check_keys(ci, cpath, {"enabled", "error_band"});
    loop.ci.enabled = as_bool(member(ci, cpath, "enabled"), cpath + ".enabled");
    if (ci.contains("error_band"))
      loop.ci.error_band =
          as_number_or_null(ci["error_band"], cpath + ".error_band", kInf);
  }

  loop.reference = parse_reference(member(j, path, "reference"), path + ".reference");

  if (j.contains("output_bias"))
    loop.output_bias = as_number(j["output_bias"], path + ".output_bias");

  return loop;
}

CostSpec parse_cost(const json& j, const std::string& path, std::size_t n_loops) {
  check_keys(j, path, {"metrics", "weights", "weight_mode"});
  CostSpec cost;
  cost.metrics.clear();
  const json& metrics = member(j, path, "metrics");
  if (!metrics.is_array()) fail(path + ".metrics", "expected an array");
  for (std::size_t i = 0; i < metrics.size(); ++i)
    cost.metrics.push_back(metric_kind_from_string(
        as_string(metrics[i], path + ".metrics[" + std::to_string(i) + "]")));
  if (j.contains("weights")) {
    std::vector<double> w = as_number_array(j["weights"], path + ".weights");
    if (w.size() != 2) fail(path + ".weights", "expected [w1, w2]");
    cost.w1 = w[0];
    cost.w2 = w[1];
  }
  if (j.contains("weight_mode"))
    cost.weight_mode =
        weight_mode_from_string(as_string(j["weight_mode"], path + ".weight_mode"));
  (void)n_loops;
  return cost;
}

void parse_optimizer(const json& j, const std::string& path, Scenario& scenario) {
  check_keys(j, path,
             {"max_iterations", "seed", "step_decay", "target_cost", "step_scales"});
  OptimizerConfig& cfg = scenario.optimizer;
  if (j.contains("max_iterations")) {
    const double n = as_number(j["max_iterations"], path + ".max_iterations");
    cfg.max_iterations = static_cast<int>(n);
    if (static_cast<double>(cfg.max_iterations) != n)
      fail(path + ".max_iterations", "expected an integer");
  }
  if (j.contains("seed")) {
    const json& s = j["seed"];
    if (!s.is_number_unsigned())
      fail(path + ".seed", "expected a nonnegative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (j.contains("step_decay"))
    cfg.step_decay = as_number(j["step_decay"], path + ".step_decay");
  if (j.contains("target_cost") && !j["target_cost"].is_null())
    cfg.target_cost = as_number(j["target_cost"], path + ".target_cost");
  if (j.contains("step_scales"))
    scenario.step_scales = as_number_array(j["step_scales"], path + ".step_scales");
}

// Fills defaulted fields (per-loop metric kinds, step scales) and keeps
// the optimizer's weight settings in lockstep with the cost spec.
void finalize_scenario(Scenario& scenario) {
  if (scenario.cost.metrics.empty())
    scenario.cost.metrics.assign(scenario.loops.size(), MetricKind::itae);
  scenario.optimizer.weight_mode = scenario.cost.weight_mode;
  scenario.optimizer.fixed_weights = {scenario.cost.w1, scenario.cost.w2};
  if (scenario.step_scales.empty()) {
    for (const LoopConfig& loop : scenario.loops) {
      scenario.step_scales.push_back((loop.kp_bounds.hi - loop.kp_bounds.lo) / 10.0);
      scenario.step_scales.push_back((loop.ki_bounds.hi - loop.ki_bounds.lo) / 10.0);
    }
  }
}

json tf_to_json(const DiscreteTransferFunction& tf) {
  ordered_json j;
  j["num"] = tf.num;
  j["den"] = tf.den;
  return j;
}

json number_or_null(double x) {
  if (std::isinf(x)) return nullptr;
  return x;
}

}  // namespace

ParameterVector Scenario::initial_parameters() const {
  ParameterVector p;
  for (const LoopConfig& loop : loops) {
    p.values.push_back(loop.gains_init.kp);
    p.values.push_back(loop.gains_init.ki);
    p.lower.push_back(loop.kp_bounds.lo);
    p.lower.push_back(loop.ki_bounds.lo);
    p.upper.push_back(loop.kp_bounds.hi);
    p.upper.push_back(loop.ki_bounds.hi);
  }
  p.step_scales = step_scales;
  return p;
}

void validate_scenario(const Scenario& scenario) {
  validate_plant(scenario.plant, /*in_loop=*/true);
  if (scenario.loops.size() != scenario.plant.dim)
    throw ValidationError("loops: expected " + std::to_string(scenario.plant.dim) +
                          " loop configs for this plant");
  if (!(scenario.dt_s > 0.0)) throw ValidationError("dt_s: must be positive");
  if (scenario.plant.sample_time() != scenario.dt_s)
    throw ValidationError("dt_s: differs from the plant sample time");
  const double steps = scenario.horizon_s / scenario.dt_s;
  if (!(scenario.horizon_s > 0.0) ||
      std::abs(std::round(steps) * scenario.dt_s - scenario.horizon_s) >
          1e-9 * std::max(1.0, scenario.horizon_s))
    throw ValidationError("horizon_s: must be a positive integer multiple of dt_s");

  for (std::size_t i = 0; i < scenario.loops.size(); ++i) {
    const LoopConfig& loop = scenario.loops[i];
    const std::string path = "loops[" + std::to_string(i) + "]";
    for (const auto& [name, b] :
         {std::pair{"kp", loop.kp_bounds}, std::pair{"ki", loop.ki_bounds}}) {
      if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo < b.hi))
        throw ValidationError(path + ".gains_bounds." + name +
                              ": bounds must be finite with lo < hi");
    }
    if (loop.gains_init.kp < loop.kp_bounds.lo ||
        loop.gains_init.kp > loop.kp_bounds.hi ||
        loop.gains_init.ki < loop.ki_bounds.lo ||
        loop.gains_init.ki > loop.ki_bounds.hi)
      throw ValidationError(path + ".gains_init: outside gains_bounds");
    if (!(loop.saturation.u_min < loop.saturation.u_max))
      throw ValidationError(path + ".saturation: u_min must be below u_max");
    if (!(loop.ci.error_band > 0.0))
      throw ValidationError(path + ".ci.error_band: must be positive");
    try {
      validate_profile(loop.reference);
    } catch (const ValidationError& err) {
      throw ValidationError(path + ".reference: " + err.what());
    }
    if (!std::isfinite(loop.output_bias))
      throw ValidationError(path + ".output_bias: must be finite");
  }

  if (scenario.cost.metrics.size() != scenario.loops.size())
    throw ValidationError("cost.metrics: expected one metric per loop");
  for (double w : {scenario.cost.w1, scenario.cost.w2})
    if (!(w >= 0.0 && w <= 1.0))
      throw ValidationError("cost.weights: weights must lie in [0, 1]");

  validate_optimizer_config(scenario.optimizer);
  if (scenario.optimizer.weight_mode != scenario.cost.weight_mode ||
      scenario.optimizer.fixed_weights.w1 != scenario.cost.w1 ||
      scenario.optimizer.fixed_weights.w2 != scenario.cost.w2)
    throw ValidationError("optimizer: weight settings out of sync with cost");
  if (scenario.step_scales.size() != scenario.parameter_count())
    throw ValidationError("optimizer.step_scales: expected one per tunable gain");
  for (std::size_t v = 0; v < scenario.step_scales.size(); ++v)
    if (!(scenario.step_scales[v] > 0.0) || !std::isfinite(scenario.step_scales[v]))
      throw ValidationError("optimizer.step_scales[" + std::to_string(v) +
                            "]: must be positive");

  validate_parameter_vector(scenario.initial_parameters());
}

Scenario load_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ValidationError(std::string("scenario parse error: ") + err.what());
  }
  check_keys(doc, "scenario",
             {"plant", "loops", "horizon_s", "dt_s", "cost", "optimizer"});

  Scenario scenario;
  scenario.dt_s = as_number(member(doc, "scenario", "dt_s"), "dt_s");
  scenario.horizon_s = as_number(member(doc, "scenario", "horizon_s"), "horizon_s");
  scenario.plant = parse_plant(member(doc, "scenario", "plant"), "plant", scenario.dt_s);

  const json& loops = member(doc, "scenario", "loops");
  if (!loops.is_array()) fail("loops", "expected an array");
  for (std::size_t i = 0; i < loops.size(); ++i)
    scenario.loops.push_back(parse_loop(loops[i], "loops[" + std::to_string(i) + "]"));

  if (doc.contains("cost"))
    scenario.cost = parse_cost(doc["cost"], "cost", scenario.loops.size());
  if (doc.contains("optimizer"))
    parse_optimizer(doc["optimizer"], "optimizer", scenario);

  finalize_scenario(scenario);
  validate_scenario(scenario);
  return scenario;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read scenario file: " + path.string());
  return load_scenario(buffer.str());
}

std::string save_scenario(const Scenario& scenario) {
  ordered_json doc;

  ordered_json plant;
  if (scenario.plant.dim == 1) {
    plant["type"] = "siso";
    plant["num"] = scenario.plant.channels[0].num;
    plant["den"] = scenario.plant.channels[0].den;
  } else {
    plant["type"] = "mimo";
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < 2; ++i) {
      ordered_json row = ordered_json::array();
      for (std::size_t j = 0; j < 2; ++j) row.push_back(tf_to_json(scenario.plant.at(i, j)));
      rows.push_back(row);
    }
    plant["channels"] = rows;
  }
  doc["plant"] = plant;

  ordered_json loops = ordered_json::array();
  for (const LoopConfig& loop : scenario.loops) {
    ordered_json l;
    l["gains_init"] = {{"kp", loop.gains_init.kp}, {"ki", loop.gains_init.ki}};
    l["gains_bounds"] = {{"kp", {loop.kp_bounds.lo, loop.kp_bounds.hi}},
                         {"ki", {loop.ki_bounds.lo, loop.ki_bounds.hi}}};
    l["saturation"] = {{"u_min", number_or_null(loop.saturation.u_min)},
                       {"u_max", number_or_null(loop.saturation.u_max)}};
    l["ci"] = {{"enabled", loop.ci.enabled},
               {"error_band", number_or_null(loop.ci.error_band)}};
    ordered_json segments = ordered_json::array();
    for (const ReferenceSegment& seg : loop.reference.segments) {
      if (seg.ramp)
        segments.push_back({{"t", seg.start},
                            {"t_end", seg.end},
                            {"from", seg.level},
                            {"to", seg.end_level}});
      else
        segments.push_back({{"t", seg.start}, {"level", seg.level}});
    }
    l["reference"] = {{"segments", segments}};
    l["output_bias"] = loop.output_bias;
    loops.push_back(l);
  }
  doc["loops"] = loops;

  doc["horizon_s"] = scenario.horizon_s;
  doc["dt_s"] = scenario.dt_s;

  ordered_json metrics = ordered_json::array();
  for (MetricKind kind : scenario.cost.metrics) metrics.push_back(to_string(kind));
  doc["cost"] = {{"metrics", metrics},
                 {"weights", {scenario.cost.w1, scenario.cost.w2}},
                 {"weight_mode", to_string(scenario.cost.weight_mode)}};

  ordered_json opt;
  opt["max_iterations"] = scenario.optimizer.max_iterations;
  opt["seed"] = scenario.optimizer.seed;
  opt["step_decay"] = scenario.optimizer.step_decay;
  opt["target_cost"] = scenario.optimizer.target_cost
                           ? ordered_json(*scenario.optimizer.target_cost)
                           : ordered_json(nullptr);
  opt["step_scales"] = scenario.step_scales;
  doc["optimizer"] = opt;

  return doc.dump(2) + "\n";
}

namespace {

LoopConfig default_loop(double level) {
  LoopConfig loop;
  loop.gains_init = {5.0, 5.0};
  loop.kp_bounds = {0.0, 10.0};
  loop.ki_bounds = {0.0, 10.0};
  loop.reference.segments = {{0.0, level}};
  return loop;
}

Scenario oracle_scenario(DiscreteTransferFunction tf, double horizon) {
  Scenario s;
  s.dt_s = 1.0;
  tf.sample_time = s.dt_s;
  s.plant = siso_plant(std::move(tf));
  s.loops = {default_loop(1.0)};
  s.horizon_s = horizon;
  finalize_scenario(s);
  validate_scenario(s);
  return s;
}

}  // namespace

std::vector<NamedScenario> builtin_oracle_plants() {
  std::vector<NamedScenario> out;
  out.push_back({"oracle-unit-delay",
                 oracle_scenario({{0.0, 1.0}, {1.0}, 1.0}, 40.0)});
  // y[k] = 0.9 y[k-1] + 0.1 u[k-1]: pole 0.9, unit DC gain
  out.push_back({"oracle-first-order",
                 oracle_scenario({{0.0, 0.1}, {1.0, -0.9}, 1.0}, 200.0)});
  // real poles 0.8 and 0.5, unit DC gain
  out.push_back({"oracle-second-order",
                 oracle_scenario({{0.0, 0.06, 0.04}, {1.0, -1.3, 0.4}, 1.0}, 200.0)});
  return out;
}

Scenario builtin_surrogate_refrigeration() {
  Scenario s;
  s.dt_s = 1.0;
  s.horizon_s = 1200.0;

  // Fixture coefficients, chosen by direct simulation (see
  // scenarios/README.md). All poles are strictly inside the unit circle
  // and the cross channels carry at most a fifth of the diagonal DC gain.
  s.plant.dim = 2;
  const double dt = s.dt_s;
  // (0,0): slow lag pair 0.98/0.8 with three samples of delay, DC 1
  s.plant.channels.push_back({{0.0, 0.0, 0.0, 0.004}, {1.0, -1.78, 0.784}, dt});
  // (0,1): weak coupling into the slow loop, DC 0.1
  s.plant.channels.push_back({{0.0, 0.002}, {1.0, -0.98}, dt});
  // (1,0): weak coupling into the fast loop, DC 0.15
  s.plant.channels.push_back({{0.0, 0.015}, {1.0, -0.9}, dt});
  // (1,1): fast lag, pole 0.9, DC 1
  s.plant.channels.push_back({{0.0, 0.1}, {1.0, -0.9}, dt});

  LoopConfig slow;
  slow.gains_init = {5.0, 5.0};
  slow.kp_bounds = {0.0, 10.0};
  slow.ki_bounds = {0.0, 10.0};
  slow.saturation = {-2.0, 2.0};
  slow.ci = {true, 0.5};
  slow.reference.segments = {{0.0, 1.0}, {400.0, 2.0}, {800.0, 1.2}};
  slow.output_bias = -0.5;

  LoopConfig fast;
  fast.gains_init = {5.0, 5.0};
  fast.kp_bounds = {0.0, 10.0};
  fast.ki_bounds = {0.0, 10.0};
  fast.saturation = {-2.0, 2.0};
  fast.ci = {true, 0.4};
  fast.reference.segments = {{0.0, 0.5}, {600.0, 1.0}};

  s.loops = {slow, fast};
  s.cost.metrics = {MetricKind::itae, MetricKind::itae};
  s.optimizer.max_iterations = 100;
  s.optimizer.seed = 0;
  s.optimizer.step_decay = 0.95;

  finalize_scenario(s);
  validate_scenario(s);
  return s;
}

std::vector<NamedScenario> builtin_scenarios() {
  std::vector<NamedScenario> out = builtin_oracle_plants();
  out.push_back({"surrogate-refrigeration", builtin_surrogate_refrigeration()});
  return out;
}

LoadedScenario resolve_scenario(const std::string& spec) {
  constexpr std::string_view prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string name = spec.substr(prefix.size());
    for (NamedScenario& named : builtin_scenarios())
      if (named.name == name) return {named.name, std::move(named.scenario)};
    throw ValidationError("unknown builtin scenario '" + name + "'");
  }
  const std::filesystem::path path(spec);
  if (!std::filesystem::exists(path))
    throw ValidationError("scenario file does not exist: " + spec);
  return {path.stem().string(), load_scenario_file(path)};
}

}  // namespace smdo_tune
