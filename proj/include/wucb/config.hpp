#pragma once
// Experiment configuration: the JSON schema, defaults, validation, and the
// bridge from a parsed config to a concrete problem instance.
//
// {
//   "instance": {"kind": "synthetic", "k_total": 10, "gamma": 1.0,
//                "active_preferences": [1,2,3,4,5], "mix_seed": 0}
//            or {"kind": "explicit", "arms": [...], "preferences": {...}},
//   "run": {"horizon": 100000, "paths": 20, "base_seed": 0,
//           "checkpoint_stride": 100},
//   "policies": ["wucb"],
//   "output": {"curves_path": "curves.csv", "summary_path": "summary.json",
//              "counters": true}
// }
//
// Arm kinds: "shifted_uniform" (d, base_index, 1-based), "mixed" (weights),
// "product_categorical" (values, probabilities per coordinate), "scaled"
// (gamma, optional offset, inner). Schema problems raise SchemaError with
// the offending field path; invariant violations raise ValidationError.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "wucb/env.hpp"
#include "wucb/errors.hpp"

namespace wucb {

struct SyntheticSpec {
  int k_total = 5;
  double gamma = 1.0;
  std::vector<int> active_preferences = {1, 2, 3, 4, 5};
  std::uint64_t mix_seed = 0;
};

struct ExplicitSpec {
  std::vector<ArmDistribution> arms;
  std::vector<Vec> support;
  Vec probabilities;
};

struct ExperimentConfig {
  std::variant<SyntheticSpec, ExplicitSpec> instance;
  std::int64_t horizon = 0;
  int paths = 20;
  std::uint64_t base_seed = 0;
  std::int64_t checkpoint_stride = 100;
  std::vector<std::string> policies = {"wucb"};
  std::string curves_path = "curves.csv";
  std::string summary_path = "summary.json";
  bool counters = true;

  bool is_synthetic() const { return std::holds_alternative<SyntheticSpec>(instance); }

  int num_arms() const {
    if (is_synthetic()) return std::get<SyntheticSpec>(instance).k_total;
    return static_cast<int>(std::get<ExplicitSpec>(instance).arms.size());
  }

  // gamma metadata column for curve files; explicit instances report 1.
  double gamma() const {
    return is_synthetic() ? std::get<SyntheticSpec>(instance).gamma : 1.0;
  }

  ProblemInstance build() const {
    if (is_synthetic()) {
      const SyntheticSpec& s = std::get<SyntheticSpec>(instance);
      return build_synthetic(s.k_total, s.gamma, s.active_preferences, s.mix_seed);
    }
    const ExplicitSpec& e = std::get<ExplicitSpec>(instance);
    return ProblemInstance(e.arms, PreferenceModel(e.support, e.probabilities));
  }
};

namespace cfg_detail {

using nlohmann::json;

[[noreturn]] inline void schema_fail(const std::string& path, const std::string& why) {
  throw SchemaError("config field \"" + path + "\": " + why);
}

inline const json& member(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) schema_fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_fail(path + "." + key, "missing required field");
  return *it;
}

inline const json* opt_member(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) schema_fail(path, "expected an object");
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

inline std::int64_t as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) schema_fail(path, "expected an integer");
  return v.get<std::int64_t>();
}

inline std::uint64_t as_uint(const json& v, const std::string& path) {
  if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)))
    schema_fail(path, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

inline double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) schema_fail(path, "expected a number");
  return v.get<double>();
}

inline bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) schema_fail(path, "expected a boolean");
  return v.get<bool>();
}

inline std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) schema_fail(path, "expected a string");
  return v.get<std::string>();
}

inline Vec as_vec(const json& v, const std::string& path) {
  if (!v.is_array()) schema_fail(path, "expected an array of numbers");
  Vec out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_double(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline ArmDistribution parse_arm(const json& v, const std::string& path) {
  const std::string kind = as_string(member(v, path, "kind"), path + ".kind");
  if (kind == "shifted_uniform") {
    const int d = static_cast<int>(as_int(member(v, path, "d"), path + ".d"));
    const int base = static_cast<int>(as_int(member(v, path, "base_index"), path + ".base_index"));
    if (base < 1 || base > d)
      throw ValidationError("config field \"" + path + ".base_index\": must lie in 1..d");
    return ArmDistribution::shifted_uniform(d, base - 1);
  }
  if (kind == "mixed") {
    return ArmDistribution::mixed(as_vec(member(v, path, "weights"), path + ".weights"));
  }
  if (kind == "product_categorical") {
    const json& values = member(v, path, "values");
    const json& probs = member(v, path, "probabilities");
    if (!values.is_array() || !probs.is_array()) schema_fail(path, "values/probabilities must be arrays");
    std::vector<Vec> vv, pp;
    for (std::size_t k = 0; k < values.size(); ++k)
      vv.push_back(as_vec(values[k], path + ".values[" + std::to_string(k) + "]"));
    for (std::size_t k = 0; k < probs.size(); ++k)
      pp.push_back(as_vec(probs[k], path + ".probabilities[" + std::to_string(k) + "]"));
    return ArmDistribution::product_categorical(std::move(vv), std::move(pp));
  }
  if (kind == "scaled") {
    const double gamma = as_double(member(v, path, "gamma"), path + ".gamma");
    double offset = 0.0;
    if (const json* o = opt_member(v, path, "offset")) offset = as_double(*o, path + ".offset");
    ArmDistribution inner = parse_arm(member(v, path, "inner"), path + ".inner");
    return ArmDistribution::affine(std::move(inner), gamma, offset);
  }
  schema_fail(path + ".kind", "unknown arm kind \"" + kind + "\"");
}

inline json arm_to_json(const ArmDistribution& arm) {
  json v = json::object();
  switch (arm.kind()) {
    case ArmDistribution::Kind::kShiftedUniform:
      v["kind"] = "shifted_uniform";
      v["d"] = arm.dim();
      v["base_index"] = arm.base_index() + 1;
      break;
    case ArmDistribution::Kind::kMixed:
      v["kind"] = "mixed";
      v["weights"] = arm.mix_weights();
      break;
    case ArmDistribution::Kind::kProductCategorical:
      v["kind"] = "product_categorical";
      v["values"] = arm.support_values();
      v["probabilities"] = arm.support_probs();
      break;
    case ArmDistribution::Kind::kScaled:
      v["kind"] = "scaled";
      v["gamma"] = arm.scale();
      if (arm.offset() != 0.0) v["offset"] = arm.offset();
      v["inner"] = arm_to_json(arm.inner());
      break;
  }
  return v;
}

}  // namespace cfg_detail

inline ExperimentConfig parse_config(const std::string& text) {
  using cfg_detail::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("config is not well-formed JSON: ") + e.what());
  }
  if (!root.is_object()) cfg_detail::schema_fail("<root>", "expected an object");

  ExperimentConfig cfg;

  const json& inst = cfg_detail::member(root, "<root>", "instance");
  const std::string kind = cfg_detail::as_string(cfg_detail::member(inst, "instance", "kind"), "instance.kind");
  if (kind == "synthetic") {
    SyntheticSpec s;
    s.k_total = static_cast<int>(cfg_detail::as_int(cfg_detail::member(inst, "instance", "k_total"), "instance.k_total"));
    if (const json* v = cfg_detail::opt_member(inst, "instance", "gamma"))
      s.gamma = cfg_detail::as_double(*v, "instance.gamma");
    if (const json* v = cfg_detail::opt_member(inst, "instance", "active_preferences")) {
      if (!v->is_array()) cfg_detail::schema_fail("instance.active_preferences", "expected an array of integers");
      s.active_preferences.clear();
      for (std::size_t i = 0; i < v->size(); ++i)
        s.active_preferences.push_back(static_cast<int>(
            cfg_detail::as_int((*v)[i], "instance.active_preferences[" + std::to_string(i) + "]")));
    }
    if (const json* v = cfg_detail::opt_member(inst, "instance", "mix_seed"))
      s.mix_seed = cfg_detail::as_uint(*v, "instance.mix_seed");
    if (s.k_total < 5) throw ValidationError("instance.k_total must be at least 5");
    if (!(s.gamma > 0.0) || s.gamma > 1.0) throw ValidationError("instance.gamma must lie in (0, 1]");
    if (s.active_preferences.empty())
      throw ValidationError("instance.active_preferences must be nonempty");
    for (int i : s.active_preferences)
      if (i < 1 || i > 5) throw ValidationError("instance.active_preferences entries must lie in 1..5");
    cfg.instance = std::move(s);
  } else if (kind == "explicit") {
    ExplicitSpec e;
    const json& arms = cfg_detail::member(inst, "instance", "arms");
    if (!arms.is_array() || arms.empty())
      cfg_detail::schema_fail("instance.arms", "expected a nonempty array");
    for (std::size_t i = 0; i < arms.size(); ++i)
      e.arms.push_back(cfg_detail::parse_arm(arms[i], "instance.arms[" + std::to_string(i) + "]"));
    const json& prefs = cfg_detail::member(inst, "instance", "preferences");
    const json& support = cfg_detail::member(prefs, "instance.preferences", "support");
    if (!support.is_array()) cfg_detail::schema_fail("instance.preferences.support", "expected an array");
    for (std::size_t i = 0; i < support.size(); ++i)
      e.support.push_back(cfg_detail::as_vec(support[i], "instance.preferences.support[" + std::to_string(i) + "]"));
    e.probabilities = cfg_detail::as_vec(cfg_detail::member(prefs, "instance.preferences", "probabilities"),
                                         "instance.preferences.probabilities");
    cfg.instance = std::move(e);
  } else {
    cfg_detail::schema_fail("instance.kind", "expected \"synthetic\" or \"explicit\"");
  }

  const json& run = cfg_detail::member(root, "<root>", "run");
  cfg.horizon = cfg_detail::as_int(cfg_detail::member(run, "run", "horizon"), "run.horizon");
  if (const json* v = cfg_detail::opt_member(run, "run", "paths"))
    cfg.paths = static_cast<int>(cfg_detail::as_int(*v, "run.paths"));
  if (const json* v = cfg_detail::opt_member(run, "run", "base_seed"))
    cfg.base_seed = cfg_detail::as_uint(*v, "run.base_seed");
  if (const json* v = cfg_detail::opt_member(run, "run", "checkpoint_stride"))
    cfg.checkpoint_stride = cfg_detail::as_int(*v, "run.checkpoint_stride");

  if (const json* v = cfg_detail::opt_member(root, "<root>", "policies")) {
    if (!v->is_array() || v->empty()) cfg_detail::schema_fail("policies", "expected a nonempty array");
    cfg.policies.clear();
    for (std::size_t i = 0; i < v->size(); ++i)
      cfg.policies.push_back(cfg_detail::as_string((*v)[i], "policies[" + std::to_string(i) + "]"));
  }

  if (const json* out = cfg_detail::opt_member(root, "<root>", "output")) {
    if (const json* v = cfg_detail::opt_member(*out, "output", "curves_path"))
      cfg.curves_path = cfg_detail::as_string(*v, "output.curves_path");
    if (const json* v = cfg_detail::opt_member(*out, "output", "summary_path"))
      cfg.summary_path = cfg_detail::as_string(*v, "output.summary_path");
    if (const json* v = cfg_detail::opt_member(*out, "output", "counters"))
      cfg.counters = cfg_detail::as_bool(*v, "output.counters");
  }

  if (cfg.horizon < 1) throw ValidationError("run.horizon must be at least 1");
  if (cfg.horizon < cfg.num_arms())
    throw ValidationError("run.horizon must be at least the number of arms");
  if (cfg.paths < 1) throw ValidationError("run.paths must be at least 1");
  if (cfg.checkpoint_stride < 1) throw ValidationError("run.checkpoint_stride must be at least 1");
  for (const std::string& p : cfg.policies)
    if (p != "wucb" && p != "oracle" && p != "ucb1" && p != "random")
      throw ValidationError("policies: unknown policy \"" + p + "\"");
  for (std::size_t i = 0; i < cfg.policies.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.policies.size(); ++j)
      if (cfg.policies[i] == cfg.policies[j])
        throw ValidationError("policies: duplicate policy \"" + cfg.policies[i] + "\"");
  return cfg;
}

inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  using cfg_detail::json;
  json root = json::object();
  json inst = json::object();
  if (cfg.is_synthetic()) {
    const SyntheticSpec& s = std::get<SyntheticSpec>(cfg.instance);
    inst["kind"] = "synthetic";
    inst["k_total"] = s.k_total;
    inst["gamma"] = s.gamma;
    inst["active_preferences"] = s.active_preferences;
    inst["mix_seed"] = s.mix_seed;
  } else {
    const ExplicitSpec& e = std::get<ExplicitSpec>(cfg.instance);
    inst["kind"] = "explicit";
    json arms = json::array();
    for (const ArmDistribution& a : e.arms) arms.push_back(cfg_detail::arm_to_json(a));
    inst["arms"] = std::move(arms);
    inst["preferences"] = {{"support", e.support}, {"probabilities", e.probabilities}};
  }
  root["instance"] = std::move(inst);
  root["run"] = {{"horizon", cfg.horizon},
                 {"paths", cfg.paths},
                 {"base_seed", cfg.base_seed},
                 {"checkpoint_stride", cfg.checkpoint_stride}};
  root["policies"] = cfg.policies;
  root["output"] = {{"curves_path", cfg.curves_path},
                    {"summary_path", cfg.summary_path},
                    {"counters", cfg.counters}};
  return root;
}

inline std::string serialize_config(const ExperimentConfig& cfg) {
  return config_to_json(cfg).dump(2) + "\n";
}

}  // namespace wucb
