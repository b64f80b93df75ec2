#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

namespace xlayer::cli {
namespace {

double parse_real(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value))
    throw ConfigError("'" + std::string(key) + "' expects a number, got '" + std::string(text) + "'");
  return value;
}

int parse_integer(std::string_view key, std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError("'" + std::string(key) + "' expects an integer, got '" + std::string(text) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view text) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto comma = text.find(',');
    parts.push_back(text.substr(0, comma));
    if (comma == std::string_view::npos) return parts;
    text.remove_prefix(comma + 1);
  }
}

void check_value(const KeySpec& spec, std::string_view value) {
  switch (spec.kind) {
    case ValueKind::Real:
      if (value != "auto" || spec.fallback != "auto") parse_real(spec.name, value);
      break;
    case ValueKind::Integer:
      parse_integer(spec.name, value);
      break;
    case ValueKind::Text:
      if (!spec.choices.empty() && std::find(spec.choices.begin(), spec.choices.end(), value) == spec.choices.end()) {
        std::string allowed;
        for (const auto& c : spec.choices) allowed += (allowed.empty() ? "" : ", ") + c;
        throw ConfigError("'" + spec.name + "' must be one of " + allowed + ", got '" + std::string(value) + "'");
      }
      break;
    case ValueKind::RealList:
      for (auto part : split(value)) parse_real(spec.name, part);
      break;
    case ValueKind::IntegerList:
      for (auto part : split(value)) parse_integer(spec.name, part);
      break;
  }
}

void flatten(const nlohmann::json& node, const std::string& prefix, Config& config) {
  if (node.is_object()) {
    for (const auto& [name, child] : node.items()) flatten(child, prefix.empty() ? name : prefix + "." + name, config);
    return;
  }
  if (prefix.empty()) throw ConfigError("config file must hold a JSON object");
  auto scalar = [&](const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return v.dump();
    throw ConfigError("'" + prefix + "' has an unsupported JSON value " + v.dump());
  };
  if (node.is_array()) {
    std::string joined;
    for (const auto& item : node) joined += (joined.empty() ? "" : ",") + scalar(item);
    config.set(prefix, joined);
  } else {
    config.set(prefix, scalar(node));
  }
}

}  // namespace

const std::vector<KeySpec>& registered_keys() {
  using K = ValueKind;
  static const std::vector<KeySpec> keys = {
      {"topology.lambda_h", K::Real, "auto", "AP density [1/m^2]; auto is 1/(pi (2 d_c)^2)", {}},
      {"topology.d_c", K::Real, "100", "cluster radius [m]", {}},
      {"topology.d_min", K::Real, "100", "exclusion distance to out-of-cluster interferers [m]", {}},
      {"topology.alpha", K::Real, "4", "path-loss exponent", {}},
      {"topology.M", K::Integer, "32", "nodes per cluster", {}},
      {"topology.N", K::Integer, "64", "subcarriers", {}},
      {"power.P_t", K::Real, "1", "transmit power per subcarrier [W]", {}},
      {"power.P_s", K::Real, "0.01", "sensing power [W]", {}},
      {"power.P_d", K::Real, "0.01", "decoding power [W]", {}},
      {"power.P_c", K::Real, "1", "centralized control power [W]", {}},
      {"power.T", K::Real, "1", "slot duration [s]", {}},
      {"power.T_s", K::Real, "0.1", "sensing time [s]", {}},
      {"mac.p", K::Real, "0.05", "access probability per slot", {}},
      {"mac.s", K::Integer, "3", "subcarriers requested per node", {}},
      {"mac.k_c", K::Integer, "60", "contention slots", {}},
      {"mac.k_f", K::Integer, "60", "frame slots", {}},
      {"decoding.zeta_db", K::Real, "5", "decoding threshold [dB]", {}},
      {"sensing.P_md", K::Real, "0.01", "missed-detection probability seen by the MAC", {}},
      {"sensing.P_fa", K::Real, "0.01", "false-alarm probability seen by the MAC", {}},
      {"interference.mu", K::Real, "1", "mean active nodes per interfering cluster", {}},
      {"detector.B", K::Integer, "1000", "sensing blocks", {}},
      {"detector.l", K::Integer, "1", "active transmitters in the sensed cluster", {}},
      {"detector.sigma_w2", K::Real, "0", "receiver noise variance [W]", {}},
      {"detector.interference", K::Text, "gaussian", "interference in the sample-level detector",
       {"gaussian", "point-process"}},
      {"detector.cf", K::Text, "derived", "busy-channel characteristic function", {"derived", "as-printed"}},
      {"sic.l", K::Integer, "5", "colliding transmissions", {}},
      {"sic.mu", K::Real, "1", "mean active nodes per interfering cluster seen by the decoder", {}},
      {"sic.ordering", K::Text, "power", "decoding order in simulation", {"power", "distance"}},
      {"sic.method", K::Text, "auto", "residual-interference evaluation", {"auto", "general", "closed-form"}},
      {"sweep.variable", K::Text, "P_d", "swept parameter", {"P_d", "P_c", "p", "k_c", "zeta_db"}},
      {"sweep.lo", K::Real, "0", "lower end of the sweep", {}},
      {"sweep.hi", K::Real, "1", "upper end of the sweep", {}},
      {"sweep.points", K::Integer, "11", "number of sweep points", {}},
      {"sweep.spacing", K::Text, "linear", "spacing of sweep points", {"linear", "log"}},
      {"sweep.s", K::IntegerList, "1,3,10", "values of mac.s", {}},
      {"sweep.k_c", K::IntegerList, "10,20,30,40,50,60", "values of mac.k_c", {}},
      {"sweep.M", K::IntegerList, "32", "values of topology.M", {}},
  };
  return keys;
}

const KeySpec* find_key(std::string_view name) {
  for (const auto& k : registered_keys())
    if (k.name == name) return &k;
  return nullptr;
}

Config::Config() {
  for (const auto& k : registered_keys()) values_.emplace(k.name, k.fallback);
}

void Config::set(std::string_view key, std::string value) {
  const KeySpec* spec = find_key(key);
  if (spec == nullptr) throw ConfigError("unknown key '" + std::string(key) + "'");
  check_value(*spec, value);
  values_.find(key)->second = std::move(value);
}

void Config::assign(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
  set(assignment.substr(0, eq), std::string(assignment.substr(eq + 1)));
}

void Config::merge(const nlohmann::json& tree) { flatten(tree, "", *this); }

void Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  nlohmann::json tree;
  try {
    tree = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  merge(tree);
}

const std::string& Config::raw(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown key '" + std::string(key) + "'");
  return it->second;
}

double Config::real(std::string_view key) const { return parse_real(key, raw(key)); }

int Config::integer(std::string_view key) const { return parse_integer(key, raw(key)); }

const std::string& Config::text(std::string_view key) const { return raw(key); }

std::vector<double> Config::reals(std::string_view key) const {
  std::vector<double> out;
  for (auto part : split(raw(key))) out.push_back(parse_real(key, part));
  return out;
}

std::vector<int> Config::integers(std::string_view key) const {
  std::vector<int> out;
  for (auto part : split(raw(key))) out.push_back(parse_integer(key, part));
  return out;
}

ParameterBundle Config::bundle() const {
  ParameterBundle b;
  b.topology.cluster_radius = real("topology.d_c");
  b.topology.ap_density = text("topology.lambda_h") == "auto"
                              ? ClusterTopology::default_ap_density(b.topology.cluster_radius)
                              : real("topology.lambda_h");
  b.topology.exclusion_distance = real("topology.d_min");
  b.topology.path_loss_exponent = real("topology.alpha");
  b.topology.mean_nodes = integer("topology.M");
  b.topology.subcarriers = integer("topology.N");
  b.power.transmit_power = real("power.P_t");
  b.power.sensing_power = real("power.P_s");
  b.power.decoding_power = real("power.P_d");
  b.power.control_power = real("power.P_c");
  b.power.slot_duration = real("power.T");
  b.power.sensing_time = real("power.T_s");
  b.mac.access_probability = real("mac.p");
  b.mac.max_subcarriers = integer("mac.s");
  b.mac.contention_slots = integer("mac.k_c");
  b.mac.frame_slots = integer("mac.k_f");
  b.decoding.threshold = db_to_linear(real("decoding.zeta_db"));
  b.sensing.missed_detection = real("sensing.P_md");
  b.sensing.false_alarm = real("sensing.P_fa");
  return b;
}

std::vector<std::string> Config::resolved() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : values_) out.push_back(key + "=" + value);
  return out;
}

}  // namespace xlayer::cli
