#include "fdrbench/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

#include "fdrbench/errors.hpp"

namespace fdrbench {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double as_number(const json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      std::size_t used = 0;
      const std::string s = v.get<std::string>();
      const double parsed = std::stod(s, &used);
      if (used == s.size()) return parsed;
    } catch (const std::exception&) {
    }
  }
  throw config_error("config key '" + key + "' expects a number");
}

std::int64_t as_integer(const json& v, const std::string& key) {
  const double d = as_number(v, key);
  if (std::floor(d) != d || std::abs(d) > 9.0e18) {
    throw config_error("config key '" + key + "' expects an integer");
  }
  return static_cast<std::int64_t>(d);
}

std::uint64_t as_u64(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  const std::int64_t i = as_integer(v, key);
  if (i < 0) throw config_error("config key '" + key + "' must be >= 0");
  return static_cast<std::uint64_t>(i);
}

bool as_bool(const json& v, const std::string& key) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  }
  throw config_error("config key '" + key + "' expects a boolean");
}

std::string as_string(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  throw config_error("config key '" + key + "' expects a string");
}

EmitFlags emit_from_json(const json& v) {
  if (v.is_string()) return parse_emit_list(v.get<std::string>());
  if (v.is_array()) {
    std::string joined;
    for (const auto& item : v) {
      if (!item.is_string()) throw config_error("emit entries must be strings");
      if (!joined.empty()) joined += ',';
      joined += item.get<std::string>();
    }
    return parse_emit_list(joined);
  }
  throw config_error("config key 'emit' expects a string or array of strings");
}

void apply_key(const std::string& key, const json& value,
               SimulationConfig& cfg, RunOptions& opts) {
  if (key == "n_genes") cfg.n_genes = as_integer(value, key);
  else if (key == "n_per_group") cfg.n_per_group = as_integer(value, key);
  else if (key == "prop_de") cfg.prop_de = as_number(value, key);
  else if (key == "dispersion") cfg.dispersion = as_number(value, key);
  else if (key == "baseline_shape") cfg.baseline_shape = as_number(value, key);
  else if (key == "baseline_scale") cfg.baseline_scale = as_number(value, key);
  else if (key == "baseline_multiplier") cfg.baseline_multiplier = as_number(value, key);
  else if (key == "library_mean") cfg.library_mean = as_number(value, key);
  else if (key == "fc_log2_mean") cfg.fc_log2_mean = as_number(value, key);
  else if (key == "fc_log2_sd") cfg.fc_log2_sd = as_number(value, key);
  else if (key == "fc_min_abs_log2") cfg.fc_min_abs_log2 = as_number(value, key);
  else if (key == "seed") cfg.seed = as_u64(value, key);
  else if (key == "fc_scheme") {
    const std::string scheme = as_string(value, key);
    if (scheme == "signed_magnitude") cfg.fc_scheme = FcScheme::signed_magnitude;
    else if (scheme == "plain_normal") cfg.fc_scheme = FcScheme::plain_normal;
    else throw config_error("fc_scheme must be signed_magnitude or plain_normal");
  } else if (key == "replicates") opts.replicates = as_integer(value, key);
  else if (key == "alpha") opts.alpha = as_number(value, key);
  else if (key == "output_dir") opts.output_dir = as_string(value, key);
  else if (key == "emit") opts.emit = emit_from_json(value);
  else if (key == "pseudo_count") opts.test.pseudo_count = as_number(value, key);
  else if (key == "cpm_normalize") opts.test.cpm_normalize = as_bool(value, key);
  else if (key == "storey_lambda") opts.storey.lambda = as_number(value, key);
  else if (key == "storey_lambda_grid") opts.storey.lambda_grid = as_bool(value, key);
  else throw config_error("unknown config key '" + key + "'");
}

// Interpret a flat key=value token as JSON-ish scalar.
json scalar_from_text(const std::string& text) {
  if (text == "true" || text == "false") return text == "true";
  std::size_t used = 0;
  try {
    const double d = std::stod(text, &used);
    if (used == text.size()) {
      if (std::floor(d) == d && std::abs(d) < 9.2e18 &&
          text.find_first_of(".eE") == std::string::npos) {
        if (d >= 0) return static_cast<std::uint64_t>(d);
        return static_cast<std::int64_t>(d);
      }
      return d;
    }
  } catch (const std::exception&) {
  }
  return text;
}

std::pair<SimulationConfig, RunOptions> parse_json_object(const json& root) {
  if (!root.is_object()) {
    throw config_error("config must be a JSON object or key=value lines");
  }
  SimulationConfig cfg;
  RunOptions opts;
  for (const auto& [key, value] : root.items()) {
    apply_key(key, value, cfg, opts);
  }
  cfg.validate();
  opts.validate();
  return {cfg, opts};
}

}  // namespace

void RunOptions::validate() const {
  if (replicates < 1) throw config_error("replicates must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw config_error("alpha must be in (0,1)");
  if (!(test.pseudo_count > 0.0)) throw config_error("pseudo_count must be > 0");
  if (!(storey.lambda > 0.0 && storey.lambda < 1.0)) {
    throw config_error("storey_lambda must be in (0,1)");
  }
}

EmitFlags parse_emit_list(const std::string& names) {
  EmitFlags flags{false, false, false, false, false, false, false, false};
  std::stringstream stream(names);
  std::string token;
  while (std::getline(stream, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    if (token == "volcano") flags.volcano = true;
    else if (token == "ma") flags.ma = true;
    else if (token == "roc") flags.roc = true;
    else if (token == "pr") flags.pr = true;
    else if (token == "pca") flags.pca = true;
    else if (token == "dist") flags.dist = true;
    else if (token == "matrix") flags.matrix = true;
    else if (token == "truth") flags.truth = true;
    else throw config_error("unknown emit flag '" + token + "'");
  }
  return flags;
}

std::pair<SimulationConfig, RunOptions> parse_config_text(const std::string& text) {
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    json root;
    try {
      root = json::parse(body);
    } catch (const json::parse_error& e) {
      throw config_error(std::string("malformed JSON config: ") + e.what());
    }
    return parse_json_object(root);
  }

  json root = json::object();
  std::stringstream stream(body);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto sep = line.find('=');
    if (sep == std::string::npos) sep = line.find(':');
    if (sep == std::string::npos) {
      throw config_error("malformed config line " + std::to_string(line_no) +
                         ": expected key = value");
    }
    const std::string key = trim(line.substr(0, sep));
    const std::string value = trim(line.substr(sep + 1));
    if (key.empty()) {
      throw config_error("malformed config line " + std::to_string(line_no) +
                         ": empty key");
    }
    root[key] = scalar_from_text(value);
  }
  return parse_json_object(root);
}

std::pair<SimulationConfig, RunOptions> parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open config file", path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto parsed = parse_config_text(buffer.str());
  parsed.second.config_path = path;
  return parsed;
}

std::string config_json(const SimulationConfig& cfg, const RunOptions& opts) {
  json j;
  j["n_genes"] = cfg.n_genes;
  j["n_per_group"] = cfg.n_per_group;
  j["prop_de"] = cfg.prop_de;
  j["dispersion"] = cfg.dispersion;
  j["baseline_shape"] = cfg.baseline_shape;
  j["baseline_scale"] = cfg.baseline_scale;
  j["baseline_multiplier"] = cfg.baseline_multiplier;
  j["library_mean"] = cfg.library_mean;
  j["fc_log2_mean"] = cfg.fc_log2_mean;
  j["fc_log2_sd"] = cfg.fc_log2_sd;
  j["fc_min_abs_log2"] = cfg.fc_min_abs_log2;
  j["fc_scheme"] = cfg.fc_scheme == FcScheme::signed_magnitude ? "signed_magnitude"
                                                               : "plain_normal";
  j["seed"] = cfg.seed;
  j["replicates"] = opts.replicates;
  j["alpha"] = opts.alpha;
  j["pseudo_count"] = opts.test.pseudo_count;
  j["cpm_normalize"] = opts.test.cpm_normalize;
  j["storey_lambda"] = opts.storey.lambda;
  j["storey_lambda_grid"] = opts.storey.lambda_grid;

  json emit = json::array();
  const auto& e = opts.emit;
  if (e.volcano) emit.push_back("volcano");
  if (e.ma) emit.push_back("ma");
  if (e.roc) emit.push_back("roc");
  if (e.pr) emit.push_back("pr");
  if (e.pca) emit.push_back("pca");
  if (e.dist) emit.push_back("dist");
  if (e.matrix) emit.push_back("matrix");
  if (e.truth) emit.push_back("truth");
  j["emit"] = emit;
  return j.dump(2);
}

}  // namespace fdrbench
