#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace relax {

std::vector<double> RunSpec::output_times() const {
  std::vector<double> ts;
  const double dt = output_interval();
  ts.push_back(0.0);
  for (double t = dt; t < t_end - 1e-12 * std::max(1.0, t_end); t += dt) ts.push_back(t);
  if (t_end > 0.0) ts.push_back(t_end);
  return ts;
}

double RunSpec::fixed_dt() const {
  if (dt_policy.rfind("fixed:", 0) == 0) {
    double v = std::strtod(dt_policy.c_str() + 6, nullptr);
    if (!(v > 0.0)) throw validation_error("run.dt_policy: fixed dt must be positive");
    return v;
  }
  return 0.0;
}

double RunSpec::dt_scale() const {
  if (dt_policy.rfind("auto:", 0) == 0) {
    double v = std::strtod(dt_policy.c_str() + 5, nullptr);
    if (!(v > 0.0 && v <= 1.0))
      throw validation_error("run.dt_policy: auto scale must lie in (0, 1]");
    return v;
  }
  return 1.0;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double to_number(const std::string& key, const std::string& v) {
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw validation_error(key + ": not a number: '" + v + "'");
  return x;
}

std::vector<double> to_number_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw validation_error(key + ": empty list entry");
    out.push_back(to_number(key, item));
  }
  if (out.empty()) throw validation_error(key + ": empty value");
  return out;
}

const std::map<std::string, std::set<std::string>> kSchema = {
    {"params", {"epsilon", "c_p", "c_k", "gamma", "alpha", "d"}},
    {"grid", {"n", "length"}},
    {"initial", {"profile", "amplitude", "mode"}},
    {"run", {"t_end", "dt_policy", "output_every", "seed"}},
};

}  // namespace

Config parse_config(const std::string& text) {
  std::map<std::string, std::map<std::string, std::string>> kv;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw validation_error("config line " + std::to_string(lineno) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      if (kSchema.find(section) == kSchema.end())
        throw validation_error("config: unknown section [" + section + "]");
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw validation_error("config line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw validation_error("config line " + std::to_string(lineno) + ": key outside a section");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (kSchema.at(section).find(key) == kSchema.at(section).end())
      throw validation_error("config: unknown key '" + section + "." + key + "'");
    if (kv[section].count(key))
      throw validation_error("config: duplicate key '" + section + "." + key + "'");
    kv[section][key] = val;
  }

  auto get = [&](const std::string& sec, const std::string& key,
                 const std::string& fallback) -> std::string {
    auto s = kv.find(sec);
    if (s == kv.end()) return fallback;
    auto k = s->second.find(key);
    return k == s->second.end() ? fallback : k->second;
  };
  auto require = [&](const std::string& sec, const std::string& key) -> std::string {
    std::string v = get(sec, key, "");
    if (v.empty()) throw validation_error("config: missing required key '" + sec + "." + key + "'");
    return v;
  };

  Config cfg;
  cfg.text = text;

  cfg.epsilons = to_number_list("params.epsilon", require("params", "epsilon"));
  for (std::size_t i = 1; i < cfg.epsilons.size(); ++i)
    if (!(cfg.epsilons[i] < cfg.epsilons[i - 1]))
      throw validation_error("params.epsilon: list must be strictly decreasing");
  const double c_p = to_number("params.c_p", require("params", "c_p"));
  const double c_k = to_number("params.c_k", require("params", "c_k"));
  const double gamma = to_number("params.gamma", require("params", "gamma"));
  const double alpha = to_number("params.alpha", require("params", "alpha"));
  const double d_raw = to_number("params.d", require("params", "d"));
  if (d_raw != 1.0 && d_raw != 2.0) throw validation_error("params.d: dimension must be 1 or 2");
  cfg.params = Params::validated(cfg.epsilons.front(), c_p, c_k, gamma, alpha,
                                 static_cast<int>(d_raw));

  const double n_raw = to_number("grid.n", get("grid", "n", "128"));
  if (n_raw < 16 || n_raw != std::floor(n_raw) || static_cast<long>(n_raw) % 2 != 0)
    throw validation_error("grid.n: must be an even integer >= 16");
  cfg.grid.n = static_cast<int>(n_raw);
  const std::string length_raw = get("grid", "length", "");
  cfg.grid.length = length_raw.empty() ? kTwoPi : to_number("grid.length", length_raw);
  if (!(cfg.grid.length > 0.0)) throw validation_error("grid.length: must be positive");

  cfg.initial.profile = get("initial", "profile", "bump");
  cfg.initial.amplitude = to_number("initial.amplitude", get("initial", "amplitude", "0.5"));
  const double mode_raw = to_number("initial.mode", get("initial", "mode", "1"));
  if (mode_raw < 1 || mode_raw != std::floor(mode_raw))
    throw validation_error("initial.mode: must be a positive integer");
  cfg.initial.mode = static_cast<int>(mode_raw);
  if (cfg.initial.profile != "uniform" && cfg.initial.profile.rfind("file:", 0) != 0) {
    if (!(cfg.initial.amplitude >= 0.0 && cfg.initial.amplitude <= 0.9))
      throw validation_error("initial.amplitude: must lie in [0, 0.9]");
  }

  cfg.run.t_end = to_number("run.t_end", get("run", "t_end", "1.0"));
  if (cfg.run.t_end < 0.0) throw validation_error("run.t_end: must be >= 0");
  cfg.run.dt_policy = get("run", "dt_policy", "auto");
  if (cfg.run.dt_policy != "auto" && cfg.run.dt_policy.rfind("auto:", 0) != 0 &&
      cfg.run.dt_policy.rfind("fixed:", 0) != 0)
    throw validation_error("run.dt_policy: expected auto, auto:<scale>, or fixed:<dt>");
  cfg.run.fixed_dt();
  cfg.run.dt_scale();
  cfg.run.output_every = to_number("run.output_every", get("run", "output_every", "0"));
  if (cfg.run.output_every < 0.0) throw validation_error("run.output_every: must be >= 0");
  const double seed_raw = to_number("run.seed", get("run", "seed", "0"));
  if (seed_raw < 0 || seed_raw != std::floor(seed_raw))
    throw validation_error("run.seed: must be a nonnegative integer");
  cfg.run.seed = static_cast<std::uint64_t>(seed_raw);

  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("config: cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

std::string config_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace relax
