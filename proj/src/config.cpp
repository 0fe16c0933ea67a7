#include "arching/config.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace arching {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("invalid value '" + value + "' for key '" + key + "'");
  }
  return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& value) {
  std::vector<T> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<T>(key, trim(item)));
  return out;
}

std::vector<std::string> split_names(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

template <typename T>
std::string join(const std::vector<T>& values) {
  return fmt::format("{}", fmt::join(values, ","));
}

// Applies the engine keys found in `kv`, erasing each one it consumes.
void apply_engine_keys(std::map<std::string, std::string>& kv, SimConfig& cfg) {
  auto take = [&kv](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  if (auto v = take("L")) cfg.L = parse_number<int>("L", *v);
  if (auto v = take("max_steps")) cfg.max_steps = parse_number<int>("max_steps", *v);
  bool radius_set = false;
  if (auto v = take("vision_radius")) {
    cfg.vision_radius = parse_number<int>("vision_radius", *v);
    radius_set = true;
  }
  if (auto v = take("spawn_margin")) cfg.spawn_margin = parse_number<int>("spawn_margin", *v);
  if (auto v = take("d_max")) {
    cfg.similarity.d_max = parse_number<double>("d_max", *v);
  } else if (radius_set) {
    cfg.similarity.d_max = cfg.vision_radius;
  }
  if (auto v = take("trigger_threshold")) {
    cfg.similarity.trigger_threshold = parse_number<double>("trigger_threshold", *v);
  }
  auto dims = take("similarity_dimensions");
  auto weights = take("similarity_weights");
  if (dims || weights) {
    if (!dims || !weights) {
      throw ConfigError("similarity_dimensions and similarity_weights must be given together");
    }
    const auto names = split_names(*dims);
    const auto ws = parse_list<double>("similarity_weights", *weights);
    if (names.size() != ws.size()) {
      throw ConfigError("similarity_dimensions and similarity_weights differ in length");
    }
    cfg.similarity.dimensions.clear();
    for (std::size_t i = 0; i < names.size(); ++i) {
      cfg.similarity.dimensions.push_back({parse_dimension_kind(names[i]), ws[i]});
    }
  }
  if (auto v = take("arch_threshold_factor")) {
    cfg.arch_threshold_factor = parse_number<double>("arch_threshold_factor", *v);
  }
  if (auto v = take("arch_persistence")) {
    cfg.arch_persistence = parse_number<int>("arch_persistence", *v);
  }
  if (auto v = take("arch_seed_distance")) {
    cfg.arch_seed_distance = parse_number<double>("arch_seed_distance", *v);
  }
}

void reject_leftovers(const std::map<std::string, std::string>& kv) {
  if (kv.empty()) return;
  throw ConfigError("unknown configuration key '" + kv.begin()->first + "'");
}

std::string engine_text(const SimConfig& c) {
  std::vector<std::string> names;
  std::vector<double> weights;
  for (const auto& d : c.similarity.dimensions) {
    names.emplace_back(to_string(d.kind));
    weights.push_back(d.weight);
  }
  std::string out;
  out += fmt::format("L = {}\n", c.L);
  out += fmt::format("max_steps = {}\n", c.max_steps);
  out += fmt::format("vision_radius = {}\n", c.vision_radius);
  out += fmt::format("spawn_margin = {}\n", c.spawn_margin);
  out += fmt::format("similarity_dimensions = {}\n", join(names));
  out += fmt::format("similarity_weights = {}\n", join(weights));
  out += fmt::format("d_max = {}\n", c.similarity.d_max);
  out += fmt::format("trigger_threshold = {}\n", c.similarity.trigger_threshold);
  out += fmt::format("arch_threshold_factor = {}\n", c.arch_threshold_factor);
  out += fmt::format("arch_persistence = {}\n", c.arch_persistence);
  out += fmt::format("arch_seed_distance = {}\n", c.arch_seed_distance);
  return out;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("line {}: expected 'key = value'", lineno));
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(fmt::format("line {}: empty key or value", lineno));
    }
    if (!kv.emplace(key, value).second) {
      throw ConfigError(fmt::format("line {}: duplicate key '{}'", lineno, key));
    }
  }
  return kv;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SimConfig sim_config_from_text(const std::string& text) {
  auto kv = parse_key_values(text);
  SimConfig cfg;
  auto take_int = [&kv](const char* key, int& out) {
    if (auto it = kv.find(key); it != kv.end()) {
      out = parse_number<int>(key, it->second);
      kv.erase(it);
    }
  };
  take_int("c", cfg.c);
  take_int("w", cfg.w);
  take_int("W", cfg.W);
  if (auto it = kv.find("seed"); it != kv.end()) {
    cfg.seed = parse_number<std::uint64_t>("seed", it->second);
    kv.erase(it);
  }
  apply_engine_keys(kv, cfg);
  reject_leftovers(kv);
  cfg.validate();
  return cfg;
}

SimConfig load_sim_config(const std::filesystem::path& path) {
  return sim_config_from_text(read_file(path));
}

std::string to_text(const SimConfig& c) {
  std::string out = fmt::format("# effective run configuration, schema version {}\n", kSchemaVersion);
  out += fmt::format("c = {}\nw = {}\nW = {}\nseed = {}\n", c.c, c.w, c.W, c.seed);
  out += engine_text(c);
  return out;
}

ArchParams arch_params(const SimConfig& config) {
  return {config.arch_threshold_factor, config.arch_persistence, config.arch_seed_distance};
}

void SweepConfig::validate() const {
  if (c_levels.empty()) throw ConfigError("c_levels must not be empty");
  if (w_levels.empty()) throw ConfigError("w_levels must not be empty");
  if (replicates < 1) throw ConfigError("replicates must be at least 1");
  SimConfig probe = engine;
  probe.c = 0;
  probe.w = 1;
  probe.W = W;
  probe.validate();
}

SweepConfig sweep_config_from_text(const std::string& text) {
  auto kv = parse_key_values(text);
  SweepConfig cfg;
  if (auto it = kv.find("c_levels"); it != kv.end()) {
    cfg.c_levels = parse_list<int>("c_levels", it->second);
    kv.erase(it);
  }
  if (auto it = kv.find("w_levels"); it != kv.end()) {
    cfg.w_levels = parse_list<int>("w_levels", it->second);
    kv.erase(it);
  }
  if (auto it = kv.find("W"); it != kv.end()) {
    cfg.W = parse_number<int>("W", it->second);
    kv.erase(it);
  }
  if (auto it = kv.find("replicates"); it != kv.end()) {
    cfg.replicates = parse_number<int>("replicates", it->second);
    kv.erase(it);
  }
  if (auto it = kv.find("base_seed"); it != kv.end()) {
    cfg.base_seed = parse_number<std::uint64_t>("base_seed", it->second);
    kv.erase(it);
  }
  apply_engine_keys(kv, cfg.engine);
  reject_leftovers(kv);
  cfg.engine.W = cfg.W;
  cfg.validate();
  return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  return sweep_config_from_text(read_file(path));
}

std::string to_text(const SweepConfig& c) {
  std::string out =
      fmt::format("# effective sweep configuration, schema version {}\n", kSchemaVersion);
  out +=
      "# per-run seed: h = splitmix64(base_seed); h = splitmix64(h ^ c); "
      "h = splitmix64(h ^ w); seed = splitmix64(h ^ replicate)\n";
  out += fmt::format("c_levels = {}\nw_levels = {}\nW = {}\nreplicates = {}\nbase_seed = {}\n",
                     join(c.c_levels), join(c.w_levels), c.W, c.replicates, c.base_seed);
  out += engine_text(c.engine);
  return out;
}

std::uint64_t derive_seed(std::uint64_t base_seed, int c, int w, int replicate) {
  std::uint64_t h = splitmix64(base_seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(c));
  h = splitmix64(h ^ static_cast<std::uint64_t>(w));
  return splitmix64(h ^ static_cast<std::uint64_t>(replicate));
}

}  // namespace arching
