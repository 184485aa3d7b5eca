#include "islsim/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <type_traits>
#include <sstream>

#include "json.hpp"

namespace islsim {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where.empty() ? what : where + ": " + what);
}

// Scaled value y with y * scale == x exactly, when one exists near x / scale.
std::optional<double> exact_scaled(double x, double scale) {
  double y = x / scale;
  if (y * scale == x) return y;
  double lo = y;
  double hi = y;
  for (int i = 0; i < 8; ++i) {
    lo = std::nextafter(lo, -std::numeric_limits<double>::infinity());
    hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
    if (lo * scale == x) return lo;
    if (hi * scale == x) return hi;
  }
  return std::nullopt;
}

// Writes `x` under `key` in boundary units, or under `si_key` when no exact boundary value exists.
void put_scaled(Json& j, const char* key, const char* si_key, double x, double scale) {
  if (auto y = exact_scaled(x, scale)) {
    j[key] = *y;
  } else {
    j[si_key] = x;
  }
}

class Reader {
 public:
  Reader(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) fail(where_, "expected an object");
  }

  bool has(const char* key) const { return j_.contains(key); }

  const Json& at(const char* key) {
    seen_.push_back(key);
    return j_.at(key);
  }

  double number(const char* key, double current) {
    if (!has(key)) return current;
    const Json& v = at(key);
    if (!v.is_number()) fail(path(key), "expected a number");
    return v.get<double>();
  }

  double scaled(const char* key, const char* si_key, double current, double scale) {
    if (has(key) && has(si_key)) fail(where_, std::string("both '") + key + "' and '" + si_key + "' given");
    if (has(si_key)) return number(si_key, current);
    if (has(key)) return number(key, current) * scale;
    return current;
  }

  template <class Int>
  Int integer(const char* key, Int current) {
    if (!has(key)) return current;
    const Json& v = at(key);
    if (v.is_number_unsigned()) {
      auto u = v.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(std::numeric_limits<Int>::max())) fail(path(key), "out of range");
      return static_cast<Int>(u);
    }
    if (v.is_number_integer()) {
      auto s = v.get<std::int64_t>();
      if constexpr (std::is_unsigned_v<Int>) {
        if (s < 0) fail(path(key), "must be non-negative");
      } else {
        if (s < std::numeric_limits<Int>::min() || s > std::numeric_limits<Int>::max()) fail(path(key), "out of range");
      }
      return static_cast<Int>(s);
    }
    fail(path(key), "expected an integer");
  }

  std::string string(const char* key, const std::string& current) {
    if (!has(key)) return current;
    const Json& v = at(key);
    if (!v.is_string()) fail(path(key), "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const char* key, const std::vector<double>& current) {
    if (!has(key)) return current;
    const Json& v = at(key);
    if (!v.is_array()) fail(path(key), "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) fail(path(key), "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  template <class Enum, class Parse>
  Enum choice(const char* key, Enum current, Parse parse) {
    if (!has(key)) return current;
    std::string s = string(key, "");
    try {
      return parse(s);
    } catch (const std::invalid_argument& e) {
      fail(path(key), e.what());
    }
  }

  Reader child(const char* key) { return Reader(at(key), path(key)); }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      bool known = false;
      for (const auto& s : seen_) known = known || s == it.key();
      if (!known) fail(where_, "unknown key '" + it.key() + "'");
    }
  }

  std::string path(const char* key) const { return where_.empty() ? key : where_ + "." + key; }

 private:
  const Json& j_;
  std::string where_;
  std::vector<std::string> seen_;
};

Json to_json(const ExperimentSpec& s) {
  Json j;
  j["label"] = s.label;

  Json c;
  c["planes"] = s.constellation.planes;
  c["sats_per_plane"] = s.constellation.sats_per_plane;
  put_scaled(c, "base_altitude_km", "base_altitude_m", s.constellation.base_altitude, 1e3);
  put_scaled(c, "delta_altitude_km", "delta_altitude_m", s.constellation.delta_altitude, 1e3);
  if (!s.constellation.longitudes.empty()) c["longitudes_rad"] = s.constellation.longitudes;
  if (!s.constellation.phase_offsets.empty()) c["phase_offsets_rad"] = s.constellation.phase_offsets;
  j["constellation"] = c;

  Json r;
  put_scaled(r, "freq_ghz", "freq_hz", s.radio.frequency, 1e9);
  put_scaled(r, "bandwidth_mhz", "bandwidth_hz", s.radio.bandwidth, 1e6);
  r["noise_temp_k"] = s.radio.noise_temperature;
  r["eirpg_w"] = s.radio.eirpg;
  put_scaled(r, "rmin_kbps", "rmin_bps", s.radio.min_rate, 1e3);
  r["antenna"] = std::string(to_string(s.radio.antenna));
  r["speed_of_light_mps"] = s.radio.speed_of_light;
  r["boltzmann_jpk"] = s.radio.boltzmann;
  j["radio"] = r;

  j["transceivers"] = s.transceivers;
  j["matching"] = std::string(to_string(s.matching));
  j["allocation"] = std::string(to_string(s.allocation));
  j["resources"] = Json{{"K", s.resources.count}, {"scheme", std::string(to_string(s.resources.scheme))}};
  j["period_s"] = s.period;
  j["nsim"] = s.realizations;
  j["seed"] = s.seed;
  return j;
}

ExperimentSpec apply(const Json& j, ExperimentSpec s, const std::string& where) {
  Reader rd(j, where);
  s.label = rd.string("label", s.label);
  if (rd.has("constellation")) {
    Reader c = rd.child("constellation");
    auto& cc = s.constellation;
    cc.planes = c.integer("planes", cc.planes);
    cc.sats_per_plane = c.integer("sats_per_plane", cc.sats_per_plane);
    cc.base_altitude = c.scaled("base_altitude_km", "base_altitude_m", cc.base_altitude, 1e3);
    cc.delta_altitude = c.scaled("delta_altitude_km", "delta_altitude_m", cc.delta_altitude, 1e3);
    cc.longitudes = c.numbers("longitudes_rad", cc.longitudes);
    cc.phase_offsets = c.numbers("phase_offsets_rad", cc.phase_offsets);
    c.finish();
  }
  if (rd.has("radio")) {
    Reader r = rd.child("radio");
    auto& rc = s.radio;
    rc.frequency = r.scaled("freq_ghz", "freq_hz", rc.frequency, 1e9);
    rc.bandwidth = r.scaled("bandwidth_mhz", "bandwidth_hz", rc.bandwidth, 1e6);
    rc.noise_temperature = r.number("noise_temp_k", rc.noise_temperature);
    rc.eirpg = r.number("eirpg_w", rc.eirpg);
    rc.min_rate = r.scaled("rmin_kbps", "rmin_bps", rc.min_rate, 1e3);
    rc.antenna = r.choice("antenna", rc.antenna, parse_antenna_scenario);
    rc.speed_of_light = r.number("speed_of_light_mps", rc.speed_of_light);
    rc.boltzmann = r.number("boltzmann_jpk", rc.boltzmann);
    r.finish();
  }
  s.transceivers = rd.integer("transceivers", s.transceivers);
  s.matching = rd.choice("matching", s.matching, parse_matching_algorithm);
  s.allocation = rd.choice("allocation", s.allocation, parse_allocation_algorithm);
  if (rd.has("resources")) {
    Reader k = rd.child("resources");
    s.resources.count = k.integer("K", s.resources.count);
    s.resources.scheme = k.choice("scheme", s.resources.scheme, parse_access_scheme);
    k.finish();
  }
  s.period = rd.number("period_s", s.period);
  s.realizations = rd.integer("nsim", s.realizations);
  s.seed = rd.integer("seed", s.seed);
  rd.finish();
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  return s;
}

Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

// Sweep axis name -> location inside a spec object.
struct Axis {
  const char* name;
  const char* section;  // nullptr: top level
  const char* key;
};

constexpr Axis kAxes[] = {
    {"planes", "constellation", "planes"},
    {"sats_per_plane", "constellation", "sats_per_plane"},
    {"base_altitude_km", "constellation", "base_altitude_km"},
    {"delta_altitude_km", "constellation", "delta_altitude_km"},
    {"freq_ghz", "radio", "freq_ghz"},
    {"bandwidth_mhz", "radio", "bandwidth_mhz"},
    {"noise_temp_k", "radio", "noise_temp_k"},
    {"eirpg_w", "radio", "eirpg_w"},
    {"rmin_kbps", "radio", "rmin_kbps"},
    {"antenna", "radio", "antenna"},
    {"transceivers", nullptr, "transceivers"},
    {"matching", nullptr, "matching"},
    {"allocation", nullptr, "allocation"},
    {"resources", "resources", "K"},
    {"K", "resources", "K"},
    {"scheme", "resources", "scheme"},
    {"period_s", nullptr, "period_s"},
    {"nsim", nullptr, "nsim"},
    {"seed", nullptr, "seed"},
};

const Axis& find_axis(const std::string& name) {
  for (const auto& a : kAxes) {
    if (name == a.name) return a;
  }
  fail("sweep", "unknown sweep axis '" + name + "'");
}

std::string axis_value_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

std::string spec_to_json(const ExperimentSpec& spec, int indent) { return to_json(spec).dump(indent); }

ExperimentSpec spec_from_json(std::string_view text, const ExperimentSpec& base) {
  return apply(parse(text), base, "");
}

std::vector<ExperimentSpec> sweep_from_json(std::string_view text, const ExperimentSpec& base) {
  Json doc = parse(text);
  if (!doc.is_object()) fail("", "expected an object");
  if (!doc.contains("base") && !doc.contains("sweep") && !doc.contains("specs")) return {apply(doc, base, "")};

  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "base" && it.key() != "sweep" && it.key() != "specs") fail("", "unknown key '" + it.key() + "'");
  }
  ExperimentSpec root = doc.contains("base") ? apply(doc["base"], base, "base") : base;

  std::vector<std::pair<Json, std::string>> variants{{Json::object(), ""}};
  if (doc.contains("specs")) {
    const Json& list = doc["specs"];
    if (!list.is_array() || list.empty()) fail("specs", "expected a non-empty array of objects");
    variants.clear();
    for (const auto& item : list) variants.emplace_back(item, "");
  }

  std::vector<std::pair<Json, std::string>> expanded;
  if (doc.contains("sweep")) {
    const Json& axes = doc["sweep"];
    if (!axes.is_object() || axes.empty()) fail("sweep", "expected a non-empty object of axes");
    for (const auto& [patch, tag] : variants) {
      std::vector<std::pair<Json, std::string>> acc{{patch, tag}};
      for (auto it = axes.begin(); it != axes.end(); ++it) {
        const Axis& axis = find_axis(it.key());
        if (!it.value().is_array() || it.value().empty()) fail("sweep." + it.key(), "expected a non-empty array");
        std::vector<std::pair<Json, std::string>> next;
        for (const auto& [p, t] : acc) {
          for (const auto& v : it.value()) {
            Json q = p;
            if (axis.section) {
              q[axis.section][axis.key] = v;
            } else {
              q[axis.key] = v;
            }
            std::string label = t.empty() ? "" : t + "_";
            next.emplace_back(std::move(q), label + it.key() + "=" + axis_value_text(v));
          }
        }
        acc = std::move(next);
      }
      for (auto& e : acc) expanded.push_back(std::move(e));
    }
  } else {
    expanded = std::move(variants);
  }

  std::vector<ExperimentSpec> out;
  out.reserve(expanded.size());
  for (std::size_t i = 0; i < expanded.size(); ++i) {
    const auto& [patch, tag] = expanded[i];
    ExperimentSpec s = apply(patch, root, "specs[" + std::to_string(i) + "]");
    if (!tag.empty() && !patch.contains("label")) {
      s.label = root.label.empty() ? tag : root.label + "_" + tag;
      for (char& ch : s.label) {
        if (ch == ',' || ch == '"') ch = ';';
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace islsim
