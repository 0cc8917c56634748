#include "slthermo/config.hpp"

#include "slthermo/postprocess.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace slthermo {

ConfigError::ConfigError(Kind kind, std::string key, int line, const std::string& detail)
    : Error([&] {
        std::ostringstream msg;
        switch (kind) {
          case Kind::unknown_key: msg << "unknown key"; break;
          case Kind::type_mismatch: msg << "type mismatch"; break;
          case Kind::invariant_violation: msg << "invariant violation"; break;
          case Kind::syntax: msg << "syntax error"; break;
        }
        if (!key.empty()) msg << " for '" << key << "'";
        if (line > 0) msg << " on line " << line;
        if (!detail.empty()) msg << ": " << detail;
        return msg.str();
      }()),
      kind_(kind),
      key_(std::move(key)),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

struct Parser {
  const std::string& key;
  int line;

  [[noreturn]] void mismatch(std::string_view value, std::string_view expected) const {
    throw ConfigError(ConfigError::Kind::type_mismatch, key, line,
                      "expected " + std::string(expected) + ", got '" + std::string(value) + "'");
  }

  double real(std::string_view text) const {
    const std::string_view v = trim(text);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) mismatch(v, "a number");
    return out;
  }

  int integer(std::string_view text) const {
    const std::string_view v = trim(text);
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) mismatch(v, "an integer");
    return out;
  }

  bool boolean(std::string_view text) const {
    const std::string_view v = trim(text);
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    mismatch(v, "true or false");
  }

  std::vector<double> reals(std::string_view text) const {
    std::vector<double> out;
    std::string_view rest = trim(text);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      out.push_back(real(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return out;
  }

  std::vector<std::string> words(std::string_view text) const {
    std::vector<std::string> out;
    std::string_view rest = trim(text);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto word = trim(rest.substr(0, comma));
      if (word.empty()) mismatch(text, "a comma-separated list of names");
      out.emplace_back(word);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return out;
  }
};

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + format_double(values[i]);
  return out;
}

std::string join(const std::vector<std::string>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + values[i];
  return out;
}

struct KeyEntry {
  const char* name;
  std::function<void(RunConfig&, const std::string&, const Parser&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define SLTHERMO_REAL_KEY(NAME, FIELD)                                                            \
  KeyEntry {                                                                                      \
    NAME, [](RunConfig& c, const std::string& v, const Parser& p) { c.FIELD = p.real(v); },      \
        [](const RunConfig& c) { return format_double(c.FIELD); }                                 \
  }

const std::vector<KeyEntry>& key_table() {
  static const std::vector<KeyEntry> table = {
      {"mesh.nx", [](RunConfig& c, const std::string& v, const Parser& p) { c.mesh.nx = p.integer(v); },
       [](const RunConfig& c) { return std::to_string(c.mesh.nx); }},
      {"mesh.ny", [](RunConfig& c, const std::string& v, const Parser& p) { c.mesh.ny = p.integer(v); },
       [](const RunConfig& c) { return std::to_string(c.mesh.ny); }},
      {"mesh.crack", [](RunConfig& c, const std::string& v, const Parser& p) { c.mesh.cracked = p.boolean(v); },
       [](const RunConfig& c) { return std::string(c.mesh.cracked ? "true" : "false"); }},
      SLTHERMO_REAL_KEY("crack.y_line", mesh.crack.y_line),
      {"crack.mouth_edge",
       [](RunConfig& c, const std::string& v, const Parser& p) {
         const auto word = trim(v);
         if (word == "left") c.mesh.crack.mouth_edge = MouthEdge::left;
         else if (word == "right") c.mesh.crack.mouth_edge = MouthEdge::right;
         else p.mismatch(word, "left or right");
       },
       [](const RunConfig& c) { return std::string(c.mesh.crack.mouth_edge == MouthEdge::left ? "left" : "right"); }},
      SLTHERMO_REAL_KEY("crack.tip_x", mesh.crack.tip_x),
      {"element_order", [](RunConfig& c, const std::string& v, const Parser& p) { c.element_order = p.integer(v); },
       [](const RunConfig& c) { return std::to_string(c.element_order); }},
      SLTHERMO_REAL_KEY("material.lambda", material.lambda),
      SLTHERMO_REAL_KEY("material.mu", material.mu),
      SLTHERMO_REAL_KEY("material.gamma", material.gamma),
      SLTHERMO_REAL_KEY("material.fiber_angle", material.fiber_angle),
      SLTHERMO_REAL_KEY("material.a", material.a),
      SLTHERMO_REAL_KEY("material.b", material.b),
      SLTHERMO_REAL_KEY("material.alpha_T", material.alpha_T),
      SLTHERMO_REAL_KEY("material.k", material.k),
      {"thermal_bc.kind",
       [](RunConfig& c, const std::string& v, const Parser& p) {
         const auto word = trim(v);
         if (word == "constant") c.thermal_bc.kind = ThermalLoad::constant;
         else if (word == "parabolic") c.thermal_bc.kind = ThermalLoad::parabolic;
         else p.mismatch(word, "constant or parabolic");
       },
       [](const RunConfig& c) {
         return std::string(c.thermal_bc.kind == ThermalLoad::constant ? "constant" : "parabolic");
       }},
      SLTHERMO_REAL_KEY("thermal_bc.theta0", thermal_bc.theta0),
      SLTHERMO_REAL_KEY("thermal_bc.c", thermal_bc.coefficient),
      SLTHERMO_REAL_KEY("thermal_bc.Q", heat_source),
      SLTHERMO_REAL_KEY("mechanical_bc.top_uy", mechanical_bc.top_uy),
      SLTHERMO_REAL_KEY("picard.tol", picard.tol),
      {"picard.max_iter", [](RunConfig& c, const std::string& v, const Parser& p) { c.picard.max_iter = p.integer(v); },
       [](const RunConfig& c) { return std::to_string(c.picard.max_iter); }},
      SLTHERMO_REAL_KEY("picard.damping", picard.damping),
      {"outputs.vtk_path", [](RunConfig& c, const std::string& v, const Parser&) { c.outputs.vtk_path = unquote(v); },
       [](const RunConfig& c) { return c.outputs.vtk_path; }},
      {"outputs.csv_path", [](RunConfig& c, const std::string& v, const Parser&) { c.outputs.csv_path = unquote(v); },
       [](const RunConfig& c) { return c.outputs.csv_path; }},
      {"outputs.profile_path",
       [](RunConfig& c, const std::string& v, const Parser&) { c.outputs.profile_path = unquote(v); },
       [](const RunConfig& c) { return c.outputs.profile_path; }},
      {"outputs.fields", [](RunConfig& c, const std::string& v, const Parser& p) { c.outputs.fields = p.words(v); },
       [](const RunConfig& c) { return join(c.outputs.fields); }},
      {"sweep.parameter",
       [](RunConfig& c, const std::string& v, const Parser& p) {
         const auto word = trim(v);
         if (word == "none") {
           c.sweep.reset();
         } else if (word == "a" || word == "b") {
           if (!c.sweep) c.sweep.emplace();
           c.sweep->parameter = word == "a" ? SweepParameter::a : SweepParameter::b;
         } else {
           p.mismatch(word, "none, a or b");
         }
       },
       [](const RunConfig& c) { return c.sweep ? std::string(to_string(c.sweep->parameter)) : std::string("none"); }},
      {"sweep.values",
       [](RunConfig& c, const std::string& v, const Parser& p) {
         if (!c.sweep) c.sweep.emplace();
         c.sweep->values = p.reals(v);
       },
       [](const RunConfig& c) { return c.sweep ? join(c.sweep->values) : std::string(); }},
  };
  return table;
}

#undef SLTHERMO_REAL_KEY

const KeyEntry* find_key(std::string_view key) {
  for (const auto& entry : key_table()) {
    if (key == entry.name) return &entry;
  }
  return nullptr;
}

}  // namespace

std::string_view to_string(SweepParameter parameter) { return parameter == SweepParameter::a ? "a" : "b"; }

SweepParameter parse_sweep_parameter(std::string_view text) {
  text = trim(text);
  if (text == "a") return SweepParameter::a;
  if (text == "b") return SweepParameter::b;
  throw ConfigError(ConfigError::Kind::type_mismatch, "sweep.parameter", 0, "expected a or b");
}

std::vector<double> parse_value_list(std::string_view text) {
  const std::string key = "sweep.values";
  return Parser{key, 0}.reals(text);
}

void set_config_value(RunConfig& config, const std::string& key, const std::string& value, int line) {
  const KeyEntry* entry = find_key(key);
  if (entry == nullptr) throw ConfigError(ConfigError::Kind::unknown_key, key, line, "");
  entry->set(config, value, Parser{key, line});
}

void validate(const RunConfig& c) {
  auto require = [](bool ok, const char* key, const std::string& detail) {
    if (!ok) throw ConfigError(ConfigError::Kind::invariant_violation, key, 0, detail);
  };
  const int min_cells = c.mesh.cracked ? 2 : 1;
  require(c.mesh.nx >= min_cells, "mesh.nx", "need at least " + std::to_string(min_cells) + " cells");
  require(c.mesh.ny >= min_cells, "mesh.ny", "need at least " + std::to_string(min_cells) + " cells");
  require(c.element_order == 1 || c.element_order == 2, "element_order", "must be 1 or 2");
  const auto& m = c.material;
  require(std::isfinite(m.lambda) && m.lambda >= 0.0, "material.lambda", "must be >= 0");
  require(std::isfinite(m.mu) && m.mu > 0.0, "material.mu", "must be > 0");
  require(std::isfinite(m.gamma), "material.gamma", "must be finite");
  require(std::isfinite(m.fiber_angle), "material.fiber_angle", "must be finite");
  require(std::isfinite(m.a) && m.a > 0.0, "material.a", "must be > 0");
  require(std::isfinite(m.b) && m.b >= 0.0, "material.b", "must be >= 0");
  require(std::isfinite(m.alpha_T) && m.alpha_T >= 0.0, "material.alpha_T", "must be >= 0");
  require(std::isfinite(m.k) && m.k > 0.0, "material.k", "must be > 0");
  try {
    (void)build_stiffness(m.lambda, m.mu, m.gamma, m.fiber_angle);
  } catch (const NotPositiveDefinite& err) {
    require(false, "material.gamma", err.what());
  }
  require(std::isfinite(c.thermal_bc.theta0), "thermal_bc.theta0", "must be finite");
  require(std::isfinite(c.thermal_bc.coefficient), "thermal_bc.c", "must be finite");
  require(std::isfinite(c.heat_source), "thermal_bc.Q", "must be finite");
  require(std::isfinite(c.mechanical_bc.top_uy), "mechanical_bc.top_uy", "must be finite");
  require(c.picard.tol > 0.0, "picard.tol", "must be > 0");
  require(c.picard.max_iter >= 1, "picard.max_iter", "must be >= 1");
  require(c.picard.damping > 0.0 && c.picard.damping <= 1.0, "picard.damping", "must lie in (0, 1]");
  if (c.mesh.cracked) {
    try {
      (void)SeamLattice(c.mesh.nx, c.mesh.ny, c.mesh.crack);
    } catch (const MisalignedCrack& err) {
      require(false, "crack.tip_x", err.what());
    }
  }
  if (c.sweep) {
    require(!c.sweep->values.empty(), "sweep.values", "needs at least one value");
    for (double v : c.sweep->values) {
      require(std::isfinite(v), "sweep.values", "values must be finite");
      if (c.sweep->parameter == SweepParameter::a) require(v > 0.0, "sweep.values", "a must be > 0");
      if (c.sweep->parameter == SweepParameter::b) require(v >= 0.0, "sweep.values", "b must be >= 0");
    }
  }
}

RunConfig parse_config(std::string_view text, const std::vector<std::pair<std::string, std::string>>& overrides) {
  RunConfig config;
  std::map<std::string, int> line_of;
  int line_number = 0;
  while (!text.empty()) {
    ++line_number;
    const auto newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(ConfigError::Kind::syntax, "", line_number, "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(ConfigError::Kind::syntax, "", line_number, "missing key");
    set_config_value(config, key, std::string(trim(line.substr(eq + 1))), line_number);
    line_of[key] = line_number;
  }
  for (const auto& [key, value] : overrides) {
    set_config_value(config, key, value, 0);
    line_of[key] = 0;
  }
  try {
    validate(config);
  } catch (const ConfigError& err) {
    const auto it = line_of.find(err.key());
    const int line = it == line_of.end() ? 0 : it->second;
    const std::string what = err.what();
    const auto colon = what.find(": ");
    throw ConfigError(err.kind(), err.key(), line, colon == std::string::npos ? "" : what.substr(colon + 2));
  }
  return config;
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  for (const auto& entry : key_table()) {
    if (!config.sweep && std::string_view(entry.name) == "sweep.values") continue;
    out << entry.name << " = " << entry.get(config) << '\n';
  }
  return out.str();
}

}  // namespace slthermo
