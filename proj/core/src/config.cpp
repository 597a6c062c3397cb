#include "ezstab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "ezstab/preferences.hpp"

namespace ezstab::cli {

namespace {

struct Entry {
  std::string value;
  int line = 0;
  int col = 0;
  bool used = false;
};

using Sections = std::map<std::string, std::map<std::string, Entry>>;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

Sections tokenize(const std::string& text) {
  Sections out;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(line_no, static_cast<int>(raw.find('[')) + 1, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(line_no, 1, "empty section name");
      out[section];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line_no, 1, "expected 'key = value' or '[section]'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, 1, "empty key");
    if (section.empty()) throw ConfigError(line_no, 1, "key appears before any [section]");
    int col = static_cast<int>(raw.find(key)) + 1;
    if (out[section].count(key))
      throw ConfigError(line_no, col, "duplicate key '" + key + "' in [" + section + "]");
    out[section][key] = Entry{value, line_no, col, false};
  }
  return out;
}

class Reader {
 public:
  explicit Reader(Sections sections) : sections_(std::move(sections)) {}

  bool has(const std::string& section, const std::string& key) {
    auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
  }

  Entry& at(const std::string& section, const std::string& key) {
    auto& e = sections_[section][key];
    e.used = true;
    return e;
  }

  double number(const std::string& section, const std::string& key, double fallback) {
    if (!has(section, key)) return fallback;
    Entry& e = at(section, key);
    return parse_number(e);
  }

  long integer(const std::string& section, const std::string& key, long fallback) {
    if (!has(section, key)) return fallback;
    Entry& e = at(section, key);
    try {
      std::size_t pos = 0;
      long v = std::stol(e.value, &pos);
      if (pos != e.value.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw ConfigError(e.line, e.col, "expected an integer for '" + key + "', got '" + e.value + "'");
    }
  }

  bool boolean(const std::string& section, const std::string& key, bool fallback) {
    if (!has(section, key)) return fallback;
    Entry& e = at(section, key);
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    throw ConfigError(e.line, e.col, "expected true/false for '" + key + "'");
  }

  std::string text(const std::string& section, const std::string& key, std::string fallback) {
    if (!has(section, key)) return std::move(fallback);
    return at(section, key).value;
  }

  std::vector<double> number_list(const std::string& section, const std::string& key) {
    Entry& e = at(section, key);
    std::vector<double> out;
    std::istringstream in(e.value);
    std::string item;
    while (std::getline(in, item, ',')) {
      Entry fake{trim(item), e.line, e.col, true};
      out.push_back(parse_number(fake));
    }
    if (out.empty()) throw ConfigError(e.line, e.col, "empty list for '" + key + "'");
    return out;
  }

  double require_number(const std::string& section, const std::string& key) {
    if (!has(section, key)) {
      throw ConfigError(1, 1, "missing required key '" + key + "' in [" + section + "]");
    }
    Entry& e = at(section, key);
    return parse_number(e);
  }

  void check_all_used() const {
    for (const auto& [section, keys] : sections_)
      for (const auto& [key, e] : keys)
        if (!e.used)
          throw ConfigError(e.line, e.col, "unknown key '" + key + "' in [" + section + "]");
  }

 private:
  static double parse_number(const Entry& e) {
    std::string v = e.value;
    if (v == "inf" || v == "infinity") return std::numeric_limits<double>::infinity();
    try {
      std::size_t pos = 0;
      double d = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("");
      return d;
    } catch (...) {
      throw ConfigError(e.line, e.col, "expected a number, got '" + v + "'");
    }
  }

  Sections sections_;
};

ModelSpec read_model(Reader& r) {
  std::string type = r.text("model", "type", "");
  if (type.empty()) throw ConfigError(1, 1, "missing 'type' in [model]");
  if (type == "lognormal_ar1") {
    LognormalAR1 base = bansal_yaron_calibration();
    return LognormalAR1{r.number("model", "mu_c", base.mu_c), r.number("model", "rho", base.rho),
                        r.number("model", "sigma", base.sigma),
                        r.number("model", "sigma_c", base.sigma_c)};
  }
  if (type == "markov_switching") {
    MarkovSwitching base = switching_calibration();
    return MarkovSwitching{r.number("model", "mu1", base.mu1),
                           r.number("model", "mu2", base.mu2),
                           r.number("model", "sigma1", base.sigma1),
                           r.number("model", "sigma2", base.sigma2),
                           r.number("model", "q11", base.q11),
                           r.number("model", "q22", base.q22)};
  }
  if (type == "ssy") {
    SSY base = ssy_calibration();
    return SSY{r.number("model", "mu_c", base.mu_c),
               r.number("model", "rho", base.rho),
               r.number("model", "phi_z", base.phi_z),
               r.number("model", "sigma_bar", base.sigma_bar),
               r.number("model", "phi_c", base.phi_c),
               r.number("model", "rho_hz", base.rho_hz),
               r.number("model", "sigma_hz", base.sigma_hz),
               r.number("model", "rho_hc", base.rho_hc),
               r.number("model", "sigma_hc", base.sigma_hc)};
  }
  if (type == "trend_iid") {
    TrendIID base = trend_calibration();
    TrendIID out;
    out.tau = r.number("model", "tau", base.tau);
    if (r.has("model", "support")) {
      out.factor.support = r.number_list("model", "support");
      out.factor.probs = r.has("model", "probs")
                             ? r.number_list("model", "probs")
                             : std::vector<double>(out.factor.support.size(),
                                                   1.0 / static_cast<double>(out.factor.support.size()));
    } else {
      out.factor = base.factor;
      if (r.has("model", "probs")) out.factor.probs = r.number_list("model", "probs");
    }
    return out;
  }
  throw ConfigError(1, 1, "unknown model type '" + type + "'");
}

RunConfig interpret(Reader& r) {
  RunConfig config;
  config.model = read_model(r);

  config.beta = r.number("preferences", "beta", config.beta);
  config.gamma = r.number("preferences", "gamma", config.gamma);
  config.psi = r.number("preferences", "psi", config.psi);

  config.method_analytic = r.boolean("methods", "analytic", config.method_analytic);
  config.method_spectral = r.boolean("methods", "spectral", config.method_spectral);
  config.method_montecarlo = r.boolean("methods", "montecarlo", config.method_montecarlo);

  config.mc.m = static_cast<int>(r.integer("mc", "m", config.mc.m));
  config.mc.n = static_cast<int>(r.integer("mc", "n", config.mc.n));
  config.mc.draws = static_cast<int>(r.integer("mc", "draws", config.mc.draws));
  config.mc.seed = static_cast<std::uint64_t>(r.integer("mc", "seed", static_cast<long>(config.mc.seed)));
  config.mc.truncation = r.number("mc", "truncation", config.mc.truncation);

  config.grid.d = static_cast<int>(r.integer("grid", "D", config.grid.d));
  config.grid.h = static_cast<int>(r.integer("grid", "H", config.grid.h));
  config.grid.i = static_cast<int>(r.integer("grid", "I", config.grid.i));
  config.grid.j = static_cast<int>(r.integer("grid", "J", config.grid.j));
  config.grid.n_grid = static_cast<int>(r.integer("grid", "n_grid", config.grid.n_grid));
  config.grid.n_quad = static_cast<int>(r.integer("grid", "n_quad", config.grid.n_quad));

  config.out_path = r.text("output", "path", config.out_path);
  config.format = r.text("output", "format", config.format);
  config.workers = static_cast<int>(r.integer("output", "workers", config.workers));

  r.check_all_used();

  // Re-validate the referenced types now so bad values fail at parse time.
  try {
    validate(config.model);
    Preferences check(config.beta, config.gamma, config.psi);
    (void)check;
  } catch (const std::exception& e) {
    throw ConfigError(1, 1, e.what());
  }
  if (!config.method_analytic && !config.method_spectral && !config.method_montecarlo)
    throw ConfigError(1, 1, "at least one method must be enabled");
  if (config.format != "csv" && config.format != "json")
    throw ConfigError(1, 1, "format must be csv or json");
  if (config.mc.m < 1 || config.mc.n < 1 || config.mc.draws < 1)
    throw ConfigError(1, 1, "mc sizes must be positive");
  if (!(config.mc.truncation >= 0.0)) throw ConfigError(1, 1, "truncation must be >= 0 or inf");
  return config;
}

void flatten_json(const nlohmann::json& j, Sections& out, const std::string& text) {
  auto locate = [&](std::size_t) { return std::pair<int, int>{1, 1}; };
  (void)locate;
  (void)text;
  for (auto sec = j.begin(); sec != j.end(); ++sec) {
    if (!sec.value().is_object()) throw ConfigError(1, 1, "top-level entries must be sections");
    for (auto kv = sec.value().begin(); kv != sec.value().end(); ++kv) {
      std::string v;
      if (kv.value().is_string()) {
        v = kv.value().get<std::string>();
      } else if (kv.value().is_boolean()) {
        v = kv.value().get<bool>() ? "true" : "false";
      } else if (kv.value().is_number_integer()) {
        v = std::to_string(kv.value().get<long long>());
      } else if (kv.value().is_number()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", kv.value().get<double>());
        v = buf;
      } else if (kv.value().is_array()) {
        std::string acc;
        for (const auto& item : kv.value()) {
          if (!acc.empty()) acc += ", ";
          char buf[40];
          std::snprintf(buf, sizeof buf, "%.17g", item.get<double>());
          acc += buf;
        }
        v = acc;
      } else {
        throw ConfigError(1, 1, "unsupported JSON value for key '" + kv.key() + "'");
      }
      out[sec.key()][kv.key()] = Entry{v, 1, 1, false};
    }
  }
}

std::pair<int, int> line_col_of_offset(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  Sections sections;
  if (first != std::string::npos && text[first] == '{') {
    try {
      nlohmann::json j = nlohmann::json::parse(text);
      flatten_json(j, sections, text);
    } catch (const nlohmann::json::parse_error& e) {
      auto [line, col] = line_col_of_offset(text, e.byte);
      throw ConfigError(line, col, std::string("JSON: ") + e.what());
    }
  } else {
    sections = tokenize(text);
  }
  Reader reader(std::move(sections));
  return interpret(reader);
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(1, 1, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  out << "[model]\n";
  out << "type = " << model_name(config.model) << "\n";
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LognormalAR1>) {
          out << "mu_c = " << format_number(m.mu_c) << "\n";
          out << "rho = " << format_number(m.rho) << "\n";
          out << "sigma = " << format_number(m.sigma) << "\n";
          out << "sigma_c = " << format_number(m.sigma_c) << "\n";
        } else if constexpr (std::is_same_v<T, MarkovSwitching>) {
          out << "mu1 = " << format_number(m.mu1) << "\n";
          out << "mu2 = " << format_number(m.mu2) << "\n";
          out << "sigma1 = " << format_number(m.sigma1) << "\n";
          out << "sigma2 = " << format_number(m.sigma2) << "\n";
          out << "q11 = " << format_number(m.q11) << "\n";
          out << "q22 = " << format_number(m.q22) << "\n";
        } else if constexpr (std::is_same_v<T, SSY>) {
          out << "mu_c = " << format_number(m.mu_c) << "\n";
          out << "rho = " << format_number(m.rho) << "\n";
          out << "phi_z = " << format_number(m.phi_z) << "\n";
          out << "sigma_bar = " << format_number(m.sigma_bar) << "\n";
          out << "phi_c = " << format_number(m.phi_c) << "\n";
          out << "rho_hz = " << format_number(m.rho_hz) << "\n";
          out << "sigma_hz = " << format_number(m.sigma_hz) << "\n";
          out << "rho_hc = " << format_number(m.rho_hc) << "\n";
          out << "sigma_hc = " << format_number(m.sigma_hc) << "\n";
        } else if constexpr (std::is_same_v<T, TrendIID>) {
          out << "tau = " << format_number(m.tau) << "\n";
          std::string support, probs;
          for (std::size_t i = 0; i < m.factor.support.size(); ++i) {
            if (i) {
              support += ", ";
              probs += ", ";
            }
            support += format_number(m.factor.support[i]);
            probs += format_number(m.factor.probs[i]);
          }
          out << "support = " << support << "\n";
          out << "probs = " << probs << "\n";
        }
      },
      config.model);

  out << "\n[preferences]\n";
  out << "beta = " << format_number(config.beta) << "\n";
  out << "gamma = " << format_number(config.gamma) << "\n";
  out << "psi = " << format_number(config.psi) << "\n";

  out << "\n[methods]\n";
  out << "analytic = " << (config.method_analytic ? "true" : "false") << "\n";
  out << "spectral = " << (config.method_spectral ? "true" : "false") << "\n";
  out << "montecarlo = " << (config.method_montecarlo ? "true" : "false") << "\n";

  out << "\n[mc]\n";
  out << "m = " << config.mc.m << "\n";
  out << "n = " << config.mc.n << "\n";
  out << "draws = " << config.mc.draws << "\n";
  out << "seed = " << config.mc.seed << "\n";
  out << "truncation = " << format_number(config.mc.truncation) << "\n";

  out << "\n[grid]\n";
  out << "D = " << config.grid.d << "\n";
  out << "H = " << config.grid.h << "\n";
  out << "I = " << config.grid.i << "\n";
  out << "J = " << config.grid.j << "\n";
  out << "n_grid = " << config.grid.n_grid << "\n";
  out << "n_quad = " << config.grid.n_quad << "\n";

  out << "\n[output]\n";
  if (!config.out_path.empty()) out << "path = " << config.out_path << "\n";
  out << "format = " << config.format << "\n";
  out << "workers = " << config.workers << "\n";
  return out.str();
}

}  // namespace ezstab::cli
