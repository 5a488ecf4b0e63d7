#include "estim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "estim/errors.hpp"
#include "estim/models.hpp"

namespace estim {

namespace {

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
  int column = 0;  ///< column of the value
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const Entry& e, const std::string& message) {
  throw ConfigError(e.line > 0 ? "line " + std::to_string(e.line) + ", column " +
                                     std::to_string(e.column) + ": " + message
                               : message,
                    e.key, e.line, e.column);
}

std::string unquote(const Entry& e) {
  std::string_view v = e.value;
  if (!v.empty() && v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') fail(e, "unterminated string for key '" + e.key + "'");
    v = v.substr(1, v.size() - 2);
  }
  return std::string(v);
}

double parse_double(const Entry& e, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    fail(e, "key '" + e.key + "' expects a number, got '" + std::string(text) + "'");
  }
  return value;
}

template <class Int>
Int parse_integer(const Entry& e) {
  const std::string_view text = trim(e.value);
  Int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    fail(e, "key '" + e.key + "' expects an integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> items;
  if (trim(text).empty()) return items;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    items.emplace_back(trim(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

Eigen::VectorXd parse_vector(const Entry& e) {
  const auto items = split_list(e.value);
  Eigen::VectorXd v(static_cast<Eigen::Index>(items.size()));
  for (std::size_t i = 0; i < items.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = parse_double(e, items[i]);
  }
  return v;
}

using Setter = std::function<void(ExperimentConfig&, const Entry&)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"model.name", [](ExperimentConfig& c, const Entry& e) { c.model_name = unquote(e); }},
      {"model.true_params",
       [](ExperimentConfig& c, const Entry& e) { c.true_params = parse_vector(e); }},
      {"model.y0", [](ExperimentConfig& c, const Entry& e) { c.y0 = parse_vector(e); }},
      {"model.t_span",
       [](ExperimentConfig& c, const Entry& e) {
         const Eigen::VectorXd span = parse_vector(e);
         if (span.size() != 2) fail(e, "key 'model.t_span' expects two values: start, end");
         c.t_start = span[0];
         c.t_end = span[1];
       }},
      {"model.n_steps",
       [](ExperimentConfig& c, const Entry& e) { c.n_steps = parse_integer<int>(e); }},
      {"noise.level",
       [](ExperimentConfig& c, const Entry& e) { c.noise_level = parse_double(e, e.value); }},
      {"noise.seed",
       [](ExperimentConfig& c, const Entry& e) { c.seed = parse_integer<std::uint64_t>(e); }},
      {"objective.alpha",
       [](ExperimentConfig& c, const Entry& e) { c.alpha = parse_double(e, e.value); }},
      {"objective.overflow_bound",
       [](ExperimentConfig& c, const Entry& e) { c.overflow_bound = parse_double(e, e.value); }},
      {"init.mode",
       [](ExperimentConfig& c, const Entry& e) {
         const std::string mode = unquote(e);
         if (mode == "grid") {
           c.init_mode = InitMode::Grid;
         } else if (mode == "explicit") {
           c.init_mode = InitMode::Explicit;
         } else {
           fail(e, "unknown init mode '" + mode + "'; valid modes: grid, explicit");
         }
       }},
      {"init.u0", [](ExperimentConfig& c, const Entry& e) { c.u0 = parse_vector(e); }},
      {"init.box.lower",
       [](ExperimentConfig& c, const Entry& e) { c.box.lower = parse_vector(e); }},
      {"init.box.upper",
       [](ExperimentConfig& c, const Entry& e) { c.box.upper = parse_vector(e); }},
      {"init.box.points",
       [](ExperimentConfig& c, const Entry& e) { c.box.points_per_dim = parse_integer<int>(e); }},
      {"init.box.budget",
       [](ExperimentConfig& c, const Entry& e) { c.box.budget = parse_integer<std::size_t>(e); }},
      {"optimizer.name",
       [](ExperimentConfig& c, const Entry& e) {
         const std::string name = unquote(e);
         if (name == "sd") {
           c.optimizer = OptimizerKind::SteepestDescent;
         } else if (name == "backtrack") {
           c.optimizer = OptimizerKind::Backtracking;
         } else if (name == "ncg") {
           c.optimizer = OptimizerKind::Ncg;
         } else {
           fail(e, "unknown optimizer '" + name + "'; valid optimizers: sd, backtrack, ncg");
         }
       }},
      {"optimizer.variant",
       [](ExperimentConfig& c, const Entry& e) {
         try {
           c.variant = parse_beta_rule(unquote(e));
         } catch (const std::invalid_argument& ex) {
           fail(e, ex.what());
         }
       }},
      {"optimizer.epsilon",
       [](ExperimentConfig& c, const Entry& e) {
         c.optimizer_config.tolerance = parse_double(e, e.value);
       }},
      {"optimizer.max_iterations",
       [](ExperimentConfig& c, const Entry& e) {
         c.optimizer_config.max_iterations = parse_integer<int>(e);
       }},
      {"optimizer.xi",
       [](ExperimentConfig& c, const Entry& e) {
         c.optimizer_config.lipschitz_xi = parse_double(e, e.value);
       }},
      {"optimizer.initial_step",
       [](ExperimentConfig& c, const Entry& e) {
         c.optimizer_config.initial_step = parse_double(e, e.value);
       }},
      {"optimizer.rho",
       [](ExperimentConfig& c, const Entry& e) { c.wolfe.rho = parse_double(e, e.value); }},
      {"optimizer.sigma",
       [](ExperimentConfig& c, const Entry& e) { c.wolfe.sigma = parse_double(e, e.value); }},
      {"optimizer.max_zoom",
       [](ExperimentConfig& c, const Entry& e) { c.wolfe.max_zoom = parse_integer<int>(e); }},
      {"optimizer.alpha_max",
       [](ExperimentConfig& c, const Entry& e) { c.wolfe.alpha_max = parse_double(e, e.value); }},
      {"output.directory",
       [](ExperimentConfig& c, const Entry& e) { c.output_directory = unquote(e); }},
      {"output.formats",
       [](ExperimentConfig& c, const Entry& e) { c.output_formats = split_list(e.value); }},
  };
  return table;
}

const Setter* find_setter(const std::string& key) {
  for (const auto& [name, setter] : setters()) {
    if (name == key) return &setter;
  }
  return nullptr;
}

Entry parse_assignment(std::string_view raw, int line) {
  const auto hash = raw.find('#');
  std::string_view body = raw.substr(0, hash);
  const auto eq = body.find('=');
  const auto first = body.find_first_not_of(" \t\r");
  Entry e;
  e.line = line;
  if (eq == std::string_view::npos) {
    e.column = static_cast<int>(first) + 1;
    fail(e, "expected 'key = value'");
  }
  e.key = std::string(trim(body.substr(0, eq)));
  if (e.key.empty()) {
    e.column = static_cast<int>(eq) + 1;
    fail(e, "missing key before '='");
  }
  if (e.key == "model") e.key = "model.name";
  const std::string_view rest = body.substr(eq + 1);
  const auto value_start = rest.find_first_not_of(" \t\r");
  e.column = static_cast<int>(eq + 1 + (value_start == std::string_view::npos ? 0 : value_start)) + 1;
  e.value = std::string(trim(rest));
  return e;
}

[[noreturn]] void invalid(const std::string& key, const std::string& message) {
  throw ConfigError(key + ": " + message, key);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_vector(const Eigen::VectorXd& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_double(v[i]);
  }
  return out;
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, setter] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

ExperimentConfig parse_config_text(std::string_view text,
                                   const std::vector<std::string>& overrides) {
  std::vector<Entry> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view body = trim(std::string_view(raw).substr(0, raw.find('#')));
    if (body.empty()) continue;
    entries.push_back(parse_assignment(raw, line));
  }
  for (const auto& o : overrides) {
    Entry e = parse_assignment(o, 0);
    e.line = 0;
    e.column = 0;
    entries.push_back(std::move(e));
  }

  std::string model_name;
  const Entry* name_entry = nullptr;
  for (const auto& e : entries) {
    if (!find_setter(e.key)) {
      fail(e, "unknown key '" + e.key + "'");
    }
    if (e.key == "model.name") {
      model_name = unquote(e);
      name_entry = &e;
    }
  }
  if (name_entry == nullptr) {
    throw ConfigError("model.name: required key missing; valid models: fhn, linear, vdp, species",
                      "model.name");
  }
  const auto& names = model_names();
  if (std::find(names.begin(), names.end(), model_name) == names.end()) {
    std::string valid;
    for (const auto& n : names) valid += (valid.empty() ? "" : ", ") + n;
    fail(*name_entry, "unknown model '" + model_name + "'; valid models: " + valid);
  }

  ExperimentConfig config = default_config(model_name);
  for (const auto& e : entries) {
    (*find_setter(e.key))(config, e);
  }
  validate_config(config);
  return config;
}

ExperimentConfig parse_config(const std::filesystem::path& path,
                              const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), overrides);
}

void validate_config(const ExperimentConfig& c) {
  const auto& names = model_names();
  if (std::find(names.begin(), names.end(), c.model_name) == names.end()) {
    invalid("model.name", "unknown model '" + c.model_name + "'");
  }
  const ModelInfo& info = model_info(c.model_name);
  const Eigen::Index m = info.true_params.size();
  if (c.true_params.size() != m || !c.true_params.allFinite()) {
    invalid("model.true_params", "expects " + std::to_string(m) + " finite values");
  }
  if (c.y0.size() != info.y0.size() || !c.y0.allFinite()) {
    invalid("model.y0", "expects " + std::to_string(info.y0.size()) + " finite values");
  }
  if (!std::isfinite(c.t_start) || !std::isfinite(c.t_end) || !(c.t_start < c.t_end)) {
    invalid("model.t_span", "needs finite start < end");
  }
  if (c.n_steps < 2) invalid("model.n_steps", "must be >= 2");
  if (!(c.noise_level >= 0.0) || !std::isfinite(c.noise_level)) {
    invalid("noise.level", "must be finite and >= 0");
  }
  if (!(c.alpha >= 0.0) || !std::isfinite(c.alpha)) {
    invalid("objective.alpha", "must be finite and >= 0");
  }
  if (!(c.overflow_bound > 0.0)) invalid("objective.overflow_bound", "must be positive");
  if (c.init_mode == InitMode::Explicit) {
    if (c.u0.size() != m || !c.u0.allFinite()) {
      invalid("init.u0", "expects " + std::to_string(m) + " finite values");
    }
  } else {
    if (c.box.lower.size() != m) {
      invalid("init.box.lower", "expects " + std::to_string(m) + " values");
    }
    if (c.box.upper.size() != m) {
      invalid("init.box.upper", "expects " + std::to_string(m) + " values");
    }
    for (Eigen::Index i = 0; i < m; ++i) {
      if (!(c.box.lower[i] < c.box.upper[i])) {
        invalid("init.box.upper", "needs lower < upper in every coordinate");
      }
    }
    if (c.box.points_per_dim < 2) invalid("init.box.points", "must be >= 2");
    if (c.box.total_points() > c.box.budget) {
      invalid("init.box.points", "lattice of " + std::to_string(c.box.total_points()) +
                                     " points exceeds the budget of " +
                                     std::to_string(c.box.budget));
    }
  }
  const OptimizerConfig& o = c.optimizer_config;
  if (!(o.tolerance > 0.0)) invalid("optimizer.epsilon", "must be positive");
  if (o.max_iterations < 1) invalid("optimizer.max_iterations", "must be >= 1");
  if (!(o.lipschitz_xi > 0.0)) invalid("optimizer.xi", "must be positive");
  if (!(o.initial_step > 0.0)) invalid("optimizer.initial_step", "must be positive");
  if (!(c.wolfe.sigma > 0.0 && c.wolfe.sigma <= 0.5)) {
    invalid("optimizer.sigma", "sigma must lie in (0, 0.5]");
  }
  if (!(c.wolfe.rho > 0.0 && c.wolfe.rho <= c.wolfe.sigma)) {
    invalid("optimizer.rho", "rho must lie in (0, sigma]");
  }
  if (c.wolfe.max_zoom < 1) invalid("optimizer.max_zoom", "must be >= 1");
  if (!(c.wolfe.alpha_max > 0.0)) invalid("optimizer.alpha_max", "must be positive");
  if (c.output_directory.empty()) invalid("output.directory", "must not be empty");
  for (const auto& f : c.output_formats) {
    if (f != "csv" && f != "json" && f != "plot") {
      invalid("output.formats", "unknown format '" + f + "'; valid formats: csv, json, plot");
    }
  }
}

std::string serialize_config(const ExperimentConfig& c) {
  std::string formats;
  for (const auto& f : c.output_formats) formats += (formats.empty() ? "" : ", ") + f;
  std::ostringstream out;
  out << "model.name = " << quote(c.model_name) << '\n'
      << "model.true_params = " << format_vector(c.true_params) << '\n'
      << "model.y0 = " << format_vector(c.y0) << '\n'
      << "model.t_span = " << format_double(c.t_start) << ", " << format_double(c.t_end) << '\n'
      << "model.n_steps = " << c.n_steps << '\n'
      << "noise.level = " << format_double(c.noise_level) << '\n'
      << "noise.seed = " << c.seed << '\n'
      << "objective.alpha = " << format_double(c.alpha) << '\n'
      << "objective.overflow_bound = " << format_double(c.overflow_bound) << '\n'
      << "init.mode = " << to_string(c.init_mode) << '\n'
      << "init.u0 = " << format_vector(c.u0) << '\n'
      << "init.box.lower = " << format_vector(c.box.lower) << '\n'
      << "init.box.upper = " << format_vector(c.box.upper) << '\n'
      << "init.box.points = " << c.box.points_per_dim << '\n'
      << "init.box.budget = " << c.box.budget << '\n'
      << "optimizer.name = " << to_string(c.optimizer) << '\n'
      << "optimizer.variant = " << to_string(c.variant) << '\n'
      << "optimizer.epsilon = " << format_double(c.optimizer_config.tolerance) << '\n'
      << "optimizer.max_iterations = " << c.optimizer_config.max_iterations << '\n'
      << "optimizer.xi = " << format_double(c.optimizer_config.lipschitz_xi) << '\n'
      << "optimizer.initial_step = " << format_double(c.optimizer_config.initial_step) << '\n'
      << "optimizer.rho = " << format_double(c.wolfe.rho) << '\n'
      << "optimizer.sigma = " << format_double(c.wolfe.sigma) << '\n'
      << "optimizer.max_zoom = " << c.wolfe.max_zoom << '\n'
      << "optimizer.alpha_max = " << format_double(c.wolfe.alpha_max) << '\n'
      << "output.directory = " << quote(c.output_directory) << '\n'
      << "output.formats = " << formats << '\n';
  return out.str();
}

void apply_environment(ExperimentConfig& config) {
  if (const char* dir = std::getenv("ESTIM_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
    config.output_directory = dir;
  }
}

}  // namespace estim
