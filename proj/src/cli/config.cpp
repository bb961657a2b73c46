#include "config.hpp"
#include "csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace xychain::cli {

namespace {

constexpr std::array<std::string_view, 4> kApproxNames = {"weak", "closed", "envelope", "strong_simplified"};

std::string normalise_key(std::string_view key) {
  std::string k(key);
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view v) {
  // std::from_chars for double is missing from older libstdc++ builds.
  std::string s(v);
  char* end = nullptr;
  const double out = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ParameterError("bad number for " + std::string(key) + ": '" + s + "'");
  }
  return out;
}

int to_int(std::string_view key, std::string_view v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ParameterError("bad integer for " + std::string(key) + ": '" + std::string(v) + "'");
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> parse_approx(std::string_view v) {
  std::vector<bool> on(kApproxNames.size(), false);
  std::size_t pos = 0;
  while (pos <= v.size()) {
    const auto next = v.find_first_of(",+", pos);
    const auto item = trim(v.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (!item.empty() && item != "none") {
      const auto it = std::find(kApproxNames.begin(), kApproxNames.end(), item);
      if (it == kApproxNames.end()) throw ParameterError("unknown approximation '" + std::string(item) + "'");
      on[static_cast<std::size_t>(it - kApproxNames.begin())] = true;
    }
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < on.size(); ++i)
    if (on[i]) out.emplace_back(kApproxNames[i]);
  return out;
}

}  // namespace

void RunConfig::set(std::string_view key_in, std::string_view value_in) {
  const std::string key = normalise_key(trim(key_in));
  const std::string_view value = trim(value_in);
  if (key == "n") n = to_int(key, value);
  else if (key == "gamma") gamma = to_double(key, value);
  else if (key == "g") g = to_double(key, value);
  else if (key == "lambda_i") lambda_i = to_double(key, value);
  else if (key == "lambda_e") lambda_e = to_double(key, value);
  else if (key == "init") init = std::string(value);
  else if (key == "temperature") temperature = to_double(key, value);
  else if (key == "t_max") t_max = to_double(key, value);
  else if (key == "t_steps") t_steps = to_int(key, value);
  else if (key == "axis2") axis2 = normalise_key(value);
  else if (key == "range") {
    const auto a = value.find(':');
    const auto b = a == std::string_view::npos ? a : value.find(':', a + 1);
    if (b == std::string_view::npos) throw ParameterError("range must be start:stop:steps");
    range_start = to_double(key, value.substr(0, a));
    range_stop = to_double(key, value.substr(a + 1, b - a - 1));
    range_steps = to_int(key, value.substr(b + 1));
  } else if (key == "approx") approx = parse_approx(value);
  else if (key == "regime") regime = std::string(value);
  else if (key == "force") force = value == "1" || value == "true";
  else if (key == "out") out = std::string(value);
  else throw ParameterError("unknown config key '" + key + "'");
}

void RunConfig::validate() const {
  chain().validate();
  (void)fields();
  (void)initial_state();
  if (init != "ground" && init != "thermal") throw ParameterError("init must be ground or thermal");
  if (init == "thermal" && !(temperature > 0.0) && axis2 != "temperature") {
    throw ParameterError("thermal init needs temperature > 0");
  }
  if (t_steps < 2) throw ParameterError("t_steps must be >= 2");
  if (!std::isfinite(t_max) || t_max < 0.0) throw ParameterError("t_max must be finite and non-negative");
  if (range_steps < 2) throw ParameterError("sweep steps must be >= 2");
  if (axis2 != "lambda_i" && axis2 != "temperature") throw ParameterError("axis2 must be lambda_i or temperature");
  if (regime != "weak" && regime != "strong") throw ParameterError("regime must be weak or strong");
  if (out.find_first_of(" \t\n") != std::string::npos) throw ParameterError("output path must not contain whitespace");
}

std::string RunConfig::to_line() const {
  std::string approx_list = "none";
  if (!approx.empty()) {
    approx_list.clear();
    for (const auto& a : approx) approx_list += (approx_list.empty() ? "" : ",") + a;
  }
  std::ostringstream os;
  os << "n=" << n << " gamma=" << fmt(gamma) << " g=" << fmt(g) << " lambda_i=" << fmt(lambda_i)
     << " lambda_e=" << fmt(lambda_e) << " init=" << init << " temperature=" << fmt(temperature)
     << " t_max=" << fmt(t_max) << " t_steps=" << t_steps << " axis2=" << axis2 << " range=" << fmt(range_start)
     << ':' << fmt(range_stop) << ':' << range_steps << " approx=" << approx_list << " regime=" << regime
     << " force=" << (force ? 1 : 0) << " out=" << out;
  return os.str();
}

ChainSpec RunConfig::chain() const { return {n, gamma}; }

FieldSet RunConfig::fields() const { return {lambda_i, lambda_e, g}; }

InitialState RunConfig::initial_state() const {
  return init == "thermal" ? InitialState::thermal(temperature) : InitialState::ground();
}

std::vector<double> RunConfig::time_grid() const {
  std::vector<double> t(static_cast<std::size_t>(t_steps));
  for (int i = 0; i < t_steps; ++i) t[static_cast<std::size_t>(i)] = t_max * i / (t_steps - 1);
  return t;
}

std::vector<double> RunConfig::axis_values() const {
  std::vector<double> v(static_cast<std::size_t>(range_steps));
  for (int i = 0; i < range_steps; ++i) {
    v[static_cast<std::size_t>(i)] = range_start + (range_stop - range_start) * i / (range_steps - 1);
  }
  return v;
}

bool RunConfig::wants(std::string_view name) const {
  return std::find(approx.begin(), approx.end(), name) != approx.end();
}

void apply_config_text(RunConfig& config, std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParameterError("config line without '=': " + std::string(line));
    config.set(line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(config, buf.str());
}

RunConfig parse_config_line(std::string_view line) {
  constexpr std::string_view prefix = "# config:";
  line = trim(line);
  if (line.starts_with(prefix)) line.remove_prefix(prefix.size());
  RunConfig config;
  std::size_t pos = 0;
  while (pos < line.size()) {
    auto end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    const std::string_view token = line.substr(pos, end - pos);
    pos = end + 1;
    if (token.empty()) continue;
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) throw ParameterError("bad config token '" + std::string(token) + "'");
    config.set(token.substr(0, eq), token.substr(eq + 1));
  }
  return config;
}

}  // namespace xychain::cli
