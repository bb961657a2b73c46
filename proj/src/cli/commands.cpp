#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "validate.hpp"
#include "xychain/gaussian.hpp"

namespace xychain::cli {

namespace {

double closed_s2(const RunConfig& c) { return walk_stats(c.chain(), c.fields(), WidthMethod::kClosedIsing).s2; }

EnvelopeModel envelope_for(const RunConfig& c) {
  return envelope_model(c.chain(), c.fields(), c.chain().is_ising() ? EnvelopeMethod::kClosedIsing : EnvelopeMethod::kDirect);
}

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

CsvTable timeseries_table(const RunConfig& config) {
  config.validate();
  const auto times = config.time_grid();
  const auto series = coherence_series(config.chain(), config.fields(), config.initial_state(), times);

  std::vector<std::string> columns = {"t", "F_exact", "Re_D", "Im_D"};
  std::vector<std::vector<double>> extra;
  if (config.wants("weak")) {
    columns.push_back("F_weak");
    const double s2 = walk_stats(config.chain(), config.fields(), WidthMethod::kLeading).s2;
    auto& col = extra.emplace_back();
    for (double t : times) col.push_back(weak_gaussian_f(t, s2));
  }
  if (config.wants("closed")) {
    columns.push_back("F_closed");
    const double s2 = closed_s2(config);
    auto& col = extra.emplace_back();
    for (double t : times) col.push_back(weak_gaussian_f(t, s2));
  }
  if (config.wants("envelope")) {
    columns.push_back("F_envelope");
    const auto model = envelope_for(config);
    auto& col = extra.emplace_back();
    for (double t : times) col.push_back(model.envelope(t));
  }
  if (config.wants("strong_simplified")) {
    columns.push_back("F_strong");
    extra.push_back(strong_simplified_series(config.chain(), config.fields(), times));
  }

  CsvTable table(config.to_line(), columns);
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<double> row = {times[i], series.f_values[i], series.d_values[i].real(), series.d_values[i].imag()};
    for (const auto& col : extra) row.push_back(col[i]);
    table.add_row(row);
  }
  return table;
}

CsvTable sweep_table(const RunConfig& config) {
  config.validate();
  const bool by_temperature = config.axis2 == "temperature";
  if (by_temperature && config.init != "thermal") {
    throw ParameterError("a temperature sweep requires init=thermal");
  }
  const auto times = config.time_grid();
  const auto axis = config.axis_values();
  const ChainSpec chain = config.chain();

  // Cells are independent; each one runs the serial kernel.
  std::vector<std::vector<double>> cells(axis.size());
  std::vector<std::string> errors(axis.size());
  const long count = static_cast<long>(axis.size());
#pragma omp parallel for schedule(dynamic)
  for (long a = 0; a < count; ++a) {
    try {
      const double v = axis[static_cast<std::size_t>(a)];
      const FieldSet fields = by_temperature ? config.fields() : FieldSet(v, config.lambda_e, config.g);
      const InitialState init = by_temperature ? InitialState::thermal(v) : config.initial_state();
      cells[static_cast<std::size_t>(a)] =
          coherence_series(chain, fields, init, times, {UnpairedModes::kExact, Execution::kSerial}).f_values;
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(a)] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw ParameterError(e);

  CsvTable table(config.to_line(), {"t", config.axis2, "F"});
  for (std::size_t a = 0; a < axis.size(); ++a)
    for (std::size_t i = 0; i < times.size(); ++i) table.add_row({times[i], axis[a], cells[a][i]});
  return table;
}

std::string WidthReport::text() const {
  std::ostringstream os;
  os << "regime: " << regime << '\n';
  if (regime == "strong") os << "E = " << format_value(e_freq) << '\n';
  for (const auto& [name, value] : widths) os << name << " = " << format_value(value) << '\n';
  for (const auto& n : notices) os << "note: " << n << '\n';
  return os.str();
}

CsvTable WidthReport::table(const std::string& config_line) const {
  CsvTable t(config_line, {"quantity", "value"});
  if (regime == "strong") t.add_row("E", {e_freq});
  for (const auto& [name, value] : widths) t.add_row(name, {value});
  return t;
}

namespace {

void add_pairwise(WidthReport& r) {
  const auto named = r.widths;
  for (std::size_t a = 0; a < named.size(); ++a)
    for (std::size_t b = a + 1; b < named.size(); ++b)
      r.widths.emplace_back("reldiff(" + named[a].first + "," + named[b].first + ")",
                            rel_diff(named[a].second, named[b].second));
}

WidthReport weak_report(const RunConfig& config) {
  WidthReport r;
  r.regime = "weak";
  const ChainSpec chain = config.chain();
  const FieldSet fields = config.fields();
  const double leading = walk_stats(chain, fields, WidthMethod::kLeading).s2;
  r.widths.emplace_back("s2_direct", walk_stats(chain, fields, WidthMethod::kDirect).s2);
  r.widths.emplace_back("s2_leading", leading);
  if (chain.is_ising()) {
    r.widths.emplace_back("s2_closed", walk_stats(chain, fields, WidthMethod::kClosedIsing).s2);
  } else {
    r.notices.push_back("closed-form width needs gamma = 1, skipped");
  }

  if (!(leading > 0.0)) {
    r.notices.push_back("all widths vanish, Gaussian fit skipped");
    add_pairwise(r);
    return r;
  }
  // 400 samples reaching F of about 0.01 on the leading-order curve.
  const double t_end = std::sqrt(2.0 * std::log(100.0) / leading);
  std::vector<double> times;
  for (int i = 0; i < 400; ++i) times.push_back(t_end * i / 399.0);
  const auto series = coherence_series(chain, fields, config.initial_state(), times);
  try {
    r.widths.emplace_back("s2_fit", gaussian_fit(series).s2);
  } catch (const ParameterError& e) {
    r.notices.push_back(std::string("fit skipped: ") + e.what());
  }
  add_pairwise(r);
  return r;
}

WidthReport strong_report(const RunConfig& config) {
  WidthReport r;
  r.regime = "strong";
  if (config.g < 10.0) {
    if (!config.force) throw ParameterError("strong regime needs g >= 10 (use --force to override)");
    r.notices.push_back("g < 10: strong-coupling guard overridden");
  }
  const ChainSpec chain = config.chain();
  const FieldSet fields = config.fields();
  const auto direct = envelope_model(chain, fields, EnvelopeMethod::kDirect);
  r.e_freq = direct.e_freq;
  r.widths.emplace_back("s2_tilde_direct", direct.s2_tilde);
  if (chain.is_ising()) {
    r.widths.emplace_back("s2_tilde_closed", envelope_model(chain, fields, EnvelopeMethod::kClosedIsing).s2_tilde);
  } else {
    r.notices.push_back("closed-form envelope needs gamma = 1, skipped");
  }
  const double guard = strong_guard_value(branch_modes(chain, fields));
  if (!(guard < kStrongGuard)) r.notices.push_back("max |cos alpha_+-| = " + format_value(guard) + " exceeds 0.1");

  if (!(direct.s2_tilde > 0.0)) {
    r.notices.push_back("envelope width vanishes, peak fit skipped");
    add_pairwise(r);
    return r;
  }
  // Exact F sampled at 400 envelope peaks n pi / E out to F of about 0.05^2.25.
  const double n_end = 1.5 * std::sqrt(2.0 * std::log(20.0) / direct.s2_tilde) * direct.e_freq / std::numbers::pi;
  std::vector<double> times;
  for (int i = 0; i < 400; ++i) times.push_back(direct.peak_time(std::lround(n_end * i / 399.0)));
  const auto series = coherence_series(chain, fields, config.initial_state(), times);
  try {
    r.widths.emplace_back("s2_tilde_fit", gaussian_fit(series).s2);
  } catch (const ParameterError& e) {
    r.notices.push_back(std::string("fit skipped: ") + e.what());
  }
  add_pairwise(r);
  return r;
}

}  // namespace

WidthReport width_report(const RunConfig& config) {
  config.validate();
  if (config.regime == "weak") return weak_report(config);
  if (config.regime == "strong") return strong_report(config);
  throw ParameterError("regime must be weak or strong, got '" + config.regime + "'");
}

namespace {

const std::vector<std::string> kConfigKeys = {"n",      "gamma",  "g",     "lambda-i", "lambda-e", "init",
                                              "temperature", "t-max", "t-steps", "axis2", "range", "approx",
                                              "out",    "regime"};

struct FlagSet {
  std::string config_file;
  std::map<std::string, std::string> values;
  bool force = false;
};

void add_flags(CLI::App& app, FlagSet& flags) {
  app.add_option("--config", flags.config_file, "key=value file; flags override it");
  for (const auto& key : kConfigKeys) app.add_option("--" + key, flags.values[key]);
  app.add_flag("--force", flags.force, "override the strong-coupling guard");
}

RunConfig build_config(const CLI::App& app, const FlagSet& flags) {
  RunConfig config;
  if (!flags.config_file.empty()) apply_config_file(config, flags.config_file);
  for (const auto& key : kConfigKeys) {
    if (app.count("--" + key) > 0) config.set(key, flags.values.at(key));
  }
  if (flags.force) config.force = true;
  config.validate();
  return config;
}

void emit(const RunConfig& config, const std::string& content, std::ostream& out) {
  if (config.out.empty()) {
    out << content;
  } else {
    write_file(config.out, content);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Central-spin decoherence in an XY chain environment"};
  app.require_subcommand(1);

  FlagSet ts_flags, sw_flags, wd_flags;
  auto* timeseries = app.add_subcommand("timeseries", "F(t) with optional approximations");
  add_flags(*timeseries, ts_flags);
  auto* sweep = app.add_subcommand("sweep", "F over a (t, lambda_i) or (t, temperature) grid");
  add_flags(*sweep, sw_flags);
  auto* width = app.add_subcommand("width", "Gaussian widths for the weak or strong regime");
  add_flags(*width, wd_flags);
  auto* validate = app.add_subcommand("validate", "run the oracle comparison suites");
  std::string suite_name = "all";
  std::uint64_t seed = kValidationSeed;
  validate->add_option("suite", suite_name, "identity, block, fock, thermal, widths or all");
  validate->add_option("--seed", seed, "fuzz seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadParameters;
  }

  try {
    if (timeseries->parsed()) {
      const RunConfig config = build_config(*timeseries, ts_flags);
      emit(config, timeseries_table(config).str(), out);
    } else if (sweep->parsed()) {
      const RunConfig config = build_config(*sweep, sw_flags);
      emit(config, sweep_table(config).str(), out);
    } else if (width->parsed()) {
      const RunConfig config = build_config(*width, wd_flags);
      const WidthReport report = width_report(config);
      out << report.text();
      if (!config.out.empty()) write_file(config.out, report.table(config.to_line()).str());
    } else if (validate->parsed()) {
      const SuiteReport report = run_suite(parse_suite(suite_name), seed);
      out << report.text();
      return report.passed() ? kExitOk : kExitValidationFailure;
    }
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitBadParameters;
  } catch (const std::invalid_argument& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kExitBadParameters;
  }
  return kExitOk;
}

}  // namespace xychain::cli
