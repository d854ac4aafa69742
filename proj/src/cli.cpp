#include "oqw/cli.hpp"

#include "oqw/oracle.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

namespace oqw::cli {

namespace {

constexpr double kVerifyTolerance = 1e-10;
constexpr std::size_t kOracleMaxOrder = 12;

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::size_t parse_count(const std::string& text, const std::string& context) {
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    if (text.empty() || text.front() == '-' || text.front() == '+') throw std::invalid_argument("");
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw CliError(kBadGraph, "malformed graph spec '" + context + "': '" + text +
                                  "' is not a non-negative integer");
  }
  return static_cast<std::size_t>(value);
}

double parse_real(const std::string& text, const std::string& context) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw CliError(kUsage, "malformed sweep spec '" + context + "': '" + text + "' is not a number");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<std::string> channel_parameters(const ChannelSpec& spec) {
  if (std::holds_alternative<AdcParams>(spec)) return {"gamma", "g"};
  if (std::holds_alternative<NmdParams>(spec)) return {"p", "eta", "omega"};
  return {"p", "alpha"};
}

nlohmann::json config_json(const CliConfig& cfg, const RunConfig& run) {
  nlohmann::json j;
  j["graph"] = cfg.graph_spec;
  j["n"] = run.graph.order();
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : run.graph.edges()) edges.push_back({u, v});
  j["edges"] = edges;
  j["channel"] = channel_name(run.channel);
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, AdcParams>) {
          j["gamma"] = c.gamma;
          j["g"] = c.g;
        } else if constexpr (std::is_same_v<T, NmdParams>) {
          j["p"] = c.p;
          j["eta"] = c.eta;
          j["omega"] = c.omega;
        } else {
          j["p"] = c.p;
          j["alpha"] = c.alpha;
        }
      },
      run.channel);
  j["steps"] = run.steps;
  j["dt"] = run.dt;
  j["start"] = run.start;
  return j;
}

std::string extension(OutputFormat f) { return f == OutputFormat::kCsv ? ".csv" : ".json"; }

struct RunOutput {
  std::string text;
  std::optional<VerifyReport> verify;
};

RunOutput produce(const CliConfig& cfg, const RunConfig& run_cfg) {
  const auto snapshots = run(run_cfg);
  const auto series = compute_series(snapshots);
  RunOutput result;
  if (cfg.verify) result.verify = verify_run(run_cfg, snapshots);
  std::ostringstream out;
  if (cfg.format == OutputFormat::kCsv) {
    write_csv(out, series);
  } else {
    write_json(out, cfg, run_cfg, series, result.verify);
  }
  result.text = out.str();
  return result;
}

void write_file(const std::filesystem::path& file, const std::string& text) {
  if (file.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
  }
  std::ofstream out(file, std::ios::binary);
  if (!out) throw CliError(kIoFailure, "cannot open output file " + file.string());
  out << text;
  if (!out) throw CliError(kIoFailure, "failed writing " + file.string());
}

void report_verify(std::ostream& err, const std::string& label, const VerifyReport& v) {
  err << "verify " << label << ": completeness=" << format_number(v.completeness_residual)
      << " superop=" << format_number(v.superop_residual) << " oracle="
      << (v.oracle_residual ? format_number(*v.oracle_residual) : std::string("skipped"))
      << (v.passed ? " PASS" : " FAIL") << '\n';
}

}  // namespace

std::vector<double> SweepSpec::values() const {
  std::vector<double> out;
  if (count == 1) return {min};
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.back() = max;
  return out;
}

Graph parse_graph_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw CliError(kBadGraph, "malformed graph spec '" + spec + "': expected <family>:<params>");
  }
  const std::string family = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  try {
    if (family == "file") {
      if (args.empty()) throw CliError(kBadGraph, "graph spec 'file:' needs a path");
      return read_graph_file(args);
    }
    if (family == "bipartite") {
      const auto parts = split(args, ',');
      if (parts.size() != 2) {
        throw CliError(kBadGraph, "malformed graph spec '" + spec + "': expected bipartite:<a>,<b>");
      }
      return complete_bipartite(parse_count(parts[0], spec), parse_count(parts[1], spec));
    }
    const std::size_t n = parse_count(args, spec);
    if (family == "path") return path(n);
    if (family == "cycle") return cycle(n);
    if (family == "star") return star(n);
    if (family == "complete") return complete(n);
  } catch (const GraphError& e) {
    throw CliError(kBadGraph, "invalid graph '" + spec + "': " + e.what());
  }
  throw CliError(kBadGraph, "unknown graph family '" + family + "'");
}

SweepSpec parse_sweep_spec(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 4) {
    throw CliError(kUsage, "malformed sweep spec '" + spec + "': expected <param>:<min>:<max>:<count>");
  }
  SweepSpec s;
  s.parameter = parts[0];
  s.min = parse_real(parts[1], spec);
  s.max = parse_real(parts[2], spec);
  const double count = parse_real(parts[3], spec);
  if (count < 1 || count != static_cast<double>(static_cast<std::size_t>(count))) {
    throw CliError(kUsage, "sweep count must be a positive integer");
  }
  s.count = static_cast<std::size_t>(count);
  return s;
}

RunConfig with_parameter(const RunConfig& cfg, const std::string& parameter, double value) {
  RunConfig out = cfg;
  std::visit(
      [&](auto& c) {
        using T = std::decay_t<decltype(c)>;
        bool known = false;
        if constexpr (std::is_same_v<T, AdcParams>) {
          if (parameter == "gamma") c.gamma = value, known = true;
          if (parameter == "g") c.g = value, known = true;
        } else if constexpr (std::is_same_v<T, NmdParams>) {
          if (parameter == "p") c.p = value, known = true;
          if (parameter == "eta") c.eta = value, known = true;
          if (parameter == "omega") c.omega = value, known = true;
        } else {
          if (parameter == "p") c.p = value, known = true;
          if (parameter == "alpha") c.alpha = value, known = true;
        }
        if (!known) {
          throw CliError(kUsage, "parameter '" + parameter + "' does not belong to channel " +
                                     channel_name(out.channel));
        }
      },
      out.channel);
  return out;
}

CliConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"Open quantum walks on graphs with non-Markovian coin channels", "oqw"};

  std::string graph_spec;
  std::string channel;
  std::string format = "csv";
  std::string sweep;
  double gamma = 500.0, g = 0.01, p = 0.5, eta = 0.5, omega = 50.0, alpha = 1.0;
  long long steps = 30;
  double dt = 1.0;
  long long start = 0;
  CliConfig cfg;

  app.add_option("--graph", graph_spec,
                 "path|cycle|star|complete:<n>, bipartite:<a>,<b> or file:<path>")
      ->required();
  app.add_option("--channel", channel, "adc, nmd or depol")
      ->required()
      ->check(CLI::IsMember({"adc", "nmd", "depol"}));
  auto* gamma_opt = app.add_option("--gamma", gamma, "ADC spontaneous emission rate");
  auto* g_opt = app.add_option("--g", g, "ADC spectral width");
  auto* p_opt = app.add_option("--p", p, "NMD/depol channel parameter");
  auto* eta_opt = app.add_option("--eta", eta, "NMD strength constant");
  auto* omega_opt = app.add_option("--omega", omega, "NMD frequency constant");
  auto* alpha_opt = app.add_option("--alpha", alpha, "depol scale constant");
  app.add_option("--steps", steps, "number of walk steps")->capture_default_str();
  app.add_option("--dt", dt, "time per step (ADC)")->capture_default_str();
  app.add_option("--start", start, "start vertex")->capture_default_str();
  app.add_option("--out", cfg.out, "output file, or stem for sweeps ('-' for stdout)")
      ->capture_default_str();
  app.add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--sweep", sweep, "<param>:<min>:<max>:<count>");
  app.add_flag("--verify", cfg.verify, "check completeness and oracle equivalence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw CliError(kOk, app.help());
  } catch (const CLI::ParseError& e) {
    throw CliError(kUsage, e.what());
  }

  cfg.graph_spec = graph_spec;
  cfg.format = format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;

  struct Flag {
    const char* name;
    CLI::Option* opt;
  };
  const std::vector<Flag> param_flags = {{"gamma", gamma_opt}, {"g", g_opt},         {"p", p_opt},
                                         {"eta", eta_opt},     {"omega", omega_opt}, {"alpha", alpha_opt}};
  if (channel == "adc") {
    cfg.run.channel = AdcParams{gamma, g};
  } else if (channel == "nmd") {
    cfg.run.channel = NmdParams{p, eta, omega};
  } else {
    cfg.run.channel = DepolParams{p, alpha};
  }
  const auto allowed = channel_parameters(cfg.run.channel);
  for (const auto& f : param_flags) {
    if (f.opt->count() > 0 && std::find(allowed.begin(), allowed.end(), f.name) == allowed.end()) {
      throw CliError(kUsage, std::string("--") + f.name + " does not apply to channel " + channel);
    }
  }

  if (steps < 0) throw CliError(kBadParameter, "--steps must be >= 0");
  if (!(dt > 0.0)) throw CliError(kBadParameter, "--dt must be > 0");
  if (start < 0) throw CliError(kBadParameter, "--start must be >= 0");
  cfg.run.steps = static_cast<std::size_t>(steps);
  cfg.run.dt = dt;
  cfg.run.start = static_cast<Vertex>(start);

  cfg.run.graph = parse_graph_spec(graph_spec);
  if (cfg.run.start >= cfg.run.graph.order()) {
    throw CliError(kBadParameter, "--start " + std::to_string(start) + " is not a vertex of the graph");
  }

  if (!sweep.empty()) {
    cfg.sweep = parse_sweep_spec(sweep);
    if (std::find(allowed.begin(), allowed.end(), cfg.sweep->parameter) == allowed.end()) {
      throw CliError(kUsage, "sweep parameter '" + cfg.sweep->parameter +
                                 "' does not belong to channel " + channel);
    }
    if (cfg.out == "-") throw CliError(kUsage, "--sweep needs --out <stem>");
  }

  try {
    validate(cfg.run.channel);
    if (cfg.sweep) {
      for (double v : cfg.sweep->values()) validate(with_parameter(cfg.run, cfg.sweep->parameter, v).channel);
    }
  } catch (const ChannelError& e) {
    throw CliError(kBadParameter, e.what());
  }
  return cfg;
}

VerifyReport verify_run(const RunConfig& cfg, const std::vector<WalkerState>& snapshots) {
  const DirectedWalkGraph g(cfg.graph);
  const bool use_oracle = g.order() <= kOracleMaxOrder;
  const bool time_dependent = std::holds_alternative<AdcParams>(cfg.channel);
  VerifyReport report;
  if (use_oracle) report.oracle_residual = 0.0;

  // With zero steps, check the coins the first step would use.
  const std::size_t transitions = std::max<std::size_t>(cfg.steps, 1);
  std::optional<CoinSet> coins;
  for (std::size_t k = 0; k < transitions; ++k) {
    const bool rebuilt = time_dependent || !coins;
    if (rebuilt) {
      coins = coins_for_step(cfg, g, k);
      report.completeness_residual =
          std::max(report.completeness_residual, verify_completeness(*coins));
    }
    if (use_oracle) {
      if (rebuilt) {
        report.superop_residual = std::max(
            report.superop_residual, oracle::completeness_residual(oracle::build_superop(g, *coins)));
      }
      const std::size_t from = std::min(k, snapshots.size() - 1);
      report.oracle_residual =
          std::max(*report.oracle_residual, oracle::step_discrepancy(snapshots[from], *coins, g));
    }
  }
  report.passed = report.completeness_residual <= kVerifyTolerance &&
                  report.superop_residual <= kVerifyTolerance &&
                  report.oracle_residual.value_or(0.0) <= kVerifyTolerance;
  return report;
}

void write_csv(std::ostream& out, const MetricSeries& series) {
  const std::size_t n = series.probabilities.empty() ? 0 : series.probabilities.front().size();
  out << "step";
  for (std::size_t u = 0; u < n; ++u) out << ",p_v" << u;
  out << ",coherence,fidelity\n";
  for (std::size_t k = 0; k <= series.steps; ++k) {
    out << k;
    for (double p : series.probabilities[k]) out << ',' << format_number(p);
    out << ',' << format_number(series.coherence[k]) << ',' << format_number(series.fidelity[k])
        << '\n';
  }
}

void write_json(std::ostream& out, const CliConfig& cfg, const RunConfig& run,
                const MetricSeries& series, const std::optional<VerifyReport>& verify) {
  nlohmann::json doc;
  doc["config"] = config_json(cfg, run);
  doc["series"] = {{"probabilities", series.probabilities},
                   {"coherence", series.coherence},
                   {"fidelity", series.fidelity}};
  if (verify) {
    nlohmann::json v;
    v["completeness_residual"] = verify->completeness_residual;
    v["superop_residual"] = verify->superop_residual;
    v["oracle_residual"] = verify->oracle_residual ? nlohmann::json(*verify->oracle_residual)
                                                   : nlohmann::json(nullptr);
    v["passed"] = verify->passed;
    doc["verify"] = v;
  }
  out << doc.dump(2) << '\n';
}

int execute(const CliConfig& cfg, std::ostream& stdout_stream, std::ostream& stderr_stream) {
  if (!cfg.sweep) {
    const auto result = produce(cfg, cfg.run);
    if (cfg.out == "-") {
      stdout_stream << result.text;
    } else {
      write_file(cfg.out, result.text);
    }
    if (result.verify) {
      report_verify(stderr_stream, "run", *result.verify);
      if (!result.verify->passed) return kVerifyFailed;
    }
    return kOk;
  }

  const auto values = cfg.sweep->values();
  std::vector<std::future<RunOutput>> jobs;
  jobs.reserve(values.size());
  for (double v : values) {
    jobs.push_back(std::async(std::launch::async, [&cfg, v] {
      return produce(cfg, with_parameter(cfg.run, cfg.sweep->parameter, v));
    }));
  }

  const std::filesystem::path stem(cfg.out);
  std::ostringstream index;
  index << "index," << cfg.sweep->parameter << ",file\n";
  bool all_passed = true;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto result = jobs[i].get();
    std::filesystem::path file = stem;
    file += "_" + cfg.sweep->parameter + "_" + std::to_string(i) + extension(cfg.format);
    write_file(file, result.text);
    index << i << ',' << format_number(values[i]) << ',' << file.filename().string() << '\n';
    if (result.verify) {
      report_verify(stderr_stream, cfg.sweep->parameter + "=" + format_number(values[i]),
                    *result.verify);
      all_passed = all_passed && result.verify->passed;
    }
  }
  std::filesystem::path index_file = stem;
  index_file += "_index.csv";
  write_file(index_file, index.str());
  return all_passed ? kOk : kVerifyFailed;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse_args(argc, argv);
    return execute(cfg, out, err);
  } catch (const CliError& e) {
    (e.code() == kOk ? out : err) << (e.code() == kOk ? "" : "error: ") << e.what() << '\n';
    return e.code();
  } catch (const ChannelError& e) {
    err << "error: " << e.what() << '\n';
    return kBadParameter;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace oqw::cli
