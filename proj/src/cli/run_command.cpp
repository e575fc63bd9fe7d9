#include "run_command.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <stdexcept>

#include "svg_plot.hpp"
#include "table.hpp"
#include "tentlab/tentlab.h"

#ifndef TENTLAB_VERSION
#define TENTLAB_VERSION "0.0.0"
#endif

namespace tentlab::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr const char* default_sqrt2_digits = "1.414213562373095048801688724209698078569671875376948073176";

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

void check(tl_status status) {
  if (status == TL_OK) return;
  throw CliError(status == TL_ERR_INTERNAL ? exit_internal : exit_usage,
                 std::string(tl_status_name(status)) + ": " + tl_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
template <class T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, Free>>;

using ScalarHandle = Handle<tl_scalar, tl_scalar_free>;
using SeriesHandle = Handle<tl_series, tl_series_free>;
using CyclesHandle = Handle<tl_cycles, tl_cycles_free>;
using CoeffsHandle = Handle<tl_coefficients, tl_coefficients_free>;
using EquilibriaHandle = Handle<tl_equilibria, tl_equilibria_free>;
using SweepHandle = Handle<tl_sweep, tl_sweep_free>;

using Params = std::map<std::string, std::string>;

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <class T>
T number(const Params& p, const std::string& key) {
  const std::string& text = p.at(key);
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw CliError(exit_usage, "--" + key + ": not a valid number: '" + text + "'");
  return v;
}

long long count_param(const Params& p, const std::string& key, long long min) {
  auto v = number<long long>(p, key);
  if (v < min) throw CliError(exit_usage, "--" + key + " must be at least " + std::to_string(min));
  return v;
}

tl_backend backend_param(const Params& p) {
  tl_backend b{};
  check(tl_parse_backend(p.at("backend").c_str(), static_cast<int>(count_param(p, "precision", 1)), &b));
  return b;
}

TableFile indexed_table(const fs::path& path, const std::string& value_column, const tl_series* s) {
  TableFile t{path, {"n", value_column}, {}};
  for (size_t i = 0; i < tl_series_size(s); ++i) t.rows.push_back({std::to_string(i), tl_series_text(s, i)});
  return t;
}

CoeffsHandle coefficients(const Params& p, tl_backend b) {
  tl_coefficients* c = nullptr;
  check(tl_build_coefficients(p.at("sigma").c_str(), b, &c));
  return CoeffsHandle(c);
}

json coefficient_json(const tl_coefficients* c) {
  json a = json::array();
  for (size_t i = 0; i < 6; ++i) a.push_back(tl_coefficients_text(c, i));
  return a;
}

json escape_json(int found, const tl_escape& e, const tl_series* s) {
  json j{{"found", found != 0}};
  if (found) {
    j["flat_value"] = tl_series_text(s, e.flat_start);
    j["flat_start"] = e.flat_start;
    j["flat_end"] = e.flat_end;
    j["escape_index"] = e.escape_index;
    j["terminal_value"] = tl_series_text(s, tl_series_size(s) - 1);
  }
  return j;
}

// Everything a subcommand produced, relative to the output directory.
class Artifacts {
 public:
  explicit Artifacts(fs::path dir) : dir_(std::move(dir)) {}

  fs::path path(const std::string& name) const { return dir_ / name; }

  void csv(const TableFile& table) {
    write_csv(table);
    names_.push_back(table.path.filename().string());
  }
  void text(const std::string& name, const std::string& body) {
    std::ofstream f(path(name), std::ios::binary | std::ios::trunc);
    if (!f) throw CliError(exit_internal, "cannot write " + path(name).string());
    f << body;
    names_.push_back(name);
  }
  void json_file(const std::string& name, const json& j) { text(name, j.dump(2) + "\n"); }
  void plot(const TableFile& table, PlotStyle style, std::size_t x_col = 0, std::size_t y_col = 1) {
    std::string name = table.path.stem().string() + ".svg";
    text(name, render_plot(table, style, x_col, y_col));
  }
  const std::vector<std::string>& names() const { return names_; }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

struct Context {
  const Params& p;
  Artifacts& files;
  std::ostream& out;
  bool plot() const { return p.count("plot") && p.at("plot") == "true"; }
};

// ---- subcommands ----------------------------------------------------------

void run_simulate(Context& ctx) {
  const auto& p = ctx.p;
  tl_series* s = nullptr;
  check(tl_orbit(p.at("h").c_str(), p.at("x0").c_str(), backend_param(p), static_cast<int>(count_param(p, "k", 1)),
                 static_cast<size_t>(count_param(p, "steps", 0)), &s));
  SeriesHandle orbit(s);
  TableFile t = indexed_table(ctx.files.path("orbit.csv"), "x", orbit.get());
  ctx.files.csv(t);
  if (ctx.plot()) ctx.files.plot(t, PlotStyle::line);
  ctx.out << "wrote " << t.rows.size() << " orbit points\n";
}

void run_cycles(Context& ctx) {
  const auto& p = ctx.p;
  tl_cycles* c = nullptr;
  check(tl_enumerate_cycles(p.at("h").c_str(), backend_param(p), static_cast<int>(count_param(p, "period", 1)), &c));
  CyclesHandle cycles(c);
  json arr = json::array();
  for (size_t i = 0; i < tl_cycles_count(c); ++i) {
    json pts = json::array();
    for (int j = 0; j < tl_cycles_period(c); ++j) pts.push_back(tl_cycles_point_text(c, i, static_cast<size_t>(j)));
    arr.push_back({{"period", tl_cycles_period(c)},
                   {"points", pts},
                   {"itinerary", tl_cycles_itinerary(c, i)},
                   {"multiplier", tl_cycles_multiplier_text(c, i)}});
  }
  ctx.files.json_file("cycles.json", arr);
  ctx.out << arr.dump(2) << "\n";
}

void run_stabilize(Context& ctx) {
  const auto& p = ctx.p;
  const tl_backend b = backend_param(p);
  CoeffsHandle coeffs = coefficients(p, b);
  tl_series* s = nullptr;
  check(tl_stabilize(p.at("h").c_str(), p.at("x0").c_str(), coeffs.get(), static_cast<int>(count_param(p, "k", 1)),
                     static_cast<size_t>(count_param(p, "steps", 6)), &s));
  SeriesHandle run(s);
  TableFile t = indexed_table(ctx.files.path("stabilize.csv"), "x_star", run.get());
  ctx.files.csv(t);
  if (ctx.plot()) ctx.files.plot(t, PlotStyle::line);

  const std::string final_value = tl_series_text(run.get(), tl_series_size(run.get()) - 1);
  tl_outcome_kind kind{};
  double dist = 0.0;
  check(tl_classify_value(p.at("h").c_str(), final_value.c_str(), b, number<double>(p, "tol"), &kind, &dist));
  json summary{{"x0", tl_series_text(run.get(), 0)},
               {"sigma", p.at("sigma")},
               {"coefficients", coefficient_json(coeffs.get())},
               {"final_value", final_value},
               {"classified_target", tl_outcome_name(kind)},
               {"distance", dist}};
  ctx.files.json_file("stabilize.json", summary);
  ctx.out << summary.dump(2) << "\n";
}

unsigned thread_count(const Params& p) {
  std::string text = p.at("threads");
  if (text.empty()) {
    const char* env = std::getenv("TENTLAB_THREADS");
    text = env ? env : "0";
  }
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw CliError(exit_usage, "thread count must be a non-negative integer: '" + text + "'");
  return v;
}

void run_sweep(Context& ctx) {
  const auto& p = ctx.p;
  tl_sweep_config cfg{p.at("net").c_str(),
                      p.at("h").c_str(),
                      p.at("sigma").c_str(),
                      backend_param(p),
                      static_cast<int>(count_param(p, "k", 1)),
                      static_cast<size_t>(count_param(p, "steps", 6)),
                      number<double>(p, "tol"),
                      thread_count(p)};
  tl_sweep* raw = nullptr;
  check(tl_sweep_run(&cfg, &raw));
  SweepHandle sw(raw);
  TableFile t{ctx.files.path("sweep.csv"), {"x0", "outcome", "final", "distance"}, {}};
  t.rows.reserve(tl_sweep_size(raw));
  json fixed = json::array();
  for (size_t i = 0; i < tl_sweep_size(raw); ++i) {
    tl_outcome_kind kind = tl_sweep_outcome(raw, i);
    t.rows.push_back({tl_sweep_x0_text(raw, i), tl_outcome_name(kind), tl_sweep_final_text(raw, i),
                      shortest(tl_sweep_distance(raw, i))});
    if (kind == TL_FIXED_POINT) fixed.push_back(tl_sweep_x0_text(raw, i));
  }
  ctx.files.csv(t);
  if (ctx.plot()) ctx.files.plot(t, PlotStyle::scatter, 0, 2);
  json counts;
  for (auto k : {TL_CYCLE_LOW, TL_CYCLE_HIGH, TL_FIXED_POINT, TL_UNRESOLVED})
    counts[tl_outcome_name(k)] = tl_sweep_count(raw, k);
  json summary{{"net", p.at("net")},
               {"points", tl_sweep_size(raw)},
               {"steps", cfg.steps},
               {"tolerance", cfg.tolerance},
               {"counts", counts},
               {"fixed_point_x0", fixed}};
  ctx.files.json_file("sweep.json", summary);
  ctx.out << summary.dump(2) << "\n";
}

tl_escape_criteria escape_criteria(const Params& p) {
  return {number<double>(p, "flat-tol"), number<double>(p, "jump-tol"),
          static_cast<size_t>(count_param(p, "min-flat", 1))};
}

void run_escape(Context& ctx) {
  const auto& p = ctx.p;
  const tl_backend b = backend_param(p);
  CoeffsHandle coeffs = coefficients(p, b);
  tl_series* s = nullptr;
  check(tl_stabilize(p.at("h").c_str(), p.at("x0").c_str(), coeffs.get(), static_cast<int>(count_param(p, "k", 1)),
                     static_cast<size_t>(count_param(p, "steps", 6)), &s));
  SeriesHandle run(s);
  TableFile t = indexed_table(ctx.files.path("escape.csv"), "x", run.get());
  ctx.files.csv(t);
  if (ctx.plot()) ctx.files.plot(t, PlotStyle::line);

  const tl_escape_criteria criteria = escape_criteria(p);
  int found = 0;
  tl_escape e{};
  check(tl_detect_escape(run.get(), &criteria, &found, &e));
  json summary = escape_json(found, e, run.get());
  const std::string final_value = tl_series_text(run.get(), tl_series_size(run.get()) - 1);
  tl_outcome_kind kind{};
  check(tl_classify_value(p.at("h").c_str(), final_value.c_str(), b, number<double>(p, "tol"), &kind, nullptr));
  summary["terminal_outcome"] = tl_outcome_name(kind);
  ctx.files.json_file("escape.json", summary);
  ctx.out << summary.dump(2) << "\n";
}

void run_series(Context& ctx) {
  const auto& p = ctx.p;
  tl_series* s = nullptr;
  check(tl_chaotic_series(p.at("h").c_str(), backend_param(p), static_cast<size_t>(count_param(p, "steps", 0)), &s));
  SeriesHandle series(s);
  TableFile t = indexed_table(ctx.files.path("series.csv"), "x", series.get());
  ctx.files.csv(t);
  if (ctx.plot()) ctx.files.plot(t, PlotStyle::line);
  ctx.out << "wrote " << t.rows.size() << " series points\n";
}

void run_sqrt2(Context& ctx) {
  const auto& p = ctx.p;
  const tl_escape_criteria criteria = escape_criteria(p);
  tl_series* s = nullptr;
  tl_scalar* ref = nullptr;
  int found = 0;
  tl_escape e{};
  check(tl_sqrt2_experiment(p.at("h-digits").c_str(), static_cast<int>(count_param(p, "precision", 10)),
                            static_cast<size_t>(count_param(p, "steps", 0)), &criteria, &s, &ref, &found, &e));
  SeriesHandle orbit(s);
  ScalarHandle reference(ref);
  TableFile t = indexed_table(ctx.files.path("sqrt2.csv"), "x", orbit.get());
  ctx.files.csv(t);
  if (ctx.plot()) ctx.files.plot(t, PlotStyle::line);
  json summary = escape_json(found, e, orbit.get());
  summary["reference"] = tl_scalar_text(reference.get());
  ctx.files.json_file("sqrt2.json", summary);
  ctx.out << summary.dump(2) << "\n";
}

void run_fib(Context& ctx) {
  const auto& p = ctx.p;
  const tl_backend b = backend_param(p);
  const double threshold = number<double>(p, "threshold");
  tl_series* s = nullptr;
  check(tl_recurrence(p.at("x0").c_str(), p.at("x1").c_str(), b, static_cast<size_t>(count_param(p, "steps", 1)), &s));
  SeriesHandle seq(s);
  TableFile t = indexed_table(ctx.files.path("fib.csv"), "x", seq.get());
  ctx.files.csv(t);
  if (ctx.plot()) ctx.files.plot(t, PlotStyle::line);

  tl_eigen eig{};
  check(tl_decompose(p.at("x0").c_str(), p.at("x1").c_str(), b, &eig));
  int predicted_found = 0;
  long predicted = 0;
  check(tl_predict_escape(p.at("x0").c_str(), p.at("x1").c_str(), b, threshold, &predicted_found, &predicted));
  int observed_found = 0;
  size_t observed = 0;
  check(tl_first_exceedance(seq.get(), threshold, &observed_found, &observed));
  json summary{{"a_u", eig.a_u},
               {"a_s", eig.a_s},
               {"lambda_u", eig.lambda_u},
               {"lambda_s", eig.lambda_s},
               {"predicted_escape", predicted_found ? json(predicted) : json(nullptr)},
               {"observed_escape", observed_found ? json(observed) : json(nullptr)}};

  if (p.at("phase") == "true") {
    TableFile phase{ctx.files.path("fib_phase.csv"), {"x_n", "x_n1"}, {}};
    for (size_t i = 0; i + 1 < tl_series_size(seq.get()); ++i)
      phase.rows.push_back({tl_series_text(seq.get(), i), tl_series_text(seq.get(), i + 1)});
    ctx.files.csv(phase);
    if (ctx.plot()) ctx.files.plot(phase, PlotStyle::scatter);
    summary["manifold_slopes"] = {{"unstable", eig.lambda_u}, {"stable", eig.lambda_s}};
  }
  ctx.files.json_file("fib.json", summary);
  ctx.out << summary.dump(2) << "\n";
}

void run_spectrum(Context& ctx) {
  const auto& p = ctx.p;
  const tl_backend b = backend_param(p);
  CoeffsHandle coeffs = coefficients(p, b);
  json summary{{"sigma", p.at("sigma")}, {"coefficients", coefficient_json(coeffs.get())}};
  if (!p.at("mu").empty()) {
    double mags[6];
    double radius = 0.0;
    check(tl_companion_spectrum(coeffs.get(), number<double>(p, "mu"), mags, &radius));
    summary["mu"] = number<double>(p, "mu");
    summary["magnitudes"] = std::vector<double>(mags, mags + 6);
    summary["spectral_radius"] = radius;
    summary["stable"] = radius < 1.0;
  }
  tl_equilibria* raw = nullptr;
  check(tl_classify_equilibria(p.at("h").c_str(), static_cast<int>(count_param(p, "k", 1)), coeffs.get(), 1, &raw));
  EquilibriaHandle eq(raw);
  json list = json::array();
  for (size_t i = 0; i < tl_equilibria_count(raw); ++i)
    list.push_back({{"point", tl_equilibria_point_text(raw, i)},
                    {"slope", tl_equilibria_slope_text(raw, i)},
                    {"spectral_radius", tl_equilibria_spectral_radius(raw, i)},
                    {"stable", tl_equilibria_stable(raw, i) != 0},
                    {"boundary", tl_equilibria_boundary(raw, i) != 0}});
  summary["equilibria"] = list;
  ctx.files.json_file("spectrum.json", summary);
  ctx.out << summary.dump(2) << "\n";
}

// ---- command table --------------------------------------------------------

struct Command {
  std::string name;
  std::string description;
  Params defaults;
  std::vector<std::string> flags;  // boolean switches
  void (*run)(Context&);
};

const std::vector<Command>& commands() {
  const Params map{{"h", "1.5"}, {"backend", "binary64"}, {"precision", "50"}};
  auto with = [&](Params extra) {
    Params p = map;
    for (auto& [k, v] : extra) p[k] = v;
    return p;
  };
  static const std::vector<Command> table = {
      {"simulate", "orbit of T^k from x0", with({{"x0", "0.5"}, {"k", "2"}, {"steps", "50"}}), {"plot"}, run_simulate},
      {"cycles", "enumerate cycles of a given minimal period", with({{"period", "2"}}), {}, run_cycles},
      {"stabilize", "6-tap averaged orbit of f = T^k",
       with({{"x0", "0.3"}, {"k", "2"}, {"sigma", "1.2"}, {"steps", "50"}, {"tol", "1e-3"}}), {"plot"}, run_stabilize},
      {"sweep", "stabilize every point of a net and classify the outcome",
       with({{"net", "uniform:100000"},
             {"k", "2"},
             {"sigma", "1.2"},
             {"steps", "50"},
             {"tol", "1e-3"},
             {"threads", ""}}),
       {"plot"}, run_sweep},
      {"escape", "detect a flat-then-jump transient in a stabilized run",
       with({{"x0", "0.4"},
             {"k", "2"},
             {"sigma", "1.2"},
             {"steps", "300"},
             {"tol", "1e-3"},
             {"flat-tol", "1e-9"},
             {"jump-tol", "1e-3"},
             {"min-flat", "30"}}),
       {"plot"}, run_escape},
      {"series", "orbit of the critical point 1/2 under T_h", with({{"steps", "300"}}), {"plot"}, run_series},
      {"sqrt2", "decimal orbit of 1/2 for h near sqrt(2)",
       Params{{"h-digits", default_sqrt2_digits},
              {"precision", "70"},
              {"steps", "600"},
              {"flat-tol", "1e-40"},
              {"jump-tol", "1e-2"},
              {"min-flat", "30"}},
       {"plot"}, run_sqrt2},
      {"fib", "Fibonacci recurrence and its eigen-decomposition",
       Params{{"x0", "1"},
              {"x1", "-0.618033988749"},
              {"steps", "100"},
              {"threshold", "1"},
              {"backend", "binary64"},
              {"precision", "50"}},
       {"plot", "phase"}, run_fib},
      {"spectrum", "companion-map spectra and equilibrium stability",
       with({{"k", "2"}, {"sigma", "1.2"}, {"mu", ""}}), {}, run_spectrum},
  };
  return table;
}

void write_manifest(const fs::path& dir, const std::string& command, const Params& params,
                    const std::vector<std::string>& artifacts, double seconds) {
  json manifest{{"schema", 1},
                {"command", command},
                {"parameters", params},
                {"artifacts", artifacts},
                {"tool_version", TENTLAB_VERSION},
                {"wall_time_seconds", seconds}};
  std::ofstream f(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!f) throw CliError(exit_internal, "cannot write manifest");
  f << manifest.dump(2) << "\n";
}

std::vector<std::string> replay_args(const fs::path& manifest_path, const std::string& out_dir) {
  std::ifstream f(manifest_path);
  if (!f) throw CliError(exit_usage, "cannot read manifest " + manifest_path.string());
  json m;
  try {
    m = json::parse(f);
  } catch (const json::exception& e) {
    throw CliError(exit_usage, std::string("malformed manifest: ") + e.what());
  }
  if (m.value("schema", 0) != 1) throw CliError(exit_usage, "unsupported manifest schema");
  const std::string command = m.at("command").get<std::string>();
  const Command* cmd = nullptr;
  for (const auto& c : commands())
    if (c.name == command) cmd = &c;
  if (!cmd) throw CliError(exit_usage, "manifest names unknown command '" + command + "'");
  std::vector<std::string> args{command};
  for (auto& [key, value] : m.at("parameters").items()) {
    const std::string v = value.get<std::string>();
    if (std::find(cmd->flags.begin(), cmd->flags.end(), key) != cmd->flags.end()) {
      if (v == "true") args.push_back("--" + key);
    } else {
      args.push_back("--" + key + "=" + v);
    }
  }
  args.push_back("--out=" + out_dir);
  return args;
}

int plot_command(const std::string& csv, const std::string& style, std::size_t x_col, std::size_t y_col,
                 const std::string& output, std::ostream& out) {
  TableFile table = read_csv(csv);
  std::string svg = render_plot(table, parse_style(style), x_col, y_col);
  fs::path target = output.empty() ? fs::path(csv).replace_extension(".svg") : fs::path(output);
  std::ofstream f(target, std::ios::binary | std::ios::trunc);
  if (!f) throw CliError(exit_internal, "cannot write " + target.string());
  f << svg;
  out << "wrote " << target.string() << "\n";
  return exit_ok;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"tentlab: tent-map stabilization laboratory", "tentlab"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", TENTLAB_VERSION);

  std::string out_dir = ".";
  std::vector<Params> values(commands().size());
  std::vector<std::map<std::string, bool>> switches(commands().size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < commands().size(); ++i) {
    const Command& c = commands()[i];
    CLI::App* sub = app.add_subcommand(c.name, c.description);
    sub->set_help_flag("--help", "print help and exit");  // --h is the map parameter
    values[i] = c.defaults;
    for (auto& [key, value] : values[i]) sub->add_option("--" + key, value)->capture_default_str();
    for (const auto& flag : c.flags) sub->add_flag("--" + flag, switches[i][flag]);
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    subs.push_back(sub);
  }

  std::string manifest_path;
  CLI::App* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  replay->add_option("--manifest", manifest_path, "manifest.json of a previous run")->required();
  replay->add_option("--out", out_dir, "output directory")->capture_default_str();

  std::string csv_path, style = "line", svg_path;
  std::size_t x_col = 0, y_col = 1;
  CLI::App* plot = app.add_subcommand("plot", "render a two-column CSV as SVG");
  plot->add_option("--csv", csv_path, "input table")->required();
  plot->add_option("--style", style, "line or scatter")->capture_default_str();
  plot->add_option("--x-col", x_col, "x column index")->capture_default_str();
  plot->add_option("--y-col", y_col, "y column index")->capture_default_str();
  plot->add_option("--output", svg_path, "SVG path (default: CSV path with .svg)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::CallForVersion&) {
    out << TENTLAB_VERSION << "\n";
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return exit_usage;
  }

  try {
    if (replay->parsed()) return run_command(replay_args(manifest_path, out_dir), out, err);
    if (plot->parsed()) return plot_command(csv_path, style, x_col, y_col, svg_path, out);

    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!subs[i]->parsed()) continue;
      const Command& c = commands()[i];
      Params params = values[i];
      for (const auto& [flag, on] : switches[i]) params[flag] = on ? "true" : "false";

      const auto start = std::chrono::steady_clock::now();
      fs::create_directories(out_dir);
      Artifacts files{fs::path(out_dir)};
      Context ctx{params, files, out};
      c.run(ctx);
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      write_manifest(out_dir, c.name, params, files.names(), seconds);
      return exit_ok;
    }
  } catch (const CliError& e) {
    err << "error: " << e.what() << "\n";
    return e.code();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
  err << app.help();
  return exit_usage;
}

}  // namespace tentlab::cli
