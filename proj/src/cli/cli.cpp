#include "bmod/cli/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "bmod/codegen/generator.hpp"
#include "bmod/codegen/template.hpp"
#include "bmod/error.hpp"
#include "bmod/lang/parser.hpp"
#include "bmod/lang/serializer.hpp"
#include "bmod/meta/bmod_metamodel.hpp"
#include "bmod/meta/interchange.hpp"
#include "bmod/sim/io.hpp"
#include "bmod/sim/simulator.hpp"
#include "bmod/validate/validator.hpp"
#include "bmod/views/exporters.hpp"

namespace bmod::cli
{

namespace fs = std::filesystem;
using nlohmann::json;

void write_atomically(const std::string & path, const std::string & content)
{
  static std::atomic<unsigned> counter{0};
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path temp = target.string() + ".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
  {
    std::ofstream file(temp, std::ios::binary | std::ios::trunc);
    if (!file) throw std::ios_base::failure("cannot create " + temp.string());
    file.write(content.data(), static_cast<std::streamsize>(content.size()));
    file.close();
    if (!file) {
      std::error_code ignored;
      fs::remove(temp, ignored);
      throw std::ios_base::failure("cannot write " + temp.string());
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(temp, ignored);
    throw fs::filesystem_error("cannot replace file", target, ec);
  }
}

namespace
{

struct Options
{
  std::string out = "bmod-out";
  std::string config;
  bool quiet = false;
  bool verbose = false;
  std::string format = "text";

  std::vector<std::string> paths;
  std::string sim_path;
  std::string sweep;
  std::uint64_t seed = 0;
  std::uint64_t max_ticks = 10'000;
  std::uint64_t fire_period = 1;
  std::string policy = "signs_first";

  std::string metamodel_path;
  std::string builtin;
  std::string template_name = "java";
  std::string template_dir;
  bool list_templates = false;

  std::string view;
  std::string scenario_path;
  std::optional<std::uint64_t> at_tick;
  std::string style;

  bool write = false;
  bool check = false;
};

/// Outcome of one unit of work. Text is buffered so parallel runs can be
/// reported in a fixed order.
struct Report
{
  int code = exit_ok;
  std::string out;
  std::string err;

  void raise(int c) { code = std::max(code, c); }
};

class UsageError : public std::runtime_error
{
  using std::runtime_error::runtime_error;
};

std::optional<std::string> read_file(const std::string & path)
{
  std::error_code ec;
  if (fs::is_directory(path, ec)) return std::nullopt;
  std::ifstream file(path, std::ios::binary);
  if (!file) return std::nullopt;
  std::ostringstream buffer;
  buffer << file.rdbuf();
  if (file.bad()) return std::nullopt;
  return buffer.str();
}

void print_diagnostics(Report & r, const Diagnostics & diagnostics, const std::string & file, const Options & o)
{
  for (const auto & d : diagnostics) {
    if (o.quiet && d.severity != Severity::error) continue;
    r.err += format_diagnostic(d, file) + "\n";
  }
}

std::optional<lang::Scenario> load_scenario(Report & r, const std::string & path, const Options & o)
{
  const auto text = read_file(path);
  if (!text) {
    r.err += "error: cannot read '" + path + "'\n";
    r.raise(exit_io);
    return std::nullopt;
  }
  auto parsed = lang::parse(*text);
  if (!parsed.ok()) {
    print_diagnostics(r, parsed.diagnostics, path, o);
    r.raise(exit_usage);
    return std::nullopt;
  }
  return std::move(parsed.scenario);
}

sim::SimConfig sim_config(const Options & o)
{
  sim::SimConfig config;
  config.seed = o.seed;
  config.max_ticks = o.max_ticks;
  config.fire_period = o.fire_period;
  config.policy = *sim::policy_from_string(o.policy);
  return config;
}

// ---------------------------------------------------------------- check

Report check_one(const std::string & path, const Options & o)
{
  Report r;
  Diagnostics diagnostics;
  const auto text = read_file(path);
  if (!text) {
    r.err += "error: cannot read '" + path + "'\n";
    r.raise(exit_io);
    return r;
  }
  auto parsed = lang::parse(*text);
  if (!parsed.ok()) {
    diagnostics = std::move(parsed.diagnostics);
    r.raise(exit_usage);
  } else {
    diagnostics = validate::validate(*parsed.scenario);
    if (has_errors(diagnostics)) r.raise(exit_semantic);
  }

  if (o.format == "json") {
    json doc{{"file", path}, {"exit", r.code}, {"diagnostics", json::parse(diagnostics_to_json(diagnostics, path))}};
    r.out += doc.dump() + "\n";
  } else {
    print_diagnostics(r, diagnostics, path, o);
    if (o.verbose && r.code == exit_ok) r.out += path + ": ok\n";
  }
  return r;
}

// ---------------------------------------------------------------- simulate

std::string summary_line(const sim::SimulationResult & result, const Options & o)
{
  if (o.format == "json") {
    json doc{{"ticks", result.ticks},
             {"evacuated", result.evacuated},
             {"dead", result.dead},
             {"trapped", result.trapped}};
    return doc.dump();
  }
  return "ticks=" + std::to_string(result.ticks) + " evacuated=" + std::to_string(result.evacuated) +
         " dead=" + std::to_string(result.dead) + " trapped=" + std::to_string(result.trapped);
}

Report simulate_one(const std::string & path, const fs::path & out_dir, const Options & o, const std::string & prefix)
{
  Report r;
  auto scenario = load_scenario(r, path, o);
  if (!scenario) return r;

  sim::SimulationState state;
  try {
    state = sim::init(*scenario, sim_config(o));
  } catch (const Error & e) {
    print_diagnostics(r, e.diagnostics(), path, o);
    r.err += "error: " + std::string(e.what()) + "\n";
    r.raise(exit_semantic);
    return r;
  }
  const auto result = sim::run(state);

  const auto result_path = (out_dir / "result.json").string();
  const auto trace_path = (out_dir / "trace.jsonl").string();
  try {
    write_atomically(result_path, sim::result_to_json(result, *state.plan));
    write_atomically(trace_path, sim::trace_to_jsonl(state.trace));
  } catch (const std::exception & e) {
    r.err += "error: " + std::string(e.what()) + "\n";
    r.raise(exit_io);
    return r;
  }
  if (!o.quiet) r.out += prefix + summary_line(result, o) + "\n";
  if (o.verbose) r.err += "wrote " + result_path + "\nwrote " + trace_path + "\n";
  return r;
}

Report simulate_sweep(const Options & o)
{
  Report total;
  std::vector<fs::path> inputs;
  std::error_code ec;
  for (fs::directory_iterator it(o.sweep, ec), end; !ec && it != end; it.increment(ec)) {
    if (it->path().extension() == ".bmod") inputs.push_back(it->path());
  }
  if (ec) {
    total.err += "error: cannot read directory '" + o.sweep + "'\n";
    total.raise(exit_io);
    return total;
  }
  std::sort(inputs.begin(), inputs.end());

  std::vector<Report> reports(inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < inputs.size(); i = next++) {
      const auto stem = inputs[i].stem().string();
      const std::string prefix = o.format == "json" ? "" : stem + ": ";
      reports[i] = simulate_one(inputs[i].string(), fs::path(o.out) / stem, o, prefix);
    }
  };
  const auto hw = std::max(1u, std::thread::hardware_concurrency());
  const auto count = std::min<std::size_t>(hw, inputs.size());
  std::vector<std::jthread> pool;
  for (std::size_t i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (o.format == "json" && !reports[i].out.empty()) {
      auto doc = json::parse(reports[i].out);
      json line{{"scenario", inputs[i].stem().string()}};
      line.update(doc);
      reports[i].out = line.dump() + "\n";
    }
    total.out += reports[i].out;
    total.err += reports[i].err;
    total.raise(reports[i].code);
  }
  return total;
}

// ---------------------------------------------------------------- codegen / export

meta::MetaModel load_metamodel(Report & r, const Options & o, bool & ok)
{
  ok = false;
  if (o.builtin.empty() == o.metamodel_path.empty()) {
    throw UsageError("give exactly one metamodel source: --builtin bmod or a metamodel JSON path");
  }
  if (!o.builtin.empty()) {
    if (o.builtin != "bmod") throw UsageError("unknown builtin metamodel '" + o.builtin + "'; available: bmod");
    ok = true;
    return meta::build_bmod_metamodel();
  }
  const auto text = read_file(o.metamodel_path);
  if (!text) {
    r.err += "error: cannot read '" + o.metamodel_path + "'\n";
    r.raise(exit_io);
    return meta::MetaModel("");
  }
  try {
    auto mm = meta::metamodel_from_json(*text);
    ok = true;
    return mm;
  } catch (const Error & e) {
    print_diagnostics(r, e.diagnostics(), o.metamodel_path, o);
    r.err += "error: " + std::string(e.what()) + "\n";
    r.raise(exit_semantic);
    return meta::MetaModel("");
  }
}

std::optional<fs::path> template_dir(const Options & o)
{
  if (!o.template_dir.empty()) return fs::path(o.template_dir);
  if (const char * env = std::getenv("BMOD_TEMPLATE_DIR"); env != nullptr && *env != '\0') return fs::path(env);
  return std::nullopt;
}

Report cmd_codegen(const Options & o)
{
  Report r;
  const auto user_dir = template_dir(o);
  if (o.list_templates) {
    auto listing = codegen::list_templates(user_dir);
    for (const auto & name : listing.names) r.out += name + "\n";
    if (!o.quiet) {
      for (const auto & w : listing.warnings) r.err += format_diagnostic(w, "") + "\n";
    }
    return r;
  }

  bool ok = false;
  const auto mm = load_metamodel(r, o, ok);
  if (!ok) return r;

  codegen::GenTemplate tmpl;
  try {
    tmpl = codegen::load_template(o.template_name, user_dir);
  } catch (const Error & e) {
    r.err += "error: " + std::string(e.what()) + "\n";
    r.raise(exit_usage);
    return r;
  }

  codegen::GenerationResult generated;
  try {
    generated = codegen::generate(mm, tmpl);
  } catch (const Error & e) {
    r.err += "error: " + std::string(e.what()) + "\n";
    r.raise(exit_usage);
    return r;
  }
  print_diagnostics(r, generated.warnings, "", o);

  const fs::path dir = fs::path(o.out) / tmpl.name;
  try {
    for (const auto & file : generated.files) {
      write_atomically((dir / file.filename).string(), file.content);
      if (o.verbose) r.err += "wrote " + (dir / file.filename).string() + "\n";
    }
    write_atomically((dir / "manifest.json").string(), codegen::manifest_json(mm, tmpl, generated));
  } catch (const std::exception & e) {
    r.err += "error: " + std::string(e.what()) + "\n";
    r.raise(exit_io);
    return r;
  }
  if (!o.quiet) {
    r.out += "generated " + std::to_string(generated.files.size()) + " files in " + dir.string() + "\n";
  }
  return r;
}

Report cmd_export(const Options & o)
{
  Report r;
  views::ViewStyle style = views::default_style();
  if (!o.style.empty()) {
    const auto text = read_file(o.style);
    if (!text) {
      r.err += "error: cannot read '" + o.style + "'\n";
      r.raise(exit_io);
      return r;
    }
    try {
      style = views::style_from_json(*text);
    } catch (const Error & e) {
      throw UsageError(e.what());
    }
  }

  std::string target;
  std::string content;
  if (o.view == "classes" || o.view == "spreadsheet") {
    bool ok = false;
    const auto mm = load_metamodel(r, o, ok);
    if (!ok) return r;
    const std::string stem = mm.name().empty() ? "metamodel" : mm.name();
    if (o.view == "classes") {
      target = (fs::path(o.out) / (stem + ".dot")).string();
      content = views::export_class_diagram(mm);
    } else {
      target = (fs::path(o.out) / (stem + ".csv")).string();
      content = views::export_spreadsheet(mm);
    }
  } else {
    if (o.scenario_path.empty()) throw UsageError("--view scenario needs a .bmod path");
    auto scenario = load_scenario(r, o.scenario_path, o);
    if (!scenario) return r;
    const auto diagnostics = validate::validate(*scenario);
    if (has_errors(diagnostics)) {
      print_diagnostics(r, diagnostics, o.scenario_path, o);
      r.raise(exit_semantic);
      return r;
    }
    target = (fs::path(o.out) / (fs::path(o.scenario_path).stem().string() + ".svg")).string();
    if (o.at_tick) {
      auto state = sim::init(*scenario, sim_config(o));
      while (state.tick < *o.at_tick && !sim::terminated(state)) sim::step(state);
      if (state.tick < *o.at_tick && o.verbose) {
        r.err += "note: simulation ended at tick " + std::to_string(state.tick) + "\n";
      }
      content = views::render_scenario(*scenario, &state, style);
    } else {
      content = views::render_scenario(*scenario, nullptr, style);
    }
  }

  try {
    write_atomically(target, content);
  } catch (const std::exception & e) {
    r.err += "error: " + std::string(e.what()) + "\n";
    r.raise(exit_io);
    return r;
  }
  if (!o.quiet) r.out += "wrote " + target + "\n";
  return r;
}

// ---------------------------------------------------------------- fmt

Report fmt_one(const std::string & path, const Options & o)
{
  Report r;
  const auto text = read_file(path);
  if (!text) {
    r.err += "error: cannot read '" + path + "'\n";
    r.raise(exit_io);
    return r;
  }
  auto parsed = lang::parse(*text);
  if (!parsed.ok()) {
    print_diagnostics(r, parsed.diagnostics, path, o);
    r.raise(exit_usage);
    return r;
  }
  const auto canonical = lang::serialize(*parsed.scenario);
  if (o.check) {
    if (canonical != *text) {
      if (!o.quiet) r.err += path + ": not in canonical form\n";
      r.raise(exit_semantic);
    }
  } else if (o.write) {
    if (canonical != *text) {
      try {
        write_atomically(path, canonical);
      } catch (const std::exception & e) {
        r.err += "error: " + std::string(e.what()) + "\n";
        r.raise(exit_io);
        return r;
      }
      if (o.verbose) r.err += "formatted " + path + "\n";
    }
  } else {
    r.out += canonical;
  }
  return r;
}

// ---------------------------------------------------------------- config

struct Binding
{
  std::vector<const CLI::Option *> flags;
  std::function<void(const json &)> apply;
};

template <typename T>
Binding bind(T & target, std::vector<const CLI::Option *> flags)
{
  return {std::move(flags), [&target](const json & value) {
            if constexpr (std::is_same_v<T, std::optional<std::uint64_t>>) {
              target = value.get<std::uint64_t>();
            } else {
              target = value.get<T>();
            }
          }};
}

void apply_config(const std::string & path, const std::map<std::string, Binding> & bindings)
{
  const auto text = read_file(path);
  if (!text) throw std::ios_base::failure("cannot read config '" + path + "'");
  json doc;
  try {
    doc = json::parse(*text);
  } catch (const json::exception & e) {
    throw UsageError("malformed config '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config '" + path + "' must be a JSON object");
  for (const auto & [key, value] : doc.items()) {
    auto it = bindings.find(key);
    if (it == bindings.end()) throw UsageError("unknown config key '" + key + "'");
    const bool given = std::any_of(it->second.flags.begin(), it->second.flags.end(),
                                   [](const CLI::Option * flag) { return flag->count() > 0; });
    if (given) continue;
    try {
      it->second.apply(value);
    } catch (const json::exception &) {
      throw UsageError("config key '" + key + "' has the wrong type");
    }
  }
}

void check_choice(const std::string & what, const std::string & value, std::initializer_list<std::string_view> choices)
{
  for (auto c : choices) {
    if (value == c) return;
  }
  std::string list;
  for (auto c : choices) {
    if (!list.empty()) list += ", ";
    list += c;
  }
  throw UsageError(what + " '" + value + "' is not one of: " + list);
}

}  // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  Options o;
  CLI::App app{"Bmod building-evacuation workbench", "bmod"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bmod 1.0.0");

  auto * out_flag = app.add_option("--out", o.out, "Output directory")->capture_default_str();
  app.add_option("--config", o.config, "JSON file with default option values");
  auto * quiet_flag = app.add_flag("-q,--quiet", o.quiet, "Print nothing but errors");
  auto * verbose_flag = app.add_flag("-v,--verbose", o.verbose, "Report written files and successes");
  quiet_flag->excludes(verbose_flag);

  auto * check = app.add_subcommand("check", "Parse and validate .bmod files");
  check->alias("validate");
  check->add_option("paths", o.paths, "Scenario files")->required();
  auto * check_format = check->add_option("--format", o.format, "text or json");

  auto * simulate = app.add_subcommand("simulate", "Run the evacuation simulation");
  simulate->add_option("path", o.sim_path, "Scenario file");
  auto * sweep_flag = simulate->add_option("--sweep", o.sweep, "Simulate every .bmod file of a directory");
  auto * seed_flag = simulate->add_option("--seed", o.seed, "Seed (recorded; the rules are deterministic)");
  auto * ticks_flag = simulate->add_option("--max-ticks", o.max_ticks, "Tick budget");
  auto * period_flag = simulate->add_option("--fire-period", o.fire_period, "Ticks between fire spreads")
                         ->check(CLI::PositiveNumber);
  auto * policy_flag = simulate->add_option("--policy", o.policy, "signs_first or shortest_path");
  auto * sim_format = simulate->add_option("--format", o.format, "text or json");

  auto * gen = app.add_subcommand("codegen", "Generate model classes from a metamodel");
  gen->add_option("metamodel", o.metamodel_path, "Metamodel JSON document");
  auto * gen_builtin = gen->add_option("--builtin", o.builtin, "Built-in metamodel (bmod)");
  auto * template_flag = gen->add_option("--template", o.template_name, "Template name")->capture_default_str();
  auto * template_dir_flag = gen->add_option("--template-dir", o.template_dir, "User template directory");
  gen->add_flag("--list-templates", o.list_templates, "List available templates");

  auto * exp = app.add_subcommand("export", "Export a view");
  auto * view_flag = exp->add_option("--view", o.view, "classes, spreadsheet or scenario")->required();
  exp->add_option("input", o.scenario_path, "Scenario file (scenario view) or metamodel JSON");
  auto * exp_builtin = exp->add_option("--builtin", o.builtin, "Built-in metamodel (bmod)");
  auto * tick_flag = exp->add_option("--at-tick", o.at_tick, "Render the simulation state at this tick");
  auto * style_flag = exp->add_option("--style", o.style, "JSON style override");
  auto * exp_period = exp->add_option("--fire-period", o.fire_period, "Ticks between fire spreads")
                        ->check(CLI::PositiveNumber);
  auto * exp_policy = exp->add_option("--policy", o.policy, "signs_first or shortest_path");

  auto * fmt = app.add_subcommand("fmt", "Print or rewrite files in canonical form");
  fmt->add_option("paths", o.paths, "Scenario files")->required();
  auto * write_flag = fmt->add_flag("--write", o.write, "Rewrite files in place");
  auto * check_flag = fmt->add_flag("--check", o.check, "Exit 1 when a file is not canonical");
  write_flag->excludes(check_flag);

  for (auto * sub : {check, simulate, gen, exp, fmt}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::CallForVersion & e) {
    out << e.what() << "\n";
    return exit_ok;
  } catch (const CLI::ParseError & e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  Report report;
  try {
    if (!o.config.empty()) {
      const std::map<std::string, Binding> bindings{
        {"out", bind(o.out, {out_flag})},
        {"quiet", bind(o.quiet, {quiet_flag, verbose_flag})},
        {"verbose", bind(o.verbose, {verbose_flag, quiet_flag})},
        {"format", bind(o.format, {check_format, sim_format})},
        {"seed", bind(o.seed, {seed_flag})},
        {"max_ticks", bind(o.max_ticks, {ticks_flag})},
        {"sweep", bind(o.sweep, {sweep_flag})},
        {"fire_period", bind(o.fire_period, {period_flag, exp_period})},
        {"policy", bind(o.policy, {policy_flag, exp_policy})},
        {"builtin", bind(o.builtin, {gen_builtin, exp_builtin})},
        {"template", bind(o.template_name, {template_flag})},
        {"template_dir", bind(o.template_dir, {template_dir_flag})},
        {"at_tick", bind(o.at_tick, {tick_flag})},
        {"style", bind(o.style, {style_flag})},
        {"view", bind(o.view, {view_flag})},
      };
      apply_config(o.config, bindings);
      if (o.quiet && o.verbose) throw UsageError("--quiet and --verbose are exclusive");
      if (o.fire_period == 0) throw UsageError("fire_period must be positive");
    }
    check_choice("format", o.format, {"text", "json"});
    check_choice("policy", o.policy, {"signs_first", "shortest_path"});

    if (check->parsed()) {
      for (const auto & path : o.paths) {
        auto r = check_one(path, o);
        report.out += r.out;
        report.err += r.err;
        report.raise(r.code);
      }
    } else if (simulate->parsed()) {
      if (o.sweep.empty() == o.sim_path.empty()) {
        throw UsageError("simulate needs either a scenario path or --sweep <dir>");
      }
      report = o.sweep.empty() ? simulate_one(o.sim_path, o.out, o, "") : simulate_sweep(o);
    } else if (gen->parsed()) {
      report = cmd_codegen(o);
    } else if (exp->parsed()) {
      check_choice("view", o.view, {"classes", "spreadsheet", "scenario"});
      if (o.view != "scenario") o.metamodel_path = std::exchange(o.scenario_path, {});
      report = cmd_export(o);
    } else if (fmt->parsed()) {
      for (const auto & path : o.paths) {
        auto r = fmt_one(path, o);
        report.out += r.out;
        report.err += r.err;
        report.raise(r.code);
      }
    }
  } catch (const UsageError & e) {
    report.err += "error: " + std::string(e.what()) + "\n";
    report.raise(exit_usage);
  } catch (const std::ios_base::failure & e) {
    report.err += "error: " + std::string(e.what()) + "\n";
    report.raise(exit_io);
  } catch (const fs::filesystem_error & e) {
    report.err += "error: " + std::string(e.what()) + "\n";
    report.raise(exit_io);
  } catch (const Error & e) {
    report.err += "error: " + std::string(e.what()) + "\n";
    report.raise(exit_semantic);
  }
  out << report.out;
  err << report.err;
  return report.code;
}

}  // namespace bmod::cli
