#include "hyprelax/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "hyprelax/dispersion.hpp"
#include "hyprelax/harness.hpp"
#include "hyprelax/io.hpp"

namespace hyprelax {

namespace {

using nlohmann::json;

constexpr double kPi = 3.141592653589793;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"hyperbolize", {"command", "m", "sigma0", "tau", "alpha"}},
      {"dispersion",
       {"command", "m", "sigma0", "tau", "alpha", "k_min", "k_max", "num_k",
        "out"}},
      {"census", {"command", "m", "m_min", "m_max", "sigma0", "out"}},
      {"solve",
       {"command", "model", "tau", "hyperbolized", "m", "sigma0", "alpha",
        "kappa", "x_left", "x_right", "n", "stepper", "dt", "T", "snapshots",
        "dealias", "ic", "ic_k", "out"}},
      {"converge",
       {"command", "model", "tau_values", "m", "sigma0", "kappa", "x_left",
        "x_right", "n", "stepper", "T", "norm", "ic", "ic_k", "out"}},
      {"reproduce", {"command", "preset", "out"}},
  };
  return keys;
}

void validate_keys(const json& cfg) {
  if (!cfg.contains("command") || !cfg["command"].is_string())
    throw ConfigError("config: missing command");
  const std::string cmd = cfg["command"];
  const auto it = allowed_keys().find(cmd);
  if (it == allowed_keys().end())
    throw ConfigError("config: unknown command '" + cmd + "'");
  for (const auto& [key, value] : cfg.items())
    if (!it->second.count(key))
      throw ConfigError("config: unknown key '" + key + "' for command '" +
                        cmd + "'");
}

template <typename T>
T get_or(const json& cfg, const std::string& key, T fallback) {
  if (!cfg.contains(key)) return fallback;
  try {
    return cfg[key].get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: bad value for key '" + key + "'");
  }
}

LinearModel linear_from_config(const json& cfg) {
  if (!cfg.contains("m")) throw ConfigError("config: missing key 'm'");
  const std::size_t m = cfg["m"].get<std::size_t>();
  const int sigma0 = get_or<int>(cfg, "sigma0", default_sigma0(m));
  const std::vector<double> alpha =
      get_or<std::vector<double>>(cfg, "alpha", {});
  return LinearModel(m, sigma0, alpha);
}

ModelSpec model_from_config(const json& cfg) {
  const std::string name = get_or<std::string>(cfg, "model", "heat");
  ModelSpec spec;
  spec.kind = model_kind_from_string(name);
  spec.tau = get_or<double>(cfg, "tau", 0.1);
  spec.kappa = get_or<double>(cfg, "kappa", 1.0);
  if (spec.kind == ModelKind::GeneralLinear) spec.linear = linear_from_config(cfg);
  return spec;
}

std::function<cd(double)> make_ic(const std::string& name, double x_left,
                                  double length, double ic_k) {
  const double kphys = 2.0 * kPi * ic_k / length;
  if (name == "gaussian")
    return [](double x) { return cd{std::exp(-x * x)}; };
  if (name == "sine")
    return [=](double x) { return cd{std::sin(kphys * (x - x_left))}; };
  if (name == "mode")
    return [=](double x) { return std::exp(cd{0.0, kphys * (x - x_left)}); };
  if (name == "sech")
    return [](double x) { return cd{1.0 / std::cosh(x)}; };
  if (name == "ch-pulse")
    return [](double x) { return cd{camassa_holm_pulse(x)}; };
  if (name == "nls-soliton")
    return [](double x) {
      return std::sqrt(2.0) * std::exp(cd{0.0, x}) / std::cosh(x);
    };
  throw ConfigError("config: unknown initial condition '" + name + "'");
}

std::string default_ic(ModelKind kind) {
  switch (kind) {
    case ModelKind::NLS: return "nls-soliton";
    case ModelKind::CamassaHolm: return "ch-pulse";
    default: return "gaussian";
  }
}

json census_to_json(const CensusReport& r) {
  json j;
  j["m"] = r.m;
  j["sigma0"] = r.sigma0;
  j["total_candidates"] = r.total_candidates;
  j["low_k_pass"] = r.low_k_pass;
  j["high_k_pass"] = r.high_k_pass;
  j["full_pass"] = r.full_pass;
  if (r.unique_stable) {
    std::vector<std::size_t> target;
    for (std::size_t t : r.unique_stable->target) target.push_back(t + 1);
    j["unique_stable"] = {{"target", target},
                          {"sign", r.unique_stable->sign}};
  } else {
    j["unique_stable"] = nullptr;
  }
  return j;
}

void write_meta(const std::filesystem::path& dir, const json& config,
                const json& info) {
  json meta;
  meta["config"] = config;
  if (!info.is_null()) meta["info"] = info;
  std::ofstream out(dir / "meta.json", std::ios::binary);
  out << meta.dump(2) << '\n';
}

int cmd_hyperbolize(const json& cfg, bool quiet) {
  const LinearModel model = linear_from_config(cfg);
  const double tau = get_or<double>(cfg, "tau", 0.1);
  const HyperbolicSystem sys =
      assemble_system(model, stable_permutation(model.m, model.sigma0), tau);
  (void)quiet;  // the JSON itself is the output
  std::cout << to_json(sys).dump(2) << '\n';
  return 0;
}

int cmd_dispersion(const json& cfg, bool quiet) {
  const LinearModel model = linear_from_config(cfg);
  const double tau = get_or<double>(cfg, "tau", 0.1);
  const HyperbolicSystem sys =
      assemble_system(model, stable_permutation(model.m, model.sigma0), tau);
  const double k_min = get_or<double>(cfg, "k_min", -10.0);
  const double k_max = get_or<double>(cfg, "k_max", 10.0);
  const std::size_t num_k = get_or<std::size_t>(cfg, "num_k", 101);
  if (num_k < 2 || !(k_max > k_min))
    throw ConfigError("config: bad wavenumber range");
  std::vector<double> kgrid(num_k);
  for (std::size_t i = 0; i < num_k; ++i)
    kgrid[i] = k_min + (k_max - k_min) * double(i) / double(num_k - 1);
  const DispersionSweep sweep = sweep_dispersion(sys, kgrid);

  const std::filesystem::path dir = get_or<std::string>(cfg, "out", "out");
  std::filesystem::create_directories(dir);
  CsvTable table;
  table.header = {"k", "branch", "re_omega", "im_omega"};
  for (std::size_t i = 0; i < num_k; ++i)
    for (std::size_t b = 0; b < sweep.branches[i].size(); ++b)
      table.rows.push_back({format_double(kgrid[i]), std::to_string(b),
                            format_double(sweep.branches[i][b].real()),
                            format_double(sweep.branches[i][b].imag())});
  write_csv(dir / "dispersion.csv", table);
  json info;
  info["system"] = to_json(sys);
  info["tolerance"] = 1e-8;
  info["stable"] = sweep.stable;
  write_meta(dir, cfg, info);
  if (!quiet)
    std::cout << "dispersion sweep " << (sweep.stable ? "stable" : "UNSTABLE")
              << ", " << table.rows.size() << " rows -> "
              << (dir / "dispersion.csv").string() << '\n';
  return 0;
}

int cmd_census(const json& cfg, bool quiet) {
  std::size_t m_min, m_max;
  if (cfg.contains("m")) {
    m_min = m_max = cfg["m"].get<std::size_t>();
  } else {
    m_min = get_or<std::size_t>(cfg, "m_min", 2);
    m_max = get_or<std::size_t>(cfg, "m_max", 5);
  }
  json out = json::array();
  for (std::size_t m = m_min; m <= m_max; ++m) {
    const int sigma0 = get_or<int>(cfg, "sigma0", default_sigma0(m));
    out.push_back(census_to_json(census_one(m, sigma0)));
  }
  std::cout << out.dump(2) << '\n';
  if (cfg.contains("out")) {
    const std::filesystem::path dir = cfg["out"].get<std::string>();
    std::filesystem::create_directories(dir);
    std::ofstream f(dir / "census.json", std::ios::binary);
    f << out.dump(2) << '\n';
    write_meta(dir, cfg, nullptr);
    if (!quiet)
      std::cout << "census -> " << (dir / "census.json").string() << '\n';
  }
  return 0;
}

int cmd_solve(const json& cfg, bool quiet) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveConfig sc;
  sc.model = model_from_config(cfg);
  sc.hyperbolized = get_or<bool>(cfg, "hyperbolized", false);
  const double x_left = get_or<double>(cfg, "x_left", -16.0);
  const double x_right = get_or<double>(cfg, "x_right", 16.0);
  const std::size_t n = get_or<std::size_t>(cfg, "n", 256);
  sc.grid = std::make_shared<const PeriodicGrid>(make_grid(x_left, x_right, n));
  sc.stepper = stepper_from_string(get_or<std::string>(cfg, "stepper", "ssprk33"));
  sc.dt = get_or<double>(cfg, "dt", 0.0);
  sc.t_final = get_or<double>(cfg, "T", 1.0);
  sc.snapshot_times = get_or<std::vector<double>>(cfg, "snapshots", {});
  sc.dealias = get_or<bool>(cfg, "dealias", !model_is_linear(sc.model.kind));
  const std::string ic =
      get_or<std::string>(cfg, "ic", default_ic(sc.model.kind));
  const double ic_k = get_or<double>(cfg, "ic_k", 1.0);
  const auto u0 = make_ic(ic, x_left, x_right - x_left, ic_k);
  sc.u0.resize(n);
  for (std::size_t i = 0; i < n; ++i) sc.u0[i] = u0(sc.grid->nodes[i]);

  const SolveResult result = solve(sc);

  const std::filesystem::path dir = get_or<std::string>(cfg, "out", "out");
  std::filesystem::create_directories(dir);
  CsvTable table;
  table.header = {"t", "x", "component", "re", "im"};
  for (const auto& snap : result.snapshots)
    for (std::size_t c = 0; c < snap.state.components.size(); ++c)
      for (std::size_t i = 0; i < n; ++i)
        table.rows.push_back(
            {format_double(snap.t), format_double(sc.grid->nodes[i]),
             std::to_string(c),
             format_double(snap.state.components[c][i].real()),
             format_double(snap.state.components[c][i].imag())});
  write_csv(dir / "solution.csv", table);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  json info;
  info["dt_used"] = result.dt_used;
  info["wall_time_s"] = wall;
  write_meta(dir, cfg, info);
  if (!quiet)
    std::cout << "solved to T=" << format_double(sc.t_final)
              << " with dt=" << format_double(result.dt_used) << " -> "
              << (dir / "solution.csv").string() << '\n';
  return 0;
}

int cmd_converge(const json& cfg, bool quiet) {
  Problem p;
  const std::string name = get_or<std::string>(cfg, "model", "linear");
  p.model = model_from_config(cfg);
  if (p.model.kind == ModelKind::GeneralLinear) {
    p.x_left = get_or<double>(cfg, "x_left", 0.0);
    p.x_right = get_or<double>(cfg, "x_right", 2.0 * kPi);
    p.n = get_or<std::size_t>(cfg, "n", 64);
  } else {
    p.x_left = get_or<double>(cfg, "x_left", -16.0);
    p.x_right = get_or<double>(cfg, "x_right", 16.0);
    p.n = get_or<std::size_t>(cfg, "n", 256);
  }
  p.stepper = stepper_from_string(get_or<std::string>(cfg, "stepper", "ssprk33"));
  if (p.model.kind == ModelKind::KuramotoSivashinsky) {
    p.stepper = stepper_from_string(get_or<std::string>(cfg, "stepper", "rk4"));
    p.reference_stepper = Stepper::IMEX;
  }
  p.T = get_or<double>(cfg, "T", 1.0);
  p.dealias = !model_is_linear(p.model.kind);
  const std::string ic_default =
      p.model.kind == ModelKind::GeneralLinear ? "mode"
                                               : default_ic(p.model.kind);
  const std::string ic = get_or<std::string>(cfg, "ic", ic_default);
  const double ic_k = get_or<double>(cfg, "ic_k", 1.0);
  p.u0 = make_ic(ic, p.x_left, p.x_right - p.x_left, ic_k);
  const Norm norm = norm_from_string(get_or<std::string>(cfg, "norm", "Linf"));
  if (!cfg.contains("tau_values"))
    throw ConfigError("config: missing key 'tau_values'");
  const std::vector<double> taus = cfg["tau_values"].get<std::vector<double>>();

  const ConvergenceReport report = tau_sweep(p, taus, norm);

  const std::filesystem::path dir = get_or<std::string>(cfg, "out", "out");
  std::filesystem::create_directories(dir);
  CsvTable table;
  table.header = {"tau", "error", "norm", "T", "model"};
  for (std::size_t i = 0; i < report.tau_values.size(); ++i)
    table.rows.push_back({format_double(report.tau_values[i]),
                          format_double(report.errors[i]),
                          to_string(report.norm), format_double(report.T),
                          report.model_id});
  write_csv(dir / "convergence.csv", table);
  json info;
  info["fitted_order"] = report.fitted_order;
  write_meta(dir, cfg, info);
  if (!quiet)
    std::cout << "fitted order " << format_double(report.fitted_order)
              << " over " << report.tau_values.size() << " tau values ("
              << name << ") -> " << (dir / "convergence.csv").string() << '\n';
  return 0;
}

int cmd_reproduce(const json& cfg, bool quiet) {
  if (!cfg.contains("preset"))
    throw ConfigError("config: missing key 'preset'");
  const std::string preset = cfg["preset"].get<std::string>();
  const std::filesystem::path dir = get_or<std::string>(cfg, "out", "out");
  reproduce(preset, dir);
  if (!quiet)
    std::cout << "preset '" << preset << "' -> " << (dir / preset).string()
              << '\n';
  return 0;
}

int dispatch(const json& cfg, bool quiet) {
  validate_keys(cfg);
  const std::string cmd = cfg["command"];
  if (cmd == "hyperbolize") return cmd_hyperbolize(cfg, quiet);
  if (cmd == "dispersion") return cmd_dispersion(cfg, quiet);
  if (cmd == "census") return cmd_census(cfg, quiet);
  if (cmd == "solve") return cmd_solve(cfg, quiet);
  if (cmd == "converge") return cmd_converge(cfg, quiet);
  if (cmd == "reproduce") return cmd_reproduce(cfg, quiet);
  throw ConfigError("config: unknown command '" + cmd + "'");
}

}  // namespace

int run_command(const json& config, bool quiet) {
  // meta.json files wrap the config under "config"; accept both forms
  const json& cfg =
      config.contains("config") && config["config"].is_object()
          ? config["config"]
          : config;
  try {
    return dispatch(cfg, quiet);
  } catch (const SolveError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 2;
  } catch (const EigError& e) {
    std::cerr << "eigensolver error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"hyperbolic relaxations of high-order scalar evolution PDEs"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  bool quiet = false;
  std::string config_file;
  app.add_flag("--quiet", quiet, "suppress progress output");
  app.add_option("--config", config_file, "JSON config file (meta.json re-run)");
  std::string out_override;
  app.add_option("--out", out_override, "output directory override");

  json flags;  // values provided on the command line, overriding the file
  auto add_double = [&](CLI::App* sub, const std::string& flag,
                        const std::string& key, const std::string& help) {
    sub->add_option_function<double>(
        flag, [&flags, key](double v) { flags[key] = v; }, help);
  };
  auto add_int = [&](CLI::App* sub, const std::string& flag,
                     const std::string& key, const std::string& help) {
    sub->add_option_function<long long>(
        flag, [&flags, key](long long v) { flags[key] = v; }, help);
  };
  auto add_string = [&](CLI::App* sub, const std::string& flag,
                        const std::string& key, const std::string& help) {
    sub->add_option_function<std::string>(
        flag, [&flags, key](std::string v) { flags[key] = std::move(v); },
        help);
  };
  auto add_bool = [&](CLI::App* sub, const std::string& flag,
                      const std::string& key, const std::string& help) {
    sub->add_flag_function(
        flag, [&flags, key](std::int64_t v) { flags[key] = v > 0; }, help);
  };
  auto add_list = [&](CLI::App* sub, const std::string& flag,
                      const std::string& key, const std::string& help) {
    sub->add_option_function<std::vector<double>>(
        flag, [&flags, key](std::vector<double> v) { flags[key] = v; }, help)
        ->delimiter(',');
  };

  auto model_flags = [&](CLI::App* sub) {
    add_string(sub, "--model", "model", "model kind");
    add_double(sub, "--tau", "tau", "relaxation parameter");
    add_int(sub, "--m", "m", "PDE order (general linear)");
    add_int(sub, "--sigma0", "sigma0", "leading sign");
    add_list(sub, "--alpha", "alpha", "lower-order coefficients");
    add_double(sub, "--kappa", "kappa", "NLS nonlinearity");
  };
  auto grid_flags = [&](CLI::App* sub) {
    add_double(sub, "--xleft", "x_left", "left domain edge");
    add_double(sub, "--xright", "x_right", "right domain edge");
    add_int(sub, "--n", "n", "grid points (power of two)");
  };

  CLI::App* hyp = app.add_subcommand("hyperbolize", "emit the stable system");
  add_int(hyp, "--m", "m", "PDE order");
  add_int(hyp, "--sigma0", "sigma0", "leading sign");
  add_double(hyp, "--tau", "tau", "relaxation parameter");
  add_list(hyp, "--alpha", "alpha", "lower-order coefficients");

  CLI::App* disp = app.add_subcommand("dispersion", "sweep omega(k)");
  add_int(disp, "--m", "m", "PDE order");
  add_int(disp, "--sigma0", "sigma0", "leading sign");
  add_double(disp, "--tau", "tau", "relaxation parameter");
  add_list(disp, "--alpha", "alpha", "lower-order coefficients");
  add_double(disp, "--kmin", "k_min", "lowest wavenumber");
  add_double(disp, "--kmax", "k_max", "highest wavenumber");
  add_int(disp, "--num-k", "num_k", "sweep size");
  add_string(disp, "--out", "out", "output directory");

  CLI::App* cen = app.add_subcommand("census", "signed-permutation census");
  add_int(cen, "--m", "m", "single order");
  add_int(cen, "--m-min", "m_min", "first order");
  add_int(cen, "--m-max", "m_max", "last order");
  add_int(cen, "--sigma0", "sigma0", "leading sign");
  add_string(cen, "--out", "out", "output directory");

  CLI::App* sol = app.add_subcommand("solve", "time-step a model");
  model_flags(sol);
  grid_flags(sol);
  add_bool(sol, "--hyperbolized", "hyperbolized", "solve the relaxed system");
  add_string(sol, "--stepper", "stepper", "ssprk33 | rk4 | imex");
  add_double(sol, "--dt", "dt", "step size (0 = auto)");
  add_double(sol, "--T", "T", "final time");
  add_list(sol, "--snapshots", "snapshots", "snapshot times");
  add_bool(sol, "--dealias", "dealias", "2/3-rule dealiasing");
  add_string(sol, "--ic", "ic", "initial condition name");
  add_double(sol, "--ic-k", "ic_k", "mode number for sine/mode ics");
  add_string(sol, "--out", "out", "output directory");

  CLI::App* conv = app.add_subcommand("converge", "hyperbolization-error sweep");
  model_flags(conv);
  grid_flags(conv);
  add_list(conv, "--taus", "tau_values", "descending tau values");
  add_string(conv, "--stepper", "stepper", "ssprk33 | rk4");
  add_double(conv, "--T", "T", "final time");
  add_string(conv, "--norm", "norm", "Linf | L2");
  add_string(conv, "--ic", "ic", "initial condition name");
  add_double(conv, "--ic-k", "ic_k", "mode number");
  add_string(conv, "--out", "out", "output directory");

  CLI::App* rep = app.add_subcommand("reproduce", "figure preset bundles");
  add_string(rep, "--preset", "preset", "heat | kdv | nls | ch | ks-solution | ks-error");
  add_string(rep, "--out", "out", "output directory");

  const std::map<const CLI::App*, std::string> commands = {
      {hyp, "hyperbolize"}, {disp, "dispersion"}, {cen, "census"},
      {sol, "solve"},       {conv, "converge"},   {rep, "reproduce"}};

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  json cfg;
  if (!config_file.empty()) {
    std::ifstream f(config_file);
    if (!f) {
      std::cerr << "error: cannot open config file " << config_file << '\n';
      return 1;
    }
    try {
      json file = json::parse(f);
      cfg = file.contains("config") && file["config"].is_object()
                ? file["config"]
                : std::move(file);
    } catch (const json::exception& e) {
      std::cerr << "error: malformed config: " << e.what() << '\n';
      return 1;
    }
  }
  for (const auto& [sub, name] : commands)
    if (app.got_subcommand(sub)) cfg["command"] = name;
  if (!cfg.contains("command")) {
    std::cerr << "error: no command given (subcommand or --config)\n";
    return 1;
  }
  for (const auto& [key, value] : flags.items()) cfg[key] = value;
  if (!out_override.empty()) cfg["out"] = out_override;
  return run_command(cfg, quiet);
}

}  // namespace hyprelax
