#include "hyprelax/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <thread>

#include "hyprelax/dispersion.hpp"
#include "hyprelax/io.hpp"
#include "json.hpp"

namespace hyprelax {

namespace {

constexpr double kPi = 3.141592653589793;

std::shared_ptr<const PeriodicGrid> grid_of(const Problem& p,
                                            std::size_t factor = 1) {
  return std::make_shared<const PeriodicGrid>(
      make_grid(p.x_left, p.x_right, p.n * factor));
}

Field sample_u0(const Problem& p, const PeriodicGrid& g) {
  Field u(g.n);
  for (std::size_t i = 0; i < g.n; ++i) u[i] = p.u0(g.nodes[i]);
  return u;
}

std::size_t thread_cap() {
  if (const char* env = std::getenv("HYP_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return std::size_t(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

std::string model_id(const ModelSpec& spec) {
  if (spec.kind == ModelKind::GeneralLinear && spec.linear)
    return "general-linear-m" + std::to_string(spec.linear->m);
  return to_string(spec.kind);
}

}  // namespace

std::string to_string(Norm n) { return n == Norm::Linf ? "Linf" : "L2"; }

Norm norm_from_string(const std::string& name) {
  if (name == "Linf" || name == "linf") return Norm::Linf;
  if (name == "L2" || name == "l2") return Norm::L2;
  throw std::runtime_error("unknown norm: " + name);
}

double field_norm(const PeriodicGrid& grid, const Field& f, Norm norm) {
  if (norm == Norm::Linf) return max_abs(f);
  double s = 0.0;
  for (const auto& v : f) s += std::norm(v);
  return std::sqrt(grid.dx() * s);
}

double fit_order(const std::vector<double>& taus,
                 const std::vector<double>& errors) {
  const std::size_t n = taus.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(taus[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
}

Field reference_solution(const Problem& problem) {
  if (model_is_linear(problem.model.kind)) {
    const auto g = grid_of(problem);
    Fft fft(g->n);
    return exact_linear_solution(*g, fft, linear_model_of(problem.model),
                                 sample_u0(problem, *g), problem.T);
  }
  const std::size_t f = problem.ref_space_factor;
  const auto fine = grid_of(problem, f);
  SolveConfig cfg;
  cfg.model = problem.model;
  cfg.hyperbolized = false;
  cfg.grid = fine;
  cfg.stepper = problem.reference_stepper;
  cfg.t_final = problem.T;
  cfg.dealias = problem.dealias;
  cfg.u0 = sample_u0(problem, *fine);
  cfg.dt = auto_dt(cfg) / double(problem.ref_time_factor);
  const SolveResult r = solve(cfg);
  const Field& fine_u = r.snapshots.back().state.components[0];
  Field coarse(problem.n);
  for (std::size_t i = 0; i < problem.n; ++i) coarse[i] = fine_u[i * f];
  return coarse;
}

namespace {

double error_vs_reference(const Problem& problem, double tau,
                          const Field& reference, Norm norm) {
  const auto g = grid_of(problem);
  if (model_is_linear(problem.model.kind) &&
      linear_model_of(problem.model).alpha_zero()) {
    // Exact-in-time hyperbolized solution, mode by mode: the measured error
    // is then purely the hyperbolization error, which matters for tau small
    // enough that any time-integration error would drown the O(tau) signal.
    const LinearModel lm = linear_model_of(problem.model);
    const HyperbolicSystem sys =
        assemble_system(lm, stable_permutation(lm.m, lm.sigma0), tau);
    Fft fft(g->n);
    Field uhat = fft.forward(sample_u0(problem, *g));
    for (std::size_t i = 0; i < g->n; ++i)
      uhat[i] = mode_evolution(sys, g->wavenumbers[i], uhat[i], problem.T)[0];
    Field q0 = fft.inverse(uhat);
    for (std::size_t i = 0; i < g->n; ++i) q0[i] -= reference[i];
    return field_norm(*g, q0, norm);
  }
  SolveConfig cfg;
  cfg.model = problem.model;
  cfg.model.tau = tau;
  cfg.hyperbolized = true;
  cfg.grid = g;
  cfg.stepper = problem.stepper;
  cfg.t_final = problem.T;
  cfg.dealias = problem.dealias;
  cfg.u0 = sample_u0(problem, *g);
  SolveResult r;
  try {
    r = solve(cfg);
  } catch (const SolveError& e) {
    throw SolveError(std::string(e.what()) + " (tau = " + format_double(tau) +
                     ", dt = " + format_double(cfg.dt > 0 ? cfg.dt : auto_dt(cfg)) + ")");
  }
  const Field& q0 = r.snapshots.back().state.components[0];
  Field diff(q0.size());
  for (std::size_t i = 0; i < q0.size(); ++i) diff[i] = q0[i] - reference[i];
  return field_norm(*g, diff, norm);
}

}  // namespace

double hyperbolization_error(const Problem& problem, double tau, Norm norm) {
  return error_vs_reference(problem, tau, reference_solution(problem), norm);
}

ConvergenceReport tau_sweep(const Problem& problem,
                            std::vector<double> tau_values, Norm norm) {
  if (tau_values.size() < 3)
    throw std::runtime_error("tau_sweep: need at least 3 tau values");
  for (std::size_t i = 1; i < tau_values.size(); ++i)
    if (tau_values[i] >= tau_values[i - 1])
      throw std::runtime_error("tau_sweep: tau values must be descending");

  const Field reference = reference_solution(problem);
  const std::size_t cap = thread_cap();
  std::vector<double> errors(tau_values.size());
  std::size_t next = 0;
  while (next < tau_values.size()) {
    const std::size_t batch =
        std::min(cap, tau_values.size() - next);
    std::vector<std::future<double>> futs;
    for (std::size_t j = 0; j < batch; ++j) {
      const double tau = tau_values[next + j];
      futs.push_back(std::async(std::launch::async, [&, tau] {
        return error_vs_reference(problem, tau, reference, norm);
      }));
    }
    for (std::size_t j = 0; j < batch; ++j) errors[next + j] = futs[j].get();
    next += batch;
  }

  ConvergenceReport report;
  report.model_id = model_id(problem.model);
  report.tau_values = tau_values;
  report.errors = errors;
  report.norm = norm;
  report.T = problem.T;
  // drop the largest tau from the fit when clearly pre-asymptotic
  const auto coarse_grid = grid_of(problem);
  const double ref_norm = field_norm(*coarse_grid, reference, norm);
  std::size_t first = 0;
  if (errors.size() > 3 && errors[0] > 0.5 * ref_norm) first = 1;
  report.fitted_order = fit_order(
      std::vector<double>(tau_values.begin() + first, tau_values.end()),
      std::vector<double>(errors.begin() + first, errors.end()));
  return report;
}

int default_sigma0(std::size_t m) {
  if (m % 2 == 1) return 1;
  return (m / 2) % 2 == 0 ? 1 : -1;
}

CensusReport census_one(std::size_t m, int sigma0) {
  CensusReport r;
  r.m = m;
  r.sigma0 = sigma0;
  const auto candidates = enumerate_candidates(m, sigma0);
  r.total_candidates = candidates.size();
  for (const auto& c : candidates) {
    if (c.low_k) ++r.low_k_pass;
    if (c.high_k) ++r.high_k_pass;
    if (c.full) {
      ++r.full_pass;
      r.unique_stable = c.P;
    }
  }
  if (r.full_pass != 1) r.unique_stable.reset();
  return r;
}

std::vector<CensusReport> census(std::size_t m_min, std::size_t m_max) {
  std::vector<CensusReport> out;
  for (std::size_t m = m_min; m <= m_max; ++m)
    out.push_back(census_one(m, default_sigma0(m)));
  return out;
}

// ---------------------------------------------------------------------------
// figure presets

namespace {

using nlohmann::json;

struct Bundle {
  CsvTable data;
  json meta;
  std::vector<SvgSeries> plot;
};

const char* kColors[] = {"#000000", "#c02020", "#2060c0", "#20a040",
                         "#c08020", "#8040c0"};

void emit(const Bundle& b, const std::string& preset,
          const std::filesystem::path& out_dir) {
  const auto dir = out_dir / preset;
  std::filesystem::create_directories(dir);
  write_csv(dir / "data.csv", b.data);
  std::ofstream meta(dir / "meta.json", std::ios::binary);
  meta << b.meta.dump(2) << '\n';
  write_svg_plot(dir / "plot.svg", b.plot);
}

void append_field_rows(CsvTable& table, const std::string& series, double t,
                       const PeriodicGrid& grid, const Field& f) {
  for (std::size_t i = 0; i < grid.n; ++i)
    table.rows.push_back({series, format_double(t),
                          format_double(grid.nodes[i]),
                          format_double(f[i].real()),
                          format_double(f[i].imag())});
}

SvgSeries field_series(const PeriodicGrid& grid, const Field& f,
                       const char* color) {
  SvgSeries s;
  s.color = color;
  for (std::size_t i = 0; i < grid.n; ++i) {
    s.x.push_back(grid.nodes[i]);
    s.y.push_back(f[i].real());
  }
  return s;
}

json problem_meta(const Problem& p, const std::vector<double>& taus) {
  json j;
  j["model"] = to_string(p.model.kind);
  j["domain"] = {p.x_left, p.x_right};
  j["n"] = p.n;
  j["stepper"] = to_string(p.stepper);
  j["reference_stepper"] = to_string(p.reference_stepper);
  j["dealias"] = p.dealias;
  j["T"] = p.T;
  j["tau_values"] = taus;
  return j;
}

/// Overlay-style preset: reference solution of the original model plus the
/// hyperbolized q_0 at T for each tau.
Bundle overlay_bundle(const Problem& p, const std::vector<double>& taus,
                      const std::string& preset) {
  Bundle b;
  b.data.header = {"series", "t", "x", "re", "im"};
  const auto g = grid_of(p);
  const Field ref = reference_solution(p);
  append_field_rows(b.data, "reference", p.T, *g, ref);
  b.plot.push_back(field_series(*g, ref, kColors[0]));
  std::size_t color = 1;
  for (double tau : taus) {
    SolveConfig cfg;
    cfg.model = p.model;
    cfg.model.tau = tau;
    cfg.hyperbolized = true;
    cfg.grid = g;
    cfg.stepper = p.stepper;
    cfg.t_final = p.T;
    cfg.dealias = p.dealias;
    cfg.u0 = sample_u0(p, *g);
    const SolveResult r = solve(cfg);
    const Field& q0 = r.snapshots.back().state.components[0];
    const std::string series = "tau=" + format_double(tau);
    append_field_rows(b.data, series, p.T, *g, q0);
    b.plot.push_back(field_series(*g, q0, kColors[color % 6]));
    ++color;
  }
  b.meta["config"] = {{"command", "reproduce"}, {"preset", preset}};
  b.meta["info"]["problem"] = problem_meta(p, taus);
  return b;
}

Problem heat_problem() {
  Problem p;
  p.model = {ModelKind::Heat, 1.0, std::nullopt, 0.1};
  p.x_left = -16.0;
  p.x_right = 16.0;
  p.n = 256;
  p.u0 = [](double x) { return cd{std::exp(-x * x)}; };
  p.stepper = Stepper::SSPRK33;
  p.T = 1.0;
  return p;
}

Problem kdv_problem() {
  Problem p = heat_problem();
  p.model = {ModelKind::KdV, 1.0, std::nullopt, 0.1};
  p.reference_stepper = Stepper::SSPRK33;
  p.T = 2.0;
  return p;
}

Problem nls_problem() {
  Problem p;
  p.model = {ModelKind::NLS, 1.0, std::nullopt, 0.1};
  p.x_left = -6.0 * kPi;
  p.x_right = 6.0 * kPi;
  p.n = 256;
  // soliton sqrt(2 alpha) e^{ix} sech(sqrt(alpha) x), alpha = 1
  p.u0 = [](double x) {
    return std::sqrt(2.0) * std::exp(cd{0.0, x}) / std::cosh(x);
  };
  p.stepper = Stepper::SSPRK33;
  p.reference_stepper = Stepper::SSPRK33;
  p.T = 2.0;
  return p;
}

Problem ch_problem() {
  Problem p;
  p.model = {ModelKind::CamassaHolm, 1.0, std::nullopt, 0.04};
  p.x_left = -10.0;
  p.x_right = 50.0;
  p.n = 512;
  p.u0 = [](double x) { return cd{camassa_holm_pulse(x)}; };
  p.stepper = Stepper::SSPRK33;
  p.reference_stepper = Stepper::SSPRK33;
  p.T = 10.0;
  return p;
}

Problem ks_problem(double T) {
  Problem p;
  p.model = {ModelKind::KuramotoSivashinsky, 1.0, std::nullopt, 0.02};
  p.x_left = -20.0 * kPi;
  p.x_right = 20.0 * kPi;
  p.n = 256;
  p.u0 = [](double x) { return cd{std::exp(-x * x)}; };
  p.stepper = Stepper::RK4;
  p.reference_stepper = Stepper::IMEX;
  p.T = T;
  return p;
}

Bundle ks_solution_bundle() {
  const Problem p = ks_problem(50.0);
  Bundle b;
  b.data.header = {"series", "t", "x", "re", "im"};
  const auto g = grid_of(p);
  SolveConfig cfg;
  cfg.model = p.model;
  cfg.hyperbolized = false;
  cfg.grid = g;
  cfg.stepper = Stepper::IMEX;
  cfg.t_final = p.T;
  cfg.snapshot_times = {0.0, 10.0, 20.0, 30.0, 40.0, 50.0};
  cfg.dealias = true;
  cfg.u0 = sample_u0(p, *g);
  const SolveResult r = solve(cfg);
  std::size_t color = 0;
  for (const auto& snap : r.snapshots) {
    append_field_rows(b.data, "t=" + format_double(snap.t), snap.t, *g,
                      snap.state.components[0]);
    b.plot.push_back(
        field_series(*g, snap.state.components[0], kColors[color % 6]));
    ++color;
  }
  b.meta["config"] = {{"command", "reproduce"}, {"preset", "ks-solution"}};
  b.meta["info"]["problem"] = problem_meta(p, {});
  return b;
}

Bundle ks_error_bundle() {
  const Problem p = ks_problem(50.0);
  const std::vector<double> taus = {1.0 / 50.0, 1.0 / 100.0, 1.0 / 400.0};
  const std::vector<double> snap_times = {10.0, 25.0, 50.0};
  Bundle b;
  b.data.header = {"series", "t", "x", "re", "im"};
  const auto g = grid_of(p);

  // original KS via IMEX at the same resolution, as in the figure
  SolveConfig ref_cfg;
  ref_cfg.model = p.model;
  ref_cfg.hyperbolized = false;
  ref_cfg.grid = g;
  ref_cfg.stepper = Stepper::IMEX;
  ref_cfg.t_final = p.T;
  ref_cfg.snapshot_times = snap_times;
  ref_cfg.dealias = true;
  ref_cfg.u0 = sample_u0(p, *g);
  const SolveResult ref = solve(ref_cfg);
  append_field_rows(b.data, "reference", p.T, *g,
                    ref.snapshots.back().state.components[0]);
  b.plot.push_back(field_series(
      *g, ref.snapshots.back().state.components[0], kColors[0]));

  std::size_t color = 1;
  for (double tau : taus) {
    SolveConfig cfg = ref_cfg;
    cfg.model.tau = tau;
    cfg.hyperbolized = true;
    cfg.stepper = p.stepper;
    const SolveResult r = solve(cfg);
    const std::string label = "tau=" + format_double(tau);
    for (std::size_t s = 0; s < snap_times.size(); ++s) {
      const Field& q0 = r.snapshots[s].state.components[0];
      const Field& u = ref.snapshots[s].state.components[0];
      Field err(g->n);
      for (std::size_t i = 0; i < g->n; ++i) err[i] = q0[i] - u[i];
      append_field_rows(b.data, "error:" + label, snap_times[s], *g, err);
    }
    append_field_rows(b.data, label, p.T, *g,
                      r.snapshots.back().state.components[0]);
    b.plot.push_back(field_series(
        *g, r.snapshots.back().state.components[0], kColors[color % 6]));
    ++color;
  }
  b.meta["config"] = {{"command", "reproduce"}, {"preset", "ks-error"}};
  b.meta["info"]["problem"] = problem_meta(p, taus);
  return b;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"heat", "kdv", "nls", "ch", "ks-solution", "ks-error"};
}

void reproduce(const std::string& preset,
               const std::filesystem::path& out_dir) {
  if (preset == "heat") {
    emit(overlay_bundle(heat_problem(), {1e-1, 1e-2, 1e-3}, preset), preset,
         out_dir);
  } else if (preset == "kdv") {
    emit(overlay_bundle(kdv_problem(), {1e-1, 1e-2, 1e-3}, preset), preset,
         out_dir);
  } else if (preset == "nls") {
    emit(overlay_bundle(nls_problem(), {1e-1, 1e-2, 1e-3}, preset), preset,
         out_dir);
  } else if (preset == "ch") {
    emit(overlay_bundle(ch_problem(), {1.0 / 25.0, 1.0 / 50.0, 1.0 / 100.0},
                        preset),
         preset, out_dir);
  } else if (preset == "ks-solution") {
    emit(ks_solution_bundle(), preset, out_dir);
  } else if (preset == "ks-error") {
    emit(ks_error_bundle(), preset, out_dir);
  } else {
    throw std::runtime_error("unknown preset: " + preset);
  }
}

}  // namespace hyprelax
