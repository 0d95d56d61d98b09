#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "doctest.h"
#include "hyprelax/cli.hpp"
#include "hyprelax/harness.hpp"
#include "hyprelax/io.hpp"

using namespace hyprelax;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("hyprelax_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string capture_stdout(const std::function<void()>& fn) {
  std::ostringstream captured;
  std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
  fn();
  std::cout.rdbuf(old);
  return captured.str();
}

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double v : {0.0, 1.0, -1.5, 0.1, 1e-300, 3.141592653589793, 1e17}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.25) == "0.25");
}

TEST_CASE("write_csv is byte-deterministic") {
  const fs::path dir = temp_dir("csv");
  CsvTable t;
  t.header = {"a", "b"};
  t.rows = {{"1", "0.5"}, {"2", "-0"}};
  write_csv(dir / "x.csv", t);
  write_csv(dir / "y.csv", t);
  const std::string got = slurp(dir / "x.csv");
  CHECK(got == "a,b\n1,0.5\n2,-0\n");
  CHECK(got == slurp(dir / "y.csv"));
}

TEST_CASE("fit_order recovers exact power laws and is scale invariant") {
  const std::vector<double> taus = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
  std::vector<double> errs;
  for (double t : taus) errs.push_back(3.7 * t);
  CHECK(fit_order(taus, errs) == doctest::Approx(1.0).epsilon(1e-12));
  for (auto& e : errs) e *= 1e6;
  CHECK(fit_order(taus, errs) == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < taus.size(); ++i)
    errs[i] = 0.2 * taus[i] * taus[i];
  CHECK(fit_order(taus, errs) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("census totals and unique stable candidates for m = 2..5") {
  const std::vector<std::size_t> totals = {2, 8, 48, 384};
  const auto reports = census(2, 5);
  REQUIRE(reports.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& r = reports[i];
    CHECK(r.m == i + 2);
    CHECK(r.total_candidates == totals[i]);
    CHECK(r.full_pass == 1);
    REQUIRE(r.unique_stable.has_value());
    CHECK(*r.unique_stable == stable_permutation(r.m, r.sigma0));
  }
}

TEST_CASE("linear tau sweep fits first order") {
  Problem p;
  p.model = {ModelKind::GeneralLinear, 1.0, LinearModel(3, 1, {0.0, 0.7, 0.0}),
             0.0};
  p.x_left = 0.0;
  p.x_right = 2.0 * 3.141592653589793;
  p.n = 64;
  p.u0 = [](double x) { return std::exp(cd{0.0, 2.0 * x}); };
  p.T = 0.5;
  p.dealias = false;
  const auto rep = tau_sweep(p, {1e-3, 5e-4, 2.5e-4, 1.25e-4}, Norm::Linf);
  CHECK(rep.fitted_order > 0.85);
  CHECK(rep.fitted_order < 1.15);
  for (std::size_t i = 1; i < rep.errors.size(); ++i)
    CHECK(rep.errors[i] < rep.errors[i - 1]);
}

TEST_CASE("nonlinear error is insensitive to the reference resolution") {
  Problem p;
  p.model = {ModelKind::NLS, 1.0, std::nullopt, 1e-2};
  p.x_left = -6.0 * 3.141592653589793;
  p.x_right = 6.0 * 3.141592653589793;
  p.u0 = [](double x) {
    return std::sqrt(2.0) * std::exp(cd{0.0, x}) / std::cosh(x);
  };
  p.T = 0.25;
  const double tau = 1e-2;
  const double e1 = hyperbolization_error(p, tau, Norm::Linf);
  p.ref_space_factor = 4;
  p.ref_time_factor = 8;
  const double e2 = hyperbolization_error(p, tau, Norm::Linf);
  CHECK(std::abs(e1 - e2) < 0.1 * e1);
}

TEST_CASE("run_command rejects unknown keys and commands") {
  CHECK(run_command({{"command", "hyperbolize"}, {"m", 3}, {"bogus", 1}},
                    true) == 1);
  CHECK(run_command({{"command", "frobnicate"}}, true) == 1);
  CHECK(run_command({{"m", 3}}, true) == 1);
}

TEST_CASE("run_command hyperbolize prints the stable system") {
  int rc = -1;
  const std::string out = capture_stdout([&] {
    rc = run_command({{"command", "hyperbolize"}, {"m", 3}, {"tau", 0.5}},
                     true);
  });
  CHECK(rc == 0);
  const json j = json::parse(out);
  CHECK(j["m"] == 3);
  CHECK(j["tau"] == 0.5);
  CHECK(j["P"]["target"] == json({2, 1}));
  CHECK(j["P"]["sign"] == json({-1, 1}));
}

TEST_CASE("run_command reports solver blow-up with exit code 2") {
  const fs::path dir = temp_dir("blowup");
  const json cfg = {{"command", "solve"},    {"model", "kdv"},
                    {"hyperbolized", true},  {"tau", 1e-3},
                    {"dt", 0.5},             {"T", 5.0},
                    {"n", 64},               {"out", dir.string()}};
  CHECK(run_command(cfg, true) == 2);
}

TEST_CASE("meta.json re-runs reproduce the CSV byte for byte") {
  const fs::path dir1 = temp_dir("rerun1");
  const fs::path dir2 = temp_dir("rerun2");
  json cfg = {{"command", "solve"}, {"model", "heat"}, {"hyperbolized", true},
              {"tau", 0.01},        {"T", 0.25},       {"n", 64},
              {"out", dir1.string()}};
  REQUIRE(run_command(cfg, true) == 0);
  json meta = json::parse(slurp(dir1 / "meta.json"));
  meta["config"]["out"] = dir2.string();
  REQUIRE(run_command(meta, true) == 0);
  const std::string a = slurp(dir1 / "solution.csv");
  CHECK(!a.empty());
  CHECK(a == slurp(dir2 / "solution.csv"));
}

TEST_CASE("run_cli merges config file with overriding flags") {
  const fs::path dir = temp_dir("cli");
  const fs::path cfg_path = dir / "cfg.json";
  {
    std::ofstream f(cfg_path);
    f << json({{"command", "solve"}, {"model", "heat"}, {"hyperbolized", true},
               {"tau", 0.1}, {"T", 0.25}, {"n", 64},
               {"out", (dir / "a").string()}})
             .dump();
  }
  CHECK(run_cli({"--quiet", "--config", cfg_path.string()}) == 0);
  CHECK(fs::exists(dir / "a" / "solution.csv"));
  CHECK(run_cli({"--quiet", "--config", cfg_path.string(), "--out",
                 (dir / "b").string()}) == 0);
  const json meta = json::parse(slurp(dir / "b" / "meta.json"));
  CHECK(meta["config"]["out"] == (dir / "b").string());
  CHECK(slurp(dir / "a" / "solution.csv") ==
        slurp(dir / "b" / "solution.csv"));
  CHECK(run_cli({"--quiet", "--config", (dir / "missing.json").string()}) ==
        1);
}

TEST_CASE("reproduce rejects unknown presets and emits heat bundle") {
  const fs::path dir = temp_dir("preset");
  CHECK(run_command({{"command", "reproduce"}, {"preset", "nope"}}, true) ==
        1);
  REQUIRE(run_command({{"command", "reproduce"},
                       {"preset", "heat"},
                       {"out", dir.string()}},
                      true) == 0);
  for (const char* f : {"data.csv", "meta.json", "plot.svg"})
    CHECK(fs::exists(dir / "heat" / f));
  std::ifstream csv(dir / "heat" / "data.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "series,t,x,re,im");
}
