// retro: scenario runner for the retrospective solvers.
//
// Exit status 0 on success, 2 for configuration errors, 3 for numerical
// failures.
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "retro/errors.hpp"
#include "retro/scenario.hpp"
#include "retro/selftest.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::string input;
  bool quiet = false;
};

retro::ScenarioConfig load(const Options& o) {
  if (o.config.empty()) retro::fail(retro::ErrorKind::config_error, "--config is required");
  retro::ScenarioConfig c = retro::load_config(o.config);
  if (o.seed) {
    c.seed = *o.seed;
    c.raw["noise"]["seed"] = *o.seed;
  }
  return c;
}

fs::path out_dir(const Options& o) {
  fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) retro::fail(retro::ErrorKind::config_error, "cannot create output directory " + dir.string());
  return dir;
}

void summarize(const Options& o, const retro::RunReport& r) {
  if (o.quiet) return;
  std::printf("%s:", r.command.c_str());
  if (r.metrics) std::printf(" rel_l2=%.3e max_abs=%.3e", r.metrics->rel_l2, r.metrics->max_abs);
  if (r.interior) std::printf(" interior_rel_l2=%.3e", r.interior->rel_l2);
  std::printf("\n");
  for (const auto& w : r.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
}

int emit(const Options& o, const retro::ScenarioConfig& c, const retro::ScenarioOutput& s) {
  const fs::path dir = out_dir(o);
  retro::write_result_csv(dir / c.result_file, s.table);
  retro::write_report(dir / c.report_file, s.report);
  summarize(o, s.report);
  return 0;
}

int cmd_forward(const Options& o) {
  const auto c = load(o);
  return emit(o, c, retro::run_forward(c));
}

int cmd_invert(const Options& o) {
  const auto c = load(o);
  const std::string input = o.input.empty() ? c.input_file : o.input;
  if (input.empty()) retro::fail(retro::ErrorKind::config_error, "invert needs --input or input.path");
  return emit(o, c, retro::run_invert(c, retro::read_field_csv(input)));
}

int cmd_roundtrip(const Options& o) {
  const auto c = load(o);
  return emit(o, c, retro::run_roundtrip(c));
}

int cmd_basis(const Options& o) {
  const auto c = load(o);
  const auto basis = retro::gen_hermite_basis(c.medium(), c.kernel(), c.order);
  const fs::path dir = out_dir(o);
  retro::write_basis_csv(dir / c.basis_file, dir / "monomials.csv", basis);
  retro::RunReport r;
  r.command = "basis";
  r.config = c.raw;
  r.diagnostics["layers"] = c.medium().layer_count();
  r.diagnostics["order"] = c.order;
  retro::write_report(dir / c.report_file, r);
  summarize(o, r);
  return 0;
}

int cmd_diagnose(const Options& o) {
  const auto c = load(o);
  const auto r = retro::run_diagnose(c);
  retro::write_report(out_dir(o) / c.report_file, r);
  if (!o.quiet) {
    const auto& cd = r.diagnostics["completeness"];
    for (const auto& p : cd["pairs"]) {
      std::printf("layers %d/%d diagonal mass %.6f ghost %.3e\n", p["layer_x"].get<int>(), p["layer_xi"].get<int>(),
                  p["diagonal_mass"].get<double>(), p["ghost_mass"].get<double>());
    }
    std::printf("completeness mismatch: %s\n", cd["mismatch"].get<bool>() ? "yes" : "no");
  }
  return 0;
}

int cmd_selftest(const Options& o) {
  const auto results = retro::run_selftest();
  int failed = 0;
  for (const auto& r : results) {
    if (!r.passed) ++failed;
    if (!o.quiet) {
      std::printf("%-4s %s  %-50s value=%.3e threshold=%.1e  %s\n", r.id.c_str(), r.passed ? "PASS" : "FAIL",
                  r.title.c_str(), r.value, r.threshold, r.detail.c_str());
    }
  }
  if (!o.quiet) std::printf("%zu checks, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Retrospective inverse problems on layered axes"};
  app.set_version_flag("--version", std::string(retro::kVersion));
  app.require_subcommand(1);
  Options o;

  const auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", o.config, "Scenario JSON file");
    if (needs_config) opt->required();
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--seed", o.seed, "Noise seed (overrides the config)");
    sub->add_flag("--quiet", o.quiet, "Suppress the summary");
  };
  auto* forward = app.add_subcommand("forward", "Run the forward solver only and write u(tau, x)");
  auto* invert = app.add_subcommand("invert", "Invert a provided field file");
  auto* roundtrip = app.add_subcommand("roundtrip", "Forward, noise, invert and score");
  auto* basis = app.add_subcommand("basis", "Dump H_jn and x_n^k coefficient tables");
  auto* diagnose = app.add_subcommand("diagnose", "Completeness defect and influence-kernel comparison");
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance checks");
  for (auto* s : {forward, invert, roundtrip, basis, diagnose}) add_common(s, true);
  add_common(selftest, false);
  invert->add_option("--input", o.input, "CSV with columns x and u_tau (or value)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*forward) return cmd_forward(o);
    if (*invert) return cmd_invert(o);
    if (*roundtrip) return cmd_roundtrip(o);
    if (*basis) return cmd_basis(o);
    if (*diagnose) return cmd_diagnose(o);
    if (*selftest) return cmd_selftest(o);
  } catch (const retro::Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", std::string(retro::to_string(e.kind())).c_str(), e.what());
    return e.is_config_error() ? kExitConfig : kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return 0;
}
