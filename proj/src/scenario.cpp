#include "retro/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include "retro/dirichlet.hpp"
#include "retro/errors.hpp"
#include "retro/forward.hpp"
#include "retro/transforms.hpp"

namespace retro {

using nlohmann::json;
using Fn = std::function<double(double)>;

namespace {

[[noreturn]] void config_fail(const std::string& what) { fail(ErrorKind::config_error, what); }

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    config_fail(std::string("field '") + key + "': " + e.what());
  }
}

json block(const json& root, const char* key) {
  if (!root.contains(key)) return json::object();
  if (!root.at(key).is_object()) config_fail(std::string("block '") + key + "' must be an object");
  return root.at(key);
}

Coupling parse_coupling(const json& c, double a_left, double a_right, std::size_t index) {
  const std::string type = get_or<std::string>(c, "type", c.contains("alpha") ? "general" : "ideal");
  if (type == "ideal") return Coupling::ideal_contact(a_left, a_right);
  if (type != "general") config_fail("coupling " + std::to_string(index + 1) + ": unknown type '" + type + "'");
  Coupling out;
  try {
    const auto alpha = c.at("alpha").get<std::vector<std::vector<double>>>();
    const auto beta = c.at("beta").get<std::vector<std::vector<double>>>();
    if (alpha.size() != 2 || beta.size() != 2) throw std::runtime_error("need 2x2 alpha and beta");
    for (std::size_t m = 0; m < 2; ++m) {
      if (alpha[m].size() != 2 || beta[m].size() != 2) throw std::runtime_error("need 2x2 alpha and beta");
      for (std::size_t i = 0; i < 2; ++i) {
        out.alpha[m][i] = alpha[m][i];
        out.beta[m][i] = beta[m][i];
      }
    }
  } catch (const std::exception& e) {
    config_fail("coupling " + std::to_string(index + 1) + ": " + e.what());
  }
  return out;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Fn family_function(const ScenarioConfig& c) {
  const json& p = c.family_params;
  const double amp = get_or<double>(p, "amplitude", 1.0);
  if (c.family == "gaussian") {
    const double width = get_or<double>(p, "width", 1.0);
    const double center = get_or<double>(p, "center", 0.0);
    if (!(width > 0.0)) config_fail("gaussian width must be positive");
    return [=](double x) {
      const double s = (x - center) / width;
      return amp * std::exp(-s * s);
    };
  }
  if (c.family == "cosine") {
    const double k = get_or<double>(p, "frequency", 1.0);
    return [=](double x) { return amp * std::cos(k * x); };
  }
  if (c.family == "polynomial") {
    const auto coeffs = get_or<std::vector<double>>(p, "coeffs", {});
    if (coeffs.empty()) config_fail("polynomial family needs 'coeffs'");
    return [=](double x) { return polyval(coeffs, x); };
  }
  if (c.family == "zero") return [](double) { return 0.0; };
  if (c.family == "example2") {
    if (c.kind != ProblemKind::dirichlet) config_fail("family 'example2' belongs to dirichlet problems");
    const double l = c.depth;
    return [=](double y) { return l * l - y * y; };
  }
  config_fail("unknown initial family '" + c.family + "'");
}

/// Harmonic extension into the half-plane, continued to complex y.
ComplexHarmonic harmonic_family(const ScenarioConfig& c) {
  const json& p = c.family_params;
  const double amp = get_or<double>(p, "amplitude", 1.0);
  if (c.family == "cosine") {
    const double k = std::abs(get_or<double>(p, "frequency", 1.0));
    return [=](double x, cplx y) { return amp * std::exp(-k * x) * std::cos(k * y); };
  }
  if (c.family == "example2") {
    const double l = c.depth;
    return [=](double x, cplx y) { return cplx((x - l) * (x - l)) - y * y; };
  }
  if (c.family == "zero") return [](double, cplx) { return cplx{}; };
  config_fail("continuation needs an analytic family (cosine, example2, zero), got '" + c.family + "'");
}

std::string kind_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::heat: return "heat";
    case ProblemKind::fractal: return "fractal";
    case ProblemKind::wave: return "wave";
    case ProblemKind::dirichlet: return "dirichlet";
  }
  return "heat";
}

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Forwarded {
  SampledField u;
  Fn f_true;
  json diagnostics = json::object();
  std::vector<std::string> warnings;
};

SampledField sample(const ScenarioConfig& c, const Fn& f, double time_tag = 0.0) {
  return SampledField::from_function(c.grid.xmin, c.grid.xmax, c.grid.n, f, time_tag);
}

Forwarded forward_problem(const ScenarioConfig& c) {
  Forwarded out;
  const LayeredMedium medium = c.medium();
  switch (c.kind) {
    case ProblemKind::heat:
    case ProblemKind::fractal: {
      if (!c.hermite_coeffs.empty()) {
        // Exact pair: f = sum c_j H_jn / j!, u(tau) = sum c_j x_n^j / j!.
        const int order = static_cast<int>(c.hermite_coeffs.size()) - 1;
        auto basis = std::make_shared<GenHermiteBasis>(gen_hermite_basis(medium, c.kernel(), order));
        const std::vector<double> coeffs = c.hermite_coeffs;
        const auto combine = [basis, coeffs](bool evolved) {
          return [basis, coeffs, evolved](double x) {
            double acc = 0.0, fact = 1.0;
            for (std::size_t j = 0; j < coeffs.size(); ++j) {
              if (j > 0) fact *= static_cast<double>(j);
              const int jj = static_cast<int>(j);
              const double v = evolved ? basis->monomials().evaluate(jj, x) : basis->evaluate(jj, x);
              acc += coeffs[j] * v / fact;
            }
            return acc;
          };
        };
        out.f_true = combine(false);
        out.u = sample(c, combine(true), c.tau);
        out.diagnostics["forward"] = "exact generalized heat polynomials";
        return out;
      }
      out.f_true = family_function(c);
      const SampledField f = sample(c, out.f_true);
      if (medium.is_homogeneous()) {
        FieldResult r = heat_forward_homogeneous(f, c.tau, medium.outer_speed(), c.alpha);
        out.u = std::move(r.field);
        out.u.time_tag = c.tau;
        out.warnings = std::move(r.warnings);
        out.diagnostics["forward"] = "fourier multiplier";
      } else {
        if (c.alpha != 1.0) fail(ErrorKind::not_implemented, "layered forward solves cover alpha = 1 only");
        out.u = piecewise_heat_fd(medium, f, c.tau, c.steps);
        out.diagnostics["forward"] = "crank-nicolson finite volumes";
      }
      return out;
    }
    case ProblemKind::wave: {
      const Fn g = family_function(c);
      const double tau = c.tau;
      out.f_true = [g, tau](double x) { return g(x + tau) + g(x - tau); };
      out.u = wave_forward_family(g, tau, tau, c.grid.xmin, c.grid.xmax, c.grid.n);
      out.diagnostics["forward"] = "closed-form wave family";
      return out;
    }
    case ProblemKind::dirichlet: {
      out.f_true = family_function(c);
      if (c.family == "example2") {
        out.u = sample(c, [](double y) { return -y * y; });
        out.diagnostics["forward"] = "analytic trace";
      } else {
        FieldResult r = halfplane_forward(sample(c, out.f_true), c.depth);
        out.u = std::move(r.field);
        out.warnings = std::move(r.warnings);
        out.diagnostics["forward"] = "poisson multiplier";
      }
      out.u.time_tag = c.depth;
      return out;
    }
  }
  return out;
}

struct Inverted {
  SampledField f_rec;
  json diagnostics = json::object();
  std::vector<std::string> warnings;
};

SampledField sample_like(const SampledField& like, const Fn& f) {
  SampledField out = SampledField::zeros_like(like);
  out.time_tag = 0.0;
  for (int i = 0; i < out.size(); ++i) out.values[static_cast<std::size_t>(i)] = f(out.x(i));
  return out;
}

Inverted invert_problem(const ScenarioConfig& c, const SampledField& u) {
  Inverted out;
  const LayeredMedium medium = c.medium();
  const bool formal = c.kind == ProblemKind::fractal && c.alpha != 1.0;
  switch (c.kind) {
    case ProblemKind::heat:
    case ProblemKind::fractal: {
      out.diagnostics["formal_mode"] = formal;
      if (c.method == "series") {
        ReconstructionConfig rc;
        rc.method = InversionMethod::series;
        rc.order = c.order;
        rc.cutoff = c.cutoff;
        rc.coeff_method = c.coeff_method;
        rc.fit_window = c.fit_window;
        rc.kernel = c.kernel();
        const SeriesReconstruction rec = reconstruct_series(u, medium, rc);
        out.f_rec = rec.field;
        out.diagnostics["coeff_method"] = c.coeff_method == CoeffMethod::polyfit ? "polyfit" : "moments";
        out.diagnostics["condition"] = rec.coeffs.condition;
        out.diagnostics["non_convergent"] = rec.non_convergent;
        out.diagnostics["taylor_coeffs"] = rec.coeffs.u;
        out.diagnostics["term_norms"] = rec.term_norms;
        if (rec.non_convergent) out.warnings.emplace_back("series terms grow over the last 6 orders");
      } else if (c.method == "spectral") {
        ReconstructionConfig rc;
        rc.method = InversionMethod::spectral;
        rc.order = c.order;
        rc.cutoff = c.cutoff;
        rc.fit_window = c.fit_window;
        rc.validate();
        out.f_rec = spectral_invert(u, medium, c.kernel(), c.cutoff);
        out.diagnostics["cutoff"] = c.cutoff;
      } else {
        config_fail("method '" + c.method + "' does not apply to " + kind_name(c.kind) + " problems");
      }
      if (formal) out.warnings.emplace_back("fractal inversion for alpha != 1 runs in formal mode");
      return out;
    }
    case ProblemKind::wave: {
      if (c.method != "dalembert") config_fail("wave problems invert with method 'dalembert'");
      out.f_rec = dalembert_invert(u, c.tau);
      out.diagnostics["shift_samples"] = c.tau / u.dx;
      return out;
    }
    case ProblemKind::dirichlet: {
      const HalfPlaneTrace trace{c.depth, u};
      if (c.method == "spectral") {
        if (!(c.cutoff > 0.0) || c.cutoff > kMaxCutoff) config_fail("cutoff must lie in (0, 64]");
        out.f_rec = dirichlet_invert_spectral(trace, c.cutoff);
        out.diagnostics["cutoff"] = c.cutoff;
      } else if (c.method == "series") {
        const std::vector<double> d = trace_derivatives(trace, c.order, c.fit_window);
        out.f_rec = sample_like(u, dirichlet_invert_series(d, c.depth));
        out.diagnostics["trace_derivatives"] = d;
      } else if (c.method == "continuation") {
        out.f_rec = sample_like(u, dirichlet_invert_continuation(harmonic_family(c), c.depth));
      } else {
        config_fail("method '" + c.method + "' does not apply to dirichlet problems");
      }
      return out;
    }
  }
  return out;
}

MetricSet metrics_on(const SampledField& f_rec, const Fn& f_true, double center, double half_width) {
  const ErrorMetrics m = compare_fields(f_rec, f_true, half_width, center);
  return {m.rel_l2, m.max_abs};
}

double grid_center(const ScenarioConfig& c) { return 0.5 * (c.grid.xmin + c.grid.xmax); }

void fill_metrics(const ScenarioConfig& c, const SampledField& f_rec, const Fn& f_true, RunReport& report) {
  const double center = grid_center(c);
  report.metrics = metrics_on(f_rec, f_true, center, c.metric_half_width);
  report.interior = metrics_on(f_rec, f_true, center, c.interior_half_width);
  const bool finite = std::isfinite(report.metrics->rel_l2) && std::isfinite(report.metrics->max_abs) &&
                      std::isfinite(report.interior->rel_l2) && std::isfinite(report.interior->max_abs);
  report.diagnostics["metrics_finite"] = finite;
  if (!finite) report.warnings.emplace_back("non-finite metrics");
}

ResultTable make_table(const SampledField& grid_field, const Fn* f_true, const SampledField* f_rec,
                       const SampledField* u_tau) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ResultTable t;
  for (int i = 0; i < grid_field.size(); ++i) {
    const double x = grid_field.x(i);
    t.x.push_back(x);
    t.f_true.push_back(f_true ? (*f_true)(x) : nan);
    double rec = nan;
    if (f_rec) {
      const int k = f_rec->index_of(x);
      if (k >= 0) rec = f_rec->values[static_cast<std::size_t>(k)];
    }
    t.f_rec.push_back(rec);
    t.u_tau.push_back(u_tau ? u_tau->values[static_cast<std::size_t>(i)] : nan);
  }
  return t;
}

/// FD replay of a layered polynomial-class reconstruction against the data.
void forward_replay(const ScenarioConfig& c, const SampledField& f_rec, const SampledField& u, RunReport& report) {
  if (c.kind != ProblemKind::heat || c.hermite_coeffs.empty()) return;
  const SampledField again = piecewise_heat_fd(c.medium(), f_rec, c.tau, c.steps);
  const ErrorMetrics m = compare_fields(again, u, c.interior_half_width, grid_center(c));
  report.diagnostics["forward_replay"] = {{"rel_l2", m.rel_l2}, {"max_abs", m.max_abs},
                                          {"half_width", c.interior_half_width}};
}

}  // namespace

LayeredMedium ScenarioConfig::medium() const { return LayeredMedium(breakpoints, speeds, couplings); }

EvolutionKernel ScenarioConfig::kernel() const {
  switch (kind) {
    case ProblemKind::heat: return EvolutionKernel::classical(tau);
    case ProblemKind::fractal: return EvolutionKernel::fractal(alpha, tau);
    case ProblemKind::wave: return EvolutionKernel::cos_kernel(tau);
    case ProblemKind::dirichlet: break;
  }
  config_fail("dirichlet problems have no evolution kernel");
}

ScenarioConfig parse_config(const json& root) {
  if (!root.is_object()) config_fail("config must be a JSON object");
  ScenarioConfig c;
  c.raw = root;

  const json medium = block(root, "medium");
  c.breakpoints = get_or<std::vector<double>>(medium, "breakpoints", {});
  c.speeds = get_or<std::vector<double>>(medium, "speeds", std::vector<double>(c.breakpoints.size() + 1, 1.0));
  if (c.speeds.size() != c.breakpoints.size() + 1) config_fail("need one speed per layer");
  for (double a : c.speeds) {
    if (!(a > 0.0)) config_fail("layer speeds must be positive");
  }
  const json couplings = medium.contains("couplings") ? medium.at("couplings") : json::array();
  if (!couplings.is_array()) config_fail("'couplings' must be an array");
  if (!couplings.empty() && couplings.size() != c.breakpoints.size()) config_fail("need one coupling per breakpoint");
  for (std::size_t k = 0; k < c.breakpoints.size(); ++k) {
    const json entry = couplings.empty() ? json::object() : couplings.at(k);
    c.couplings.push_back(parse_coupling(entry, c.speeds[k], c.speeds[k + 1], k));
  }

  const json problem = block(root, "problem");
  const std::string kind = get_or<std::string>(problem, "kind", "heat");
  if (kind == "heat") c.kind = ProblemKind::heat;
  else if (kind == "fractal") c.kind = ProblemKind::fractal;
  else if (kind == "wave") c.kind = ProblemKind::wave;
  else if (kind == "dirichlet") c.kind = ProblemKind::dirichlet;
  else config_fail("unknown problem kind '" + kind + "'");
  c.alpha = get_or<double>(problem, "alpha", c.kind == ProblemKind::wave ? 2.0 : 1.0);
  c.tau = get_or<double>(problem, "tau", 0.1);
  c.depth = get_or<double>(problem, "depth", 1.0);
  c.steps = get_or<int>(problem, "steps", 400);
  if (c.kind == ProblemKind::heat && c.alpha != 1.0) config_fail("heat problems have alpha = 1; use kind 'fractal'");
  if (!(c.alpha > 0.0 && c.alpha <= 2.0)) config_fail("alpha must lie in (0, 2]");
  if (!(c.tau >= 0.0) || !std::isfinite(c.tau)) config_fail("tau must be >= 0");
  if (c.kind == ProblemKind::dirichlet && !(c.depth > 0.0)) config_fail("depth must be > 0");
  if (c.steps < 1) config_fail("steps must be >= 1");

  const json initial = block(root, "initial");
  c.hermite_coeffs = get_or<std::vector<double>>(initial, "hermite_coeffs", {});
  c.family = get_or<std::string>(initial, "family", c.hermite_coeffs.empty() ? "gaussian" : "hermite");
  c.family_params = initial;
  if (c.hermite_coeffs.empty()) (void)family_function(c);
  if (!c.hermite_coeffs.empty()) {
    if (c.kind != ProblemKind::heat && c.kind != ProblemKind::fractal) {
      config_fail("hermite_coeffs apply to heat and fractal problems");
    }
    if (static_cast<int>(c.hermite_coeffs.size()) > kMaxSeriesOrder + 1) config_fail("too many hermite_coeffs");
  }

  const json grid = block(root, "grid");
  c.grid.xmin = get_or<double>(grid, "xmin", -8.0);
  c.grid.xmax = get_or<double>(grid, "xmax", 8.0);
  c.grid.n = get_or<int>(grid, "n", 2048);
  if (!(c.grid.xmax > c.grid.xmin)) config_fail("grid needs xmin < xmax");
  if (c.grid.n < 16 || !is_power_of_two(c.grid.n)) config_fail("grid n must be a power of two >= 16");
  for (double l : c.breakpoints) {
    if (l <= c.grid.xmin || l >= c.grid.xmax) config_fail("grid does not cover breakpoint " + std::to_string(l));
  }

  const json noise = block(root, "noise");
  c.noise_sigma = get_or<double>(noise, "sigma", 0.0);
  c.seed = get_or<std::uint64_t>(noise, "seed", 42);
  if (!(c.noise_sigma >= 0.0)) config_fail("noise sigma must be >= 0");

  const json method = block(root, "method");
  const char* default_method = c.kind == ProblemKind::wave ? "dalembert" : "series";
  c.method = get_or<std::string>(method, "kind", default_method);
  c.order = get_or<int>(method, "order", 24);
  c.cutoff = get_or<double>(method, "cutoff", 12.0);
  const std::string coeff = get_or<std::string>(method, "coeff_method", "polyfit");
  if (coeff == "polyfit") c.coeff_method = CoeffMethod::polyfit;
  else if (coeff == "moments") c.coeff_method = CoeffMethod::moments;
  else config_fail("unknown coeff_method '" + coeff + "'");
  c.fit_window = get_or<double>(method, "fit_window", 3.0);
  if (c.order < 0 || c.order > kMaxSeriesOrder) config_fail("order must lie in [0, 48]");
  if (!(c.cutoff > 0.0) || c.cutoff > kMaxCutoff) config_fail("cutoff must lie in (0, 64]");
  if (!(c.fit_window > 0.0)) config_fail("fit_window must be positive");

  const json metrics = block(root, "metrics");
  c.metric_half_width = get_or<double>(metrics, "half_width", std::numeric_limits<double>::infinity());
  c.interior_half_width = get_or<double>(metrics, "interior_half_width", 0.25 * (c.grid.xmax - c.grid.xmin));
  if (!(c.metric_half_width > 0.0) || !(c.interior_half_width > 0.0)) config_fail("metric windows must be positive");

  const json diag = block(root, "diagnose");
  c.diag_epsilon = get_or<double>(diag, "epsilon", 1e-3);
  c.diag_points = get_or<std::vector<double>>(diag, "points", {-3.0, -2.0, -1.0, 1.0, 2.0, 3.0});
  c.diag_time = get_or<double>(diag, "time", 0.1);
  if (!(c.diag_epsilon > 0.0) || !(c.diag_time > 0.0)) config_fail("diagnose epsilon and time must be positive");

  const json output = block(root, "output");
  c.result_file = get_or<std::string>(output, "result", "result.csv");
  c.report_file = get_or<std::string>(output, "report", "report.json");
  c.basis_file = get_or<std::string>(output, "basis", "basis.csv");
  c.input_file = get_or<std::string>(block(root, "input"), "path", "");

  try {
    (void)c.medium();
  } catch (const Error& e) {
    config_fail(e.what());
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_fail("cannot open config " + path.string());
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    config_fail("cannot parse " + path.string() + ": " + e.what());
  }
  return parse_config(root);
}

json RunReport::to_json() const {
  json out;
  out["version"] = kVersion;
  out["command"] = command;
  json m = json::object();
  if (metrics) {
    m["rel_l2"] = metrics->rel_l2;
    m["max_abs"] = metrics->max_abs;
  }
  if (interior) m["interior"] = {{"rel_l2", interior->rel_l2}, {"max_abs", interior->max_abs}};
  out["metrics"] = m;
  out["diagnostics"] = diagnostics;
  out["timings"] = timings;
  out["warnings"] = warnings;
  out["config"] = config;
  return out;
}

ScenarioOutput run_forward(const ScenarioConfig& config) {
  const auto t0 = Clock::now();
  Forwarded fw = forward_problem(config);
  ScenarioOutput out;
  out.report.command = "forward";
  out.report.config = config.raw;
  out.report.diagnostics = fw.diagnostics;
  out.report.warnings = fw.warnings;
  out.report.timings["forward_s"] = seconds_since(t0);
  out.table = make_table(fw.u, &fw.f_true, nullptr, &fw.u);
  return out;
}

ScenarioOutput run_invert(const ScenarioConfig& config, const SampledField& observed) {
  const auto t0 = Clock::now();
  Inverted inv = invert_problem(config, observed);
  ScenarioOutput out;
  out.report.command = "invert";
  out.report.config = config.raw;
  out.report.diagnostics = inv.diagnostics;
  out.report.warnings = inv.warnings;
  out.report.timings["invert_s"] = seconds_since(t0);
  out.table = make_table(observed, nullptr, &inv.f_rec, &observed);
  return out;
}

ScenarioOutput run_roundtrip(const ScenarioConfig& config) {
  const auto t0 = Clock::now();
  Forwarded fw = forward_problem(config);
  const double t_forward = seconds_since(t0);
  SampledField observed = add_noise(fw.u, config.noise_sigma, config.seed);
  const auto t1 = Clock::now();
  Inverted inv = invert_problem(config, observed);
  const double t_invert = seconds_since(t1);

  ScenarioOutput out;
  RunReport& r = out.report;
  r.command = "roundtrip";
  r.config = config.raw;
  r.diagnostics = fw.diagnostics;
  for (auto it = inv.diagnostics.begin(); it != inv.diagnostics.end(); ++it) r.diagnostics[it.key()] = it.value();
  r.diagnostics["noise"] = {{"sigma", config.noise_sigma}, {"seed", config.seed}};
  r.warnings = fw.warnings;
  r.warnings.insert(r.warnings.end(), inv.warnings.begin(), inv.warnings.end());
  fill_metrics(config, inv.f_rec, fw.f_true, r);
  forward_replay(config, inv.f_rec, fw.u, r);
  r.timings["forward_s"] = t_forward;
  r.timings["invert_s"] = t_invert;
  r.timings["total_s"] = seconds_since(t0);
  out.table = make_table(observed, &fw.f_true, &inv.f_rec, &observed);
  return out;
}

RunReport run_diagnose(const ScenarioConfig& config) {
  const auto t0 = Clock::now();
  const LayeredMedium medium = config.medium();
  RunReport r;
  r.command = "diagnose";
  r.config = config.raw;

  const CompletenessReport cd = completeness_defect(medium, config.diag_epsilon, config.diag_points);
  json pairs = json::array();
  for (const auto& p : cd.pairs) {
    pairs.push_back({{"layer_x", p.layer_x + 1},
                     {"layer_xi", p.layer_xi + 1},
                     {"diagonal_mass", p.diagonal_mass},
                     {"diagonal_deviation", p.diagonal_deviation},
                     {"ghost_mass", p.ghost_mass},
                     {"probes", p.probes}});
  }
  r.diagnostics["completeness"] = {{"epsilon", cd.epsilon},   {"weight", cd.weight},
                                   {"tolerance", cd.tolerance}, {"mismatch", cd.mismatch},
                                   {"pairs", pairs}};
  if (cd.mismatch) r.warnings.emplace_back("transform pair is not complete with the current spectral weight");

  // Influence kernel against the finite-volume response to a unit spike.
  const double t = config.diag_time;
  SampledField spike = SampledField::from_function(config.grid.xmin, config.grid.xmax, config.grid.n,
                                                   [](double) { return 0.0; });
  const double xi_target = config.diag_points.front();
  const int idx = std::clamp(static_cast<int>(std::lround((xi_target - spike.x0) / spike.dx)), 1, spike.size() - 2);
  const double xi = spike.x(idx);
  spike.values[static_cast<std::size_t>(idx)] = 1.0 / spike.dx;
  json kernel = {{"t", t}, {"xi", xi}};
  json samples = json::array();
  double worst_fd = 0.0, worst_exact = 0.0;
  bool fd_ok = true;
  SampledField green;
  try {
    green = piecewise_heat_fd(medium, spike, t, config.steps);
  } catch (const Error& e) {
    fd_ok = false;
    kernel["fd_error"] = e.what();
  }
  for (double x : config.diag_points) {
    const double k = influence_kernel(medium, t, x, xi, 64.0);
    json s = {{"x", x}, {"kernel", k}};
    if (fd_ok) {
      const double g = green.interpolate(x);
      s["fd"] = g;
      worst_fd = std::max(worst_fd, std::abs(k - g));
    }
    if (medium.is_homogeneous()) {
      const double a = medium.outer_speed();
      const double d = x - xi;
      const double exact = std::exp(-d * d / (4.0 * a * a * t)) / (2.0 * a * std::sqrt(std::numbers::pi * t));
      s["exact"] = exact;
      worst_exact = std::max(worst_exact, std::abs(k - exact));
    }
    samples.push_back(s);
  }
  kernel["samples"] = samples;
  if (fd_ok) kernel["max_abs_vs_fd"] = worst_fd;
  if (medium.is_homogeneous()) kernel["max_abs_vs_exact"] = worst_exact;
  r.diagnostics["influence_kernel"] = kernel;
  r.timings["total_s"] = seconds_since(t0);
  return r;
}

SampledField read_field_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_fail("cannot open field file " + path.string());
  std::string line;
  if (!std::getline(in, line)) config_fail("empty field file " + path.string());
  const auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  const auto header = split(line);
  int xcol = -1, vcol = -1;
  for (int i = 0; i < static_cast<int>(header.size()); ++i) {
    if (header[static_cast<std::size_t>(i)] == "x") xcol = i;
    if (header[static_cast<std::size_t>(i)] == "u_tau" || (vcol < 0 && header[static_cast<std::size_t>(i)] == "value")) {
      vcol = i;
    }
  }
  if (xcol < 0 || vcol < 0) config_fail("field file needs columns 'x' and 'u_tau' (or 'value')");
  std::vector<double> xs, vs;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto cells = split(line);
    try {
      xs.push_back(std::stod(cells.at(static_cast<std::size_t>(xcol))));
      vs.push_back(std::stod(cells.at(static_cast<std::size_t>(vcol))));
    } catch (const std::exception&) {
      config_fail("field file row " + std::to_string(row) + " is not numeric");
    }
  }
  if (xs.size() < 16) config_fail("field file needs at least 16 rows");
  const double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(xs[i] - (xs.front() + dx * static_cast<double>(i))) > 1e-6 * std::abs(dx)) {
      config_fail("field file grid is not uniform");
    }
  }
  SampledField f;
  f.x0 = xs.front();
  f.dx = dx;
  f.values = std::move(vs);
  return f;
}

namespace {

void put(std::FILE* out, double v) {
  if (std::isnan(v)) return;
  std::fprintf(out, "%.17g", v);
}

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

std::unique_ptr<std::FILE, FileCloser> open_out(const std::filesystem::path& path) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.string().c_str(), "w"));
  if (!f) fail(ErrorKind::numerical_failure, "cannot write " + path.string());
  return f;
}

}  // namespace

void write_result_csv(const std::filesystem::path& path, const ResultTable& t) {
  auto f = open_out(path);
  std::fprintf(f.get(), "x,f_true,f_rec,u_tau,abs_err\n");
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    put(f.get(), t.x[i]);
    std::fputc(',', f.get());
    put(f.get(), t.f_true[i]);
    std::fputc(',', f.get());
    put(f.get(), t.f_rec[i]);
    std::fputc(',', f.get());
    put(f.get(), t.u_tau[i]);
    std::fputc(',', f.get());
    put(f.get(), std::abs(t.f_rec[i] - t.f_true[i]));
    std::fputc('\n', f.get());
  }
}

void write_report(const std::filesystem::path& path, const RunReport& report) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::numerical_failure, "cannot write " + path.string());
  out << report.to_json().dump(2) << '\n';
}

void write_basis_csv(const std::filesystem::path& path, const std::filesystem::path& monomial_path,
                     const GenHermiteBasis& basis) {
  const auto dump = [&](const std::filesystem::path& p, auto&& coeffs) {
    auto f = open_out(p);
    std::fprintf(f.get(), "layer,j,power,coeff\n");
    for (int m = 0; m < basis.medium().layer_count(); ++m) {
      for (int j = 0; j <= basis.max_index(); ++j) {
        const std::vector<double>& c = coeffs(m, j);
        for (std::size_t r = c.size(); r-- > 0;) std::fprintf(f.get(), "%d,%d,%zu,%.17g\n", m + 1, j, r, c[r]);
      }
    }
  };
  dump(path, [&](int m, int j) -> const std::vector<double>& { return basis.layer_poly(m, j); });
  dump(monomial_path, [&](int m, int j) -> const std::vector<double>& { return basis.monomials().coeffs(m, j); });
}

}  // namespace retro
