#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace retro {

/// Real field sampled at x0 + i*dx, i = 0..N-1, at time `time_tag`.
struct SampledField {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<double> values;
  double time_tag = 0.0;

  static SampledField from_function(double xmin, double xmax, int n, const std::function<double(double)>& f,
                                    double time_tag = 0.0);
  /// Same grid, all zeros.
  static SampledField zeros_like(const SampledField& other);

  int size() const noexcept { return static_cast<int>(values.size()); }
  double x(int i) const noexcept { return x0 + dx * i; }
  double xmax() const noexcept { return x(size() - 1); }
  std::vector<double> grid() const;

  /// Grid index of x if it coincides with a sample, -1 otherwise.
  int index_of(double x, double tol = 1e-9) const;
  /// Linear interpolation; throws domain-error outside the grid.
  double interpolate(double x) const;

  /// Checks N >= 16 and finite values.
  void validate() const;
};

/// Field values plus any non-fatal conditions met while producing them.
struct FieldResult {
  SampledField field;
  std::vector<std::string> warnings;
};

/// Complex amplitudes on a lambda grid symmetric about 0 (or a half line
/// starting at 0 for the half-plane transform).
struct Spectrum {
  std::vector<double> lambda;
  std::vector<std::complex<double>> values;
  bool truncation_warning = false;
};

/// Symmetric uniform grid -K*step..K*step with K = floor(max / step).
std::vector<double> symmetric_lambda_grid(double max, double step);

struct ErrorMetrics {
  double rel_l2 = 0.0;
  double max_abs = 0.0;
};

/// Discrete relative L2 and max-abs errors over samples with |x - center| <= half_width.
ErrorMetrics compare_fields(const SampledField& approx, const std::function<double(double)>& exact,
                            double half_width, double center = 0.0);
ErrorMetrics compare_fields(const SampledField& approx, const SampledField& exact, double half_width,
                            double center = 0.0);

}  // namespace retro
