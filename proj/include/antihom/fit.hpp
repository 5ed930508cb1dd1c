#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace antihom {

enum class FitStatus { Converged, Failed };

/// y(theta) = offset + amplitude * cos(2 (theta - phase)), amplitude >= 0.
struct SinusoidFit {
  FitStatus status = FitStatus::Failed;
  double offset = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
  std::string message;

  /// (max - min) / (max + min) of the fitted curve, clipped to [0, 1].
  double visibility() const;
};

/// Linear least squares in (offset, cos 2theta, sin 2theta). Fails when the
/// angles do not pin down the three coefficients or the offset is not
/// positive.
SinusoidFit fit_sinusoid(std::span<const double> theta, std::span<const double> y);

/// y(z) = baseline + amplitude * exp(-(z - center)^2 / (2 width^2)).
struct GaussianFit {
  FitStatus status = FitStatus::Failed;
  double baseline = 0.0;
  double amplitude = 0.0;
  /// Unset for a flat curve, where the feature has no location or width.
  std::optional<double> center;
  std::optional<double> width;
  double baseline_error = 0.0;
  double amplitude_error = 0.0;
  double center_error = 0.0;
  double width_error = 0.0;
  /// Standard error of baseline + amplitude (the extremum level).
  double extremum_error = 0.0;
  double chi2 = 0.0;
  int best_restart = -1;
  std::string message;

  double extremum() const { return baseline + amplitude; }
};

struct GaussianFitOptions {
  int restarts = 3;
  int max_evaluations = 4000;
};

/// Levenberg-Marquardt from a guess read off the data extrema plus
/// perturbed restarts; lowest chi^2 wins, ties to the earlier restart.
/// `sigma` (optional, same length as y) weights the residuals; without it
/// errors are scaled by the residual variance.
GaussianFit fit_gaussian(std::span<const double> z, std::span<const double> y, std::span<const double> sigma = {},
                         const GaussianFitOptions& options = {});

}  // namespace antihom
