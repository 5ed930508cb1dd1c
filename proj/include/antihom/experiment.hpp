#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "antihom/fit.hpp"
#include "antihom/fock.hpp"
#include "antihom/states.hpp"
#include "antihom/thin_film.hpp"

namespace antihom {

enum class Symmetry { Bosonic, Fermionic };

/// Closed-form coincidence for a Bell input on [[t, r], [r, t]]:
///   P = |t|^4 + |r|^4 + s * 2 Re(t^2 conj(r)^2) * g^2,  s = +1 / -1.
/// Throws PhysicsError for an unphysical (t, r).
double analytic_coincidence(Complex t, Complex r, Symmetry symmetry, double g);

/// General Bell phase and asymmetric reflections:
///   P = |t|^4 + |r_L r_R|^2 + 2 cos(phi) Re(t^2 conj(r_L r_R)) g^2.
double analytic_coincidence(Complex t, Complex r_left, Complex r_right, BellPhase phi, double g);

/// Sample in the interferometer: a 2x2 spatial map or a film stack.
using Sample = std::variant<TransferMatrix, LayerStack>;

TransferMatrix sample_matrix(const Sample& sample);

/// Input pair: a Bell state, optionally mixed with a same-polarization
/// product pair (imperfect entanglement).
struct PairSource {
  BellPhase phi;
  double mixing = 0.0;

  void validate() const;
};

/// Full engine path for one overlap value: input -> apply_delay(g) ->
/// extend_internal -> dilate (if lossy) -> evolve -> distribution.
FockDistribution pair_output(const FockState& input, const TransferMatrix& spatial, double g);

/// Coincidence probability through the engine, mixture-weighted.
double engine_coincidence(const PairSource& source, const TransferMatrix& spatial, double g);

struct ScanConfig {
  std::vector<double> positions_um;
  PairSource source;
  Sample sample = TransferMatrix::identity(2);
  WavePacketSpec packet;
  double reference_counts = 750.0;
  std::uint64_t rng_seed = 0;
  bool noise = false;

  void validate() const;
};

struct ScanPoint {
  double position_um = 0.0;
  double overlap = 0.0;
  double probability = 0.0;
  double analytic = 0.0;
  double normalized = 0.0;
  std::optional<std::int64_t> counts;
  std::optional<double> shot_error;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  double baseline_probability = 0.0;
  bool noise = false;
  double reference_counts = 0.0;
  std::string rng;  // generator identity, recorded in outputs
};

/// Coincidence scan over sample positions. Points are evaluated in parallel;
/// results keep position order and noise is keyed by (seed, point index).
/// Normalization divides by the g = 0 engine probability.
ScanResult hom_scan(const ScanConfig& config);

/// Poisson draw with mean reference_counts * prob / baseline_prob; a pure
/// function of (seed, index).
std::int64_t synthesize_counts(double prob, double baseline_prob, double reference_counts, std::uint64_t seed,
                               std::uint64_t index);

/// analyzer_coincidence over a theta1 grid at fixed theta2.
std::vector<double> polarization_scan(const PolarizationInput& input, double theta2,
                                      std::span<const double> theta1_grid);

struct Visibility {
  FitStatus status = FitStatus::Failed;
  double value = 0.0;
  SinusoidFit fit;
};

Visibility visibility(std::span<const double> theta1_grid, std::span<const double> curve);

struct BellTestResult {
  double v1 = 0.0;  // H/V basis
  double v2 = 0.0;  // D/A basis
  double s = 0.0;

  bool non_classical() const { return s > 2.0; }
};

/// S = sqrt(2) (V1 + V2).
BellTestResult bell_parameter(double v1, double v2);

struct BellScan {
  std::vector<double> theta1;
  std::map<double, std::vector<double>> curves;  // keyed by theta2
  std::map<double, Visibility> visibilities;
  BellTestResult result;
};

/// Fringes at theta2 in {0, pi/2} (H/V) and {pi/4, -pi/4} (D/A); each
/// basis visibility is the mean over its two analyzer settings.
BellScan bell_test(const PolarizationInput& input, std::span<const double> theta1_grid);

/// Uniform grid of n angles over [0, pi).
std::vector<double> angle_grid(std::size_t n);

/// Gaussian fit of the normalized scan. With counts present the fit uses
/// counts / reference with shot-noise weights.
GaussianFit fit_hom_curve(const ScanResult& result);

enum class FeatureKind { Dip, Peak };

/// Classical two-photon interference bounds on normalized coincidences.
double classical_limit(FeatureKind kind);

/// True when a normalized extremum is beyond the classical limit.
bool is_quantum(FeatureKind kind, double normalized_extremum);

}  // namespace antihom
