#include "antihom/experiment.hpp"

#include <cmath>
#include <random>

#include "antihom/beamsplitter.hpp"
#include "antihom/errors.hpp"
#include "antihom/parallel.hpp"
#include "antihom/rng.hpp"

namespace antihom {
namespace {

constexpr double kZeroBaseline = 1e-15;

double cross_term(Complex t, Complex r_left, Complex r_right) {
  return 2.0 * std::real(t * t * std::conj(r_left * r_right));
}

}  // namespace

double analytic_coincidence(Complex t, Complex r_left, Complex r_right, BellPhase phi, double g) {
  if (!(g >= 0.0 && g <= 1.0)) throw ConfigError("overlap g must lie in [0, 1]");
  (void)two_port_matrix(t, r_left, r_right);  // rejects gain
  const double p = std::pow(std::abs(t), 4) + std::norm(r_left * r_right) +
                   std::cos(phi.radians()) * cross_term(t, r_left, r_right) * g * g;
  return std::clamp(p, 0.0, 1.0);
}

double analytic_coincidence(Complex t, Complex r, Symmetry symmetry, double g) {
  (void)make_beamsplitter(t, r);
  return analytic_coincidence(t, r, r, BellPhase(symmetry == Symmetry::Bosonic ? 0.0 : kPi), g);
}

TransferMatrix sample_matrix(const Sample& sample) {
  return std::visit(
      [](const auto& s) -> TransferMatrix {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TransferMatrix>) {
          if (s.dim() != 2) throw ConfigError("sample matrix must be 2x2 over (L, R)");
          return s;
        } else {
          return scattering_matrix(stack_response(s));
        }
      },
      sample);
}

void PairSource::validate() const {
  if (!(mixing >= 0.0 && mixing <= 1.0)) throw ConfigError("mixing weight must lie in [0, 1]");
}

FockDistribution pair_output(const FockState& input, const TransferMatrix& spatial, double g) {
  const FockState delayed = apply_delay(input, g);
  const TransferMatrix full = extend_internal(spatial, delayed.modes());
  const TransferMatrix u = full.is_unitary() ? full : dilate(full);
  return distribution(evolve(delayed, u));
}

double engine_coincidence(const PairSource& source, const TransferMatrix& spatial, double g) {
  source.validate();
  double p = 0.0;
  if (source.mixing < 1.0)
    p += (1.0 - source.mixing) * coincidence_probability(pair_output(bell_input(source.phi), spatial, g));
  if (source.mixing > 0.0)
    p += source.mixing * coincidence_probability(pair_output(product_input(Polarization::H), spatial, g));
  return p;
}

void ScanConfig::validate() const {
  if (positions_um.empty()) throw ConfigError("scan needs at least one position");
  for (std::size_t i = 0; i < positions_um.size(); ++i) {
    if (!std::isfinite(positions_um[i])) throw ConfigError("scan positions must be finite");
    if (i > 0 && !(positions_um[i] > positions_um[i - 1]))
      throw ConfigError("scan positions must be strictly increasing");
  }
  if (!(reference_counts > 0.0) || !std::isfinite(reference_counts)) throw ConfigError("reference counts must be positive");
  source.validate();
  packet.validate();
}

ScanResult hom_scan(const ScanConfig& config) {
  config.validate();
  const TransferMatrix spatial = sample_matrix(config.sample);
  const Complex t = spatial(0, 0);
  const Complex r_right = spatial(0, 1);
  const Complex r_left = spatial(1, 0);

  ScanResult result;
  result.noise = config.noise;
  result.reference_counts = config.reference_counts;
  result.rng = std::string(Philox4x32::kName) + "+std::poisson_distribution";
  result.baseline_probability = engine_coincidence(config.source, spatial, 0.0);
  if (result.baseline_probability <= kZeroBaseline)
    throw PhysicsError("sample gives no coincidences for distinguishable photons; nothing to normalize to");

  // Analytic weight of the interference term for the mixed source.
  const double fringe_weight = (1.0 - config.source.mixing) * std::cos(config.source.phi.radians()) + config.source.mixing;

  result.points.resize(config.positions_um.size());
  parallel_for(config.positions_um.size(), [&](std::size_t i) {
    ScanPoint& pt = result.points[i];
    pt.position_um = config.positions_um[i];
    pt.overlap = overlap_from_position(pt.position_um, config.packet);
    pt.probability = engine_coincidence(config.source, spatial, pt.overlap);
    pt.analytic = std::pow(std::abs(t), 4) + std::norm(r_left * r_right) +
                  fringe_weight * cross_term(t, r_left, r_right) * pt.overlap * pt.overlap;
    pt.normalized = pt.probability / result.baseline_probability;
    if (config.noise) {
      pt.counts = synthesize_counts(pt.probability, result.baseline_probability, config.reference_counts,
                                    config.rng_seed, i);
      pt.shot_error = std::sqrt(static_cast<double>(*pt.counts));
    }
  });
  return result;
}

std::int64_t synthesize_counts(double prob, double baseline_prob, double reference_counts, std::uint64_t seed,
                               std::uint64_t index) {
  if (!(baseline_prob > 0.0)) throw ConfigError("baseline probability must be positive");
  if (!(reference_counts >= 0.0) || !(prob >= 0.0)) throw ConfigError("counts need non-negative inputs");
  const double mean = reference_counts * prob / baseline_prob;
  if (mean <= 0.0) return 0;
  PhiloxStream stream(seed, index);
  std::poisson_distribution<std::int64_t> poisson(mean);
  return poisson(stream);
}

std::vector<double> polarization_scan(const PolarizationInput& input, double theta2,
                                      std::span<const double> theta1_grid) {
  std::vector<double> curve;
  curve.reserve(theta1_grid.size());
  for (double theta1 : theta1_grid) curve.push_back(analyzer_coincidence(input, theta1, theta2));
  return curve;
}

Visibility visibility(std::span<const double> theta1_grid, std::span<const double> curve) {
  Visibility v;
  v.fit = fit_sinusoid(theta1_grid, curve);
  v.status = v.fit.status;
  v.value = v.fit.visibility();
  return v;
}

BellTestResult bell_parameter(double v1, double v2) {
  if (!(v1 >= 0.0 && v1 <= 1.0) || !(v2 >= 0.0 && v2 <= 1.0)) throw ConfigError("visibilities must lie in [0, 1]");
  return {v1, v2, std::sqrt(2.0) * (v1 + v2)};
}

std::vector<double> angle_grid(std::size_t n) {
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = kPi * static_cast<double>(i) / static_cast<double>(n);
  return grid;
}

BellScan bell_test(const PolarizationInput& input, std::span<const double> theta1_grid) {
  BellScan scan;
  scan.theta1.assign(theta1_grid.begin(), theta1_grid.end());
  for (double theta2 : {0.0, kPi / 2.0, kPi / 4.0, -kPi / 4.0}) {
    scan.curves[theta2] = polarization_scan(input, theta2, theta1_grid);
    scan.visibilities[theta2] = visibility(theta1_grid, scan.curves[theta2]);
    if (scan.visibilities[theta2].status != FitStatus::Converged)
      throw PhysicsError("fringe fit failed at theta2 = " + std::to_string(theta2) + ": " +
                         scan.visibilities[theta2].fit.message);
  }
  const double v1 = 0.5 * (scan.visibilities[0.0].value + scan.visibilities[kPi / 2.0].value);
  const double v2 = 0.5 * (scan.visibilities[kPi / 4.0].value + scan.visibilities[-kPi / 4.0].value);
  scan.result = bell_parameter(v1, v2);
  return scan;
}

GaussianFit fit_hom_curve(const ScanResult& result) {
  std::vector<double> z, y, sigma;
  for (const auto& pt : result.points) {
    z.push_back(pt.position_um);
    if (pt.counts) {
      y.push_back(static_cast<double>(*pt.counts) / result.reference_counts);
      sigma.push_back(std::sqrt(std::max<double>(static_cast<double>(*pt.counts), 1.0)) / result.reference_counts);
    } else {
      y.push_back(pt.normalized);
    }
  }
  GaussianFit fit = fit_gaussian(z, y, sigma);
  if (sigma.empty() || fit.status != FitStatus::Converged || !fit.center) return fit;
  // Observed-count weights pull the curve toward low fluctuations; refit once
  // with variances taken from the first model.
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double u = (z[i] - *fit.center) / *fit.width;
    const double model = fit.baseline + fit.amplitude * std::exp(-0.5 * u * u);
    sigma[i] = std::sqrt(std::max(model * result.reference_counts, 1.0)) / result.reference_counts;
  }
  GaussianFit refit = fit_gaussian(z, y, sigma);
  return refit.status == FitStatus::Converged ? refit : fit;
}

double classical_limit(FeatureKind kind) { return kind == FeatureKind::Dip ? 0.5 : 1.5; }

bool is_quantum(FeatureKind kind, double normalized_extremum) {
  return kind == FeatureKind::Dip ? normalized_extremum < classical_limit(kind)
                                  : normalized_extremum > classical_limit(kind);
}

}  // namespace antihom
