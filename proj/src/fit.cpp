#include "antihom/fit.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>

#include <algorithm>
#include <cmath>
#include <limits>

#include "antihom/errors.hpp"

namespace antihom {

double SinusoidFit::visibility() const {
  if (status != FitStatus::Converged || offset <= 0.0) return 0.0;
  return std::clamp(amplitude / offset, 0.0, 1.0);
}

SinusoidFit fit_sinusoid(std::span<const double> theta, std::span<const double> y) {
  SinusoidFit fit;
  if (theta.size() != y.size()) throw ConfigError("fit_sinusoid: size mismatch");
  const auto n = static_cast<Eigen::Index>(y.size());
  if (n < 3) {
    fit.message = "need at least three points";
    return fit;
  }
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = theta[static_cast<std::size_t>(i)];
    design(i, 0) = 1.0;
    design(i, 1) = std::cos(2.0 * t);
    design(i, 2) = std::sin(2.0 * t);
    rhs(i) = y[static_cast<std::size_t>(i)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3) {
    fit.message = "angle grid does not resolve a full fringe";
    return fit;
  }
  const Eigen::Vector3d c = qr.solve(rhs);
  fit.offset = c(0);
  fit.amplitude = std::hypot(c(1), c(2));
  fit.phase = 0.5 * std::atan2(c(2), c(1));
  if (!(fit.offset > 0.0)) {
    fit.message = "non-positive fringe offset";
    return fit;
  }
  fit.status = FitStatus::Converged;
  return fit;
}

namespace {

struct GaussianResiduals : Eigen::DenseFunctor<double> {
  std::span<const double> z, y, sigma;

  GaussianResiduals(std::span<const double> z_, std::span<const double> y_, std::span<const double> s_)
      : DenseFunctor<double>(4, static_cast<int>(z_.size())), z(z_), y(y_), sigma(s_) {}

  double weight(std::size_t i) const { return sigma.empty() ? 1.0 : 1.0 / sigma[i]; }

  int operator()(const InputType& p, ValueType& f) const {
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double u = (z[i] - p(2)) / p(3);
      f(static_cast<Eigen::Index>(i)) = weight(i) * (p(0) + p(1) * std::exp(-0.5 * u * u) - y[i]);
    }
    return 0;
  }

  int df(const InputType& p, JacobianType& jac) const {
    for (std::size_t i = 0; i < z.size(); ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      const double u = (z[i] - p(2)) / p(3);
      const double e = std::exp(-0.5 * u * u);
      const double w = weight(i);
      jac(row, 0) = w;
      jac(row, 1) = w * e;
      jac(row, 2) = w * p(1) * e * u / p(3);
      jac(row, 3) = w * p(1) * e * u * u / p(3);
    }
    return 0;
  }
};

bool lm_converged(Eigen::LevenbergMarquardtSpace::Status s) {
  using namespace Eigen::LevenbergMarquardtSpace;
  switch (s) {
    case RelativeReductionTooSmall:
    case RelativeErrorTooSmall:
    case RelativeErrorAndReductionTooSmall:
    case CosinusTooSmall:
    case FtolTooSmall:
    case XtolTooSmall:
    case GtolTooSmall:
      return true;
    default:
      return false;
  }
}

}  // namespace

GaussianFit fit_gaussian(std::span<const double> z, std::span<const double> y, std::span<const double> sigma,
                         const GaussianFitOptions& options) {
  if (z.size() != y.size()) throw ConfigError("fit_gaussian: size mismatch");
  if (!sigma.empty() && sigma.size() != y.size()) throw ConfigError("fit_gaussian: sigma size mismatch");
  for (double s : sigma)
    if (!(s > 0.0)) throw ConfigError("fit_gaussian: sigma must be positive");
  GaussianFit best;
  const std::size_t n = y.size();
  if (n < 8) {
    best.message = "need at least 8 points";
    return best;
  }

  const auto [lo_it, hi_it] = std::minmax_element(y.begin(), y.end());
  const double span_y = *hi_it - *lo_it;
  const double scale_y = std::max({std::abs(*hi_it), std::abs(*lo_it), 1e-300});

  // Baseline guess from the outer quarter on each side.
  const std::size_t edge = std::max<std::size_t>(1, n / 4);
  double edge_sum = 0.0;
  for (std::size_t i = 0; i < edge; ++i) edge_sum += y[i] + y[n - 1 - i];
  const double b0 = edge_sum / static_cast<double>(2 * edge);

  if (span_y <= 1e-12 * scale_y) {
    double mean = 0.0;
    for (double v : y) mean += v;
    best.status = FitStatus::Converged;
    best.baseline = mean / static_cast<double>(n);
    best.amplitude = 0.0;
    best.message = "flat curve";
    return best;
  }

  const bool dip = (b0 - *lo_it) >= (*hi_it - b0);
  const auto extreme = dip ? lo_it : hi_it;
  const double a0 = *extreme - b0;
  const double z0 = z[static_cast<std::size_t>(extreme - y.begin())];
  double above_half = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (std::abs(y[i] - b0) > 0.5 * std::abs(a0)) above_half += z[i + 1] - z[i];
  const double z_span = z[n - 1] - z[0];
  const double w0 = std::max(above_half / 2.3548, z_span / static_cast<double>(4 * n));

  struct Guess {
    double b, a, c, w;
  };
  std::vector<Guess> guesses{{b0, a0, z0, w0}, {b0, a0, z0 + 0.5 * w0, 0.5 * w0}, {b0, a0, z0 - 0.5 * w0, 2.0 * w0}};
  for (int k = 3; k < options.restarts; ++k)
    guesses.push_back({b0, a0, z0 + (k % 2 ? 1.0 : -1.0) * 0.25 * k * w0, w0 * (1.0 + 0.25 * k)});
  guesses.resize(static_cast<std::size_t>(std::max(options.restarts, 1)));

  double best_chi2 = std::numeric_limits<double>::infinity();
  GaussianResiduals functor(z, y, sigma);
  for (std::size_t k = 0; k < guesses.size(); ++k) {
    Eigen::VectorXd p(4);
    p << guesses[k].b, guesses[k].a, guesses[k].c, guesses[k].w;
    Eigen::LevenbergMarquardt<GaussianResiduals> lm(functor);
    lm.setMaxfev(options.max_evaluations);
    lm.setFtol(1e-15);
    lm.setXtol(1e-15);
    lm.setGtol(0.0);
    const auto status = lm.minimize(p);
    if (!lm_converged(status) || !p.allFinite() || p(3) == 0.0) continue;
    Eigen::VectorXd f(static_cast<Eigen::Index>(n));
    functor(p, f);
    const double chi2 = f.squaredNorm();
    if (!(chi2 < best_chi2)) continue;
    best_chi2 = chi2;

    Eigen::MatrixXd jac(static_cast<Eigen::Index>(n), 4);
    functor.df(p, jac);
    const Eigen::Matrix4d info = jac.transpose() * jac;
    Eigen::Matrix4d cov = info.completeOrthogonalDecomposition().pseudoInverse();
    if (sigma.empty()) cov *= chi2 / static_cast<double>(n - 4);

    best = GaussianFit{};
    best.status = FitStatus::Converged;
    best.baseline = p(0);
    best.amplitude = p(1);
    best.center = p(2);
    best.width = std::abs(p(3));
    best.baseline_error = std::sqrt(std::max(0.0, cov(0, 0)));
    best.amplitude_error = std::sqrt(std::max(0.0, cov(1, 1)));
    best.center_error = std::sqrt(std::max(0.0, cov(2, 2)));
    best.width_error = std::sqrt(std::max(0.0, cov(3, 3)));
    best.extremum_error = std::sqrt(std::max(0.0, cov(0, 0) + cov(1, 1) + 2.0 * cov(0, 1)));
    best.chi2 = chi2;
    best.best_restart = static_cast<int>(k);
  }
  if (best.status != FitStatus::Converged) {
    best.message = "Levenberg-Marquardt did not converge from any restart";
  } else if (std::abs(best.amplitude) < 1e-9 * scale_y) {
    best.center.reset();
    best.width.reset();
    best.message = "no significant feature";
  }
  return best;
}

}  // namespace antihom
