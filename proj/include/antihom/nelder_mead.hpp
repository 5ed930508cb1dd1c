#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace antihom {

struct NelderMeadOptions {
  int max_iterations = 4000;
  double f_tolerance = 1e-15;   // spread of simplex values
  double x_tolerance = 1e-10;   // simplex diameter, relative to the box
  double initial_step = 0.1;    // fraction of each box side
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Box-constrained Nelder-Mead: every trial point is clamped into
/// [lower, upper] before evaluation. Standard coefficients (reflect 1,
/// expand 2, contract 1/2, shrink 1/2). Deterministic.
template <typename Objective>
NelderMeadResult nelder_mead(Objective&& f, const Eigen::VectorXd& start, const Eigen::VectorXd& lower,
                             const Eigen::VectorXd& upper, const NelderMeadOptions& opt = {}) {
  const Eigen::Index n = start.size();
  const Eigen::VectorXd span = upper - lower;
  auto clamp = [&](Eigen::VectorXd x) {
    for (Eigen::Index i = 0; i < n; ++i) x(i) = std::clamp(x(i), lower(i), upper(i));
    return x;
  };

  std::vector<Eigen::VectorXd> simplex;
  std::vector<double> values;
  simplex.push_back(clamp(start));
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd v = simplex.front();
    const double step = opt.initial_step * span(i);
    // Step toward the roomier side so the vertex does not collapse on a bound.
    v(i) += (upper(i) - v(i) >= v(i) - lower(i)) ? step : -step;
    simplex.push_back(clamp(v));
  }
  for (const auto& v : simplex) values.push_back(f(v));

  std::vector<std::size_t> order(simplex.size());
  NelderMeadResult res;
  for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];

    double diameter = 0.0;
    for (const auto& v : simplex) {
      const Eigen::VectorXd rel = ((v - simplex[best]).array() / span.array()).matrix();
      diameter = std::max(diameter, rel.cwiseAbs().maxCoeff());
    }
    if (values[worst] - values[best] <= opt.f_tolerance && diameter <= opt.x_tolerance) {
      res.converged = true;
      break;
    }
    if (diameter <= opt.x_tolerance * 1e-3) {
      res.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < simplex.size(); ++i)
      if (i != worst) centroid += simplex[i];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected = clamp(centroid + (centroid - simplex[worst]));
    const double f_reflected = f(reflected);
    if (f_reflected < values[best]) {
      const Eigen::VectorXd expanded = clamp(centroid + 2.0 * (centroid - simplex[worst]));
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < values[worst];
    const Eigen::VectorXd contracted =
        outside ? clamp(centroid + 0.5 * (reflected - centroid)) : clamp(centroid + 0.5 * (simplex[worst] - centroid));
    const double f_contracted = f(contracted);
    if (f_contracted < (outside ? f_reflected : values[worst])) {
      simplex[worst] = contracted;
      values[worst] = f_contracted;
      continue;
    }
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = clamp(simplex[best] + 0.5 * (simplex[i] - simplex[best]));
      values[i] = f(simplex[i]);
    }
  }
  const auto it = std::min_element(values.begin(), values.end());
  res.x = simplex[static_cast<std::size_t>(it - values.begin())];
  res.value = *it;
  return res;
}

}  // namespace antihom
