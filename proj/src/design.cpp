#include "antihom/design.hpp"

#include <cmath>
#include <limits>

#include "antihom/errors.hpp"
#include "antihom/nelder_mead.hpp"
#include "antihom/parallel.hpp"

namespace antihom {
namespace {

// Phase-aligned residual for a possibly asymmetric stack; the two
// reflections share the weight of the single r term.
double aligned_residual(const StackResponse& resp, const BeamsplitterSpec& target, Complex* phase) {
  const Complex overlap = std::conj(resp.t) * target.t +
                          0.5 * (std::conj(resp.r_left) + std::conj(resp.r_right)) * target.r;
  const double own = std::norm(resp.t) + 0.5 * (std::norm(resp.r_left) + std::norm(resp.r_right));
  const double value = own + target.energy() - 2.0 * std::abs(overlap);
  if (phase) *phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  return std::max(0.0, value);
}

}  // namespace

LayerStack StackTemplate::instantiate(const std::vector<double>& values) const {
  if (values.size() != parameters.size()) throw ConfigError("parameter count mismatch");
  LayerStack out = base;
  for (std::size_t p = 0; p < parameters.size(); ++p) {
    for (auto layer : parameters[p].layers) {
      if (layer >= out.layers.size()) throw ConfigError("parameter '" + parameters[p].name + "' names a missing layer");
      auto& l = out.layers[layer];
      switch (parameters[p].kind) {
        case FreeParameter::Kind::Thickness:
          l.thickness_nm = values[p];
          break;
        case FreeParameter::Kind::IndexReal:
          l.index = Complex(values[p], l.index.imag());
          break;
        case FreeParameter::Kind::IndexImag:
          l.index = Complex(l.index.real(), values[p]);
          break;
      }
    }
  }
  return out;
}

double design_residual(Complex t, Complex r, const BeamsplitterSpec& target) {
  return aligned_residual({t, r, r}, target, nullptr);
}

DesignResult design_stack(const StackTemplate& templ, const BeamsplitterSpec& target, const DesignOptions& options) {
  const auto& params = templ.parameters;
  if (params.empty()) {
    if (!templ.base.layers.empty())
      throw ConfigError("design_stack: template has layers but no free parameters");
    const auto resp = stack_response(templ.base);
    DesignResult res;
    res.stack = templ.base;
    Complex phase;
    res.residual = aligned_residual(resp, target, &phase);
    res.t = resp.t * phase;
    res.r = resp.r_left * phase;
    return res;
  }
  if (params.size() > 4) throw ConfigError("design_stack supports 1 to 4 free parameters");
  if (options.restarts < 1) throw ConfigError("design_stack needs at least one restart");

  const auto n = static_cast<Eigen::Index>(params.size());
  Eigen::VectorXd lower(n), upper(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& p = params[static_cast<std::size_t>(i)];
    if (!std::isfinite(p.lower) || !std::isfinite(p.upper)) throw ConfigError("parameter bounds must be finite");
    if (!(p.lower < p.upper)) throw ConfigError("parameter '" + p.name + "' has inverted or empty bounds");
    if (p.layers.empty()) throw ConfigError("parameter '" + p.name + "' is not bound to any layer");
    lower(i) = p.lower;
    upper(i) = p.upper;
  }

  auto objective = [&](const Eigen::VectorXd& x) {
    const std::vector<double> values(x.data(), x.data() + x.size());
    try {
      return aligned_residual(stack_response(templ.instantiate(values)), target, nullptr);
    } catch (const PhysicsError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  const auto restarts = static_cast<std::size_t>(options.restarts);
  std::vector<NelderMeadResult> runs(restarts);
  NelderMeadOptions nm;
  nm.max_iterations = options.max_iterations;
  parallel_for(restarts, [&](std::size_t k) {
    // Latin-hypercube style grid: restart k starts at cell (k + 2d) mod R
    // along dimension d.
    Eigen::VectorXd start(n);
    for (Eigen::Index d = 0; d < n; ++d) {
      const auto cell = (k + 2 * static_cast<std::size_t>(d)) % restarts;
      const double frac = (static_cast<double>(cell) + 0.5) / static_cast<double>(restarts);
      start(d) = lower(d) + frac * (upper(d) - lower(d));
    }
    runs[k] = nelder_mead(objective, start, lower, upper, nm);
  });

  std::size_t best = 0;
  for (std::size_t k = 1; k < restarts; ++k)
    if (runs[k].value < runs[best].value) best = k;

  DesignResult res;
  res.values.assign(runs[best].x.data(), runs[best].x.data() + runs[best].x.size());
  res.stack = templ.instantiate(res.values);
  const auto resp = stack_response(res.stack);
  Complex phase;
  res.residual = aligned_residual(resp, target, &phase);
  res.t = resp.t * phase;
  res.r = resp.r_left * phase;
  res.best_restart = static_cast<int>(best);
  return res;
}

}  // namespace antihom
