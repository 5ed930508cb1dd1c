#pragma once

#include <string>
#include <vector>

#include "antihom/beamsplitter.hpp"
#include "antihom/thin_film.hpp"

namespace antihom {

/// One optimizer coordinate bound to one or more layers of a template, so a
/// symmetric Cr(x)/SiN(y)/Cr(x) stack has two parameters, not three.
struct FreeParameter {
  enum class Kind { Thickness, IndexReal, IndexImag };

  std::string name;
  Kind kind = Kind::Thickness;
  std::vector<std::size_t> layers;
  double lower = 0.0;
  double upper = 0.0;
};

struct StackTemplate {
  LayerStack base;
  std::vector<FreeParameter> parameters;

  /// `base` with parameter values substituted.
  LayerStack instantiate(const std::vector<double>& values) const;
};

struct DesignOptions {
  int restarts = 5;
  int max_iterations = 4000;
};

struct DesignResult {
  LayerStack stack;
  std::vector<double> values;
  double residual = 0.0;
  /// Response of the best stack with the common phase removed, i.e. the
  /// (t, r) actually compared against the target.
  Complex t;
  Complex r;
  int best_restart = 0;
};

/// Distance between a symmetric response and the target, minimized over the
/// common phase of (t, r):
///   min_a |e^{ia} t - t*|^2 + |e^{ia} r - r*|^2
///     = |t|^2 + |r|^2 + |t*|^2 + |r*|^2 - 2 |conj(t) t* + conj(r) r*|.
/// A phase common to t and r only moves the reference planes and never
/// changes coincidence or absorption statistics.
double design_residual(Complex t, Complex r, const BeamsplitterSpec& target);

/// Nelder-Mead from a fixed grid of starting points (one per restart),
/// keeping the lowest residual; ties go to the lower restart index. An empty
/// template with no parameters is just evaluated.
DesignResult design_stack(const StackTemplate& templ, const BeamsplitterSpec& target,
                          const DesignOptions& options = {});

}  // namespace antihom
