#pragma once

#include <vector>

#include "antihom/beamsplitter.hpp"
#include "antihom/linalg.hpp"

namespace antihom {

/// Homogeneous film. `index` = n + i k with k >= 0 absorbing
/// (exp(-i omega t) time convention).
struct Layer {
  double thickness_nm = 0.0;
  Complex index{1.0, 0.0};
};

struct LayerStack {
  std::vector<Layer> layers;  // ordered from the ambient_in side
  double ambient_in = 1.0;
  double ambient_out = 1.0;
  double wavelength_nm = 810.0;

  /// Throws ConfigError for non-positive thicknesses or wavelength, and
  /// PhysicsError for gain media (Im(index) < 0).
  void validate() const;
  LayerStack reversed() const;
};

/// Normal-incidence amplitudes, flux-normalized so |t|^2 is the
/// transmittance even when the two ambients differ (which also makes t
/// reciprocal). Reference planes sit on the outer faces.
struct StackResponse {
  Complex t;
  Complex r_left;   // incidence from the ambient_in side
  Complex r_right;  // incidence from the ambient_out side

  double transmittance() const { return std::norm(t); }
  double reflectance_left() const { return std::norm(r_left); }
  double reflectance_right() const { return std::norm(r_right); }
  double absorptance_left() const { return 1.0 - transmittance() - reflectance_left(); }
  double absorptance_right() const { return 1.0 - transmittance() - reflectance_right(); }
};

/// Characteristic-matrix product over the layers, then the usual
/// amplitude formulas for each incidence side.
StackResponse stack_response(const LayerStack& stack);

/// [[t, r_right], [r_left, t]] in the beamsplitter port convention.
TransferMatrix scattering_matrix(const StackResponse& response);

struct CoherentOutput {
  Complex out_left;
  Complex out_right;
  double absorbed = 0.0;
};

/// Classical two-sided illumination with normalized amplitudes (a_L, a_R).
CoherentOutput coherent_response(const LayerStack& stack, Complex a_left, Complex a_right);
CoherentOutput coherent_response(const TransferMatrix& scattering, Complex a_left, Complex a_right);

}  // namespace antihom
