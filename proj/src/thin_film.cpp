#include "antihom/thin_film.hpp"

#include <algorithm>
#include <cmath>

#include "antihom/errors.hpp"

namespace antihom {
namespace {

struct SideAmplitudes {
  Complex t;
  Complex r;
};

SideAmplitudes one_side(const std::vector<Layer>& layers, double n_in, double n_out, double wavelength) {
  Eigen::Matrix2cd total = Eigen::Matrix2cd::Identity();
  const Complex i(0.0, 1.0);
  for (const auto& layer : layers) {
    const Complex delta = 2.0 * kPi * layer.index * layer.thickness_nm / wavelength;
    const Complex c = std::cos(delta);
    const Complex s = std::sin(delta);
    Eigen::Matrix2cd m;
    m << c, -i * s / layer.index, -i * layer.index * s, c;
    total = total * m;
  }
  const Complex b = n_in * total(0, 0) + n_in * n_out * total(0, 1);
  const Complex c = total(1, 0) + n_out * total(1, 1);
  const Complex denom = b + c;
  return {2.0 * n_in / denom * std::sqrt(n_out / n_in), (b - c) / denom};
}

}  // namespace

void LayerStack::validate() const {
  if (!(wavelength_nm > 0.0) || !std::isfinite(wavelength_nm)) throw ConfigError("wavelength must be positive");
  if (!(ambient_in > 0.0) || !(ambient_out > 0.0)) throw ConfigError("ambient indices must be positive");
  for (const auto& layer : layers) {
    if (!(layer.thickness_nm > 0.0) || !std::isfinite(layer.thickness_nm))
      throw ConfigError("layer thickness must be positive");
    if (!std::isfinite(layer.index.real()) || !std::isfinite(layer.index.imag()))
      throw ConfigError("layer index must be finite");
    if (layer.index.imag() < 0.0) throw PhysicsError("layer index with Im(n) < 0 describes gain");
    if (layer.index == Complex(0.0)) throw ConfigError("layer index must be non-zero");
  }
}

LayerStack LayerStack::reversed() const {
  LayerStack out = *this;
  std::reverse(out.layers.begin(), out.layers.end());
  std::swap(out.ambient_in, out.ambient_out);
  return out;
}

StackResponse stack_response(const LayerStack& stack) {
  stack.validate();
  const auto fwd = one_side(stack.layers, stack.ambient_in, stack.ambient_out, stack.wavelength_nm);
  const auto rev = stack.reversed();
  const auto back = one_side(rev.layers, rev.ambient_in, rev.ambient_out, rev.wavelength_nm);
  // Reciprocity makes fwd.t == back.t up to rounding; report one value.
  return {fwd.t, fwd.r, back.r};
}

TransferMatrix scattering_matrix(const StackResponse& response) {
  return two_port_matrix(response.t, response.r_left, response.r_right);
}

CoherentOutput coherent_response(const TransferMatrix& scattering, Complex a_left, Complex a_right) {
  if (scattering.dim() != 2) throw ConfigError("coherent_response needs a 2x2 scattering matrix");
  const double in = std::norm(a_left) + std::norm(a_right);
  if (std::abs(in - 1.0) > 1e-9) throw ConfigError("coherent_response input must be normalized");
  CoherentOutput out;
  out.out_left = scattering(0, 0) * a_left + scattering(0, 1) * a_right;
  out.out_right = scattering(1, 0) * a_left + scattering(1, 1) * a_right;
  out.absorbed = 1.0 - std::norm(out.out_left) - std::norm(out.out_right);
  return out;
}

CoherentOutput coherent_response(const LayerStack& stack, Complex a_left, Complex a_right) {
  return coherent_response(scattering_matrix(stack_response(stack)), a_left, a_right);
}

}  // namespace antihom
