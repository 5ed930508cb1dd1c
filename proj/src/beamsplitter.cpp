#include "antihom/beamsplitter.hpp"

#include <cmath>

#include "antihom/errors.hpp"

namespace antihom {

bool BeamsplitterSpec::is_lossless(double tol) const {
  if (std::abs(energy() - 1.0) > tol) return false;
  if (std::abs(t) == 0.0 || std::abs(r) == 0.0) return true;
  const double dphi = std::remainder(std::arg(r) - std::arg(t), 2.0 * kPi);
  return std::abs(std::abs(dphi) - kPi / 2.0) < tol;
}

BeamsplitterSpec make_beamsplitter(Complex t, Complex r) {
  BeamsplitterSpec bs{t, r};
  if (!std::isfinite(bs.energy())) throw ConfigError("beamsplitter amplitudes must be finite");
  if (bs.energy() > 1.0 + kPassivityTolerance)
    throw PhysicsError("|t|^2 + |r|^2 exceeds 1 (unphysical gain)");
  (void)two_port_matrix(t, r, r);  // passivity of the full 2x2 map
  return bs;
}

TransferMatrix two_port_matrix(Complex t, Complex r_left, Complex r_right) {
  MatrixXc m(2, 2);
  m << t, r_right, r_left, t;
  return TransferMatrix(std::move(m));
}

TransferMatrix lossless_bs(double t_mag, int sign) {
  if (!(t_mag >= 0.0 && t_mag <= 1.0)) throw ConfigError("lossless_bs: |t| must lie in [0, 1]");
  if (sign != 1 && sign != -1) throw ConfigError("lossless_bs: sign must be +1 or -1");
  const Complex r(0.0, sign * std::sqrt(std::max(0.0, 1.0 - t_mag * t_mag)));
  return two_port_matrix(Complex(t_mag, 0.0), r, r);
}

TransferMatrix lossy_bs(int sign) {
  if (sign != 1 && sign != -1) throw ConfigError("lossy_bs: sign must be +1 or -1");
  return two_port_matrix(0.5, 0.5 * sign, 0.5 * sign);
}

Eigen::Matrix2cd standing_wave_basis() {
  Eigen::Matrix2cd b;
  const double h = 1.0 / std::sqrt(2.0);
  b << h, h, h, -h;
  return b;
}

TransferMatrix qsw_composite(const QswChannel& channel) {
  if (std::abs(channel.s_cos) > 1.0 + kPassivityTolerance || std::abs(channel.s_sin) > 1.0 + kPassivityTolerance)
    throw PhysicsError("standing-wave survival amplitudes must have modulus <= 1");
  // B^H diag B collapses to sums and differences; written out so the ideal
  // cases come out exact.
  const Complex even = 0.5 * (channel.s_cos + channel.s_sin);
  const Complex odd = 0.5 * (channel.s_cos - channel.s_sin);
  MatrixXc m(2, 2);
  m << even, odd, odd, even;
  return TransferMatrix(std::move(m));
}

}  // namespace antihom
