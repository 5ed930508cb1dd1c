#include "antihom/states.hpp"

#include <cmath>
#include <map>

#include "antihom/errors.hpp"

namespace antihom {

BellPhase::BellPhase(double radians) {
  if (!std::isfinite(radians)) throw ConfigError("Bell phase must be finite");
  phi_ = std::fmod(radians, 2.0 * kPi);
  if (phi_ < 0.0) phi_ += 2.0 * kPi;
  if (phi_ >= 2.0 * kPi) phi_ = 0.0;
}

void WavePacketSpec::validate() const {
  if (!(center_nm > 0.0) || !(fwhm_nm > 0.0)) throw ConfigError("wave packet needs positive wavelength and FWHM");
  if (fwhm_nm >= center_nm) throw ConfigError("filter FWHM must be much smaller than the center wavelength");
}

double WavePacketSpec::sigma_omega() const {
  validate();
  const double lambda = center_nm * 1e-9;
  const double dlambda = fwhm_nm * 1e-9;
  const double fwhm_omega = 2.0 * kPi * kSpeedOfLight * dlambda / (lambda * lambda);
  return fwhm_omega / (2.0 * std::sqrt(2.0 * std::log(2.0)));
}

ModeRegister bell_register() {
  return ModeRegister::product({Port::left(), Port::right()}, {Polarization::H, Polarization::V}, {0});
}

FockState bell_input(BellPhase phi) {
  auto reg = bell_register();
  const std::size_t lh = *reg.index_of({Port::left(), Polarization::H, 0});
  const std::size_t lv = *reg.index_of({Port::left(), Polarization::V, 0});
  const std::size_t rh = *reg.index_of({Port::right(), Polarization::H, 0});
  const std::size_t rv = *reg.index_of({Port::right(), Polarization::V, 0});
  const double h = 1.0 / std::sqrt(2.0);
  return FockState::from_creators(std::move(reg), {{Complex(h), {lh, rv}}, {h * std::polar(1.0, phi.radians()), {lv, rh}}});
}

FockState product_input(Polarization pol) {
  auto reg = bell_register();
  const std::size_t l = *reg.index_of({Port::left(), pol, 0});
  const std::size_t r = *reg.index_of({Port::right(), pol, 0});
  return FockState::from_creators(std::move(reg), {{Complex(1.0), {l, r}}});
}

SymmetryWeights symmetry_weights(const FockState& state) {
  if (state.photon_number() != 2) throw ConfigError("symmetry_weights needs a two-photon state");
  const auto& reg = state.modes();
  // Coefficient of a^dag_{L,d1} a^dag_{R,d2}, keyed by the internal labels
  // (polarization, time) of each photon.
  using Internal = std::pair<Polarization, int>;
  std::map<std::pair<Internal, Internal>, Complex> coef;
  SymmetryWeights w;
  for (const auto& [occ, amp] : state.terms()) {
    const auto c = port_counts(reg, occ);
    if (c.left != 1 || c.right != 1) {
      w.remainder += std::norm(amp);
      continue;
    }
    Internal left{}, right{};
    for (std::size_t i = 0; i < occ.size(); ++i) {
      if (occ[i] == 0) continue;
      const Internal d{reg[i].polarization, reg[i].temporal};
      (reg[i].port == Port::left() ? left : right) = d;
    }
    coef[{left, right}] += amp;
  }
  // Visit every ordered key; a key whose swap is absent stands for the whole
  // unordered pair and counts twice.
  for (const auto& [key, c] : coef) {
    const auto swapped = coef.find({key.second, key.first});
    const Complex other = swapped == coef.end() ? Complex(0) : swapped->second;
    const double mult = swapped == coef.end() ? 2.0 : 1.0;
    w.bosonic += mult * std::norm(0.5 * (c + other));
    w.fermionic += mult * std::norm(0.5 * (c - other));
  }
  return w;
}

JonesMatrix waveplate(double retardance, double angle) {
  Eigen::Matrix2d rot;
  rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  JonesMatrix diag = JonesMatrix::Zero();
  diag(0, 0) = 1.0;
  diag(1, 1) = std::polar(1.0, retardance);
  return rot.cast<Complex>() * diag * rot.transpose().cast<Complex>();
}

double qhq_rotation_for_phase(double phi) { return phi / 4.0; }

JonesMatrix qhq_phase(double phi) {
  const double axis = kPi / 4.0;
  return quarter_wave(axis) * half_wave(axis + qhq_rotation_for_phase(phi)) * quarter_wave(axis);
}

double jones_fidelity(const JonesMatrix& a, const JonesMatrix& b) {
  const Complex overlap = (a.adjoint() * b).trace();
  return std::norm(overlap) / (a.squaredNorm() * b.squaredNorm());
}

FockState apply_jones(const FockState& state, const JonesMatrix& jones, const Port& port) {
  const auto& reg = state.modes();
  const auto m = static_cast<Eigen::Index>(reg.size());
  MatrixXc full = MatrixXc::Identity(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& out = reg[static_cast<std::size_t>(i)];
    if (out.port != port) continue;
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& in = reg[static_cast<std::size_t>(j)];
      if (in.port != port || in.temporal != out.temporal) continue;
      full(i, j) = jones(out.polarization == Polarization::H ? 0 : 1, in.polarization == Polarization::H ? 0 : 1);
    }
  }
  return evolve(state, TransferMatrix(std::move(full)));
}

double analyzer_projection(const FockState& state, double theta_right, double theta_left) {
  const auto& reg = state.modes();
  auto pass = [](Polarization pol, double theta) {
    return pol == Polarization::H ? std::cos(theta) : std::sin(theta);
  };
  std::map<std::pair<int, int>, Complex> acc;
  for (const auto& [occ, amp] : state.terms()) {
    const auto c = port_counts(reg, occ);
    if (c.left != 1 || c.right != 1 || c.lost != 0) continue;
    double weight = 1.0;
    int t_left = 0, t_right = 0;
    for (std::size_t i = 0; i < occ.size(); ++i) {
      if (occ[i] == 0) continue;
      if (reg[i].port == Port::left()) {
        weight *= pass(reg[i].polarization, theta_left);
        t_left = reg[i].temporal;
      } else {
        weight *= pass(reg[i].polarization, theta_right);
        t_right = reg[i].temporal;
      }
    }
    acc[{t_left, t_right}] += amp * weight;
  }
  double p = 0.0;
  for (const auto& [key, a] : acc) p += std::norm(a);
  return p;
}

double analyzer_coincidence(BellPhase phi, double theta1, double theta2) {
  return analyzer_projection(bell_input(phi), theta1, theta2);
}

void PolarizationInput::validate() const {
  if (!(mixing >= 0.0 && mixing <= 1.0)) throw ConfigError("mixing weight must lie in [0, 1]");
}

double analyzer_coincidence(const PolarizationInput& input, double theta1, double theta2) {
  input.validate();
  const double pure = analyzer_coincidence(input.phi, theta1, theta2);
  double admixed = 0.0;
  if (input.admixture == PolarizationInput::Admixture::Unpolarized) {
    // Identity/4 on the two polarizations: each analyzer passes half.
    admixed = 0.25;
  } else {
    admixed = analyzer_projection(product_input(Polarization::H), theta1, theta2);
  }
  return (1.0 - input.mixing) * pure + input.mixing * admixed;
}

FockState apply_delay(const FockState& state, double g) {
  if (!(g >= 0.0 && g <= 1.0)) throw ConfigError("overlap g must lie in [0, 1]");
  ModeRegister reg = state.modes();
  for (const auto& m : state.modes()) {
    if (m.port == Port::right() && !reg.contains({m.port, m.polarization, 1})) {
      reg = reg.with_temporal_labels(2);
      break;
    }
  }
  const FockState wide = state.embedded_in(reg);
  const auto m = static_cast<Eigen::Index>(reg.size());
  const double s = std::sqrt(std::max(0.0, 1.0 - g * g));
  MatrixXc rot = MatrixXc::Identity(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& label = reg[static_cast<std::size_t>(i)];
    if (label.port != Port::right() || label.temporal != 0) continue;
    const auto partner = static_cast<Eigen::Index>(*reg.index_of({label.port, label.polarization, 1}));
    rot(i, i) = g;
    rot(partner, i) = s;
    rot(i, partner) = -s;
    rot(partner, partner) = g;
  }
  return evolve(wide, TransferMatrix(std::move(rot)));
}

double overlap_from_position(double dz_um, const WavePacketSpec& packet) {
  const double sigma = packet.sigma_omega();
  const double tau = 2.0 * dz_um * 1e-6 / kSpeedOfLight;
  return std::exp(-0.5 * sigma * sigma * tau * tau);
}

double position_for_overlap(double g, const WavePacketSpec& packet) {
  if (!(g > 0.0 && g <= 1.0)) throw ConfigError("overlap must lie in (0, 1]");
  const double tau = std::sqrt(-2.0 * std::log(g)) / packet.sigma_omega();
  return 0.5 * kSpeedOfLight * tau * 1e6;
}

}  // namespace antihom
