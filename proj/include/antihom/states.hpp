#pragma once

#include <Eigen/Dense>

#include "antihom/fock.hpp"
#include "antihom/linalg.hpp"

namespace antihom {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Relative phase of the |V>_L |H>_R term, reduced to [0, 2 pi).
class BellPhase {
 public:
  BellPhase() = default;
  explicit BellPhase(double radians);
  double radians() const { return phi_; }

 private:
  double phi_ = 0.0;
};

/// Gaussian single-photon spectrum behind a band-pass filter.
struct WavePacketSpec {
  double center_nm = 810.0;
  double fwhm_nm = 10.0;

  void validate() const;
  /// sigma_omega = (2 pi c dlambda / lambda^2) / (2 sqrt(2 ln 2)), rad/s.
  double sigma_omega() const;
};

/// {L, R} x {H, V} with a single temporal label 0.
ModeRegister bell_register();

/// (1/sqrt 2)(a^dag_{L,H} a^dag_{R,V} + e^{i phi} a^dag_{L,V} a^dag_{R,H}) |0>.
FockState bell_input(BellPhase phi);

/// Two photons with the same polarization, one per port (a product state).
FockState product_input(Polarization pol = Polarization::H);

struct SymmetryWeights {
  double bosonic = 0.0;
  double fermionic = 0.0;
  double remainder = 0.0;  // mass outside the one-photon-per-port sector
};

/// Projects the one-photon-per-port part of a two-photon state onto the
/// exchange-symmetric and antisymmetric spatial sectors.
SymmetryWeights symmetry_weights(const FockState& state);

using JonesMatrix = Eigen::Matrix2cd;

/// Retarder with phase `retardance` on the slow axis, fast axis at `angle`
/// from horizontal.
JonesMatrix waveplate(double retardance, double angle);
inline JonesMatrix quarter_wave(double angle) { return waveplate(kPi / 2.0, angle); }
inline JonesMatrix half_wave(double angle) { return waveplate(kPi, angle); }

/// Half-wave-plate rotation (from 45 deg) giving relative phase phi between
/// H and V in the quarter-half-quarter stack. The geometric phase of this
/// stack is four times the rotation angle.
double qhq_rotation_for_phase(double phi);

/// Q(45 deg) H(45 deg + qhq_rotation_for_phase(phi)) Q(45 deg); equal to
/// diag(1, e^{i phi}) up to a global phase.
JonesMatrix qhq_phase(double phi);

/// |Tr(A^H B)|^2 / (||A||^2 ||B||^2): 1 iff equal up to a global phase.
double jones_fidelity(const JonesMatrix& a, const JonesMatrix& b);

/// Applies a polarization map to every photon in port `port`.
FockState apply_jones(const FockState& state, const JonesMatrix& jones, const Port& port);

/// Probability that linear analyzers at theta_right (port R) and theta_left
/// (port L) both transmit. Sums over temporal labels.
double analyzer_projection(const FockState& state, double theta_right, double theta_left);

/// analyzer_projection(bell_input(phi), theta1, theta2).
double analyzer_coincidence(BellPhase phi, double theta1, double theta2);

/// Statistical mixture of a Bell input with an admixture.
struct PolarizationInput {
  enum class Admixture { Unpolarized, SamePolarization };

  BellPhase phi;
  double mixing = 0.0;  // weight of the admixture, in [0, 1]
  Admixture admixture = Admixture::Unpolarized;

  void validate() const;
};

double analyzer_coincidence(const PolarizationInput& input, double theta1, double theta2);

/// Moves the port-R photon into g|tau_0> + sqrt(1 - g^2)|tau_1>; the port-L
/// photon stays in tau_0. The register gains temporal label 1 when missing.
FockState apply_delay(const FockState& state, double g);

/// Two-photon amplitude overlap after moving the sample by dz (um): the
/// counter-propagating arms change length in opposite directions, so the
/// delay is tau = 2 dz / c and g = exp(-sigma_omega^2 tau^2 / 2).
double overlap_from_position(double dz_um, const WavePacketSpec& packet);

/// Inverse of overlap_from_position on dz >= 0.
double position_for_overlap(double g, const WavePacketSpec& packet);

}  // namespace antihom
