#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "antihom/linalg.hpp"
#include "antihom/modes.hpp"
#include "antihom/transfer.hpp"

namespace antihom {

/// Photon count per mode, indexed like the owning register.
using Occupation = std::vector<int>;

int photon_number(const Occupation& occ);

/// Pure few-photon state: sparse amplitudes over occupation vectors of a
/// fixed total photon number. Terms are kept in lexicographic order and
/// exact zeros are dropped.
class FockState {
 public:
  FockState() = default;
  /// Validates shapes, a common photon number, and the capacity limits.
  FockState(ModeRegister modes, std::map<Occupation, Complex> terms);

  /// Builds sum_k coef_k * prod_{i in creators_k} a^dag_i |0>, i.e. applies
  /// creation operators (mode indices, repeats allowed) to vacuum.
  static FockState from_creators(ModeRegister modes,
                                 const std::vector<std::pair<Complex, std::vector<std::size_t>>>& monomials);

  const ModeRegister& modes() const { return modes_; }
  const std::map<Occupation, Complex>& terms() const { return terms_; }
  int photon_number() const { return photons_; }

  Complex amplitude(const Occupation& occ) const;
  double norm() const;
  FockState normalized() const;

  /// Same state on a larger register that contains every current label;
  /// the new modes are empty.
  FockState embedded_in(const ModeRegister& larger) const;

  /// <this|other> over a common register.
  Complex inner(const FockState& other) const;

 private:
  ModeRegister modes_;
  std::map<Occupation, Complex> terms_;
  int photons_ = 0;
};

/// |<a|b>|^2 for normalized states on the same register.
double fidelity(const FockState& a, const FockState& b);

/// Evolves a state by a unitary U, a^dag_i -> sum_j U(j, i) a^dag_j.
/// If U has the register's dimension the output lives on the same register;
/// if it is twice as large, the extra modes are the register's loss modes
/// (ModeRegister::with_loss_modes). Amplitudes use
///   <n|U|m> = Per(U[rows(n), cols(m)]) / sqrt(prod n_i! prod m_j!).
/// Throws PhysicsError for non-unitary U.
FockState evolve(const FockState& state, const TransferMatrix& u);

class FockDistribution {
 public:
  FockDistribution() = default;
  FockDistribution(ModeRegister modes, std::map<Occupation, double> probs);

  const ModeRegister& modes() const { return modes_; }
  const std::map<Occupation, double>& probabilities() const { return probs_; }
  double probability(const Occupation& occ) const;
  double total() const;
  bool empty() const { return probs_.empty(); }

 private:
  ModeRegister modes_;
  std::map<Occupation, double> probs_;
};

FockDistribution distribution(const FockState& state);

/// Sums out every mode not in `keep`; the result uses the original order of
/// the kept modes.
FockDistribution marginal(const FockDistribution& dist, const std::vector<ModeLabel>& keep);

struct Conditioned {
  double probability = 0.0;
  FockDistribution distribution;
};

using OccupationPredicate = std::function<bool(const Occupation&)>;

/// Post-selection. A predicate with no support gives {0, empty}.
Conditioned conditional(const FockDistribution& dist, const OccupationPredicate& keep_if);

/// P(at least one photon on port L and at least one on port R).
double coincidence_probability(const FockDistribution& dist);

/// Photon counts aggregated over polarization/time: (N_L, N_R, N_loss).
struct PortCounts {
  int left = 0;
  int right = 0;
  int lost = 0;
  friend auto operator<=>(const PortCounts&, const PortCounts&) = default;
};

PortCounts port_counts(const ModeRegister& modes, const Occupation& occ);
std::map<PortCounts, double> port_count_distribution(const FockDistribution& dist);

/// Distribution of the total number of photons found in loss modes.
std::map<int, double> loss_count_distribution(const FockDistribution& dist);

/// Labels of all non-loss modes.
std::vector<ModeLabel> system_modes(const ModeRegister& reg);

}  // namespace antihom
