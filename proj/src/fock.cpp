#include "antihom/fock.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "antihom/errors.hpp"

namespace antihom {
namespace {

constexpr double kDropAmplitude = 1e-15;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double occupation_factorials(const Occupation& occ) {
  double f = 1.0;
  for (int n : occ) f *= factorial(n);
  return f;
}

// Mode indices with multiplicity, e.g. (0,2,1) -> {1,1,2}.
std::vector<Eigen::Index> expand(const Occupation& occ) {
  std::vector<Eigen::Index> out;
  for (std::size_t i = 0; i < occ.size(); ++i)
    for (int k = 0; k < occ[i]; ++k) out.push_back(static_cast<Eigen::Index>(i));
  return out;
}

// Calls fn on every occupation of `photons` over `modes` modes, in
// lexicographic order.
template <typename Fn>
void for_each_occupation(std::size_t modes, int photons, Fn&& fn) {
  Occupation occ(modes, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == modes) {
      occ[i] = left;
      fn(occ);
      occ[i] = 0;
      return;
    }
    for (int k = 0; k <= left; ++k) {
      occ[i] = k;
      self(self, i + 1, left - k);
    }
    occ[i] = 0;
  };
  if (modes == 0) return;
  rec(rec, 0, photons);
}

}  // namespace

int photon_number(const Occupation& occ) { return std::accumulate(occ.begin(), occ.end(), 0); }

FockState::FockState(ModeRegister modes, std::map<Occupation, Complex> terms) : modes_(std::move(modes)) {
  bool first = true;
  for (auto& [occ, amp] : terms) {
    if (occ.size() != modes_.size()) throw ConfigError("occupation length does not match register");
    for (int n : occ)
      if (n < 0) throw ConfigError("negative occupation number");
    const int n = antihom::photon_number(occ);
    if (first) {
      photons_ = n;
      first = false;
    } else if (n != photons_) {
      throw ConfigError("all terms of a Fock state must share one photon number");
    }
    if (std::abs(amp) > kDropAmplitude) terms_.emplace(occ, amp);
  }
  if (photons_ > kMaxPhotons)
    throw CapacityError(std::to_string(photons_) + " photons requested; limit is " + std::to_string(kMaxPhotons));
}

FockState FockState::from_creators(ModeRegister modes,
                                   const std::vector<std::pair<Complex, std::vector<std::size_t>>>& monomials) {
  std::map<Occupation, Complex> terms;
  for (const auto& [coef, creators] : monomials) {
    Occupation occ(modes.size(), 0);
    for (auto i : creators) {
      if (i >= modes.size()) throw ConfigError("creator index outside register");
      ++occ[i];
    }
    terms[occ] += coef * std::sqrt(occupation_factorials(occ));
  }
  return FockState(std::move(modes), std::move(terms));
}

Complex FockState::amplitude(const Occupation& occ) const {
  const auto it = terms_.find(occ);
  return it == terms_.end() ? Complex(0) : it->second;
}

double FockState::norm() const {
  double s = 0.0;
  for (const auto& [occ, amp] : terms_) s += std::norm(amp);
  return std::sqrt(s);
}

FockState FockState::normalized() const {
  const double n = norm();
  if (n == 0.0) throw PhysicsError("cannot normalize the zero state");
  auto terms = terms_;
  for (auto& [occ, amp] : terms) amp /= n;
  return FockState(modes_, std::move(terms));
}

FockState FockState::embedded_in(const ModeRegister& larger) const {
  std::vector<std::size_t> where(modes_.size());
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const auto idx = larger.index_of(modes_[i]);
    if (!idx) throw ConfigError("target register lacks mode " + modes_[i].name());
    where[i] = *idx;
  }
  std::map<Occupation, Complex> terms;
  for (const auto& [occ, amp] : terms_) {
    Occupation big(larger.size(), 0);
    for (std::size_t i = 0; i < occ.size(); ++i) big[where[i]] = occ[i];
    terms.emplace(std::move(big), amp);
  }
  return FockState(larger, std::move(terms));
}

Complex FockState::inner(const FockState& other) const {
  if (!(modes_ == other.modes_)) throw ConfigError("inner product needs a common register");
  Complex s(0);
  for (const auto& [occ, amp] : terms_) s += std::conj(amp) * other.amplitude(occ);
  return s;
}

double fidelity(const FockState& a, const FockState& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::norm(a.inner(b)) / (na * na * nb * nb);
}

FockState evolve(const FockState& state, const TransferMatrix& u) {
  const auto n_sys = state.modes().size();
  ModeRegister out_modes;
  if (static_cast<std::size_t>(u.dim()) == n_sys) {
    out_modes = state.modes();
  } else if (static_cast<std::size_t>(u.dim()) == 2 * n_sys) {
    out_modes = state.modes().with_loss_modes();
  } else {
    throw ConfigError("evolve: matrix dimension " + std::to_string(u.dim()) + " does not fit a " +
                      std::to_string(n_sys) + "-mode register");
  }
  if (!u.is_unitary()) {
    throw PhysicsError("evolve needs a unitary map (residual " + std::to_string(u.unitarity_residual()) +
                       "); dilate lossy matrices first");
  }
  const FockState input = state.embedded_in(out_modes);
  const int photons = input.photon_number();

  struct Source {
    std::vector<Eigen::Index> cols;
    Complex weight;
  };
  std::vector<Source> sources;
  for (const auto& [occ, amp] : input.terms())
    sources.push_back({expand(occ), amp / std::sqrt(occupation_factorials(occ))});

  std::map<Occupation, Complex> out;
  const MatrixXc& mat = u.matrix();
  MatrixXc sub(photons, photons);
  for_each_occupation(out_modes.size(), photons, [&](const Occupation& occ) {
    const auto rows = expand(occ);
    Complex amp(0);
    for (const auto& src : sources) {
      for (int i = 0; i < photons; ++i)
        for (int j = 0; j < photons; ++j) sub(i, j) = mat(rows[static_cast<std::size_t>(i)], src.cols[static_cast<std::size_t>(j)]);
      amp += src.weight * permanent(sub);
    }
    amp /= std::sqrt(occupation_factorials(occ));
    if (std::abs(amp) > kDropAmplitude) out.emplace(occ, amp);
  });
  return FockState(std::move(out_modes), std::move(out));
}

FockDistribution::FockDistribution(ModeRegister modes, std::map<Occupation, double> probs)
    : modes_(std::move(modes)), probs_(std::move(probs)) {
  for (const auto& [occ, p] : probs_) {
    if (occ.size() != modes_.size()) throw ConfigError("occupation length does not match register");
    if (!(p >= 0.0 && p <= 1.0 + 1e-9)) throw ConfigError("probability outside [0, 1]");
  }
}

double FockDistribution::probability(const Occupation& occ) const {
  const auto it = probs_.find(occ);
  return it == probs_.end() ? 0.0 : it->second;
}

double FockDistribution::total() const {
  double s = 0.0;
  for (const auto& [occ, p] : probs_) s += p;
  return s;
}

FockDistribution distribution(const FockState& state) {
  std::map<Occupation, double> probs;
  for (const auto& [occ, amp] : state.terms()) probs[occ] += std::norm(amp);
  return FockDistribution(state.modes(), std::move(probs));
}

FockDistribution marginal(const FockDistribution& dist, const std::vector<ModeLabel>& keep) {
  if (keep.empty()) throw ConfigError("marginal needs at least one kept mode");
  std::vector<std::size_t> idx;
  std::vector<ModeLabel> labels;
  for (std::size_t i = 0; i < dist.modes().size(); ++i) {
    if (std::find(keep.begin(), keep.end(), dist.modes()[i]) != keep.end()) {
      idx.push_back(i);
      labels.push_back(dist.modes()[i]);
    }
  }
  if (labels.size() != keep.size()) throw ConfigError("marginal: kept mode not in register");
  std::map<Occupation, double> probs;
  for (const auto& [occ, p] : dist.probabilities()) {
    Occupation small;
    small.reserve(idx.size());
    for (auto i : idx) small.push_back(occ[i]);
    probs[small] += p;
  }
  return FockDistribution(ModeRegister(std::move(labels)), std::move(probs));
}

Conditioned conditional(const FockDistribution& dist, const OccupationPredicate& keep_if) {
  std::map<Occupation, double> probs;
  double mass = 0.0;
  for (const auto& [occ, p] : dist.probabilities()) {
    if (keep_if(occ)) {
      probs.emplace(occ, p);
      mass += p;
    }
  }
  if (probs.empty() || mass <= 0.0) return {0.0, FockDistribution(dist.modes(), {})};
  for (auto& [occ, p] : probs) p /= mass;
  return {mass, FockDistribution(dist.modes(), std::move(probs))};
}

PortCounts port_counts(const ModeRegister& modes, const Occupation& occ) {
  PortCounts c;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    switch (modes[i].port.kind()) {
      case Port::Kind::L:
        c.left += occ[i];
        break;
      case Port::Kind::R:
        c.right += occ[i];
        break;
      case Port::Kind::Loss:
        c.lost += occ[i];
        break;
    }
  }
  return c;
}

double coincidence_probability(const FockDistribution& dist) {
  if (!dist.modes().contains_port(Port::left()) || !dist.modes().contains_port(Port::right()))
    throw ConfigError("coincidence needs ports L and R in the register");
  double p = 0.0;
  for (const auto& [occ, prob] : dist.probabilities()) {
    const auto c = port_counts(dist.modes(), occ);
    if (c.left >= 1 && c.right >= 1) p += prob;
  }
  return std::min(p, 1.0);
}

std::map<PortCounts, double> port_count_distribution(const FockDistribution& dist) {
  std::map<PortCounts, double> out;
  for (const auto& [occ, p] : dist.probabilities()) out[port_counts(dist.modes(), occ)] += p;
  return out;
}

std::map<int, double> loss_count_distribution(const FockDistribution& dist) {
  std::map<int, double> out;
  for (const auto& [occ, p] : dist.probabilities()) out[port_counts(dist.modes(), occ).lost] += p;
  return out;
}

std::vector<ModeLabel> system_modes(const ModeRegister& reg) {
  std::vector<ModeLabel> out;
  for (const auto& m : reg)
    if (!m.port.is_loss()) out.push_back(m);
  return out;
}

}  // namespace antihom
