#include "antihom/modes.hpp"

#include <algorithm>
#include <set>

#include "antihom/errors.hpp"

namespace antihom {

Port Port::loss(int k) {
  if (k < 0) throw ConfigError("loss port index must be >= 0");
  return Port(Kind::Loss, k);
}

std::string Port::name() const {
  switch (kind_) {
    case Kind::L:
      return "L";
    case Kind::R:
      return "R";
    case Kind::Loss:
      break;
  }
  return "loss" + std::to_string(loss_index_);
}

std::string ModeLabel::name() const {
  return port.name() + (polarization == Polarization::H ? ",H," : ",V,") + std::to_string(temporal);
}

ModeRegister::ModeRegister(std::vector<ModeLabel> modes) : modes_(std::move(modes)) {
  std::set<ModeLabel> seen;
  for (const auto& m : modes_) {
    if (!seen.insert(m).second) throw ConfigError("duplicate mode label " + m.name());
    if (m.temporal < 0) throw ConfigError("temporal label must be >= 0");
  }
  if (modes_.size() > kMaxModes) {
    throw CapacityError("register has " + std::to_string(modes_.size()) + " modes; limit is " +
                        std::to_string(kMaxModes));
  }
}

ModeRegister ModeRegister::product(const std::vector<Port>& ports,
                                   const std::vector<Polarization>& polarizations,
                                   const std::vector<int>& temporal) {
  std::vector<ModeLabel> modes;
  for (const auto& p : ports)
    for (auto pol : polarizations)
      for (int t : temporal) modes.push_back({p, pol, t});
  return ModeRegister(std::move(modes));
}

ModeRegister ModeRegister::canonical(std::size_t m) {
  if (m > kMaxModes) throw CapacityError("at most 16 modes are supported");
  std::vector<ModeLabel> modes;
  for (std::size_t i = 0; i < m; ++i) {
    const Port port = (i % 2 == 0) ? Port::left() : Port::right();
    const auto pol = ((i / 2) % 2 == 0) ? Polarization::H : Polarization::V;
    modes.push_back({port, pol, static_cast<int>(i / 4)});
  }
  return ModeRegister(std::move(modes));
}

std::optional<std::size_t> ModeRegister::index_of(const ModeLabel& label) const {
  const auto it = std::find(modes_.begin(), modes_.end(), label);
  if (it == modes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - modes_.begin());
}

bool ModeRegister::contains_port(const Port& port) const {
  return std::any_of(modes_.begin(), modes_.end(), [&](const ModeLabel& m) { return m.port == port; });
}

ModeRegister ModeRegister::with_loss_modes() const {
  auto modes = modes_;
  for (std::size_t i = 0; i < modes_.size(); ++i)
    modes.push_back({Port::loss(static_cast<int>(i)), modes_[i].polarization, modes_[i].temporal});
  return ModeRegister(std::move(modes));
}

ModeRegister ModeRegister::with_temporal_labels(int count) const {
  auto modes = modes_;
  for (const auto& m : modes_) {
    for (int t = 0; t < count; ++t) {
      const ModeLabel extra{m.port, m.polarization, t};
      if (std::find(modes.begin(), modes.end(), extra) == modes.end()) modes.push_back(extra);
    }
  }
  // Keep (port, polarization) groups contiguous with time fastest.
  std::stable_sort(modes.begin(), modes.end(), [this](const ModeLabel& a, const ModeLabel& b) {
    auto rank = [this](const ModeLabel& m) {
      for (std::size_t i = 0; i < modes_.size(); ++i)
        if (modes_[i].port == m.port && modes_[i].polarization == m.polarization) return i;
      return modes_.size();
    };
    const auto ra = rank(a);
    const auto rb = rank(b);
    if (ra != rb) return ra < rb;
    return a.temporal < b.temporal;
  });
  return ModeRegister(std::move(modes));
}

std::vector<std::size_t> ModeRegister::indices_where_port(const Port& port) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < modes_.size(); ++i)
    if (modes_[i].port == port) out.push_back(i);
  return out;
}

std::vector<std::size_t> ModeRegister::loss_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < modes_.size(); ++i)
    if (modes_[i].port.is_loss()) out.push_back(i);
  return out;
}

}  // namespace antihom
