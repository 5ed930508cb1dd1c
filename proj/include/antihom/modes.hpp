#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace antihom {

inline constexpr std::size_t kMaxModes = 16;
inline constexpr int kMaxPhotons = 4;

enum class Polarization : std::uint8_t { H, V };

/// Spatial port: one of the two travelling directions or an environment
/// (loss) channel introduced by dilation.
class Port {
 public:
  enum class Kind : std::uint8_t { L, R, Loss };

  static constexpr Port left() { return Port(Kind::L, 0); }
  static constexpr Port right() { return Port(Kind::R, 0); }
  static Port loss(int k);

  constexpr Kind kind() const { return kind_; }
  constexpr int loss_index() const { return loss_index_; }
  constexpr bool is_loss() const { return kind_ == Kind::Loss; }

  std::string name() const;

  friend constexpr auto operator<=>(const Port&, const Port&) = default;

 private:
  constexpr Port(Kind kind, int k) : kind_(kind), loss_index_(k) {}
  Kind kind_;
  int loss_index_;
};

struct ModeLabel {
  Port port = Port::left();
  Polarization polarization = Polarization::H;
  int temporal = 0;

  std::string name() const;

  friend constexpr auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

/// Ordered set of mode labels. The order is the index order used by every
/// occupation vector and transfer matrix built over this register.
class ModeRegister {
 public:
  ModeRegister() = default;
  explicit ModeRegister(std::vector<ModeLabel> modes);

  /// ports x polarizations x temporal labels, temporal index fastest.
  static ModeRegister product(const std::vector<Port>& ports,
                              const std::vector<Polarization>& polarizations,
                              const std::vector<int>& temporal);

  /// Canonical labels for an anonymous m-mode problem: {L,R} x {H,V} x time.
  static ModeRegister canonical(std::size_t m);

  std::size_t size() const { return modes_.size(); }
  const ModeLabel& operator[](std::size_t i) const { return modes_[i]; }
  const std::vector<ModeLabel>& labels() const { return modes_; }
  auto begin() const { return modes_.begin(); }
  auto end() const { return modes_.end(); }

  std::optional<std::size_t> index_of(const ModeLabel& label) const;
  bool contains(const ModeLabel& label) const { return index_of(label).has_value(); }
  bool contains_port(const Port& port) const;

  /// Appends one loss mode per existing mode: mode i gets partner
  /// (Loss(i), same polarization, same temporal label).
  ModeRegister with_loss_modes() const;

  /// Adds temporal labels 0..count-1 for every (port, polarization) present.
  ModeRegister with_temporal_labels(int count) const;

  std::vector<std::size_t> indices_where_port(const Port& port) const;
  std::vector<std::size_t> loss_indices() const;

  friend bool operator==(const ModeRegister&, const ModeRegister&) = default;

 private:
  std::vector<ModeLabel> modes_;
};

}  // namespace antihom
