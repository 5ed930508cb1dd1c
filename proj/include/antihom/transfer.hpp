#pragma once

#include <vector>

#include "antihom/linalg.hpp"
#include "antihom/modes.hpp"

namespace antihom {

inline constexpr double kPassivityTolerance = 1e-10;
inline constexpr double kUnitarityTolerance = 1e-10;

/// Linear map on mode creation operators, a^dag_i -> sum_j M(j, i) a^dag_j.
/// Always passive: the largest singular value is at most 1 + 1e-10.
class TransferMatrix {
 public:
  TransferMatrix() = default;
  /// Throws PhysicsError on gain, ConfigError on non-square input.
  explicit TransferMatrix(MatrixXc entries);

  static TransferMatrix identity(Eigen::Index m);

  Eigen::Index dim() const { return entries_.rows(); }
  const MatrixXc& matrix() const { return entries_; }
  Complex operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

  double unitarity_residual() const { return antihom::unitarity_residual(entries_); }
  bool is_unitary(double tol = kUnitarityTolerance) const { return unitarity_residual() < tol; }

 private:
  MatrixXc entries_;
};

/// Unitary dilation
///   U = [[M, (I - M M^H)^{1/2}], [(I - M^H M)^{1/2}, -M^H]].
/// The top-left block of the result is M itself. Both square roots come from
/// one SVD of M so the off-diagonal blocks intertwine exactly; singular values
/// in (1, 1 + 1e-10] are treated as 1.
TransferMatrix dilate(const TransferMatrix& m);

/// Lifts a map over spatial ports to a full register: the map acts the same
/// on every polarization and temporal label, and as identity on modes whose
/// port is not listed. `ports[k]` names row/column k of `spatial`.
TransferMatrix extend_internal(const TransferMatrix& spatial, const ModeRegister& reg,
                               const std::vector<Port>& ports = {Port::left(), Port::right()});

}  // namespace antihom
