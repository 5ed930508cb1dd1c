#include "antihom/transfer.hpp"

#include <string>

#include "antihom/errors.hpp"

namespace antihom {

TransferMatrix::TransferMatrix(MatrixXc entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw ConfigError("transfer matrix must be square");
  if (!entries_.allFinite()) throw ConfigError("transfer matrix has non-finite entries");
  const double smax = max_singular_value(entries_);
  if (smax > 1.0 + kPassivityTolerance) {
    throw PhysicsError("transfer matrix has singular value " + std::to_string(smax) +
                       " > 1 (unphysical gain)");
  }
}

TransferMatrix TransferMatrix::identity(Eigen::Index m) {
  return TransferMatrix(MatrixXc::Identity(m, m));
}

TransferMatrix dilate(const TransferMatrix& m) {
  const MatrixXc& a = m.matrix();
  const Eigen::Index n = a.rows();
  Eigen::JacobiSVD<MatrixXc> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd defect(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // Singular values within rounding of 1 are treated as exactly 1; otherwise
    // sqrt of a 1e-16 defect leaks 1e-8 amplitudes into the loss modes.
    const double s = std::min(svd.singularValues()(i), 1.0);
    defect(i) = s > 1.0 - 1e-13 ? 0.0 : std::sqrt((1.0 - s) * (1.0 + s));
  }
  const MatrixXc& left = svd.matrixU();
  const MatrixXc& right = svd.matrixV();
  MatrixXc u(2 * n, 2 * n);
  u.topLeftCorner(n, n) = a;
  u.topRightCorner(n, n) = left * defect.asDiagonal() * left.adjoint();
  u.bottomLeftCorner(n, n) = right * defect.asDiagonal() * right.adjoint();
  u.bottomRightCorner(n, n) = -a.adjoint();
  return TransferMatrix(std::move(u));
}

TransferMatrix extend_internal(const TransferMatrix& spatial, const ModeRegister& reg,
                               const std::vector<Port>& ports) {
  if (static_cast<Eigen::Index>(ports.size()) != spatial.dim())
    throw ConfigError("port list does not match spatial matrix dimension");
  for (const auto& p : ports) {
    if (!reg.contains_port(p)) throw ConfigError("register has no modes on port " + p.name());
  }
  auto port_slot = [&](const Port& p) -> Eigen::Index {
    for (std::size_t k = 0; k < ports.size(); ++k)
      if (ports[k] == p) return static_cast<Eigen::Index>(k);
    return -1;
  };
  const auto m = static_cast<Eigen::Index>(reg.size());
  MatrixXc full = MatrixXc::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& out = reg[static_cast<std::size_t>(i)];
    const auto slot_out = port_slot(out.port);
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& in = reg[static_cast<std::size_t>(j)];
      const auto slot_in = port_slot(in.port);
      if (out.polarization != in.polarization || out.temporal != in.temporal) continue;
      if (slot_out < 0 || slot_in < 0) {
        if (i == j) full(i, j) = 1.0;
      } else {
        full(i, j) = spatial(slot_out, slot_in);
      }
    }
  }
  return TransferMatrix(std::move(full));
}

}  // namespace antihom
