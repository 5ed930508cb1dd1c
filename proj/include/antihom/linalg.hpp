#pragma once

// Small dense-matrix helpers shared by the engine and the optics models.
// Everything here is a free function over Eigen expressions so callers can
// pass blocks and maps without copies.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <complex>
#include <numeric>
#include <vector>

namespace antihom {

using Complex = std::complex<double>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXc = MatrixX<Complex>;
using VectorXc = VectorX<Complex>;

inline constexpr double kPi = 3.14159265358979323846;

/// max |(A^H A - I)_ij|
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real unitarity_residual(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const MatrixX<Scalar> gram = a.adjoint() * a;
  return (gram - MatrixX<Scalar>::Identity(a.cols(), a.cols())).cwiseAbs().maxCoeff();
}

template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real max_singular_value(
    const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<MatrixX<typename Derived::Scalar>> svd(a.eval());
  return svd.singularValues()(0);
}

/// Permanent by direct expansion over all n! permutations. Intended for the
/// n <= 4 submatrices of few-photon amplitudes, where exactness matters more
/// than asymptotics.
template <typename Derived>
typename Derived::Scalar permanent(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const auto n = static_cast<int>(a.rows());
  eigen_assert(a.rows() == a.cols());
  if (n == 0) return Scalar(1);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Scalar total(0);
  do {
    Scalar term(1);
    for (int i = 0; i < n; ++i) term *= a(i, perm[static_cast<std::size_t>(i)]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// |<a|b>|^2 / (|a|^2 |b|^2); insensitive to global phase.
template <typename DerivedA, typename DerivedB>
double fidelity(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  const double na = a.squaredNorm();
  const double nb = b.squaredNorm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::norm(a.dot(b)) / (na * nb);
}

}  // namespace antihom
