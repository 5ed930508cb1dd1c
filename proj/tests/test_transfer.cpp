#include "doctest.h"

#include <random>

#include "antihom/errors.hpp"
#include "antihom/transfer.hpp"
#include "oracles/random.hpp"

using namespace antihom;

TEST_CASE("dilation of random passive matrices") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    const auto m = oracle::random_passive(n, rng);
    const auto u = dilate(TransferMatrix(m));
    CHECK(u.dim() == 2 * n);
    CHECK(u.unitarity_residual() < 1e-10);
    CHECK((u.matrix().topLeftCorner(n, n) - m).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("dilating a unitary leaves loss modes untouched") {
  std::mt19937_64 rng(5);
  const auto m = oracle::random_unitary(3, rng);
  const auto u = dilate(TransferMatrix(m)).matrix();
  CHECK(u.topRightCorner(3, 3).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(u.bottomLeftCorner(3, 3).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gain and malformed input are rejected") {
  Eigen::MatrixXcd gain = Eigen::MatrixXcd::Identity(2, 2);
  gain(0, 1) = 0.5;
  CHECK_THROWS_AS(TransferMatrix{gain}, PhysicsError);
  CHECK_THROWS_AS(TransferMatrix{Eigen::MatrixXcd::Zero(2, 3)}, ConfigError);
  Eigen::MatrixXcd nan = Eigen::MatrixXcd::Identity(2, 2);
  nan(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(TransferMatrix{nan}, ConfigError);
}

TEST_CASE("spatial matrix is copied per polarization and time bin") {
  const auto reg = ModeRegister::product({Port::left(), Port::right()}, {Polarization::H, Polarization::V}, {0, 1});
  Eigen::Matrix2cd s;
  s << 0.6, 0.8, -0.8, 0.6;
  const auto full = extend_internal(TransferMatrix(s), reg).matrix();
  REQUIRE(full.rows() == 8);
  const auto lv1 = *reg.index_of({Port::left(), Polarization::V, 1});
  const auto rv1 = *reg.index_of({Port::right(), Polarization::V, 1});
  const auto rh1 = *reg.index_of({Port::right(), Polarization::H, 1});
  CHECK(std::abs(full(lv1, rv1) - s(0, 1)) < 1e-15);
  CHECK(std::abs(full(rv1, lv1) - s(1, 0)) < 1e-15);
  CHECK(std::abs(full(rh1, lv1)) == 0.0);

  const auto with_loss = reg.with_loss_modes();
  CHECK_NOTHROW(extend_internal(TransferMatrix(s), with_loss));
  const auto extra = extend_internal(TransferMatrix(s), with_loss).matrix();
  CHECK((extra.bottomRightCorner(8, 8) - Eigen::MatrixXcd::Identity(8, 8)).norm() == 0.0);

  const auto only_left = ModeRegister::product({Port::left()}, {Polarization::H}, {0});
  CHECK_THROWS_AS(extend_internal(TransferMatrix(s), only_left), ConfigError);
}
