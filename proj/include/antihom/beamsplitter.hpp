#pragma once

// Two-port spatial maps on (L, R). Port/phase convention used everywhere:
// column k is the input mode, row j the output mode, and a mode keeps its
// name when transmitted, so
//
//     | out_L |   | t        r_right | | in_L |
//     | out_R | = | r_left   t       | | in_R |
//
// A symmetric sample has r_left = r_right = r and the matrix [[t, r], [r, t]].

#include "antihom/linalg.hpp"
#include "antihom/transfer.hpp"

namespace antihom {

struct BeamsplitterSpec {
  Complex t{1.0, 0.0};
  Complex r{0.0, 0.0};

  double energy() const { return std::norm(t) + std::norm(r); }
  /// |t|^2 + |r|^2 = 1 and arg(r) - arg(t) = +-pi/2.
  bool is_lossless(double tol = 1e-9) const;
};

/// Validated form of a (t, r) pair; throws PhysicsError when
/// |t|^2 + |r|^2 > 1 + 1e-10 or when [[t, r], [r, t]] has gain.
BeamsplitterSpec make_beamsplitter(Complex t, Complex r);

TransferMatrix two_port_matrix(Complex t, Complex r_left, Complex r_right);
inline TransferMatrix two_port_matrix(const BeamsplitterSpec& bs) { return two_port_matrix(bs.t, bs.r, bs.r); }

/// t = |t| real, r = sign * i * sqrt(1 - |t|^2).
TransferMatrix lossless_bs(double t_mag, int sign = +1);

/// The ideal absorber t = +-r = 1/2: [[1/2, s/2], [s/2, 1/2]].
TransferMatrix lossy_bs(int sign = +1);

/// Survival amplitudes of the cosine and sine standing waves.
struct QswChannel {
  Complex s_cos{1.0, 0.0};
  Complex s_sin{1.0, 0.0};
};

/// B^H diag(s_C, s_S) B with B = [[1, 1], [1, -1]] / sqrt(2) taking the
/// travelling-wave pair (L, R) to the standing-wave pair (C, S).
TransferMatrix qsw_composite(const QswChannel& channel);

/// The (L, R) -> (C, S) basis change itself.
Eigen::Matrix2cd standing_wave_basis();

}  // namespace antihom
