#pragma once

// SU(4) -> SO(6) fusion of boundary K-matrices (section 4): antisymmetric
// projector A, charge-conjugation pairing C on the 6-dim rep, reality
// intertwiner B with C = (B^dag B)^* (equivalently C = U U^T, B = U^T),
// and the fused reflection matrix
//   K^(6)(u) = B A (I x K(u-1)) R^{t_2}(4-2u) (K(u+1) x I) A^dag C^dag B^dag.

#include <array>

#include "bethe/tensor.hpp"
#include "bethe/ybe.hpp"

namespace bethe {

inline const std::array<std::pair<int, int>, 6>& fusion_pairs() {
  static const std::array<std::pair<int, int>, 6> p = {
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  return p;
}

struct RepIntertwiners {
  Mat A;  // 6 x 16 antisymmetric-pair projector
  Mat C;  // 6 x 6 epsilon pairing
  Mat B;  // 6 x 6 reality intertwiner, B = U^T with C = U U^T
};

inline RepIntertwiners build_intertwiners() {
  RepIntertwiners w;
  const double s = 1.0 / std::sqrt(2.0);
  w.A = Mat::Zero(6, 16);
  const auto& pairs = fusion_pairs();
  for (int r = 0; r < 6; ++r) {
    auto [i, j] = pairs[r];
    w.A(r, i * 4 + j) = s;
    w.A(r, j * 4 + i) = -s;
  }
  // C[(ij),(kl)] = eps_{ijkl} on complementary pairs: a signed anti-diagonal
  w.C = Mat::Zero(6, 6);
  auto eps4 = [](std::array<int, 4> p) {
    int sg = 1;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (p[i] > p[j]) sg = -sg;
    return sg;
  };
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      auto [i, j] = pairs[a];
      auto [k, l] = pairs[b];
      if (((1 << i) | (1 << j) | (1 << k) | (1 << l)) == 0xF)
        w.C(a, b) = eps4({i, j, k, l});
    }
  // C couples slot a with 5-a carrying sign s_a = C(5-a, a); the +/-1
  // eigenvectors are (e_a +/- s_a e_{5-a})/sqrt2, and U scales the -1
  // eigenvectors by i so that C = U U^T exactly.
  Mat U = Mat::Zero(6, 6);
  for (int a = 0; a < 3; ++a) {
    double sa = w.C(5 - a, a).real();
    U(a, a) = cx(0.0, s);
    U(5 - a, a) = cx(0.0, -sa * s);
    U(a, 3 + a) = s;
    U(5 - a, 3 + a) = sa * s;
  }
  w.B = U.transpose();
  return w;
}

// SU(4) R-matrix (same rational r as the su family)
inline Mat su4_r(cx u) {
  require_off_pole(u, "su4_r");
  return Mat::Identity(16, 16) - (2.0 / u) * permutation_matrix(4);
}

// fused 6x6 K-matrix, normalized by the [5][5] entry
inline Mat fuse_k(const std::function<Mat(cx)>& K, cx u,
                  const RepIntertwiners& w = build_intertwiners()) {
  Mat I4 = Mat::Identity(4, 4);
  Mat M = kron(I4, K(u - 1.0)) * partial_transpose(su4_r(4.0 - 2.0 * u), 4, 1) *
          kron(K(u + 1.0), I4);
  Mat K6 = w.B * w.A * M * w.A.adjoint() * w.C.adjoint() * w.B.adjoint();
  require_off_pole(K6(5, 5), "fuse_k normalization");
  return K6 / K6(5, 5);
}

// Frozen alignment between the fused basis and the catalog's so(6) diagonal
// ordering: a transposition of the first two slots (determined once
// numerically against fuse_k(sympl unit) and fixed).
inline const std::array<int, 6>& fusion_alignment() {
  static const std::array<int, 6> sigma = {1, 0, 2, 3, 4, 5};
  return sigma;
}

inline Mat aligned_fuse_k(const std::function<Mat(cx)>& K, cx u,
                          const RepIntertwiners& w = build_intertwiners()) {
  Mat K6 = fuse_k(K, u, w);
  const auto& sg = fusion_alignment();
  Mat out(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) out(i, j) = K6(sg[i], sg[j]);
  return out;
}

// the two crossed-BYBE solutions of section 4
inline Mat su4_identity_k(cx) { return Mat::Identity(4, 4); }
inline Mat su4_symplectic_k(cx) { return sp_unit(4); }

// image of g in the 6-dim rep; reality holds after conjugation by B
inline Mat rep6(const RepIntertwiners& w, const Mat& g) {
  return w.A * kron(g, g) * w.A.adjoint();
}

}  // namespace bethe
