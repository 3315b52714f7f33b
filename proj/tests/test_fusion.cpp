#include <catch2/catch_amalgamated.hpp>

#include "bethe/fusion.hpp"

using namespace bethe;

TEST_CASE("intertwiner invariants") {
  auto w = build_intertwiners();
  CHECK((w.A * w.A.adjoint() - Mat::Identity(6, 6)).norm() < 1e-14);
  // C = U U^T with B = U^T
  Mat U = w.B.transpose();
  CHECK((w.C - U * U.transpose()).norm() < 1e-14);
  CHECK((w.C * w.C.adjoint() - Mat::Identity(6, 6)).norm() < 1e-14);
}

TEST_CASE("6-dim rep: conjugation property and reality") {
  auto w = build_intertwiners();
  // an SU(4) element built from a random anti-Hermitian generator
  std::mt19937 rng(11);
  std::normal_distribution<double> nd;
  Mat X(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) X(i, j) = cx(nd(rng), nd(rng));
  Mat H = (X + X.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  Vec ph = (cx(0, 1) * es.eigenvalues().cast<cx>()).array().exp();
  Mat g = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  g /= std::pow(g.determinant(), 0.25);

  Mat G = rep6(w, g);
  CHECK((G.conjugate() - w.C * G * w.C.adjoint()).norm() < 1e-12);
  Mat Gr = w.B * G * w.B.adjoint();
  CHECK(Gr.imag().norm() < 1e-12);
}

TEST_CASE("fused identity K is the so(6) signature matrix") {
  Mat want = Mat::Zero(6, 6);
  want.diagonal() << -1, -1, -1, 1, 1, 1;
  for (cx u : {cx(0.3), cx(0.77), cx(1.4, 0.2)}) {
    Mat got = aligned_fuse_k(su4_identity_k, u);
    CHECK((got - want).norm() < 1e-12);
  }
}

TEST_CASE("fused symplectic K is the rank-breaking diagonal") {
  for (cx u : {cx(0.3), cx(0.77), cx(1.4, 0.2)}) {
    Mat want = Mat::Identity(6, 6);
    want(0, 0) = (2.0 + u) / (2.0 - u);
    Mat got = aligned_fuse_k(su4_symplectic_k, u);
    CHECK((got - want).norm() < 1e-12);
  }
}

TEST_CASE("fused symplectic K matches the cataloged Dn_d so(6) boundary") {
  // Dn_d with N = 3, M = 1 has K_norm = diag with one (q+u)/(q-u) slot; the
  // fused matrix carries q = 2
  auto got = aligned_fuse_k(su4_symplectic_k, cx(0.6));
  cx slot = got(0, 0);
  CHECK(std::abs(slot - (2.0 + 0.6) / (2.0 - 0.6)) < 1e-13);
}
