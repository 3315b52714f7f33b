#include <catch2/catch_amalgamated.hpp>

#include "bethe/o4xxx.hpp"

using namespace bethe;

namespace {
const std::vector<cx> kThetas = {cx(0.37), cx(0.82)};
}

TEST_CASE("xxx_r basics") {
  Mat r2 = xxx_r(cx(2.0)).entries;
  CHECK((r2 - (Mat::Identity(4, 4) - permutation_matrix(2))).norm() < 1e-15);
  CHECK(std::abs(xxx_r(cx(1.0)).entries.trace()) < 1e-15);  // 4 - 2 tr P / 1
}

TEST_CASE("D(theta) = tau(theta) tau(2-theta)") {
  XXXChain ch{kThetas, {}};
  cx th(0.59, 0.0);
  Mat D = o4_double_row(ch, th);
  Mat t1 = xxx_tau(ch, th);
  Mat t2 = xxx_tau(ch, 2.0 - th);
  CHECK((D - t1 * t2).norm() / D.norm() < 1e-12);
  CHECK((t1 * t2 - t2 * t1).norm() / (t1 * t2).norm() < 1e-12);
}

TEST_CASE("crossing identity D0 tauhat(theta) = tau(2-theta)") {
  XXXChain ch{kThetas, {}};
  cx th(0.59, 0.0);
  Mat lhs = o4_prefactor(ch, th) * xxx_tauhat(ch, th);
  Mat rhs = xxx_tau(ch, 2.0 - th);
  CHECK((lhs - rhs).norm() / rhs.norm() < 1e-12);
}

TEST_CASE("factorized boundary alignment with the section-3.2 endgame") {
  Mat V = o4_align_intertwiner();
  CHECK((V * V.transpose() - Mat::Identity(4, 4)).norm() < 1e-14);
  for (cx th : {cx(0.6), cx(1.3, 0.2)}) {
    Mat diag = Mat::Zero(4, 4);
    diag(0, 0) = diag(1, 1) = diag(2, 2) = (1.0 - th) / th;
    diag(3, 3) = (1.0 + th) / th;
    Mat rhs = kO4AlignScalar * V * diag * V.transpose();
    CHECK((factorized_boundary(th) - rhs).norm() < 1e-13);
  }
}

TEST_CASE("SU_D(2) invariance of the boundary") {
  // K = P - I/theta commutes with g x g for any g; spot-check one element
  cx a(0.6, 0.3), b(-0.4, 0.61);
  double nrm = std::sqrt(std::norm(a) + std::norm(b));
  a /= nrm; b /= nrm;
  Mat g(2, 2);
  g << a, -std::conj(b), b, std::conj(a);
  Mat gg = kron(g, g);
  Mat K = factorized_boundary(cx(0.73));
  CHECK((gg * K - K * gg).norm() < 1e-13);
}

TEST_CASE("crossing matrix squares to minus one") {
  Mat C(2, 2);  // i sigma_y
  C << 0.0, 1.0, -1.0, 0.0;
  CHECK((C * C + Mat::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("vacuum Lambda and one-root BAE match dense spectra") {
  XXXChain ch{kThetas, {}};
  cx th(0.59, 0.0);
  Mat D = o4_double_row(ch, th);
  Eigen::ComplexEigenSolver<Mat> es(D);
  auto rel_to_dense = [&](cx lam) {
    double best = 1e300;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      best = std::min(best, std::abs(es.eigenvalues()(i) - lam));
    return best / std::abs(lam);
  };
  CHECK(rel_to_dense(o4_eigenvalue(ch, th)) < 1e-10);

  // one auxiliary magnon
  NewtonResult nr = solve_xxx_bae({cx(0.1, 0.9)}, kThetas);
  REQUIRE((nr.converged || nr.residual < 1e-9));
  XXXChain ch1{kThetas, nr.roots};
  CHECK(rel_to_dense(o4_eigenvalue(ch1, th)) < 1e-8);
}

TEST_CASE("consistency with the section-3.2 endgame under the shift") {
  // lam'(t) lam'(4-t) of the so(6) M=1 formula equals Lambda(t-1) with
  // inhomogeneities u1 - 1 and XXX roots u2 - 1
  std::vector<cx> u1 = {cx(1.4, 0.2)}, u2 = {cx(2.3, -0.1)};
  std::vector<cx> th_x, root_x;
  for (cx u : u1) th_x.push_back(u - 1.0);
  for (cx u : u2) root_x.push_back(u - 1.0);
  XXXChain ch{th_x, root_x};
  for (cx t : {cx(0.63), cx(1.7, 0.3), cx(0.2, 1.0)}) {
    auto lamp = [&](cx x) {
      cx A = 1.0, B = 1.0;
      for (cx u : u1) A *= (x - u - 2.0) / (x - u) * (x + u - 4.0) / (x + u - 2.0);
      for (cx u : u2) {
        A *= (x - u + 2.0) / (x - u);
        B *= (x - u - 2.0) / (x - u);
      }
      return A + B;
    };
    cx endgame = lamp(t) * lamp(4.0 - t);
    cx xxx = o4_eigenvalue(ch, t - 1.0);
    CHECK(std::abs(endgame - xxx) / std::abs(xxx) < 1e-11);
  }
}
