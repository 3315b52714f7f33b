#pragma once

// One-row monodromies, the double-row monodromy M = T K^R That, and the
// double-row transfer matrix D(theta) = tr_0[K^L(that) M(theta)], plus a
// brute-force dense spectrum oracle.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <functional>
#include <vector>

#include "bethe/catalog.hpp"
#include "bethe/tensor.hpp"

namespace bethe {

struct SpinChain {
  AlgebraFamily family;
  int L = 1;
  std::function<Mat(cx)> KR;  // right boundary, dimension family.n
  std::function<Mat(cx)> KL;  // left boundary (defaults to KR(u)^T)
  std::vector<cx> inhomogeneities;  // length L; defaults to zeros

  // crossing point: uhat = n-2-u, i.e. 2N-2 (even) / 2N-1 (odd orthogonal)
  cx uhat(cx u) const { return cx(family.n - 2) - u; }

  std::vector<cx> thetas() const {
    if (inhomogeneities.empty()) return std::vector<cx>(L, 0.0);
    if ((int)inhomogeneities.size() != L)
      throw std::invalid_argument("SpinChain: inhomogeneity count != L");
    return inhomogeneities;
  }
};

inline SpinChain make_chain(const BoundaryModel& model, int L,
                            std::vector<cx> inhom = {}) {
  SpinChain ch;
  ch.family = model.family;
  ch.L = L;
  // the normalized K feeds the eigenvalue formulas; the displayed K differs
  // only by the recorded scalar, which drops out of every commutator test
  ch.KR = [model](cx u) { return model.K_normalized(u); };
  ch.KL = [model](cx u) { return Mat(model.K_normalized(u).transpose()); };
  ch.inhomogeneities = std::move(inhom);
  return ch;
}

enum class Direction { T, That };

// T_0(theta)   = R_{01}(theta - t_1) ... R_{0L}(theta - t_L)
// That_0(theta)= R_{L0}(theta + t_L) ... R_{10}(theta + t_1)
// Acts on the (L+1)-factor space with the auxiliary factor first.
inline ChainOperator monodromy(const SpinChain& chain, cx theta, Direction dir) {
  const int n = chain.family.n;
  const int nfac = chain.L + 1;
  const Mat p = permutation_matrix(n);
  auto ts = chain.thetas();
  // factors listed left to right; the rightmost acts first
  std::vector<std::pair<Mat, int>> factors;
  for (int k = 1; k <= chain.L; ++k) {
    if (dir == Direction::T)
      factors.emplace_back(build_r(chain.family, theta - ts[k - 1]), k);
    else  // R_{k0}(u) as an operator with slots ordered (0, k)
      factors.emplace_back(Mat(p * build_r(chain.family, theta + ts[k - 1]) * p), k);
  }
  if (dir == Direction::That) std::reverse(factors.begin(), factors.end());

  ChainOperator op;
  op.n = n;
  op.nfac = nfac;
  op.has_aux = true;
  op.apply_fn = [factors, n, nfac](const Vec& v) {
    Vec w = v;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it)
      apply_two_site(it->first, w, 0, it->second, nfac, n);
    return w;
  };
  if (op.dim() <= kDenseLimit) op.dense = materialize(op.apply_fn, op.dim());
  return op;
}

// M_0(theta) = T_0(theta) K_0^R(theta) That_0(theta)
inline ChainOperator double_row_monodromy(const SpinChain& chain, cx theta) {
  const int n = chain.family.n;
  const int nfac = chain.L + 1;
  ChainOperator t = monodromy(chain, theta, Direction::T);
  ChainOperator that = monodromy(chain, theta, Direction::That);
  Mat kr = chain.KR(theta);

  ChainOperator op;
  op.n = n;
  op.nfac = nfac;
  op.has_aux = true;
  const long q = op.dim() / n;
  op.apply_fn = [t, that, kr, n, q](const Vec& v) {
    Vec w = that.apply(v);
    // K^R on the auxiliary factor (leading index in the row-major layout)
    Vec kw = Vec::Zero(w.size());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (kr(a, b) != cx(0.0))
          kw.segment(a * q, q) += kr(a, b) * w.segment(b * q, q);
    return Vec(t.apply(kw));
  };
  if (op.dim() <= kDenseLimit) op.dense = materialize(op.apply_fn, op.dim());
  return op;
}

// D(theta) = tr_0[K_0^L(that) M_0(theta)] on the n^L quantum space.
inline ChainOperator double_row_transfer(const SpinChain& chain, cx theta) {
  const int n = chain.family.n;
  ChainOperator m = double_row_monodromy(chain, theta);
  Mat kl = chain.KL(chain.uhat(theta));

  ChainOperator op;
  op.n = n;
  op.nfac = chain.L;
  op.has_aux = false;
  const long q = op.dim();
  if (m.dense) {
    op.dense = partial_trace_aux(*m.dense, n, kl);
    const Mat& d = *op.dense;
    op.apply_fn = [d](const Vec& v) { return Vec(d * v); };
    return op;
  }
  op.apply_fn = [m, kl, n, q](const Vec& v) {
    // tr(W M) v = sum_{a,b} W_{ab} M_{ba} v: one M-application per aux state
    Vec out = Vec::Zero(q);
    Vec full = Vec::Zero(n * q);
    for (int a = 0; a < n; ++a) {
      full.setZero();
      full.segment(a * q, q) = v;
      Vec w = m.apply(full);
      for (int b = 0; b < n; ++b)
        if (kl(a, b) != cx(0.0)) out += kl(a, b) * w.segment(b * q, q);
    }
    return out;
  };
  return op;
}

// ---------------------------------------------------------------------------
// spectra
// ---------------------------------------------------------------------------

struct Spectrum {
  std::vector<cx> eigenvalues;  // sorted by (real, imag)
  std::string method = "dense";
};

inline Spectrum dense_spectrum(const ChainOperator& op) {
  if (!op.dense) throw std::invalid_argument("dense_spectrum: dimension too large");
  Eigen::ComplexEigenSolver<Mat> es(*op.dense, /*computeEigenvectors=*/false);
  Spectrum s;
  s.eigenvalues.assign(es.eigenvalues().data(),
                       es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), [](cx a, cx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return s;
}

// Nearest spectrum entry; used by the greedy formula-to-oracle pairing.
inline std::pair<cx, double> nearest_eigenvalue(const Spectrum& s, cx value) {
  double best = std::numeric_limits<double>::infinity();
  cx match = 0.0;
  for (cx ev : s.eigenvalues) {
    double dist = std::abs(ev - value);
    if (dist < best) {
      best = dist;
      match = ev;
    }
  }
  return {match, best / std::max(1.0, std::abs(value))};
}

// relative commutator norm of two transfer matrices (dense path)
inline double commutator_norm(const ChainOperator& d1, const ChainOperator& d2) {
  const Mat& a = d1.matrix();
  const Mat& b = d2.matrix();
  return (a * b - b * a).norm() / std::max(1e-300, a.norm() * b.norm());
}

}  // namespace bethe
