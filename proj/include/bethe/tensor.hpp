#pragma once

// Complex linear algebra on tensor-product chain spaces.
//
// Conventions (fixed for the whole library):
//   * factor 0 is the auxiliary space whenever one is present,
//   * quantum sites are 1..L,
//   * flattening is row-major over (aux, site1, ..., siteL).

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bethe/kernels.hpp"

namespace bethe {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// ---------------------------------------------------------------------------
// elementary two-site operators
// ---------------------------------------------------------------------------

struct TwoSiteOperator {
  int n = 0;           // local dimension
  Mat entries;         // n^2 x n^2
  std::string label;
};

inline Mat permutation_matrix(int n) {
  Mat p = Mat::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(j * n + i, i * n + j) = 1.0;
  return p;
}

inline TwoSiteOperator permutation_op(int n) {
  if (n < 2) throw std::invalid_argument("permutation_op: n >= 2");
  return {n, permutation_matrix(n), "P"};
}

// K_{ab}^{cd} = delta_{ab} delta^{cd} (the so-family trace term).
inline TwoSiteOperator trace_op(int n) {
  if (n < 2) throw std::invalid_argument("trace_op: n >= 2");
  Mat k = Mat::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) k(a * n + a, c * n + c) = 1.0;
  return {n, k, "K-trace"};
}

// Antisymmetric symplectic unit U = [[0, I], [-I, 0]].
inline Mat sp_unit(int n) {
  if (n % 2) throw std::invalid_argument("sp_unit: n must be even");
  Mat u = Mat::Zero(n, n);
  for (int i = 0; i < n / 2; ++i) {
    u(i, n / 2 + i) = 1.0;
    u(n / 2 + i, i) = -1.0;
  }
  return u;
}

// Rank-one U_{ab} U^{cd} operator of the sp-family R-matrix.
inline TwoSiteOperator sp_form_op(int n) {
  Mat u = sp_unit(n);
  Mat m = Mat::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          m(a * n + b, c * n + d) = u(a, b) * u(c, d);
  return {n, m, "U-form"};
}

// ---------------------------------------------------------------------------
// vector-level two-site application (the matrix-free primitive)
// ---------------------------------------------------------------------------

// Applies a two-site operator to factors (i, j) of a chain vector with
// `nfac` factors of local dimension n each.  Row-major index layout.
inline void apply_two_site(const Mat& op, Vec& v, int i, int j, int nfac, int n) {
  if (i == j || i < 0 || j < 0 || i >= nfac || j >= nfac)
    throw std::invalid_argument("apply_two_site: bad site indices");
  const long total = v.size();
  // strides of factors i and j
  long si = 1, sj = 1;
  for (int f = i + 1; f < nfac; ++f) si *= n;
  for (int f = j + 1; f < nfac; ++f) sj *= n;

  Vec out = Vec::Zero(total);
  std::vector<long> rest;           // base offsets with factors i, j zeroed
  rest.reserve(total / (n * n));
  for (long idx = 0; idx < total; ++idx) {
    const int di = static_cast<int>((idx / si) % n);
    const int dj = static_cast<int>((idx / sj) % n);
    if (di == 0 && dj == 0) rest.push_back(idx);
  }
  for (long base : rest) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        cx acc = 0.0;
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d)
            acc += op(a * n + b, c * n + d) * v(base + c * si + d * sj);
        out(base + a * si + b * sj) = acc;
      }
    }
  }
  v.swap(out);
}

// ---------------------------------------------------------------------------
// ChainOperator: dense or matrix-free operator on n^nfac
// ---------------------------------------------------------------------------

// Dense below the materialization threshold, matrix-free above; both paths
// coexist in the overlap for cross-checks.
inline constexpr long kDenseLimit = 4096;

struct ChainOperator {
  int n = 0;
  int nfac = 0;       // total tensor factors (aux included if has_aux)
  bool has_aux = false;
  std::optional<Mat> dense;
  std::function<Vec(const Vec&)> apply_fn;  // always set
  std::vector<cx> poles;                    // declared excluded parameters

  long dim() const {
    long d = 1;
    for (int f = 0; f < nfac; ++f) d *= n;
    return d;
  }

  Vec apply(const Vec& v) const {
    if (dense) return (*dense) * v;
    return apply_fn(v);
  }

  const Mat& matrix() const {
    if (!dense) throw std::logic_error("ChainOperator: no dense representation");
    return *dense;
  }
};

// Materializes an apply-function column by column.
inline Mat materialize(const std::function<Vec(const Vec&)>& f, long dim) {
  Mat m(dim, dim);
  Vec e = Vec::Zero(dim);
  for (long b = 0; b < dim; ++b) {
    e(b) = 1.0;
    m.col(b) = f(e);
    e(b) = 0.0;
  }
  return m;
}

inline ChainOperator embed_two_site(const TwoSiteOperator& op, int i, int j,
                                    int nfac, bool has_aux = false) {
  const int n = op.n;
  ChainOperator c;
  c.n = n;
  c.nfac = nfac;
  c.has_aux = has_aux;
  Mat m = op.entries;  // owning copy for the closure
  c.apply_fn = [m, i, j, nfac, n](const Vec& v) {
    Vec w = v;
    apply_two_site(m, w, i, j, nfac, n);
    return w;
  };
  if (c.dim() <= kDenseLimit) c.dense = materialize(c.apply_fn, c.dim());
  return c;
}

// tr_0[W_aux . Op] for an operator carrying the auxiliary factor first:
// contracts the auxiliary row/column indices against the weight matrix W
// (W = identity gives the plain partial trace).
inline Mat partial_trace_aux(const Mat& op, int n, const Mat& weight) {
  const long q = op.rows() / n;
  Mat out = Mat::Zero(q, q);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (weight(a, b) != cx(0.0))
        out += weight(a, b) * op.block(b * q, a * q, q, q);
  return out;
}

inline Mat partial_trace_aux(const Mat& op, int n) {
  return partial_trace_aux(op, n, Mat::Identity(n, n));
}

// ---------------------------------------------------------------------------
// basis change of section 3.1.1
// ---------------------------------------------------------------------------

// Unitary mapping the real so(m) basis to the complex-paired nesting basis:
// row 0 = (e1 + i e2)/sqrt2, rows 1..m-2 = e3..em, row m-1 = (e1 - i e2)/sqrt2.
// Only the leading pair is rotated; nesting repeats the map one level down.
inline Mat basis_change(int m) {
  if (m < 3) throw std::invalid_argument("basis_change: m >= 3");
  Mat u = Mat::Zero(m, m);
  const double s = 1.0 / std::sqrt(2.0);
  u(0, 0) = s;
  u(0, 1) = cx(0.0, s);
  u(m - 1, 0) = s;
  u(m - 1, 1) = cx(0.0, -s);
  for (int i = 2; i < m; ++i) u(i - 1, i) = 1.0;
  return u;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline long ipow(int n, int k) {
  long r = 1;
  while (k-- > 0) r *= n;
  return r;
}

}  // namespace bethe
