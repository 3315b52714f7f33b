#pragma once

// Bethe states: block decomposition of the double-row monodromy in the
// complex-paired ("mixed") basis, the exact reflection-algebra identities
// (RMRM, TRT), the explicit Phi^(2) / Phi^(3) creation operators with their
// exchange identities, and the Phi^(n) recursion for scalar middle space
// (the O(3) chain) used for the table eigenchecks.

#include <algorithm>
#include <map>
#include <numeric>

#include "bethe/chain.hpp"
#include "bethe/ybe.hpp"

namespace bethe {

// ---------------------------------------------------------------------------
// mixed-basis model
// ---------------------------------------------------------------------------

struct MixedModel {
  int m;             // site dimension
  ScalarKernels ker;
  Mat Um;            // site basis change, real -> complex-paired
  Mat Rm_base_p, Rm_base_k;  // mixed-basis P and K two-site terms
  Mat R1_base_p, R1_base_k;  // middle O(m-2) real-basis terms

  explicit MixedModel(int m_) : m(m_), ker(m_), Um(basis_change(m_)) {
    Mat uu = kron(Um, Um);
    Mat uud = uu.adjoint();
    Rm_base_p = uu * permutation_matrix(m) * uud;
    Rm_base_k = uu * trace_op(m).entries * uud;
    const int md = m - 2;
    if (md >= 2) {
      R1_base_p = permutation_matrix(md);
      R1_base_k = trace_op(md).entries;
    }
  }

  int md() const { return m - 2; }

  // bulk R-matrix in the mixed basis
  Mat R(cx u) const {
    return Mat::Identity(m * m, m * m) + ker.d(u) * Rm_base_p + ker.e(u) * Rm_base_k;
  }
  // middle-model O(m-2) R-matrix (real basis); scalar 1+d+e' when md = 1
  Mat R1(cx u) const {
    const int md_ = md();
    if (md_ == 1) {
      Mat r(1, 1);
      r(0, 0) = r1_scalar(u);
      return r;
    }
    return Mat::Identity(md_ * md_, md_ * md_) + ker.d(u) * R1_base_p +
           ker.e_mid(u) * R1_base_k;
  }
  cx r1_scalar(cx u) const { return 1.0 + ker.d(u) + ker.e_mid(u); }

  Mat to_mixed(const Mat& k_real) const { return Um * k_real * Um.adjoint(); }
};

// dense embedding of a two-site operator on factors (i, j) of nfac factors
inline Mat embed_dense(const Mat& op2, int i, int j, int nfac, int n) {
  long dim = ipow(n, nfac);
  return materialize(
      [&](const Vec& v) {
        Vec w = v;
        apply_two_site(op2, w, i, j, nfac, n);
        return w;
      },
      dim);
}

// one-row monodromies with an arbitrary auxiliary slot inside nfac factors;
// quantum sites are the trailing L factors
inline std::pair<Mat, Mat> monodromies_mixed(const MixedModel& mod, cx theta,
                                             int L, int aux, int nfac) {
  const int m = mod.m;
  const long dim = ipow(m, nfac);
  Mat T = Mat::Identity(dim, dim);
  for (int site = nfac - L; site < nfac; ++site)
    T *= embed_dense(mod.R(theta), aux, site, nfac, m);
  Mat That = Mat::Identity(dim, dim);
  for (int site = nfac - 1; site >= nfac - L; --site)
    That *= embed_dense(mod.R(theta), site, aux, nfac, m);
  return {T, That};
}

// M_aux(theta) = T K^R That with K^R acting on the chosen auxiliary factor
inline Mat double_row_mixed(const MixedModel& mod, cx theta, int L,
                            const std::function<Mat(cx)>& KRmixed, int aux = 0,
                            int nfac = -1) {
  const int m = mod.m;
  if (nfac < 0) nfac = L + 1;
  auto [T, That] = monodromies_mixed(mod, theta, L, aux, nfac);
  Mat kfull = Mat::Identity(1, 1);
  Mat kr = KRmixed(theta);
  for (int f = 0; f < nfac; ++f)
    kfull = kron(kfull, f == aux ? kr : Mat(Mat::Identity(m, m)));
  return T * kfull * That;
}

// D(theta) = tr_0[K^L(that) M(theta)] in the mixed basis
inline Mat transfer_mixed(const MixedModel& mod, cx theta, int L,
                          const std::function<Mat(cx)>& KRmixed,
                          const std::function<Mat(cx)>& KLmixed) {
  Mat M = double_row_mixed(mod, theta, L, KRmixed);
  return partial_trace_aux(M, mod.m, KLmixed(mod.ker.uhat(theta)));
}

// ---------------------------------------------------------------------------
// monodromy blocks (section 3.1.1 display)
// ---------------------------------------------------------------------------

struct MonodromyBlocks {
  Mat A, B, C, Astar;              // corner scalars-in-auxiliary
  std::vector<Mat> Bvec, Cvec;     // row vectors B-arrow, C-underline^t
  std::vector<Mat> Bstar, Cstar;   // column vectors
  std::vector<std::vector<Mat>> Amid;  // middle block, [i][j]
  std::vector<std::vector<Mat>> Abar;  // A-bar-bold (Eq. defAab)
  Mat Abarstar;                        // A-bar-star (Eq. defAbegy)
};

// Splits a mixed-basis double-row monodromy (auxiliary factor first) into
// the displayed blocks and forms the bar-ed combinations at rapidity u.
inline MonodromyBlocks split_monodromy(const Mat& M, const MixedModel& mod, cx u) {
  const int m = mod.m;
  const int md = mod.md();
  const long q = M.rows() / m;
  auto blk = [&](int a, int b) { return Mat(M.block(a * q, b * q, q, q)); };
  MonodromyBlocks out;
  out.A = blk(0, 0);
  out.B = blk(0, m - 1);
  out.C = blk(m - 1, 0);
  out.Astar = blk(m - 1, m - 1);
  out.Bvec.resize(md);
  out.Cvec.resize(md);
  out.Bstar.resize(md);
  out.Cstar.resize(md);
  for (int i = 0; i < md; ++i) {
    out.Bvec[i] = blk(0, 1 + i);
    out.Cvec[i] = blk(m - 1, 1 + i);
    out.Bstar[i] = blk(1 + i, m - 1);
    out.Cstar[i] = blk(1 + i, 0);
  }
  out.Amid.assign(md, std::vector<Mat>(md));
  out.Abar.assign(md, std::vector<Mat>(md));
  const cx da2u = mod.ker.d(2.0 * u) / mod.ker.a(2.0 * u);
  for (int i = 0; i < md; ++i)
    for (int j = 0; j < md; ++j) {
      out.Amid[i][j] = blk(1 + i, 1 + j);
      out.Abar[i][j] = out.Amid[i][j];
      if (i == j) out.Abar[i][j] -= da2u * out.A;
    }
  cx uh = mod.ker.uhat(u);
  Mat trAbar = Mat::Zero(q, q);
  for (int i = 0; i < md; ++i) trAbar += out.Abar[i][i];
  out.Abarstar = out.Astar +
                 (mod.ker.d(2.0 * uh) / mod.ker.a(2.0 * uh)) * trAbar -
                 (mod.ker.c(2.0 * u) / mod.ker.a(2.0 * u)) * out.A;
  return out;
}

// ---------------------------------------------------------------------------
// RMRM / TRT identities
// ---------------------------------------------------------------------------

// R12(u-v) M1(u) R21(u+v) M2(v) = M2(v) R12(u+v) M1(u) R21(u-v)
inline ResidualReport rmrm_check(const MixedModel& mod,
                                 const std::function<Mat(cx)>& KRmixed, int L,
                                 cx u, cx v) {
  const int m = mod.m;
  const int nfac = L + 2;  // two auxiliary factors 0 and 1
  Mat M1 = double_row_mixed(mod, u, L, KRmixed, 0, nfac);
  Mat M2 = double_row_mixed(mod, v, L, KRmixed, 1, nfac);
  auto R12 = [&](cx x) { return embed_dense(mod.R(x), 0, 1, nfac, m); };
  auto R21 = [&](cx x) { return embed_dense(mod.R(x), 1, 0, nfac, m); };
  Mat lhs = R12(u - v) * M1 * R21(u + v) * M2;
  Mat rhs = M2 * R12(u + v) * M1 * R21(u - v);
  ResidualReport rep;
  rep.equation_id = "RMRM";
  rep.add(residual_of(lhs, rhs, {u, v}));
  return rep;
}

// T1(u) R12(2u) That2(u) = That2(u) R12(2u) T1(u)
inline ResidualReport trt_check(const MixedModel& mod, int L, cx u) {
  const int m = mod.m;
  const int nfac = L + 2;
  Mat T1 = monodromies_mixed(mod, u, L, 0, nfac).first;
  Mat That2 = monodromies_mixed(mod, u, L, 1, nfac).second;
  Mat R12 = embed_dense(mod.R(2.0 * u), 0, 1, nfac, m);
  Mat lhs = T1 * R12 * That2;
  Mat rhs = That2 * R12 * T1;
  ResidualReport rep;
  rep.equation_id = "TRT";
  rep.add(residual_of(lhs, rhs, {u}));
  return rep;
}

// ---------------------------------------------------------------------------
// auxiliary-space tensors of quantum operators
// ---------------------------------------------------------------------------

// Covector with nsp middle-space slots of dimension md, each component a
// q x q quantum-space operator.
struct AuxTensor {
  int md = 1;
  int nsp = 0;
  std::vector<Mat> comp;  // md^nsp components, row-major over slots

  AuxTensor(int md_, int nsp_, long q) : md(md_), nsp(nsp_) {
    comp.assign(ipow(md_, nsp_), Mat::Zero(q, q));
  }
  long flat(const std::vector<int>& idx) const {
    long f = 0;
    for (int d : idx) f = f * md + d;
    return f;
  }
  Mat& at(const std::vector<int>& idx) { return comp[flat(idx)]; }
  const Mat& at(const std::vector<int>& idx) const { return comp[flat(idx)]; }

  AuxTensor& operator+=(const AuxTensor& o) {
    for (size_t i = 0; i < comp.size(); ++i) comp[i] += o.comp[i];
    return *this;
  }
  // permute slots: out(idx) = in(idx[perm[0]], idx[perm[1]], ...)
  AuxTensor transposed(const std::vector<int>& perm) const {
    AuxTensor out(md, nsp, comp[0].rows());
    std::vector<int> idx(nsp), src(nsp);
    for (long f = 0; f < (long)comp.size(); ++f) {
      long t = f;
      for (int s = nsp - 1; s >= 0; --s) {
        idx[s] = (int)(t % md);
        t /= md;
      }
      for (int s = 0; s < nsp; ++s) src[s] = idx[perm[s]];
      out.at(idx) = at(src);
    }
    return out;
  }
  double max_abs_on(const Vec& vac) const {
    double mx = 0.0;
    for (const Mat& c : comp) mx = std::max(mx, (c * vac).cwiseAbs().maxCoeff());
    return mx;
  }
};

// Covector composition with a middle-space R-matrix on slots (sl1, sl2):
// out[..c..d..] = sum_{a,b} in[..a..b..] R[(a,b),(c,d)]
inline AuxTensor compose_r1(const AuxTensor& in, const Mat& r1, int sl1, int sl2) {
  const int md = in.md;
  AuxTensor out(md, in.nsp, in.comp[0].rows());
  std::vector<int> idx(in.nsp);
  for (long f = 0; f < (long)in.comp.size(); ++f) {
    long t = f;
    for (int s = in.nsp - 1; s >= 0; --s) {
      idx[s] = (int)(t % md);
      t /= md;
    }
    const int c = idx[sl1], dd = idx[sl2];
    std::vector<int> src = idx;
    for (int a = 0; a < md; ++a)
      for (int b = 0; b < md; ++b) {
        cx w = r1(a * md + b, c * md + dd);
        if (w == cx(0.0)) continue;
        src[sl1] = a;
        src[sl2] = b;
        out.comp[f] += w * in.at(src);
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Phi^(2) / Phi^(3) creation operators
// ---------------------------------------------------------------------------

struct BlockOps {
  Mat A;
  std::vector<Mat> Bvec;
  Mat B;
  std::vector<std::vector<Mat>> Abar;
};

// cache of monodromy blocks per rapidity
class BlockOpsCache {
 public:
  BlockOpsCache(const MixedModel& mod, int L, std::function<Mat(cx)> KRmixed)
      : mod_(mod), L_(L), kr_(std::move(KRmixed)) {}

  const BlockOps& operator()(cx u) const {
    auto key = std::make_pair(u.real(), u.imag());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Mat M = double_row_mixed(mod_, u, L_, kr_);
    MonodromyBlocks b = split_monodromy(M, mod_, u);
    BlockOps ops{b.A, b.Bvec, b.B, b.Abar};
    return cache_.emplace(key, std::move(ops)).first->second;
  }

  const MixedModel& model() const { return mod_; }
  int L() const { return L_; }

 private:
  const MixedModel& mod_;
  int L_;
  std::function<Mat(cx)> kr_;
  mutable std::map<std::pair<double, double>, BlockOps> cache_;
};

// two-particle creation operator (normalization of the Appendix-E display,
// with v_{12} = u_1 + u_2)
inline AuxTensor phi2(const BlockOpsCache& ops, cx u1, cx u2) {
  const auto& k = ops.model().ker;
  const int md = ops.model().md();
  const auto& o1 = ops(u1);
  const auto& o2 = ops(u2);
  const long q = o1.A.rows();
  cx u12 = u1 - u2, v12 = u1 + u2;
  AuxTensor out(md, 2, q);
  cx c2 = -(1.0 / k.a(2.0 * u2)) * (k.e(u12) / k.b(u12));
  Mat t2 = c2 * (o1.B * o2.A);
  for (int i = 0; i < md; ++i)
    for (int j = 0; j < md; ++j) {
      out.at({i, j}) = o1.Bvec[i] * o2.Bvec[j] + k.e(v12) * (o1.B * o2.Abar[i][j]);
      if (i == j) out.at({i, j}) += t2;
    }
  return out;
}

// three-particle creation operator (Appendix F display)
inline AuxTensor phi3(const BlockOpsCache& ops, cx u1, cx u2, cx u3) {
  const MixedModel& mod = ops.model();
  const auto& k = mod.ker;
  const int md = mod.md();
  const auto& o1 = ops(u1);
  const auto& o2 = ops(u2);
  const auto& o3 = ops(u3);
  const long q = o1.A.rows();
  cx u12 = u1 - u2, u13 = u1 - u3, u23 = u2 - u3, u32 = u3 - u2;
  cx v12 = u1 + u2, v13 = u1 + u3, v23 = u2 + u3, v32 = u3 + u2;

  AuxTensor p23 = phi2(ops, u2, u3);
  AuxTensor out(md, 3, q);
  for (int i = 0; i < md; ++i)
    for (int j = 0; j < md; ++j)
      for (int l = 0; l < md; ++l)
        out.at({i, j, l}) = o1.Bvec[i] * p23.at({j, l});

  cx c2 = -(k.a(u32) / k.a(v32)) * (1.0 / k.a(2.0 * u2)) * (k.e(u12) / k.b(u12));
  for (int i = 0; i < md; ++i)
    for (int l = 0; l < md; ++l)
      out.at({i, i, l}) += c2 * (o1.B * o3.Bvec[l] * o2.A);

  cx c3 = -(1.0 / k.a(v32)) * (1.0 / k.a(2.0 * u3)) * (k.e(u13) / k.b(u13));
  AuxTensor base3(md, 3, q);
  for (int i = 0; i < md; ++i)
    for (int j = 0; j < md; ++j)
      base3.at({i, j, i}) = c3 * (o1.B * o2.Bvec[j] * o3.A);
  out += compose_r1(base3, mod.R1(u23), 1, 2);

  AuxTensor base4(md, 3, q);
  for (int i = 0; i < md; ++i)
    for (int l = 0; l < md; ++l)
      base4.at({i, i, l}) = k.e(v12) * (o1.B * o3.Bvec[l]);
  AuxTensor step4 = compose_r1(base4, mod.R1(v32 - 2.0), 1, 2);
  AuxTensor step4b(md, 3, q);
  for (int i = 0; i < md; ++i)
    for (int x = 0; x < md; ++x)
      for (int l = 0; l < md; ++l)
        for (int j = 0; j < md; ++j)
          step4b.at({i, x, l}) += step4.at({i, j, l}) * o2.Abar[j][x];
  out += compose_r1(step4b, mod.R1(u23), 1, 2);

  AuxTensor base5(md, 3, q);
  for (int i = 0; i < md; ++i)
    for (int j = 0; j < md; ++j)
      base5.at({i, j, i}) = (k.a(u32) * k.e(v13)) * (o1.B * o2.Bvec[j]);
  AuxTensor step5 = compose_r1(base5, mod.R1(v23 - 2.0), 1, 2);
  for (int i = 0; i < md; ++i)
    for (int j = 0; j < md; ++j)
      for (int x = 0; x < md; ++x)
        for (int l = 0; l < md; ++l)
          out.at({i, j, x}) += step5.at({i, j, l}) * o3.Abar[l][x];
  return out;
}

// exchange identities on the pseudo-vacuum; returns the relative deviation
inline double wavefunc2_residual(const BlockOpsCache& ops, cx u1, cx u2) {
  const MixedModel& mod = ops.model();
  AuxTensor p12 = phi2(ops, u1, u2);
  AuxTensor p21 = phi2(ops, u2, u1).transposed({1, 0});
  AuxTensor rhs = compose_r1(p12, mod.R1(u2 - u1), 0, 1);
  cx inv_a = 1.0 / mod.ker.a(u2 - u1);
  Vec vac = Vec::Zero(p12.comp[0].rows());
  vac(0) = 1.0;
  double num = 0.0, den = 0.0;
  for (size_t c = 0; c < p12.comp.size(); ++c) {
    num = std::max(num,
                   ((p21.comp[c] - inv_a * rhs.comp[c]) * vac).cwiseAbs().maxCoeff());
    den = std::max(den, (p21.comp[c] * vac).cwiseAbs().maxCoeff());
  }
  return num / std::max(den, 1e-300);
}

// j = 2 and j = 3 adjacent exchanges of Phi^(3) on the pseudo-vacuum
inline std::pair<double, double> wavefunc3_residuals(const BlockOpsCache& ops,
                                                     cx u1, cx u2, cx u3) {
  const MixedModel& mod = ops.model();
  AuxTensor f123 = phi3(ops, u1, u2, u3);
  AuxTensor f213 = phi3(ops, u2, u1, u3).transposed({1, 0, 2});
  AuxTensor f132 = phi3(ops, u1, u3, u2).transposed({0, 2, 1});
  AuxTensor r21 = compose_r1(f123, mod.R1(u2 - u1), 0, 1);
  AuxTensor r32 = compose_r1(f123, mod.R1(u3 - u2), 1, 2);
  cx a21 = 1.0 / mod.ker.a(u2 - u1), a32 = 1.0 / mod.ker.a(u3 - u2);
  Vec vac = Vec::Zero(f123.comp[0].rows());
  vac(0) = 1.0;
  double n1 = 0.0, d1 = 0.0, n2 = 0.0, d2 = 0.0;
  for (size_t c = 0; c < f123.comp.size(); ++c) {
    n1 = std::max(n1, ((f213.comp[c] - a21 * r21.comp[c]) * vac).cwiseAbs().maxCoeff());
    d1 = std::max(d1, (f213.comp[c] * vac).cwiseAbs().maxCoeff());
    n2 = std::max(n2, ((f132.comp[c] - a32 * r32.comp[c]) * vac).cwiseAbs().maxCoeff());
    d2 = std::max(d2, (f132.comp[c] * vac).cwiseAbs().maxCoeff());
  }
  return {n1 / std::max(d1, 1e-300), n2 / std::max(d2, 1e-300)};
}

// ---------------------------------------------------------------------------
// Phi^(n) recursion for scalar middle space (m = 3)
// ---------------------------------------------------------------------------

// Eq. (nparticle) specialized to a one-dimensional nested space.  The
// displayed a(u_{kj}) in the third sum fails the n = 3 cross-check against
// the Appendix-F Phi^(3); the transposed index order a(u_j - u_k) matches
// and is used here.
inline Mat phi_n_scalar(const std::vector<cx>& us, const BlockOpsCache& ops) {
  const MixedModel& mod = ops.model();
  const auto& k = mod.ker;
  const int n = (int)us.size();
  if (n == 0) throw std::invalid_argument("phi_n_scalar: empty rapidity list");
  const auto& o0 = ops(us[0]);
  if (n == 1) return o0.Bvec[0];
  std::vector<cx> tail_us(us.begin() + 1, us.end());
  Mat out = o0.Bvec[0] * phi_n_scalar(tail_us, ops);
  auto r1 = [&](cx x) { return mod.r1_scalar(x); };
  const long q = o0.A.rows();
  for (int j = 1; j < n; ++j) {
    cx uj = us[j];
    std::vector<cx> others;
    for (int kk = 1; kk < n; ++kk)
      if (kk != j) others.push_back(us[kk]);
    Mat sub = others.empty() ? Mat(Mat::Identity(q, q)) : phi_n_scalar(others, ops);
    const auto& oj = ops(uj);
    cx u1j = us[0] - uj, w1j = us[0] + uj;

    cx c2 = -(1.0 / k.a(2.0 * uj)) * (k.e(u1j) / k.b(u1j));
    for (int kk = 1; kk < n; ++kk)
      if (kk != j) c2 *= k.a(us[kk] - uj) / k.a(us[kk] + uj);
    for (int kk = 1; kk < j; ++kk) c2 *= r1(us[kk] - uj) / k.a(us[kk] - uj);

    cx c3 = k.e(w1j);
    for (int kk = 1; kk < n; ++kk)
      if (kk != j) c3 *= k.a(uj - us[kk]) * r1(us[kk] + uj - 2.0);
    cx tail = 1.0;
    for (int kk = j + 1; kk < n; ++kk) tail *= r1(uj - us[kk]) / k.a(uj - us[kk]);

    out += c2 * (o0.B * sub * oj.A);
    out += (c3 * tail) * (o0.B * sub * oj.Abar[0][0]);
  }
  return out;
}

// collinearity of psi with D psi: ||D psi - lam psi|| / (|lam| ||psi||)
inline std::pair<double, cx> collinearity(const Mat& D, const Vec& psi) {
  cx lam = psi.dot(D * psi) / psi.dot(psi);
  double res = (D * psi - lam * psi).norm() / (std::abs(lam) * psi.norm());
  return {res, lam};
}

// Builds the n-magnon state for every ordering of the rapidities and keeps
// the best-conditioned one.  Near boundary strings the recursion picks up
// 1/a(2u_j) ~ 1e6 coefficients whose cancellation quality depends on the
// evaluation order; the state itself is order-independent.
inline std::pair<double, cx> eigencheck_scalar(const std::vector<cx>& us,
                                               const BlockOpsCache& ops,
                                               const Mat& D) {
  std::vector<int> perm(us.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  cx best_lam = 0.0;
  Vec vac = Vec::Zero(D.rows());
  vac(0) = 1.0;
  do {
    std::vector<cx> ordered(us.size());
    for (size_t i = 0; i < us.size(); ++i) ordered[i] = us[perm[i]];
    Vec psi = phi_n_scalar(ordered, ops) * vac;
    if (psi.norm() < 1e-300) continue;
    auto [res, lam] = collinearity(D, psi);
    if (res < best) {
      best = res;
      best_lam = lam;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best, best_lam};
}

}  // namespace bethe
