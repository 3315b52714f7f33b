#pragma once

// R-matrices of the three classical families and the full boundary K-matrix
// catalog (cases 1a-4d of section 2 plus the two Appendix-A entries), with
// nested K^{(k)} closed forms and the scalar boundary coefficients used by
// the eigenvalue formulas.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bethe/kernels.hpp"
#include "bethe/tensor.hpp"

namespace bethe {

// ---------------------------------------------------------------------------
// R-matrices
// ---------------------------------------------------------------------------

enum class FamilyKind { su, so, sp };

struct AlgebraFamily {
  FamilyKind kind;
  int n;  // local dimension

  std::string name() const {
    switch (kind) {
      case FamilyKind::su: return "su(" + std::to_string(n) + ")";
      case FamilyKind::so: return "so(" + std::to_string(n) + ")";
      case FamilyKind::sp: return "sp(" + std::to_string(n) + ")";
    }
    return {};
  }
};

// R(u) = I + d(u) P            (su)
//        I + d(u) P - 2/(n-2-u) K   (so)
//        I + d(u) P - 2/(n+2-u) UU  (sp, n even)
inline Mat build_r(const AlgebraFamily& fam, cx u) {
  const int n = fam.n;
  Mat r = Mat::Identity(n * n, n * n) + d_kernel(u) * permutation_matrix(n);
  if (fam.kind == FamilyKind::so) {
    cx den = cx(n - 2) - u;
    require_off_pole(den, "R_so(u)");
    r += (-2.0 / den) * trace_op(n).entries;
  } else if (fam.kind == FamilyKind::sp) {
    if (n % 2) throw std::invalid_argument("build_r: sp needs even n");
    cx den = cx(n + 2) - u;
    require_off_pole(den, "R_sp(u)");
    r += (-2.0 / den) * sp_form_op(n).entries;
  }
  return r;
}

// ---------------------------------------------------------------------------
// boundary catalog
// ---------------------------------------------------------------------------

enum class CaseId {
  An_a, An_b, An_c,
  Bn_a, Bn_b,
  Cn_a, Cn_b,
  Dn_a, Dn_b, Dn_c, Dn_d,
  appA_MxRest, appA_O2,
};

inline const char* case_name(CaseId id) {
  switch (id) {
    case CaseId::An_a: return "An_a";
    case CaseId::An_b: return "An_b";
    case CaseId::An_c: return "An_c";
    case CaseId::Bn_a: return "Bn_a";
    case CaseId::Bn_b: return "Bn_b";
    case CaseId::Cn_a: return "Cn_a";
    case CaseId::Cn_b: return "Cn_b";
    case CaseId::Dn_a: return "Dn_a";
    case CaseId::Dn_b: return "Dn_b";
    case CaseId::Dn_c: return "Dn_c";
    case CaseId::Dn_d: return "Dn_d";
    case CaseId::appA_MxRest: return "appA_MxRest";
    case CaseId::appA_O2: return "appA_O2";
  }
  return "?";
}

struct BoundaryModel {
  CaseId case_id;
  AlgebraFamily family;       // bulk algebra; family.n = site dimension
  int rank = 0;               // Dynkin rank n (resp. N) of the section-2 display
  int k = 0;                  // block parameter k (or M)
  cx c = 0.0;                 // free parameter where applicable
  std::string residual_algebra;
  bool rank_preserving = true;
  int free_param_count = 0;

  // K-matrix exactly as displayed in section 2 / Appendix A (un-normalized).
  Mat K(cx u) const;
  // Scalar relating the displayed K to the normalized form used in
  // sections 3.1.6-3.1.8 / 3.2 / Appendix A (K_display = normalization * K_norm).
  cx normalization(cx u) const;
  Mat K_normalized(cx u) const { return K(u) / normalization(u); }
};

inline Mat diag_two_block(int n1, cx v1, int n2, cx v2) {
  Mat k = Mat::Zero(n1 + n2, n1 + n2);
  for (int i = 0; i < n1; ++i) k(i, i) = v1;
  for (int i = 0; i < n2; ++i) k(n1 + i, n1 + i) = v2;
  return k;
}

// 2x2 rotation block [[g, s], [-s, g]] padded with `rest` on the diagonal.
inline Mat u1_block_matrix(int dim, cx g, cx s, cx rest) {
  Mat k = Mat::Zero(dim, dim);
  k(0, 0) = g;
  k(1, 1) = g;
  k(0, 1) = s;
  k(1, 0) = -s;
  for (int i = 2; i < dim; ++i) k(i, i) = rest;
  return k;
}

inline Mat BoundaryModel::K(cx u) const {
  const int m = family.n;
  const int nn = rank;
  const cx i2cu = cx(0.0, 2.0) * c * u;
  switch (case_id) {
    case CaseId::An_a:
      return diag_two_block(k, c + u, m - k, c - u);
    case CaseId::An_b:
      return Mat::Identity(m, m);
    case CaseId::An_c:
      return sp_unit(m);
    case CaseId::Bn_a:
      // BYBE fixes the offset to n+1/2 with n the Dynkin rank (m = 2n+1).
      return diag_two_block(2 * k, cx(nn + 0.5 - 2 * k) + u,
                            m - 2 * k, cx(nn + 0.5 - 2 * k) - u);
    case CaseId::Bn_b:
      return u1_block_matrix(m, cx((nn - 1.5) * (nn - 1.5)) - c * c - u * u,
                             i2cu, (cx(nn - 1.5) - u) * (cx(nn - 1.5) - u) - c * c);
    case CaseId::Cn_a: {
      Mat q = diag_two_block(k, cx(nn - 2 * k) + u, nn - k, cx(nn - 2 * k) - u);
      Mat out = Mat::Zero(m, m);
      out.block(0, 0, nn, nn) = q;
      out.block(nn, nn, nn, nn) = q;
      return out;
    }
    case CaseId::Cn_b:
    case CaseId::Dn_c: {
      Mat out = Mat::Zero(m, m);
      const int h = m / 2;
      for (int i = 0; i < h; ++i) {
        out(i, i) = c;
        out(h + i, h + i) = c;
        out(i, h + i) = cx(0.0, 1.0) * u;
        out(h + i, i) = cx(0.0, -1.0) * u;
      }
      return out;
    }
    case CaseId::Dn_a:
      return diag_two_block(2 * k, cx(nn - 2 * k) + u, m - 2 * k, cx(nn - 2 * k) - u);
    case CaseId::Dn_b:
      return u1_block_matrix(m, cx((nn - 2) * (nn - 2)) - c * c - u * u,
                             i2cu, (cx(nn - 2) - u) * (cx(nn - 2) - u) - c * c);
    case CaseId::Dn_d: {
      // section 3.2 ordering: diag(c(u) x 2k', 1 x (m-2k'-1), c(u)) with
      // 2k'+1 = 2k+1 entries carrying the u-dependence in total.
      cx num = cx(nn - 2 * k - 1) + u, den = cx(nn - 2 * k - 1) - u;
      Mat out = Mat::Identity(m, m) * den;
      for (int i = 0; i < 2 * k; ++i) out(i, i) = num;
      out(m - 1, m - 1) = num;
      return out;
    }
    case CaseId::appA_MxRest: {
      // odd chain, normalized form of Bn_a: diag(c(u) x 2M, 1 x (2N-2M+1))
      cx num = cx(nn + 0.5 - 2 * k) + u, den = cx(nn + 0.5 - 2 * k) - u;
      require_off_pole(den, "appA_MxRest K");
      Mat out = Mat::Identity(m, m);
      for (int i = 0; i < 2 * k; ++i) out(i, i) = num / den;
      return out;
    }
    case CaseId::appA_O2: {
      // Displayed off-diagonal denominator (N-2-u)^2-c^2 fails the BYBE;
      // the uniform denominator (N-3/2-u)^2-c^2 passes and is used here.
      cx den = (cx(nn - 1.5) - u) * (cx(nn - 1.5) - u) - c * c;
      require_off_pole(den, "appA_O2 K");
      return u1_block_matrix(m, (cx((nn - 1.5) * (nn - 1.5)) - c * c - u * u) / den,
                             i2cu / den, 1.0);
    }
  }
  throw std::logic_error("BoundaryModel::K: unreachable");
}

inline cx BoundaryModel::normalization(cx u) const {
  const int nn = rank;
  switch (case_id) {
    case CaseId::Dn_a:   // section 3.1.6 form divides by (N-2M-u)
      return cx(nn - 2 * k) - u;
    case CaseId::Dn_b:   // section 3.1.8 form divides by (N-2-u)^2-c^2
      return (cx(nn - 2) - u) * (cx(nn - 2) - u) - c * c;
    case CaseId::Dn_d:   // section 3.2 form divides by (N-2k-1-u)
      return cx(nn - 2 * k - 1) - u;
    case CaseId::Bn_a:   // Appendix A form divides by (N+1/2-2M-u)
      return cx(nn + 0.5 - 2 * k) - u;
    case CaseId::Bn_b:   // Appendix A O(2) form divides by (N-3/2-u)^2-c^2
      return (cx(nn - 1.5) - u) * (cx(nn - 1.5) - u) - c * c;
    default:
      return 1.0;
  }
}

inline BoundaryModel make_model(CaseId id, int rank, int k = 0, cx c = 0.0) {
  BoundaryModel m;
  m.case_id = id;
  m.rank = rank;
  m.k = k;
  m.c = c;
  auto nmr = [&](int d) { return std::to_string(d); };
  switch (id) {
    case CaseId::An_a:
      m.family = {FamilyKind::su, rank};
      if (k < 1 || k >= rank) throw std::invalid_argument("An_a: 1 <= k < n");
      m.residual_algebra = "su(" + nmr(k) + ")+su(" + nmr(rank - k) + ")+u(1)";
      m.rank_preserving = true;
      m.free_param_count = 1;
      break;
    case CaseId::An_b:
      m.family = {FamilyKind::su, rank};
      m.residual_algebra = "so(" + nmr(rank) + ")";
      m.rank_preserving = false;
      m.free_param_count = 0;
      break;
    case CaseId::An_c:
      m.family = {FamilyKind::su, rank};
      if (rank % 2) throw std::invalid_argument("An_c: n must be even");
      m.residual_algebra = "sp(" + nmr(rank) + ")";
      m.rank_preserving = false;
      m.free_param_count = 0;
      break;
    case CaseId::Bn_a:
      m.family = {FamilyKind::so, 2 * rank + 1};
      if (k < 1 || k > rank) throw std::invalid_argument("Bn_a: 1 <= k <= n");
      m.residual_algebra = "so(" + nmr(2 * k) + ")+so(" + nmr(2 * rank + 1 - 2 * k) + ")";
      m.rank_preserving = true;
      m.free_param_count = 0;
      break;
    case CaseId::Bn_b:
      m.family = {FamilyKind::so, 2 * rank + 1};
      m.residual_algebra = "so(" + nmr(2 * rank - 1) + ")+u(1)";
      m.rank_preserving = true;
      m.free_param_count = 1;
      break;
    case CaseId::Cn_a:
      m.family = {FamilyKind::sp, 2 * rank};
      if (k < 1 || k >= rank) throw std::invalid_argument("Cn_a: 1 <= k < n");
      m.residual_algebra = "sp(" + nmr(2 * k) + ")+sp(" + nmr(2 * rank - 2 * k) + ")";
      m.rank_preserving = true;
      m.free_param_count = 0;
      break;
    case CaseId::Cn_b:
      m.family = {FamilyKind::sp, 2 * rank};
      m.residual_algebra = "su(" + nmr(rank) + ")+u(1)";
      m.rank_preserving = true;
      m.free_param_count = 1;
      break;
    case CaseId::Dn_a:
      m.family = {FamilyKind::so, 2 * rank};
      if (k < 0 || 2 * k > rank) throw std::invalid_argument("Dn_a: 0 <= k <= n/2");
      m.residual_algebra = "so(" + nmr(2 * k) + ")+so(" + nmr(2 * rank - 2 * k) + ")";
      m.rank_preserving = true;
      m.free_param_count = 0;
      break;
    case CaseId::Dn_b:
      m.family = {FamilyKind::so, 2 * rank};
      m.residual_algebra = "so(" + nmr(2 * rank - 2) + ")+u(1)";
      m.rank_preserving = true;
      m.free_param_count = 1;
      break;
    case CaseId::Dn_c:
      m.family = {FamilyKind::so, 2 * rank};
      m.residual_algebra = "su(" + nmr(rank) + ")+u(1)";
      m.rank_preserving = true;
      m.free_param_count = 1;
      break;
    case CaseId::Dn_d:
      m.family = {FamilyKind::so, 2 * rank};
      if (k < 0 || 2 * k >= rank) throw std::invalid_argument("Dn_d: 0 <= k < n/2");
      m.residual_algebra = "so(" + nmr(2 * k + 1) + ")+so(" + nmr(2 * rank - 2 * k - 1) + ")";
      m.rank_preserving = false;
      m.free_param_count = 0;
      break;
    case CaseId::appA_MxRest:
      m.family = {FamilyKind::so, 2 * rank + 1};
      if (k < 0 || k > rank) throw std::invalid_argument("appA_MxRest: 0 <= M <= N");
      m.residual_algebra = "so(" + nmr(2 * k) + ")+so(" + nmr(2 * rank + 1 - 2 * k) + ")";
      m.rank_preserving = true;
      m.free_param_count = 0;
      break;
    case CaseId::appA_O2:
      m.family = {FamilyKind::so, 2 * rank + 1};
      m.residual_algebra = "so(2)+so(" + nmr(2 * rank - 1) + ")";
      m.rank_preserving = true;
      m.free_param_count = 1;
      break;
  }
  return m;
}

// Representative catalog with default desk-scale parameters (one row per case).
inline std::vector<BoundaryModel> catalog() {
  return {
      make_model(CaseId::An_a, 4, 2, 0.7),
      make_model(CaseId::An_b, 4),
      make_model(CaseId::An_c, 4),
      make_model(CaseId::Bn_a, 3, 1),
      make_model(CaseId::Bn_b, 3, 0, 0.37),
      make_model(CaseId::Cn_a, 3, 1),
      make_model(CaseId::Cn_b, 3, 0, 0.7),
      make_model(CaseId::Dn_a, 3, 1),
      make_model(CaseId::Dn_b, 3, 0, 0.37),
      make_model(CaseId::Dn_c, 3, 0, 0.7),
      make_model(CaseId::Dn_d, 3, 1),
      make_model(CaseId::appA_MxRest, 2, 1),
      make_model(CaseId::appA_O2, 2, 0, 0.37),
  };
}

// ---------------------------------------------------------------------------
// nested K^(k) closed forms (sections 3.1.6-3.1.8, 3.2, Appendix A)
// ---------------------------------------------------------------------------

// Complex-paired-basis nested K-matrix at nesting level `lev`, dimension
// m - 2*lev.  lev = 0 reproduces K_normalized up to the basis change.
inline Mat nested_k(const BoundaryModel& model, int lev, cx u) {
  const int N = model.rank;   // Dynkin rank of the bulk
  const int M = model.k;
  const cx c = model.c;
  require_off_pole(u, "nested_k");
  auto pref = [&](cx num, cx den) {
    require_off_pole(den, "nested_k");
    return (u + cx(lev)) / u * num / den;
  };
  switch (model.case_id) {
    case CaseId::An_b: {
      // identity boundary: section 3.1.6 with M = 0 (so-chain usage)
      if (model.family.kind != FamilyKind::so) break;
      return Mat::Identity(model.family.n - 2 * lev, model.family.n - 2 * lev) *
             ((u + cx(lev)) / u);
    }
    case CaseId::Dn_a: {
      const int dim = 2 * N - 2 * lev;
      if (lev < 0 || lev > N - 2) throw std::invalid_argument("nested_k: level");
      if (lev < M) {
        Mat out = Mat::Identity(dim, dim);
        cx ck = (cx(N - 2 * M + lev) + u) / (cx(N - 2 * M + lev) - u);
        for (int i = 0; i < 2 * M - 2 * lev; ++i) out(i, i) = ck;
        return pref(cx(N - 2 * M + lev) - u, cx(N - 2 * M - lev) - u) * out;
      }
      return pref(cx(N - lev) - u, cx(N - 2 * M - lev) - u) *
             Mat::Identity(dim, dim);
    }
    case CaseId::Dn_c: {
      // section 3.1.7 works in the adjacent-pair layout, a permutation of the
      // section-2 block display
      const int dim = 2 * N - 2 * lev;
      Mat out = Mat::Zero(dim, dim);
      for (int i = 0; i + 1 < dim; i += 2) {
        out(i, i) = c - cx(lev);
        out(i + 1, i + 1) = c - cx(lev);
        out(i, i + 1) = cx(0.0, 1.0) * u;
        out(i + 1, i) = cx(0.0, -1.0) * u;
      }
      return ((u + cx(lev)) / u) * out;
    }
    case CaseId::Dn_b: {
      const int dim = 2 * N - 2 * lev;
      return pref(cx(N - lev) - c - u, cx(N - 2 - lev) - c - u) *
             Mat::Identity(dim, dim);
    }
    case CaseId::Dn_d: {
      const int dim = 2 * N - 2 * lev;
      if (lev < M) {
        Mat out = Mat::Identity(dim, dim);
        cx ck = (cx(N - 2 * M - 1 + lev) + u) / (cx(N - 2 * M - 1 + lev) - u);
        for (int i = 0; i < 2 * M - 2 * lev; ++i) out(i, i) = ck;
        out(dim - 1, dim - 1) = ck;
        return pref(cx(N - 2 * M - 1 + lev) - u, cx(N - 2 * M - 1 - lev) - u) * out;
      }
      Mat out = Mat::Identity(dim, dim);
      out(dim - 1, dim - 1) = (cx(N - 1 - lev) + u) / (cx(N - 1 - lev) - u);
      return pref(cx(N - 1 - lev) - u, cx(N - 2 * M - 1 - lev) - u) * out;
    }
    case CaseId::appA_MxRest: {
      const int dim = 2 * N + 1 - 2 * lev;
      if (lev < M) {
        Mat out = Mat::Identity(dim, dim);
        cx ck = (cx(N + 0.5 - 2 * M + lev) + u) / (cx(N + 0.5 - 2 * M + lev) - u);
        for (int i = 0; i < 2 * M - 2 * lev; ++i) out(i, i) = ck;
        return pref(cx(N + 0.5 - 2 * M + lev) - u, cx(N + 0.5 - 2 * M - lev) - u) * out;
      }
      return pref(cx(N + 0.5 - lev) - u, cx(N + 0.5 - 2 * M - lev) - u) *
             Mat::Identity(dim, dim);
    }
    case CaseId::appA_O2: {
      const int dim = 2 * N + 1 - 2 * lev;
      return pref(cx(N + 0.5 - lev) - c - u, cx(N - 1.5 - lev) - c - u) *
             Mat::Identity(dim, dim);
    }
    default:
      break;
  }
  throw std::invalid_argument("nested_k: unsupported case");
}

// ---------------------------------------------------------------------------
// block split and boundary coefficients
// ---------------------------------------------------------------------------

struct BlockSplit {
  cx Y;      // scalar block on the raised component
  Mat Ymid;  // middle block
  cx Ystar;  // scalar block on the lowered component
};

// Splits a complex-paired-basis K into (Y, Ybold, Y*).  Requires the
// off-diagonal couplings to the first/last component to vanish.
inline BlockSplit block_split(const Mat& kc) {
  const long m = kc.rows();
  for (long i = 1; i < m; ++i) {
    if (std::abs(kc(0, i)) > 1e-10 || std::abs(kc(i, 0)) > 1e-10 ||
        (i < m - 1 && (std::abs(kc(m - 1, i)) > 1e-10 || std::abs(kc(i, m - 1)) > 1e-10)))
      throw std::invalid_argument("block_split: K not block-diagonal in this basis");
  }
  return {kc(0, 0), kc.block(1, 1, m - 2, m - 2), kc(m - 1, m - 1)};
}

struct BoundaryCoeffs {
  // level-k scalar coefficient maps of the eigenvalue formula
  std::function<cx(cx)> kL, kbarL, kR, kbarR;
};

// Closed-form boundary coefficients (sections 3.1.6-3.1.8, 3.2, Appendix A).
// Argument is theta; uhat = 2N-2-theta (even) resp. 2N-1-theta (odd).
inline BoundaryCoeffs boundary_coeffs(const BoundaryModel& model, int lev) {
  const int N = model.rank;
  const int M = model.k;
  const cx c = model.c;
  const bool odd = model.family.n % 2;
  const double crossing = odd ? 2.0 * N - 1.0 : 2.0 * N - 2.0;
  auto hat = [crossing](cx t) { return cx(crossing) - t; };
  BoundaryCoeffs bc;
  auto set_symmetric = [&](std::function<cx(cx)> klf, std::function<cx(cx)> kbf) {
    bc.kL = klf;
    bc.kbarR = klf;
    bc.kbarL = kbf;
    bc.kR = kbf;
  };
  switch (model.case_id) {
    case CaseId::An_b: {  // identity boundary on an so-chain: M = 0 in 3.1.6/appA
      if (model.family.kind != FamilyKind::so) break;
      if (odd) {
        set_symmetric(
            [=](cx t) {
              cx h = hat(t);
              return (h - cx(N - 1.5)) * (h - cx(N + 0.5)) * (h - cx(2 * N - 1)) /
                     ((h - cx(lev + 1)) * (h - cx(N - 0.5)) * (h - cx(N - 1.5)));
            },
            [=](cx t) { return t * (t - cx(N + 0.5)) / ((t - cx(lev)) * (t - cx(N + 0.5))); });
      } else {
        set_symmetric(
            [=](cx t) {
              cx h = hat(t);
              return (h - cx(N - 2)) * (h - cx(N)) * (h - cx(2 * N - 2)) /
                     ((h - cx(lev + 1)) * (h - cx(N - 1)) * (h - cx(N - 2)));
            },
            [=](cx t) { return t * (t - cx(N)) / ((t - cx(lev)) * (t - cx(N))); });
      }
      return bc;
    }
    case CaseId::Dn_a: {  // section 3.1.6
      if (lev < M) {
        set_symmetric(
            [=](cx t) {
              cx h = hat(t);
              return -(h - cx(N - 2)) * (h + cx(N - 2 * M)) * (h - cx(2 * N - 2)) /
                     ((h - cx(lev + 1)) * (h - cx(N - 1)) * (h - cx(N + 2 * M - 2)));
            },
            [=](cx t) {
              return -t * (t + cx(N - 2 * M)) / ((t - cx(lev)) * (t - cx(N - 2 * M)));
            });
      } else {
        set_symmetric(
            [=](cx t) {
              cx h = hat(t);
              return (h - cx(N - 2)) * (h - cx(N)) * (h - cx(2 * N - 2)) /
                     ((h - cx(lev + 1)) * (h - cx(N - 1)) * (h - cx(N + 2 * M - 2)));
            },
            [=](cx t) {
              return t * (t - cx(N)) / ((t - cx(lev)) * (t - cx(N - 2 * M)));
            });
      }
      return bc;
    }
    case CaseId::Dn_c: {  // section 3.1.7
      set_symmetric(
          [=](cx t) {
            cx h = hat(t);
            return (c - h) * (h - cx(N)) * (h - cx(2 * N - 2)) /
                   ((h - cx(lev + 1)) * (h - cx(N - 1)));
          },
          [=](cx t) { return t * (c - t) / (t - cx(lev)); });
      return bc;
    }
    case CaseId::Dn_b: {  // section 3.1.8
      if (lev == 0) {
        set_symmetric(
            [=](cx t) {
              cx h = hat(t);
              return -(h - cx(N - 2) - c) * (h + cx(N - 2) - c) * (h - cx(2 * N - 2)) *
                     (h - cx(2 * N)) /
                     ((h - 1.0) * (h - cx(N - 1)) * (h - cx(N) + c) * (h - cx(N) - c));
            },
            [=](cx t) { return -(t + cx(N - 2) - c) / (t - cx(N - 2) + c); });
      } else {
        set_symmetric(
            [=](cx t) {
              cx h = hat(t);
              return (h - cx(N - 2) - c) * (h - cx(N)) * (h - cx(2 * N - 2)) /
                     ((h - cx(lev + 1)) * (h - cx(N - 1)) * (h - cx(N) - c));
            },
            [=](cx t) {
              return t * (t - cx(N) + c) / ((t - cx(lev)) * (t - cx(N - 2) + c));
            });
      }
      return bc;
    }
    case CaseId::Dn_d: {  // section 3.2
      if (lev < M) {
        set_symmetric(
            [=](cx t) {
              cx h = hat(t);
              return -(h - cx(N - 2)) * (h + cx(N - 2 * M - 1)) * (h - cx(2 * N - 2)) /
                     ((h - cx(lev + 1)) * (h - cx(N - 1)) * (h - cx(N + 2 * M - 1)));
            },
            [=](cx t) {
              return -t * (t + cx(N - 2 * M - 1)) / ((t - cx(lev)) * (t - cx(N - 2 * M - 1)));
            });
      } else {
        set_symmetric(
            [=](cx t) {
              cx h = hat(t);
              return (h - cx(N - 2)) * (h - cx(2 * N - 2)) /
                     ((h - cx(lev + 1)) * (h - cx(N + 2 * M - 1)));
            },
            [=](cx t) {
              return t * (t - cx(N - 1)) / ((t - cx(lev)) * (t - cx(N - 2 * M - 1)));
            });
      }
      return bc;
    }
    case CaseId::appA_MxRest: {  // Appendix A, O(2M) x O(2N-2M+1)
      if (lev < M) {
        set_symmetric(
            [=](cx t) {
              cx h = hat(t);
              return -(h - cx(N - 1.5)) * (h + cx(N + 0.5 - 2 * M)) * (h - cx(2 * N - 1)) /
                     ((h - cx(lev + 1)) * (h - cx(N - 0.5)) * (h - cx(N + 2 * M - 1.5)));
            },
            [=](cx t) {
              return -t * (t + cx(N + 0.5 - 2 * M)) / ((t - cx(lev)) * (t - cx(N + 0.5 - 2 * M)));
            });
      } else {
        set_symmetric(
            [=](cx t) {
              cx h = hat(t);
              return (h - cx(N - 1.5)) * (h - cx(N + 0.5)) * (h - cx(2 * N - 1)) /
                     ((h - cx(lev + 1)) * (h - cx(N - 0.5)) * (h - cx(N + 2 * M - 1.5)));
            },
            [=](cx t) {
              return t * (t - cx(N + 0.5)) / ((t - cx(lev)) * (t - cx(N + 0.5 - 2 * M)));
            });
      }
      return bc;
    }
    case CaseId::appA_O2: {  // Appendix A, O(2) x O(2N-1)
      if (lev == 0) {
        set_symmetric(
            [=](cx t) {
              cx h = hat(t);
              return -(h - cx(N - 1.5) - c) * (h + cx(N - 1.5) - c) * (h - cx(2 * N - 1)) *
                     (h - cx(N + 0.5)) /
                     ((h - 1.0) * (h - cx(N - 0.5)) * (h - cx(N + 0.5) + c) * (h - cx(N + 0.5) - c));
            },
            [=](cx t) { return -(t + cx(N - 1.5) - c) / (t - cx(N - 1.5) + c); });
      } else {
        set_symmetric(
            [=](cx t) {
              cx h = hat(t);
              return (h - cx(N - 1.5) - c) * (h - cx(N + 0.5)) * (h - cx(2 * N - 1)) /
                     ((h - cx(lev + 1)) * (h - cx(N - 0.5)) * (h - cx(N + 0.5) - c));
            },
            [=](cx t) {
              return t * (t - cx(N + 0.5) + c) / ((t - cx(lev)) * (t - cx(N - 1.5) + c));
            });
      }
      return bc;
    }
    default:
      break;
  }
  throw std::invalid_argument("boundary_coeffs: unsupported case");
}

// General section-3.1.2 definition of the k = 0 boundary coefficients from
// the block split of the complex-basis K-matrices; used as a cross-check
// against the closed forms above.
struct GeneralK0 {
  cx kL, kbarL, kR, kbarR;
};

inline GeneralK0 general_k0(const ScalarKernels& ker, const BlockSplit& kl,
                            const BlockSplit& kr, cx theta) {
  cx h2 = 2.0 * ker.uhat(theta);
  cx dd = ker.d(h2) / ker.a(h2);
  cx cc = ker.c(h2) / ker.a(h2);
  GeneralK0 g;
  g.kL = kl.Y + dd * kl.Ymid.trace() + cc * kl.Ystar;
  g.kbarL = kl.Ystar;
  g.kR = kr.Y;
  g.kbarR = kr.Ystar + dd * kr.Ymid.trace() + cc * kr.Y;
  return g;
}

}  // namespace bethe
