#pragma once

// Bethe Ansatz equation systems (section 3.1.6, section 3.2, Appendix A),
// the guarded logarithmic Newton solver, the nested eigenvalue formulas,
// and the vanishing-residue check.

#include <Eigen/QR>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bethe/catalog.hpp"

namespace bethe {

// fold a log-branch into (-pi, pi]
inline cx fold_branch(cx g) {
  return g - cx(0.0, 2.0 * M_PI) * std::floor((g.imag() + M_PI) / (2.0 * M_PI));
}

inline cx lg(cx z) { return fold_branch(std::log(z)); }

// ---------------------------------------------------------------------------
// BAE system
// ---------------------------------------------------------------------------

enum class BaeStructure {
  even_regular,   // section 3.1.6: families 1..N-2, +, -; D_N kernel
  rank_breaking,  // section 3.2: families 1..N-1; su(N) kernel
  odd,            // Appendix A: families 1..N; B_N kernel
};

struct BAESystem {
  BoundaryModel model;
  BaeStructure structure;
  int L = 0;
  int N = 0;            // Dynkin rank of the bulk
  int M = 0;            // boundary block parameter
  std::vector<int> counts;
  std::vector<std::string> labels;
  Eigen::MatrixXd cartan;           // alpha_i . alpha_j
  std::vector<std::optional<cx>> r_rho;  // r_l(v) = (rho + v)/(rho - v)
  std::vector<cx> shifts;           // u_i = v_i + shift per family

  int nfam() const { return (int)counts.size(); }
  int total() const {
    int t = 0;
    for (int c : counts) t += c;
    return t;
  }

  // flattened root vector -> per-family views
  std::vector<std::vector<cx>> split(const std::vector<cx>& vs) const {
    std::vector<std::vector<cx>> out(nfam());
    int p = 0;
    for (int f = 0; f < nfam(); ++f)
      for (int i = 0; i < counts[f]; ++i) out[f].push_back(vs[p++]);
    return out;
  }

  // whether the (v + v') doubled factor appears for family pair (l, k)
  bool doubled(int l, int k) const {
    if (structure == BaeStructure::rank_breaking)
      return !(l == nfam() - 1 && k == nfam() - 1);
    return true;
  }

  // folded logarithmic residuals, one per root
  std::vector<cx> glog(const std::vector<cx>& vs) const {
    auto fam = split(vs);
    std::vector<cx> out;
    out.reserve(vs.size());
    for (int l = 0; l < nfam(); ++l) {
      for (int j = 0; j < counts[l]; ++j) {
        cx v = fam[l][j];
        cx g = 0.0;
        if (l == 0) g += 2.0 * cx(L) * lg((v - 1.0) / (v + 1.0));
        if (r_rho[l]) g += 2.0 * lg((*r_rho[l] + v) / (*r_rho[l] - v));
        for (int k = 0; k < nfam(); ++k) {
          double al = cartan(l, k);
          if (al == 0.0) continue;
          for (int i = 0; i < counts[k]; ++i) {
            if (k == l && i == j) continue;
            cx w = fam[k][i];
            g += lg((v - w + al) / (v - w - al));
            if (doubled(l, k)) g += lg((v + w + al) / (v + w - al));
          }
        }
        out.push_back(fold_branch(g));
      }
    }
    return out;
  }

  // analytic Jacobian of the (unfolded) logarithmic residuals
  Mat jacobian(const std::vector<cx>& vs) const {
    const int n = (int)vs.size();
    Mat J = Mat::Zero(n, n);
    // family/offset of each flat index
    std::vector<int> famof(n), idxof(n);
    {
      int p = 0;
      for (int f = 0; f < nfam(); ++f)
        for (int i = 0; i < counts[f]; ++i) {
          famof[p] = f;
          idxof[p] = i;
          ++p;
        }
    }
    for (int row = 0; row < n; ++row) {
      int l = famof[row];
      cx v = vs[row];
      if (l == 0) J(row, row) += 2.0 * cx(L) * (1.0 / (v - 1.0) - 1.0 / (v + 1.0));
      if (r_rho[l]) J(row, row) += 2.0 * (1.0 / (*r_rho[l] + v) + 1.0 / (*r_rho[l] - v));
      for (int col = 0; col < n; ++col) {
        int k = famof[col];
        double al = cartan(l, k);
        if (al == 0.0 || (col == row)) continue;
        cx w = vs[col];
        cx diff = 1.0 / (v - w + al) - 1.0 / (v - w - al);
        J(row, row) += diff;
        J(row, col) -= diff;
        if (doubled(l, k)) {
          cx sum = 1.0 / (v + w + al) - 1.0 / (v + w - al);
          J(row, row) += sum;
          J(row, col) += sum;
        }
      }
    }
    return J;
  }

  // product-form residuals LHS - 1, one per root
  std::vector<cx> product_residual(const std::vector<cx>& vs) const {
    auto fam = split(vs);
    std::vector<cx> out;
    for (int l = 0; l < nfam(); ++l) {
      for (int j = 0; j < counts[l]; ++j) {
        cx v = fam[l][j];
        cx p = 1.0;
        if (l == 0) p *= std::pow((v - 1.0) / (v + 1.0), 2.0 * L);
        if (r_rho[l]) {
          cx r = (*r_rho[l] + v) / (*r_rho[l] - v);
          p *= r * r;
        }
        for (int k = 0; k < nfam(); ++k) {
          double al = cartan(l, k);
          if (al == 0.0) continue;
          for (int i = 0; i < counts[k]; ++i) {
            if (k == l && i == j) continue;
            cx w = fam[k][i];
            p *= (v - w + al) / (v - w - al);
            if (doubled(l, k)) p *= (v + w + al) / (v + w - al);
          }
        }
        out.push_back(p - 1.0);
      }
    }
    return out;
  }
};

// Builds the BAE system for the boundary cases with displayed equations.
inline BAESystem build_bae(const BoundaryModel& model, int L,
                           const std::vector<int>& counts) {
  BAESystem sys;
  sys.model = model;
  sys.L = L;
  sys.M = model.k;
  const int m = model.family.n;
  const bool odd = m % 2;
  sys.N = odd ? (m - 1) / 2 : m / 2;
  const int N = sys.N;

  auto chain_cartan = [](int n, double last_diag, double last_off) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) c(i, i) = 2.0;
    for (int i = 0; i + 1 < n; ++i) c(i, i + 1) = c(i + 1, i) = -1.0;
    if (n >= 1) c(n - 1, n - 1) = last_diag;
    if (n >= 2) c(n - 1, n - 2) = c(n - 2, n - 1) = last_off;
    return c;
  };

  switch (model.case_id) {
    case CaseId::An_b:  // identity boundary on an so-chain: M = 0 structure
    case CaseId::appA_MxRest: {
      if (model.family.kind != FamilyKind::so || !odd)
        throw std::invalid_argument("build_bae: expected odd orthogonal chain");
      sys.structure = BaeStructure::odd;
      // B_N: last node short (diagonal 1, off-diagonal -1)
      sys.cartan = chain_cartan(N, 1.0, -1.0);
      sys.labels.resize(N);
      sys.shifts.resize(N);
      sys.r_rho.assign(N, std::nullopt);
      for (int k = 1; k <= N; ++k) {
        sys.labels[k - 1] = std::to_string(k);
        sys.shifts[k - 1] = cx(k);
      }
      int M = model.case_id == CaseId::An_b ? 0 : model.k;
      sys.M = M;
      if (M >= 1) sys.r_rho[M - 1] = cx(N - M + 0.5);
      break;
    }
    case CaseId::Dn_d: {  // section 3.2, rank-breaking
      sys.structure = BaeStructure::rank_breaking;
      sys.cartan = chain_cartan(N - 1, 2.0, -1.0);  // su(N)
      sys.labels.resize(N - 1);
      sys.shifts.resize(N - 1);
      sys.r_rho.assign(N - 1, std::nullopt);
      for (int k = 1; k <= N - 1; ++k) {
        sys.labels[k - 1] = std::to_string(k);
        sys.shifts[k - 1] = cx(k);
      }
      if (sys.M >= 1) sys.r_rho[sys.M - 1] = cx(N - sys.M - 1);
      break;
    }
    case CaseId::Dn_a: {  // section 3.1.6
      sys.structure = BaeStructure::even_regular;
      // D_N: nodes 1..N-2 in a chain, then +, - both attached to N-2
      Eigen::MatrixXd c = Eigen::MatrixXd::Zero(N, N);
      for (int i = 0; i < N; ++i) c(i, i) = 2.0;
      for (int i = 0; i + 1 < N - 2; ++i) c(i, i + 1) = c(i + 1, i) = -1.0;
      if (N >= 3) {
        c(N - 3, N - 2) = c(N - 2, N - 3) = -1.0;
        c(N - 3, N - 1) = c(N - 1, N - 3) = -1.0;
      }
      sys.cartan = c;
      sys.labels.resize(N);
      sys.shifts.resize(N);
      sys.r_rho.assign(N, std::nullopt);
      for (int k = 1; k <= N - 2; ++k) {
        sys.labels[k - 1] = std::to_string(k);
        sys.shifts[k - 1] = cx(k);
      }
      sys.labels[N - 2] = "+";
      sys.labels[N - 1] = "-";
      sys.shifts[N - 2] = sys.shifts[N - 1] = cx(N + 1);
      if (sys.M >= 1) sys.r_rho[sys.M - 1] = cx(N - sys.M);
      break;
    }
    default:
      throw std::invalid_argument("build_bae: no displayed BAE for this case");
  }
  if (counts.size() != sys.labels.size())
    throw std::invalid_argument("build_bae: counts length mismatch");
  sys.counts = counts;
  return sys;
}

// ---------------------------------------------------------------------------
// guarded log-Newton
// ---------------------------------------------------------------------------

struct NewtonResult {
  std::vector<cx> roots;
  int iterations = 0;
  bool converged = false;
  bool stalled = false;   // line search stalled; residual may still be small
  double residual = 0.0;  // max |glog|
};

using GlogFn = std::function<std::vector<cx>(const std::vector<cx>&)>;
using JacFn = std::function<Mat(const std::vector<cx>&)>;

inline double glog_norm(const GlogFn& G, const std::vector<cx>& vs) {
  std::vector<cx> g;
  try {
    g = G(vs);
  } catch (const PoleError&) {
    return std::numeric_limits<double>::infinity();
  }
  double mx = 0.0;
  for (cx z : g) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      return std::numeric_limits<double>::infinity();
    mx = std::max(mx, std::abs(z));
  }
  return mx;
}

inline NewtonResult guarded_newton(const GlogFn& G, const JacFn& J,
                                   std::vector<cx> vs, double tol = 1e-12,
                                   int itmax = 300) {
  NewtonResult res;
  // nudge off exact poles / branch points
  for (int k = 0; k < 20 && glog_norm(G, vs) == std::numeric_limits<double>::infinity(); ++k)
    for (cx& v : vs) v = v * (1.0 + 1e-7) + 1e-7;
  const int n = (int)vs.size();
  for (int it = 0; it < itmax; ++it) {
    std::vector<cx> g = G(vs);
    double g0 = 0.0;
    for (cx z : g) g0 = std::max(g0, std::abs(z));
    res.residual = g0;
    if (g0 < tol) {
      res.roots = vs;
      res.iterations = it;
      res.converged = true;
      return res;
    }
    Mat jac = J(vs);
    Vec rhs(n);
    for (int i = 0; i < n; ++i) rhs(i) = g[i];
    Vec step = jac.completeOrthogonalDecomposition().solve(rhs);
    double t = 1.0;
    bool ok = false;
    for (int h = 0; h < 60; ++h) {
      std::vector<cx> trial = vs;
      for (int i = 0; i < n; ++i) trial[i] -= t * step(i);
      if (glog_norm(G, trial) < g0) {
        vs = trial;
        ok = true;
        break;
      }
      t /= 2.0;
    }
    if (!ok) {
      res.roots = vs;
      res.iterations = it;
      res.stalled = true;
      return res;
    }
  }
  res.roots = vs;
  res.iterations = itmax;
  return res;
}

// numeric-Jacobian convenience wrapper
inline JacFn numeric_jacobian(const GlogFn& G, double h = 1e-7) {
  return [G, h](const std::vector<cx>& vs) {
    std::vector<cx> g0 = G(vs);
    const int n = (int)vs.size();
    Mat J(n, n);
    for (int c = 0; c < n; ++c) {
      std::vector<cx> vp = vs;
      vp[c] += h;
      std::vector<cx> gp = G(vp);
      for (int r = 0; r < n; ++r) J(r, c) = (gp[r] - g0[r]) / h;
    }
    return J;
  };
}

// ---------------------------------------------------------------------------
// root sets
// ---------------------------------------------------------------------------

struct BetheRootSet {
  std::string case_name;
  int L = 0;
  std::vector<int> counts;
  std::vector<std::vector<cx>> roots;  // v-values per family
  double residual_norm = 0.0;
  std::vector<int> branch_integers;    // documented default: all zero (folded solver)
  std::string source = "solver";

  std::vector<cx> flat() const {
    std::vector<cx> out;
    for (const auto& f : roots) out.insert(out.end(), f.begin(), f.end());
    return out;
  }
};

inline std::vector<cx> bae_residual(const BAESystem& sys, const BetheRootSet& rs) {
  return sys.product_residual(rs.flat());
}

inline BetheRootSet solve_bae(const BAESystem& sys,
                              const std::vector<std::vector<cx>>& seed,
                              double tol = 1e-12, double log_accept = 1e-9) {
  std::vector<cx> vs0;
  for (const auto& f : seed) vs0.insert(vs0.end(), f.begin(), f.end());
  GlogFn G = [&sys](const std::vector<cx>& v) { return sys.glog(v); };
  JacFn J = [&sys](const std::vector<cx>& v) { return sys.jacobian(v); };
  NewtonResult nr = guarded_newton(G, J, vs0, tol);
  if (!nr.converged && !(nr.stalled && nr.residual < log_accept))
    throw std::runtime_error("solve_bae: Newton did not converge (residual " +
                             std::to_string(nr.residual) + ")");
  BetheRootSet rs;
  rs.case_name = case_name(sys.model.case_id);
  rs.L = sys.L;
  rs.counts = sys.counts;
  rs.roots = sys.split(nr.roots);
  rs.branch_integers.assign(nr.roots.size(), 0);
  double mx = 0.0;
  for (cx r : sys.product_residual(nr.roots)) mx = std::max(mx, std::abs(r));
  rs.residual_norm = mx;
  return rs;
}

// conjugate 2-string seed around a center with imaginary half-width
inline std::vector<cx> two_string(cx center, double halfwidth) {
  return {center + cx(0.0, halfwidth), center - cx(0.0, halfwidth)};
}

// ---------------------------------------------------------------------------
// eigenvalue formulas
// ---------------------------------------------------------------------------

// Level-0 and endgame boundary coefficients for the O(3) chain (Appendix A,
// N = 1), built from the complex-basis K components (Y, Y0, Y*) via the
// general section-3.1.2 definitions.
struct O3Coefficients {
  std::function<cx(cx)> k0L, k0bL, k0R, k0bR, kNL, kNR;
};

inline O3Coefficients o3_coefficients(std::function<cx(cx)> Y,
                                      std::function<cx(cx)> Y0,
                                      std::function<cx(cx)> Ys) {
  constexpr int Nr = 1;
  ScalarKernels ker(3);
  O3Coefficients c;
  c.k0L = [=](cx th) {
    cx x = 2.0 * ker.uhat(th);
    return Y(th) + ker.d(x) / ker.a(x) * Y0(th) + ker.c(x) / ker.a(x) * Ys(th);
  };
  c.k0bL = Ys;
  c.k0R = Y;
  c.k0bR = [=](cx th) {
    cx x = 2.0 * ker.uhat(th);
    return Ys(th) + ker.d(x) / ker.a(x) * Y0(th) + ker.c(x) / ker.a(x) * Y(th);
  };
  c.kNL = [=](cx th) {
    cx x = 2.0 * th - 2.0 * Nr + 2.0;
    return Y0(th - cx(Nr) + 1.0) - d_kernel(x) / a_kernel(x) * Ys(th - cx(Nr) + 1.0);
  };
  c.kNR = [=](cx th) {
    cx x = 2.0 * th - 2.0 * Nr + 2.0;
    return Y0(th - cx(Nr) + 1.0) - d_kernel(x) / a_kernel(x) * Y(th - cx(Nr) + 1.0);
  };
  return c;
}

// lambda(theta) = F0 + lambda_1 + F0-bar for the O(3) chain; roots_u are the
// (unshifted) u-values of the single family.
inline cx lam_o3(cx theta, int L, const std::vector<cx>& roots_u,
                 const O3Coefficients& c) {
  constexpr int Nr = 1;
  ScalarKernels ker(3);
  cx th = theta, thh = ker.uhat(theta);
  cx F0 = c.k0L(thh) * c.k0R(th) * std::pow(ker.a(th), 2 * L);
  cx F0b = c.k0bL(thh) * c.k0bR(th) * std::pow(ker.a(thh), 2 * L);
  cx lam1 = c.kNL(thh) * c.kNR(th);
  for (cx u : roots_u) {
    F0 *= ker.a(u - th) / ker.a(u + th);
    F0b *= ker.a(u - thh) / ker.a(u + thh);
    lam1 *= (th - u + 2.0) / (th - u) * (th + u - 2.0 * Nr + 2.0) / (th + u - 2.0 * Nr) *
            (th - u - 1.0) / (th - u + 1.0) * (th + u - 2.0 * Nr - 1.0) /
            (th + u - 2.0 * Nr + 1.0);
  }
  return F0 + lam1 + F0b;
}

// identity-boundary coefficients and the O(2)xO(1) boundary of Tables 2-3
inline O3Coefficients o3_identity_coefficients() {
  auto one = [](cx) { return cx(1.0); };
  return o3_coefficients(one, one, one);
}
inline O3Coefficients o3_o2_coefficients() {
  auto c = [](cx u) { return (0.5 - u) / (0.5 + u); };
  auto one = [](cx) { return cx(1.0); };
  return o3_coefficients(c, one, c);
}

// section-3.2 eigenvalue for so(6), O(3)xO(3) boundary (N = 3, M = 1);
// u1, u2 are unshifted u-values of the two families.
inline cx lam_so6(cx theta, int L, const std::vector<cx>& u1,
                  const std::vector<cx>& u2) {
  constexpr int N = 3;
  ScalarKernels ker(2 * N);
  cx th = theta, thh = ker.uhat(theta);
  auto kL = [&](cx t) {
    cx h = 2.0 * N - 2.0 - t;
    return -(h - cx(N - 2)) * (h + cx(N - 3)) * (h - cx(2 * N - 2)) /
           ((h - 1.0) * (h - cx(N - 1)) * (h - cx(N + 1)));
  };
  auto kR = [&](cx t) {
    return -t * (t + cx(N - 3)) / (t * (t - cx(N - 3)));
  };
  cx F0 = kL(thh) * kR(th) * std::pow(ker.a(th), 2 * L);
  cx F0b = kR(thh) * kL(th) * std::pow(ker.a(thh), 2 * L);
  for (cx u : u1) {
    F0 *= ker.a(u - th) / ker.a(u + th);
    F0b *= ker.a(u - thh) / ker.a(u + thh);
  }
  // lambda_{N-2} endgame: K0(t) = (t+N-2)/(t+2M-1) = 1 for N=3, M=1
  auto lamp = [&](cx t) {
    cx A = 1.0, B = 1.0;
    for (cx u : u1) A *= (t - u - 2.0) / (t - u) * (t + u - 2.0 * N + 2.0) / (t + u - 2.0 * N + 4.0);
    for (cx u : u2) {
      A *= (t - u + 2.0) / (t - u);
      B *= (t - u - 2.0) / (t - u);
    }
    return A + B;
  };
  return F0 + lamp(th) * lamp(2.0 * N - 2.0 - th) + F0b;
}

// Case-bound eigenvalue map; dispatches on the system structure.
inline cx eigenvalue(const BAESystem& sys, const BetheRootSet& rs, cx theta) {
  auto fam_u = [&](int f) {
    std::vector<cx> us;
    for (cx v : rs.roots[f]) us.push_back(v + sys.shifts[f]);
    return us;
  };
  if (sys.structure == BaeStructure::odd && sys.N == 1) {
    O3Coefficients c = sys.M == 0 ? o3_identity_coefficients() : o3_o2_coefficients();
    return lam_o3(theta, sys.L, fam_u(0), c);
  }
  if (sys.structure == BaeStructure::rank_breaking && sys.N == 3 && sys.M == 1)
    return lam_so6(theta, sys.L, fam_u(0), fam_u(1));
  throw std::invalid_argument("eigenvalue: no implemented formula for this case");
}

// ---------------------------------------------------------------------------
// vanishing-residue condition
// ---------------------------------------------------------------------------

// 8-point contour average |sum lam(z)(z - c)| / npts around each declared
// simple pole of lambda.
inline std::vector<double> residue_check(const std::function<cx(cx)>& lam,
                                         const std::vector<cx>& poles,
                                         double radius = 1e-4, int npts = 8) {
  std::vector<double> out;
  for (cx c : poles) {
    cx s = 0.0;
    for (int j = 0; j < npts; ++j) {
      cx z = c + radius * std::exp(cx(0.0, 2.0 * M_PI * j / npts));
      s += lam(z) * (z - c);
    }
    out.push_back(std::abs(s) / npts);
  }
  return out;
}

// residues of the system eigenvalue at theta = u_i^{(k)} for all roots
inline std::vector<double> residue_check(const BAESystem& sys,
                                         const BetheRootSet& rs,
                                         double radius = 1e-4) {
  std::vector<cx> poles;
  for (int f = 0; f < sys.nfam(); ++f)
    for (cx v : rs.roots[f]) poles.push_back(v + sys.shifts[f]);
  return residue_check([&](cx th) { return eigenvalue(sys, rs, th); }, poles, radius);
}

// ---------------------------------------------------------------------------
// paper table fixtures (Tables 1-3); values as printed, interpreted as v/i
// ---------------------------------------------------------------------------

struct PaperTableRow {
  std::vector<cx> listed;  // the printed "v/i" entries
  std::vector<cx> seeds() const {  // v-plane Newton seeds
    std::vector<cx> out;
    for (cx z : listed) out.push_back(cx(0.0, 1.0) * z);
    return out;
  }
};

// Table 1: L = 5, O(3) symmetric (identity) boundary, 4 magnons
inline std::vector<PaperTableRow> table1() {
  return {
      {{{0.15505, 0.500072}, {0.15505, -0.500072}, {1.40879, 0.596627}, {1.40879, -0.596627}}},
      {{{0.16835, 0.500319}, {0.16835, -0.500319}, {0.790932, 0.476179}, {0.790932, -0.476179}}},
      {{{0.336147, 0.499739}, {0.336147, -0.499739}, {1.38729, 0.597299}, {1.38729, -0.597299}}},
  };
}

// Table 2: L = 4, O(2) symmetric boundary, 4 magnons
inline std::vector<PaperTableRow> table2() {
  return {
      {{{0.651897, 0.529008}, {0.651897, -0.529008}, {0.0, 0.503048}, {0.0, 1.50742}}},
  };
}

// Table 3: L = 5, O(2) symmetric boundary, 4 magnons
inline std::vector<PaperTableRow> table3() {
  return {
      {{{0.581077, 0.0}, {0.0, 0.500009}, {0.0, 1.50001}, {0.0, 2.55144}}},
      {{{1.45725, 0.0}, {0.0, 0.500003}, {0.0, 1.500003}, {0.0, 2.53386}}},
      {{{0.0, 0.499999839}, {0.0, 1.499999841}, {0.0, 2.50153}, {0.0, 3.78771}}},
  };
}

}  // namespace bethe
