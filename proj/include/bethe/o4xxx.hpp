#pragma once

// O(4) endgame with the SU_D(2)-symmetric boundary (Appendix B): factorized
// R-matrix, one-row XXX transfer matrices tau / tauhat, the crossing
// identity, Lambda(theta) = lambda(theta) lambda(2-theta), and the auxiliary
// XXX BAE.

#include "bethe/bae.hpp"
#include "bethe/tensor.hpp"

namespace bethe {

// r(theta) = I - (2/theta) P on C^2 x C^2
inline TwoSiteOperator xxx_r(cx theta) {
  require_off_pole(theta, "xxx_r");
  TwoSiteOperator op;
  op.n = 2;
  op.label = "r_xxx";
  op.entries = Mat::Identity(4, 4) - (2.0 / theta) * permutation_matrix(2);
  return op;
}

// K(theta) = r(2 theta) P = P - (1/theta) I
inline Mat factorized_boundary(cx theta) {
  require_off_pole(theta, "factorized_boundary");
  return permutation_matrix(2) - (1.0 / theta) * Mat::Identity(4, 4);
}

// Frozen intertwiner between the section-3.2 endgame ordering
// diag((1-theta)/theta x3, (1+theta)/theta) and the C^2 x C^2 factor basis:
// columns are the triplet (|01>+|10>)/sqrt2, |00>, |11| and the singlet
// (|01>-|10>)/sqrt2.  factorized_boundary = kO4AlignScalar * V diag V^T.
inline Mat o4_align_intertwiner() {
  Mat V = Mat::Zero(4, 4);
  const double s = 1.0 / std::sqrt(2.0);
  V(1, 0) = V(2, 0) = s;
  V(0, 1) = 1.0;
  V(3, 2) = 1.0;
  V(1, 3) = s;
  V(2, 3) = -s;
  return V;
}
inline constexpr double kO4AlignScalar = -1.0;

struct XXXChain {
  std::vector<cx> thetas;  // level-(N-2) inhomogeneities theta_k
  std::vector<cx> roots;   // auxiliary XXX roots u_j
  int m() const { return (int)roots.size(); }
  int n() const { return (int)thetas.size(); }
};

// one-row transfer matrix tau(theta) = tr_a prod_k r(theta - theta_k) r(theta + theta_k)
// on the 2^{2n} physical space with factor layout [1, 1dot, 2, 2dot, ...]
inline Mat xxx_tau(const XXXChain& chain, cx theta) {
  const int n = chain.n();
  const int nf = 1 + 2 * n;
  const ptrdiff_t q = ipow(2, nf);
  auto applyT = [&](const Vec& v) {
    Vec w = v;
    for (int k = n; k >= 1; --k) {
      apply_two_site(xxx_r(theta + chain.thetas[k - 1]).entries, w, 0, 2 * k, nf, 2);
      apply_two_site(xxx_r(theta - chain.thetas[k - 1]).entries, w, 0, 2 * k - 1, nf, 2);
    }
    return w;
  };
  Mat full = materialize(applyT, q);
  return partial_trace_aux(full, 2);
}

// tauhat(theta) = tr_adot prod_{k=n..1} r(theta + theta_k) r(theta - theta_k)
// with the dotted factors carrying theta - theta_k
inline Mat xxx_tauhat(const XXXChain& chain, cx theta) {
  const int n = chain.n();
  const int nf = 1 + 2 * n;
  const ptrdiff_t q = ipow(2, nf);
  auto applyT = [&](const Vec& v) {
    Vec w = v;
    for (int k = 1; k <= n; ++k) {
      apply_two_site(xxx_r(theta + chain.thetas[k - 1]).entries, w, 0, 2 * k - 1, nf, 2);
      apply_two_site(xxx_r(theta - chain.thetas[k - 1]).entries, w, 0, 2 * k, nf, 2);
    }
    return w;
  };
  Mat full = materialize(applyT, q);
  return partial_trace_aux(full, 2);
}

// D0(theta): the scalar relating D to the tau product and tauhat to tau(2-theta)
inline cx o4_prefactor(const XXXChain& chain, cx theta) {
  cx d0 = 1.0;
  for (cx tk : chain.thetas)
    d0 *= (theta - tk) / (theta - tk - 2.0) * (theta + tk) / (theta + tk - 2.0);
  return d0;
}

// the full O(4) double-row operator
// D(theta) = D0 tr_{a,adot}[ r_{a adot}(4-2theta) T_a(theta) r_{a adot}(2theta) That_adot(theta) ]
inline Mat o4_double_row(const XXXChain& chain, cx theta) {
  const int n = chain.n();
  const int nf = 2 + 2 * n;
  const ptrdiff_t q = ipow(2, nf);
  auto applyD = [&](const Vec& v) {
    Vec w = v;
    for (int k = 1; k <= n; ++k) {
      apply_two_site(xxx_r(theta + chain.thetas[k - 1]).entries, w, 1, 2 * k, nf, 2);
      apply_two_site(xxx_r(theta - chain.thetas[k - 1]).entries, w, 1, 2 * k + 1, nf, 2);
    }
    apply_two_site(xxx_r(2.0 * theta).entries, w, 0, 1, nf, 2);
    for (int k = n; k >= 1; --k) {
      apply_two_site(xxx_r(theta + chain.thetas[k - 1]).entries, w, 0, 2 * k + 1, nf, 2);
      apply_two_site(xxx_r(theta - chain.thetas[k - 1]).entries, w, 0, 2 * k, nf, 2);
    }
    apply_two_site(xxx_r(4.0 - 2.0 * theta).entries, w, 0, 1, nf, 2);
    return w;
  };
  Mat full = materialize(applyD, q);
  return o4_prefactor(chain, theta) * partial_trace_aux(full, 4);
}

// lambda(theta) of Appendix B
inline cx lam_xxx(cx theta, const std::vector<cx>& thetas, const std::vector<cx>& us) {
  cx A = 1.0, B = 1.0;
  for (cx tk : thetas)
    A *= (theta - tk - 2.0) / (theta - tk) * (theta + tk - 2.0) / (theta + tk);
  for (cx u : us) {
    A *= (theta - u + 2.0) / (theta - u);
    B *= (theta - u - 2.0) / (theta - u);
  }
  return A + B;
}

// Lambda(theta) = lambda(theta) lambda(2 - theta)
inline cx o4_eigenvalue(const XXXChain& chain, cx theta) {
  return lam_xxx(theta, chain.thetas, chain.roots) *
         lam_xxx(2.0 - theta, chain.thetas, chain.roots);
}

// XXX BAE residuals, product form:
// prod_t (u-t-2)(u+t-2)/((u-t)(u+t)) * prod_{i != j} (u_i-u_j-2)/(u_i-u_j+2) = -1
inline std::vector<cx> xxx_bae_residual(const std::vector<cx>& us,
                                        const std::vector<cx>& thetas) {
  std::vector<cx> out;
  for (size_t j = 0; j < us.size(); ++j) {
    cx u = us[j], p = 1.0;
    for (cx t : thetas)
      p *= (u - t - 2.0) / (u - t) * (u + t - 2.0) / (u + t);
    for (size_t i = 0; i < us.size(); ++i) {
      if (i == j) continue;
      p *= (us[i] - u - 2.0) / (us[i] - u + 2.0);
    }
    out.push_back(p + 1.0);
  }
  return out;
}

// Newton on the product form (same guarded engine; residuals are already
// small numbers near a solution so no log folding is needed here)
inline NewtonResult solve_xxx_bae(std::vector<cx> us0, const std::vector<cx>& thetas,
                                  double tol = 1e-13, int itmax = 200) {
  GlogFn G = [&thetas](const std::vector<cx>& us) {
    return xxx_bae_residual(us, thetas);
  };
  return guarded_newton(G, numeric_jacobian(G), std::move(us0), tol, itmax);
}

}  // namespace bethe
