#pragma once

// Residual-norm verifiers: Yang-Baxter, boundary Yang-Baxter (reflection),
// and the crossed BYBE of the su(4) section.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bethe/catalog.hpp"
#include "bethe/tensor.hpp"

namespace bethe {

struct ResidualSample {
  std::vector<cx> parameters;
  double residual = 0.0;  // Frobenius norm of LHS - RHS
  double scale = 0.0;     // max(|LHS|_F, |RHS|_F)
  double relative() const { return residual / std::max(1.0, scale); }
};

struct ResidualReport {
  std::string equation_id;
  std::vector<ResidualSample> samples;
  unsigned seed = 0;
  double max_relative_residual = 0.0;

  void add(ResidualSample s) {
    max_relative_residual = std::max(max_relative_residual, s.relative());
    samples.push_back(std::move(s));
  }
};

inline ResidualSample residual_of(const Mat& lhs, const Mat& rhs,
                                  std::vector<cx> params) {
  ResidualSample s;
  s.parameters = std::move(params);
  s.residual = (lhs - rhs).norm();
  s.scale = std::max(lhs.norm(), rhs.norm());
  return s;
}

// R12(u1-u2) R13(u1) R23(u2) = R23(u2) R13(u1) R12(u1-u2) on C^(n^3)
inline ResidualReport check_ybe(const AlgebraFamily& fam, cx u1, cx u2) {
  const int n = fam.n;
  auto lift = [n](const Mat& r, int i, int j) {
    TwoSiteOperator op{n, r, "R"};
    // three sites, no auxiliary space
    return embed_two_site(op, i, j, 3, false).matrix();
  };
  Mat r12 = lift(build_r(fam, u1 - u2), 0, 1);
  Mat r13 = lift(build_r(fam, u1), 0, 2);
  Mat r23 = lift(build_r(fam, u2), 1, 2);
  ResidualReport rep;
  rep.equation_id = "YBE";
  rep.add(residual_of(r12 * r13 * r23, r23 * r13 * r12, {u1, u2}));
  return rep;
}

// R12(u1-u2) K1(u1) R21(u1+u2) K2(u2) = K2(u2) R12(u1+u2) K1(u1) R21(u1-u2)
inline ResidualReport check_bybe(const AlgebraFamily& fam,
                                 const std::function<Mat(cx)>& K, cx u1, cx u2) {
  const int n = fam.n;
  const Mat p = permutation_matrix(n);
  const Mat id = Mat::Identity(n, n);
  auto r21 = [&](cx u) -> Mat { return p * build_r(fam, u) * p; };
  Mat k1 = kron(K(u1), id);
  Mat k2 = kron(id, K(u2));
  Mat lhs = build_r(fam, u1 - u2) * k1 * r21(u1 + u2) * k2;
  Mat rhs = k2 * build_r(fam, u1 + u2) * k1 * r21(u1 - u2);
  ResidualReport rep;
  rep.equation_id = "BYBE";
  rep.add(residual_of(lhs, rhs, {u1, u2}));
  return rep;
}

inline ResidualReport check_bybe(const BoundaryModel& model, cx u1, cx u2) {
  return check_bybe(model.family, [&](cx u) { return model.K(u); }, u1, u2);
}

// partial transpose of a two-site operator in the first/second factor
inline Mat partial_transpose(const Mat& op, int n, int slot) {
  Mat out(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          if (slot == 0)
            out(a * n + b, c * n + d) = op(c * n + b, a * n + d);
          else
            out(a * n + b, c * n + d) = op(a * n + d, c * n + b);
        }
  return out;
}

// Crossed BYBE for su(4) boundary matrices (section 4):
//   R(u1-u2) (K(u1) x I) R^{t1}(4-u1-u2) (I x K(u2))
//     = (I x K(u2)) R^{t2}(4-u1-u2) (K(u1) x I) R(u1-u2),
// using R_{a bbar}(u) = R^{t_b}(4-u) and the P-symmetry of the su R-matrix.
inline ResidualReport check_crossed_bybe(const std::function<Mat(cx)>& K,
                                         cx u1, cx u2) {
  const AlgebraFamily fam{FamilyKind::su, 4};
  const Mat id = Mat::Identity(4, 4);
  Mat k1 = kron(K(u1), id);
  Mat k2 = kron(id, K(u2));
  Mat r = build_r(fam, u1 - u2);
  Mat rc = build_r(fam, 4.0 - u1 - u2);
  Mat lhs = r * k1 * partial_transpose(rc, 4, 0) * k2;
  Mat rhs = k2 * partial_transpose(rc, 4, 1) * k1 * r;
  ResidualReport rep;
  rep.equation_id = "crossed-BYBE";
  rep.add(residual_of(lhs, rhs, {u1, u2}));
  return rep;
}

inline ResidualReport check_crossed_bybe(const Mat& K, cx u1, cx u2) {
  return check_crossed_bybe([&](cx) { return K; }, u1, u2);
}

// ---------------------------------------------------------------------------
// annulus sampling
// ---------------------------------------------------------------------------

// Poles of R(u) for the bulk family.
inline std::vector<cx> r_poles(const AlgebraFamily& fam) {
  switch (fam.kind) {
    case FamilyKind::su: return {0.0};
    case FamilyKind::so: return {0.0, cx(fam.n - 2)};
    case FamilyKind::sp: return {0.0, cx(fam.n + 2)};
  }
  return {};
}

// Poles of the displayed K(u) (rational cases only).
inline std::vector<cx> k_poles(const BoundaryModel& m) {
  switch (m.case_id) {
    case CaseId::appA_MxRest:
      return {cx(m.rank + 0.5 - 2 * m.k)};
    case CaseId::appA_O2:
      return {cx(m.rank - 1.5) + m.c, cx(m.rank - 1.5) - m.c};
    default:
      return {};  // polynomial entries
  }
}

constexpr double kAnnulusInner = 0.1;
constexpr double kAnnulusOuter = 3.0;
constexpr double kPoleDistance = 0.05;

// Draws pairs (u1, u2) from the annulus, rejecting draws where u1, u2,
// u1-u2 or u1+u2 come within kPoleDistance of a pole of R or K.
inline std::vector<std::pair<cx, cx>> sample_pairs(
    const AlgebraFamily& fam, const std::vector<cx>& kp, int count,
    unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> rad(kAnnulusInner, kAnnulusOuter);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  auto draw = [&] {
    double r = rad(rng), a = ang(rng);
    return cx(r * std::cos(a), r * std::sin(a));
  };
  std::vector<cx> rp = r_poles(fam);
  auto clear_of = [&](cx u, const std::vector<cx>& poles) {
    for (cx p : poles)
      if (std::abs(u - p) < kPoleDistance) return false;
    return true;
  };
  std::vector<std::pair<cx, cx>> out;
  while ((int)out.size() < count) {
    cx u1 = draw(), u2 = draw();
    bool ok = clear_of(u1, rp) && clear_of(u2, rp) && clear_of(u1 - u2, rp) &&
              clear_of(u1 + u2, rp) && clear_of(u1, kp) && clear_of(u2, kp) &&
              std::abs(u1 - u2) > kPoleDistance && std::abs(u1 + u2) > kPoleDistance;
    if (ok) out.emplace_back(u1, u2);
  }
  return out;
}

constexpr unsigned kDefaultYbeSeed = 20240817u;

// Full annulus sweep of the BYBE for one catalog entry.
inline ResidualReport bybe_annulus_report(const BoundaryModel& model,
                                          int count = 20,
                                          unsigned seed = kDefaultYbeSeed) {
  ResidualReport rep;
  rep.equation_id = "BYBE";
  rep.seed = seed;
  for (auto [u1, u2] : sample_pairs(model.family, k_poles(model), count, seed))
    rep.add(check_bybe(model, u1, u2).samples.front());
  return rep;
}

inline ResidualReport ybe_annulus_report(const AlgebraFamily& fam,
                                         int count = 20,
                                         unsigned seed = kDefaultYbeSeed) {
  ResidualReport rep;
  rep.equation_id = "YBE";
  rep.seed = seed;
  for (auto [u1, u2] : sample_pairs(fam, {}, count, seed))
    rep.add(check_ybe(fam, u1, u2).samples.front());
  return rep;
}

inline ResidualReport crossed_bybe_annulus_report(const Mat& K, int count = 20,
                                                  unsigned seed = kDefaultYbeSeed) {
  ResidualReport rep;
  rep.equation_id = "crossed-BYBE";
  rep.seed = seed;
  AlgebraFamily fam{FamilyKind::su, 4};
  // the crossed R(4-u1-u2) adds poles at u1+u2 = 4 (and the shifted trace pole)
  std::vector<cx> extra{};
  for (auto [u1, u2] : sample_pairs(fam, extra, count, seed)) {
    if (std::abs(u1 + u2 - 4.0) < kPoleDistance) continue;
    rep.add(check_crossed_bybe(K, u1, u2).samples.front());
  }
  return rep;
}

}  // namespace bethe
