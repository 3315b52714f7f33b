#pragma once

// Scalar kernel functions of the rational R-matrices and their crossing
// combinations.  Everything downstream (R/K builders, eigenvalue formulas,
// Bethe equations) is expressed through these few rational maps, so pole
// tracking lives here: evaluating a kernel at (or numerically on top of) a
// pole throws instead of returning Inf.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace bethe {

using cx = std::complex<double>;

inline constexpr double kPoleEps = 1e-13;

struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

inline void require_off_pole(cx denom, const char* where) {
  if (std::abs(denom) < kPoleEps) {
    throw PoleError(std::string("kernel pole hit in ") + where);
  }
}

// d(u) = -2/u, common to all three families.
inline cx d_kernel(cx u) {
  require_off_pole(u, "d(u)");
  return -2.0 / u;
}

inline cx a_kernel(cx u) { return 1.0 + d_kernel(u); }

// Scalar kernels of an orthogonal chain with site dimension m = 2N (even)
// or m = 2N+1 (odd).  The crossing point is uhat = m-2-u in both cases:
// m-2 equals 2N-2 (even) resp. 2N-1 (odd, Appendix A).
struct ScalarKernels {
  int m;  // site dimension

  explicit ScalarKernels(int m_) : m(m_) {
    if (m < 3) throw std::invalid_argument("ScalarKernels: need m >= 3");
  }

  cx uhat(cx u) const { return cx(m - 2) - u; }

  cx d(cx u) const { return d_kernel(u); }
  cx a(cx u) const { return a_kernel(u); }

  cx e(cx u) const {
    cx den = uhat(u);
    require_off_pole(den, "e_N(u)");
    return -2.0 / den;
  }

  cx b(cx u) const { return 1.0 + e(u); }
  cx c(cx u) const { return d(u) + e(u); }

  // Middle-model kernel: the O(m-2) chain appearing one nesting level down.
  cx e_mid(cx u) const {
    cx den = cx(m - 4) - u;
    require_off_pole(den, "e_{N-1}(u)");
    return -2.0 / den;
  }

  // f(2u) of Appendix C, first form.
  cx f(cx two_u) const {
    return 1.0 + cx(m - 2) * d(two_u) / a(two_u) + e(two_u);
  }

  // Appendix C also gives f(2u) = 1 + (m-2) d(2u-2) + e_{N-1}(2u-2);
  // kept as a cross-check target for the unit tests.
  cx f_shifted(cx two_u) const {
    return 1.0 + cx(m - 2) * d(two_u - 2.0) + e_mid(two_u - 2.0);
  }
};

}  // namespace bethe
