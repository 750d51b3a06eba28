#ifndef NCR4_WEIERSTRASS_HPP
#define NCR4_WEIERSTRASS_HPP

// Weierstrass-curve model of the neighbourhood of the nodal fiber: the
// curves
//   y^2 - 4x^3 - x^2 + g2(tau) x + g3(tau) = 0      (affine chart of CP^2)
// over the disk |tau| < rho1, with
//   g2(tau) = 20 sum_{n>=1} n^3 tau^n / (1 - tau^n),
//   g3(tau) = 1/3 sum_{n>=1} (7n^5 + 5n^3) tau^n / (1 - tau^n).
//
// Completing the cube with x = X - 1/12 turns the fiber into
//   y^2 = 4X^3 - G2 X - G3,  G2 = 1/12 + g2,  G3 = g3 - g2/12 - 1/216,
// from which the discriminant G2^3 - 27 G3^2 and j = 1728 G2^3 / Delta
// are read off.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>

#include "ncr4/numerics.hpp"

namespace ncr4::weierstrass {

/// Series are rejected for |tau| > 1 - kConvergenceMargin.
inline constexpr double kConvergenceMargin = 0.05;
inline constexpr double kDefaultSeriesTol = 1e-17;
inline constexpr double kDefaultSingularTol = 1e-14;

/// A truncated series value and the bound on the discarded tail.
struct SeriesValue {
  Cx value;
  double tail_bound = 0.0;
  std::size_t terms = 0;
};

/// Throws ConvergenceError when |tau| is too close to 1 and DomainError
/// for non-finite tau or tol <= 0.
SeriesValue g2_series(Cx tau, double tol = kDefaultSeriesTol);
SeriesValue g3_series(Cx tau, double tol = kDefaultSeriesTol);

inline Cx g2(Cx tau, double tol = kDefaultSeriesTol) {
  return g2_series(tau, tol).value;
}
inline Cx g3(Cx tau, double tol = kDefaultSeriesTol) {
  return g3_series(tau, tol).value;
}

/// F(x, y) = y^2 - 4x^3 - x^2 + g2 x + g3 with its partial derivatives.
struct FiberCubic {
  Cx tau;
  Cx g2;
  Cx g3;

  Cx operator()(Cx x, Cx y) const noexcept {
    return y * y - 4.0 * x * x * x - x * x + g2 * x + g3;
  }
  Cx dx(Cx x, Cx /*y*/) const noexcept {
    return -12.0 * x * x - 2.0 * x + g2;
  }
  Cx dy(Cx /*x*/, Cx y) const noexcept { return 2.0 * y; }
  Cx dxx(Cx x, Cx /*y*/) const noexcept { return -24.0 * x - 2.0; }
  Cx dyy(Cx /*x*/, Cx /*y*/) const noexcept { return {2.0, 0.0}; }
  Cx dxy(Cx /*x*/, Cx /*y*/) const noexcept { return {0.0, 0.0}; }
  Cx hessian_det(Cx x, Cx y) const noexcept {
    return dxx(x, y) * dyy(x, y) - dxy(x, y) * dxy(x, y);
  }
  /// Coefficients of 4x^3 + x^2 - g2 x - g3, highest degree first; y^2
  /// equals this cubic on the fiber.
  std::array<Cx, 4> rhs_coefficients() const noexcept {
    return {Cx{4.0, 0.0}, Cx{1.0, 0.0}, -g2, -g3};
  }
};

FiberCubic fiber_cubic(Cx tau, double tol = kDefaultSeriesTol);

/// Depressed-form invariants and discriminant of one fiber.
struct Discriminant {
  Cx G2;
  Cx G3;
  Cx delta;  // G2^3 - 27 G3^2
  bool singular = false;
};

Discriminant depressed_invariants(Cx g2, Cx g3);

/// Flags the fiber as singular when |Delta| < tol. The series and Delta
/// are evaluated in long double and rounded.
Discriminant is_singular_fiber(Cx tau, double tol = kDefaultSingularTol);

/// j = 1728 G2^3 / (G2^3 - 27 G3^2). Throws PoleError on a singular fiber.
Cx j_from_weierstrass(Cx tau, double singular_tol = kDefaultSingularTol);

/// Header: tau_re,tau_im,j_re,j_im
struct JSample {
  Cx tau;
  Cx j;
};
void write_jscan_csv(std::ostream& out, std::span<const JSample> rows);

}  // namespace ncr4::weierstrass

#endif  // NCR4_WEIERSTRASS_HPP
