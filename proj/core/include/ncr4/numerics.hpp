#ifndef NCR4_NUMERICS_HPP
#define NCR4_NUMERICS_HPP

// Complex arithmetic conventions shared by every module: the principal
// branch, branched logarithms, annulus domains, the moduli triple and the
// finite-difference Cauchy-Riemann residual.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "ncr4/errors.hpp"

namespace ncr4 {

using Cx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Cx kI{0.0, 1.0};

/// Default finite-difference step for holomorphicity residuals.
inline constexpr double kDefaultCrStep = 1e-4;

inline bool is_finite(Cx z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Principal logarithm with Im in (-pi, pi]. std::log returns -pi for
/// inputs on the negative real axis carrying a negative zero imaginary
/// part; those are folded back onto +pi.
Cx principal_log(Cx w);

/// A logarithm value together with its branch index.
struct BranchedLog {
  Cx principal;  // Im in (-pi, pi]
  int branch = 0;

  Cx value() const noexcept { return principal + Cx{0.0, kTwoPi * branch}; }
};

/// log w on branch k. Throws DomainError for w == 0 or non-finite w.
BranchedLog branched_log(Cx w, int k);

/// w^n for integer n by repeated squaring; exact for n == 0.
Cx int_pow(Cx w, int n);

/// Estimate |df/dzbar| at z with the 4-point central stencil
///   [(f(z+h) - f(z-h)) + i (f(z+ih) - f(z-ih))] / (4h),
/// where h = step * max(1, |z|). Second-order accurate; exceptions thrown
/// by f propagate.
template <typename F>
double cr_residual(F&& f, Cx z, double step = kDefaultCrStep) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw DomainError("cr_residual: step must be positive and finite");
  }
  const double h = step * std::max(1.0, std::abs(z));
  const Cx fx = Cx(f(z + Cx{h, 0.0})) - Cx(f(z - Cx{h, 0.0}));
  const Cx fy = Cx(f(z + Cx{0.0, h})) - Cx(f(z - Cx{0.0, h}));
  return std::abs((fx + kI * fy) / (4.0 * h));
}

/// Open annulus r_in < |z| < r_out. r_in == 0 is a punctured disk and
/// r_out == +inf is unbounded.
struct AnnulusSpec {
  double r_in = 0.0;
  double r_out = 1.0;

  /// Throws DomainError unless 0 <= r_in < r_out <= +inf.
  static AnnulusSpec make(double r_in, double r_out);

  bool contains(Cx z) const noexcept {
    const double r = std::abs(z);
    return r > r_in && r < r_out;
  }
};

/// Conformal modulus log(r_out / r_in) / 2pi. Throws DomainError for a
/// punctured disk or an unbounded annulus, which have no finite modulus.
double annulus_modulus(const AnnulusSpec& a);

/// Annuli are biholomorphic iff their moduli agree; `tol` is absolute on
/// the modulus.
bool annuli_equivalent(const AnnulusSpec& a, const AnnulusSpec& b,
                       double tol = 1e-12);

/// The triple (rho0, rho1, rho2) with 0 < rho0 < rho1 < 1 < rho2 < 1/rho1.
/// rho0 only sizes the gluing overlap.
struct ModuliParams {
  double rho0 = 0.1;
  double rho1 = 0.3;
  double rho2 = 2.0;

  /// Validates the region constraint; throws DomainError otherwise.
  static ModuliParams make(double rho0, double rho1, double rho2);

  static bool admissible(double rho0, double rho1, double rho2) noexcept;

  /// Delta(rho0, rho1): the base annulus of the overlap in the D1' chart.
  AnnulusSpec overlap_w() const noexcept { return {rho0, rho1}; }
  /// Delta(1/rho1, 1/rho0): the same overlap in the D2' chart.
  AnnulusSpec overlap_u() const noexcept { return {1.0 / rho1, 1.0 / rho0}; }
  /// Delta(1, rho2): the annulus fiber of the product chart.
  AnnulusSpec fiber_annulus() const noexcept { return {1.0, rho2}; }
};

}  // namespace ncr4

#endif  // NCR4_NUMERICS_HPP
