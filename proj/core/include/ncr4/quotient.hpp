#ifndef NCR4_QUOTIENT_HPP
#define NCR4_QUOTIENT_HPP

// The quotient model W = (C* x Delta(0, rho1)) / Z with n.(z, w) = (z w^n, w).
// Each fiber is the torus T_w = C* / w^Z; its lattice parameter is
// v = log(w) / 2pi i, and q = exp(2 pi i v) = w is the nome, so the
// j-invariant of T_w is the modular j evaluated at q = w.

#include <cstddef>
#include <vector>

#include "ncr4/numerics.hpp"

namespace ncr4::quotient {

/// j_torus is certified only for |w| at most this.
inline constexpr double kCertifiedRadius = 0.5;
inline constexpr double kDefaultJTol = 1e-17;

/// Canonical representative of a Z-orbit: |w| < |z| <= 1.
/// `shift` is the exponent n with z = z_input * w^n.
struct QuotientPoint {
  Cx z;
  Cx w;
  int shift = 0;
};

/// Moves (z, w) into the fundamental domain |w| < |z| <= 1. The domain
/// boundary is decided in log space with a relative slack of 1e-12, so an
/// exact power z = w^m lands on |z| = 1 with shift -m.
/// Throws DomainError if z == 0 or |w| is not in (0, 1).
QuotientPoint reduce(Cx z, Cx w);

/// Lattice parameter of T_w: Re v = arg(w)/2pi with arg in [0, 2pi),
/// Im v = -log|w| / 2pi > 0.
struct LatticeParam {
  Cx v;
};
LatticeParam lattice_param(Cx w);

struct JValue {
  Cx value;
  double error_bound = 0.0;  // truncation bound, absolute
  std::size_t terms = 0;
};

/// j(q) = E4(q)^3 / Delta(q) with E4 = 1 + 240 sum sigma3(n) q^n and
/// Delta = q prod (1 - q^n)^24, truncated with certified tails.
/// Throws ConvergenceError for |w| > kCertifiedRadius and DomainError for
/// w == 0 or non-finite w.
JValue j_torus_certified(Cx w, double tol = kDefaultJTol);
inline Cx j_torus(Cx w, double tol = kDefaultJTol) {
  return j_torus_certified(w, tol).value;
}

/// Integer coefficients c(-1), c(0), c(1), ... of j(q) = sum c(n) q^n,
/// i.e. 1, 744, 196884, 21493760, ... (count entries, as doubles).
std::vector<double> j_coefficients(std::size_t count);

/// Direct truncated q-expansion q^{-1} + 744 + 196884 q + ... with
/// `terms` coefficients. Ill-conditioned for complex q of modulus above
/// ~0.2; intended as a cross-check near q = 0.
Cx j_qexpansion(Cx q, std::size_t terms = 60);

/// T_w and T_w' are isomorphic iff |j(w) - j(w')| <= tol (1 + |j(w)|).
bool tori_isomorphic(Cx w, Cx w_other, double tol = 1e-9);

}  // namespace ncr4::quotient

#endif  // NCR4_QUOTIENT_HPP
