#include "ncr4/numerics.hpp"

#include <limits>
#include <string>

namespace ncr4 {

Cx principal_log(Cx w) {
  if (!is_finite(w)) {
    throw DomainError("log: non-finite argument");
  }
  if (w == Cx{0.0, 0.0}) {
    throw DomainError("log: argument is zero");
  }
  Cx l = std::log(w);
  if (l.imag() <= -kPi) {
    l.imag(kPi);
  }
  return l;
}

BranchedLog branched_log(Cx w, int k) { return {principal_log(w), k}; }

Cx int_pow(Cx w, int n) {
  if (n == 0) {
    return {1.0, 0.0};
  }
  if (n < 0) {
    if (w == Cx{0.0, 0.0}) {
      throw DomainError("int_pow: negative power of zero");
    }
    // Guard against overflow of -n for INT_MIN.
    if (n == std::numeric_limits<int>::min()) {
      return int_pow(Cx{1.0, 0.0} / w, -(n + 1)) / w;
    }
    return int_pow(Cx{1.0, 0.0} / w, -n);
  }
  Cx result{1.0, 0.0};
  Cx base = w;
  unsigned e = static_cast<unsigned>(n);
  while (e != 0) {
    if (e & 1U) {
      result *= base;
    }
    e >>= 1U;
    if (e != 0) {
      base *= base;
    }
  }
  return result;
}

AnnulusSpec AnnulusSpec::make(double r_in, double r_out) {
  if (!(r_in >= 0.0) || !(r_out > r_in) || std::isnan(r_out)) {
    throw DomainError("annulus: need 0 <= r_in < r_out, got r_in=" +
                      std::to_string(r_in) + " r_out=" + std::to_string(r_out));
  }
  return {r_in, r_out};
}

double annulus_modulus(const AnnulusSpec& a) {
  if (!(a.r_in > 0.0) || !std::isfinite(a.r_out) || !(a.r_out > a.r_in)) {
    throw DomainError(
        "annulus_modulus: not a conformal annulus of finite modulus");
  }
  return std::log(a.r_out / a.r_in) / kTwoPi;
}

bool annuli_equivalent(const AnnulusSpec& a, const AnnulusSpec& b,
                       double tol) {
  return std::abs(annulus_modulus(a) - annulus_modulus(b)) <= tol;
}

bool ModuliParams::admissible(double rho0, double rho1, double rho2) noexcept {
  return std::isfinite(rho0) && std::isfinite(rho1) && std::isfinite(rho2) &&
         0.0 < rho0 && rho0 < rho1 && rho1 < 1.0 && 1.0 < rho2 &&
         rho2 < 1.0 / rho1;
}

ModuliParams ModuliParams::make(double rho0, double rho1, double rho2) {
  if (!admissible(rho0, rho1, rho2)) {
    throw DomainError("moduli: need 0 < rho0 < rho1 < 1 < rho2 < 1/rho1, got (" +
                      std::to_string(rho0) + ", " + std::to_string(rho1) +
                      ", " + std::to_string(rho2) + ")");
  }
  return {rho0, rho1, rho2};
}

}  // namespace ncr4
