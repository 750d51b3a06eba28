#include "ncr4/weierstrass.hpp"

#include <cmath>
#include <complex>
#include <ostream>
#include <string>

namespace ncr4::weierstrass {
namespace {

// Sums coeff(n) tau^n / (1 - tau^n) in arithmetic T until the geometric
// tail certificate drops below tol. For n > N the term bound
// coeff(n) r^n / (1 - r) shrinks by at most q = ((N+2)/(N+1))^degree * r
// per step, so the tail after N terms is at most bound(N+1) / (1 - q)
// once q < 1.
template <typename T>
struct LambertResult {
  std::complex<T> value;
  double tail_bound = 0.0;
  std::size_t terms = 0;
};

template <typename T, typename Coeff>
LambertResult<T> lambert_sum(Cx tau, double tol, int degree, Coeff&& coeff,
                             const char* name) {
  if (!is_finite(tau)) {
    throw DomainError(std::string(name) + ": non-finite tau");
  }
  if (!(tol > 0.0)) {
    throw DomainError(std::string(name) + ": tolerance must be positive");
  }
  const double r = std::abs(tau);
  if (r > 1.0 - kConvergenceMargin) {
    throw ConvergenceError(std::string(name) +
                           ": |tau| too close to 1 for a certified sum");
  }
  using C = std::complex<T>;
  LambertResult<T> out{C{0, 0}, 0.0, 0};
  const C t{static_cast<T>(tau.real()), static_cast<T>(tau.imag())};
  C power{1, 0};
  double rpow = 1.0;
  for (std::size_t n = 0;; ++n) {
    const double next = static_cast<double>(n + 1);
    const double q =
        std::pow((next + 1.0) / next, static_cast<double>(degree)) * r;
    const double next_bound = coeff(next) * rpow * r / (1.0 - r);
    if (q < 1.0) {
      const double tail = next_bound / (1.0 - q);
      if (tail < tol) {
        out.tail_bound = tail;
        out.terms = n;
        return out;
      }
    }
    power *= t;
    rpow *= r;
    out.value += static_cast<T>(coeff(next)) * power / (T{1} - power);
  }
}

double g2_coeff(double n) { return 20.0 * n * n * n; }

double g3_coeff(double n) {
  const double n3 = n * n * n;
  return (7.0 * n3 * n * n + 5.0 * n3) / 3.0;
}

// Near |tau| = 0.3 the discriminant is ~1e-11 of G2^3, so it is formed
// from extended-precision series.
using Ext = long double;
using CxExt = std::complex<Ext>;
constexpr double kExtSeriesTol = 1e-21;

struct ExtInvariants {
  CxExt G2;
  CxExt G3;
  CxExt delta;
};

ExtInvariants extended_invariants(Cx tau) {
  const CxExt g2v =
      lambert_sum<Ext>(tau, kExtSeriesTol, 3, g2_coeff, "g2_series").value;
  const CxExt g3v =
      lambert_sum<Ext>(tau, kExtSeriesTol, 5, g3_coeff, "g3_series").value;
  ExtInvariants e;
  e.G2 = Ext{1} / Ext{12} + g2v;
  e.G3 = g3v - g2v / Ext{12} - Ext{1} / Ext{216};
  e.delta = e.G2 * e.G2 * e.G2 - Ext{27} * e.G3 * e.G3;
  return e;
}

Cx narrow(CxExt z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace

SeriesValue g2_series(Cx tau, double tol) {
  const auto r = lambert_sum<double>(tau, tol, 3, g2_coeff, "g2_series");
  return {r.value, r.tail_bound, r.terms};
}

SeriesValue g3_series(Cx tau, double tol) {
  const auto r = lambert_sum<double>(tau, tol, 5, g3_coeff, "g3_series");
  return {r.value, r.tail_bound, r.terms};
}

FiberCubic fiber_cubic(Cx tau, double tol) {
  return {tau, g2(tau, tol), g3(tau, tol)};
}

Discriminant depressed_invariants(Cx g2v, Cx g3v) {
  Discriminant d;
  d.G2 = 1.0 / 12.0 + g2v;
  d.G3 = g3v - g2v / 12.0 - 1.0 / 216.0;
  d.delta = d.G2 * d.G2 * d.G2 - 27.0 * d.G3 * d.G3;
  return d;
}

Discriminant is_singular_fiber(Cx tau, double tol) {
  const ExtInvariants e = extended_invariants(tau);
  Discriminant d{narrow(e.G2), narrow(e.G3), narrow(e.delta), false};
  d.singular = std::abs(d.delta) < tol;
  return d;
}

Cx j_from_weierstrass(Cx tau, double singular_tol) {
  const ExtInvariants e = extended_invariants(tau);
  if (std::abs(narrow(e.delta)) < singular_tol) {
    throw PoleError("j_from_weierstrass: singular fiber (pole of j)");
  }
  return narrow(Ext{1728} * e.G2 * e.G2 * e.G2 / e.delta);
}

void write_jscan_csv(std::ostream& out, std::span<const JSample> rows) {
  out << "tau_re,tau_im,j_re,j_im\n";
  const auto old = out.precision(17);
  for (const auto& r : rows) {
    out << r.tau.real() << ',' << r.tau.imag() << ',' << r.j.real() << ','
        << r.j.imag() << '\n';
  }
  out.precision(old);
}

}  // namespace ncr4::weierstrass
