#include "ncr4/quotient.hpp"

#include <array>
#include <cmath>
#include <string>

namespace ncr4::quotient {
namespace {

constexpr std::size_t kMaxTerms = 512;
// zeta(3) rounded up; sigma_3(n) <= zeta(3) n^3.
constexpr double kZeta3Bound = 1.2020569031595943;

const std::array<double, kMaxTerms + 1>& sigma3_table() {
  static const auto table = [] {
    std::array<double, kMaxTerms + 1> t{};
    for (std::size_t d = 1; d <= kMaxTerms; ++d) {
      const double d3 = static_cast<double>(d) * static_cast<double>(d) *
                        static_cast<double>(d);
      for (std::size_t m = d; m <= kMaxTerms; m += d) {
        t[m] += d3;
      }
    }
    return t;
  }();
  return table;
}

void check_base(Cx w, const char* name) {
  if (!is_finite(w)) {
    throw DomainError(std::string(name) + ": non-finite w");
  }
  const double r = std::abs(w);
  if (!(r > 0.0) || !(r < 1.0)) {
    throw DomainError(std::string(name) + ": need 0 < |w| < 1");
  }
}

}  // namespace

QuotientPoint reduce(Cx z, Cx w) {
  check_base(w, "reduce");
  if (!is_finite(z) || z == Cx{0.0, 0.0}) {
    throw DomainError("reduce: z must be a finite nonzero number");
  }
  // |z w^n| <= 1 and > |w|  <=>  n = ceil(log|z| / -log|w|).
  const double ratio = std::log(std::abs(z)) / -std::log(std::abs(w));
  const double nd = std::ceil(ratio - 1e-12 * std::max(1.0, std::abs(ratio)));
  if (std::abs(nd) > 1e8) {
    throw DomainError("reduce: shift out of range");
  }
  const int n = static_cast<int>(nd);
  return {z * int_pow(w, n), w, n};
}

LatticeParam lattice_param(Cx w) {
  check_base(w, "lattice_param");
  double arg = std::atan2(w.imag(), w.real());
  if (arg < 0.0) {
    arg += kTwoPi;
  }
  if (arg >= kTwoPi) {
    arg = 0.0;
  }
  return {Cx{arg / kTwoPi, -std::log(std::abs(w)) / kTwoPi}};
}

JValue j_torus_certified(Cx w, double tol) {
  check_base(w, "j_torus");
  if (!(tol > 0.0)) {
    throw DomainError("j_torus: tolerance must be positive");
  }
  const double r = std::abs(w);
  if (r > kCertifiedRadius) {
    throw ConvergenceError("j_torus: |w| = " + std::to_string(r) +
                           " exceeds the certified radius 0.5");
  }
  const auto& sigma3 = sigma3_table();

  // E4 with geometric tail certificate on 240 zeta(3) n^3 r^n.
  Cx e4{1.0, 0.0};
  Cx power{1.0, 0.0};
  double rpow = 1.0;
  double e4_tail = 0.0;
  std::size_t n = 0;
  for (;; ++n) {
    const double next = static_cast<double>(n + 1);
    const double q = std::pow((next + 1.0) / next, 3.0) * r;
    const double bound = 240.0 * kZeta3Bound * next * next * next * rpow * r;
    if (q < 1.0 && bound / (1.0 - q) < tol) {
      e4_tail = bound / (1.0 - q);
      break;
    }
    if (n + 1 > kMaxTerms) {
      throw ConvergenceError("j_torus: E4 series did not converge");
    }
    power *= w;
    rpow *= r;
    e4 += 240.0 * sigma3[n + 1] * power;
  }
  const std::size_t e4_terms = n;

  // Delta = q prod (1 - q^n)^24. The neglected factors change log Delta
  // by at most 24 sum_{m>N} r^m / (1 - r^m) <= 24 r^{N+1} / (1 - r)^2.
  Cx prod{1.0, 0.0};
  power = Cx{1.0, 0.0};
  rpow = 1.0;
  double log_tail = 0.0;
  for (n = 0;; ++n) {
    const double bound = 24.0 * rpow * r / ((1.0 - r) * (1.0 - r));
    if (bound < tol) {
      log_tail = bound;
      break;
    }
    if (n + 1 > kMaxTerms) {
      throw ConvergenceError("j_torus: eta product did not converge");
    }
    power *= w;
    rpow *= r;
    prod *= 1.0 - power;
  }
  const Cx p2 = prod * prod;
  const Cx p4 = p2 * p2;
  const Cx p8 = p4 * p4;
  const Cx p24 = p8 * p8 * p8;
  const Cx delta = w * p24;
  const Cx j = e4 * e4 * e4 / delta;

  const double e4_abs = std::abs(e4) + e4_tail;
  const double err = 3.0 * e4_abs * e4_abs * e4_tail / std::abs(delta) +
                     std::abs(j) * std::expm1(log_tail);
  return {j, err, std::max(e4_terms, n)};
}

std::vector<double> j_coefficients(std::size_t count) {
  // j(q) q = E4^3 * prod (1 - q^n)^{-24}; both factors have non-negative
  // coefficients, so the products below are free of cancellation.
  const std::size_t len = count;
  if (len == 0) {
    return {};
  }
  if (len > kMaxTerms) {
    throw DomainError("j_coefficients: too many coefficients requested");
  }
  const auto& sigma3 = sigma3_table();
  std::vector<double> e4(len, 0.0);
  e4[0] = 1.0;
  for (std::size_t k = 1; k < len; ++k) {
    e4[k] = 240.0 * sigma3[k];
  }
  auto mul = [len](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> c(len, 0.0);
    for (std::size_t i = 0; i < len; ++i) {
      for (std::size_t k = 0; i + k < len; ++k) {
        c[i + k] += a[i] * b[k];
      }
    }
    return c;
  };
  std::vector<double> sigma1(len, 0.0);
  for (std::size_t d = 1; d < len; ++d) {
    for (std::size_t m = d; m < len; m += d) {
      sigma1[m] += static_cast<double>(d);
    }
  }
  // n p(n) = 24 sum_{k=1}^n sigma1(k) p(n-k)
  std::vector<double> p(len, 0.0);
  p[0] = 1.0;
  for (std::size_t k = 1; k < len; ++k) {
    double s = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      s += sigma1[i] * p[k - i];
    }
    p[k] = 24.0 * s / static_cast<double>(k);
  }
  return mul(mul(mul(e4, e4), e4), p);
}

Cx j_qexpansion(Cx q, std::size_t terms) {
  check_base(q, "j_qexpansion");
  const std::vector<double> c = j_coefficients(terms);
  // Horner in q, then divide by q for the c(-1) q^{-1} leading term.
  Cx acc{0.0, 0.0};
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * q + c[i];
  }
  return acc / q;
}

bool tori_isomorphic(Cx w, Cx w_other, double tol) {
  if (!(tol > 0.0)) {
    throw DomainError("tori_isomorphic: tolerance must be positive");
  }
  const Cx a = j_torus(w);
  const Cx b = j_torus(w_other);
  return std::abs(a - b) <= tol * (1.0 + std::abs(a));
}

}  // namespace ncr4::quotient
