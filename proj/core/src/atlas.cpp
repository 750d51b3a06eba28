#include "ncr4/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ncr4/transition.hpp"
#include "ncr4/weierstrass.hpp"

namespace ncr4::atlas {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_cp1(const CP1Point& c, const ModuliParams& params) {
  if (!is_finite(c.coord)) {
    throw DomainError("CP1 point: non-finite coordinate");
  }
  const double r = std::abs(c.coord);
  if (c.chart == BaseChart::D1 && !(r < params.rho1)) {
    throw DomainError("CP1 point: D1' coordinate outside Delta(rho1)");
  }
  if (c.chart == BaseChart::D2 && !(r < 1.0 / params.rho0)) {
    throw DomainError("CP1 point: D2' coordinate outside Delta(1/rho0)");
  }
}

}  // namespace

void validate(const AtlasPoint& p, const ModuliParams& params) {
  std::visit(
      overloaded{
          [&](const QuotientChart& q) {
            const double rw = std::abs(q.point.w);
            const double rz = std::abs(q.point.z);
            if (!(rw > 0.0 && rw < params.rho1)) {
              throw DomainError("quotient chart: base outside Delta(0, rho1)");
            }
            if (!(rz > rw && rz <= 1.0 + 1e-12)) {
              throw DomainError(
                  "quotient chart: fiber coordinate not canonical");
            }
          },
          [&](const WeierstrassChart& s) {
            if (!(std::abs(s.tau) < params.rho1)) {
              throw DomainError("weierstrass chart: tau outside Delta(rho1)");
            }
            if (s.at_infinity) {
              return;
            }
            const auto cubic = weierstrass::fiber_cubic(s.tau);
            const double scale = 1.0 + std::pow(std::abs(s.x), 3.0) +
                                 std::norm(s.y);
            if (!(std::abs(cubic(s.x, s.y)) <= 1e-9 * scale)) {
              throw DomainError("weierstrass chart: point is off its fiber");
            }
          },
          [&](const ProductChart& a) {
            if (!params.fiber_annulus().contains(a.z)) {
              throw DomainError("product chart: z outside Delta(1, rho2)");
            }
            if (!(std::abs(a.u) < 1.0 / params.rho0)) {
              throw DomainError("product chart: u outside Delta(1/rho0)");
            }
          },
      },
      p);
}

CP1Point transport(const CP1Point& c) {
  if (c.coord == Cx{0.0, 0.0}) {
    throw DomainError("transport: chart center has no image in the other chart");
  }
  return {c.chart == BaseChart::D1 ? BaseChart::D2 : BaseChart::D1,
          1.0 / c.coord};
}

CP1Point base_map(const AtlasPoint& p) {
  return std::visit(
      overloaded{
          [](const QuotientChart& q) {
            return CP1Point{BaseChart::D1, q.point.w};
          },
          [](const WeierstrassChart& s) {
            return CP1Point{BaseChart::D1, s.tau};
          },
          [](const ProductChart& a) { return CP1Point{BaseChart::D2, a.u}; },
      },
      p);
}

FiberClass classify_fiber(const CP1Point& c, const ModuliParams& params) {
  if (c.chart == BaseChart::D1) {
    if (c.coord == Cx{0.0, 0.0}) {
      return {FiberKind::NodalSphere, Cx{0.0, 0.0}};
    }
    if (std::abs(c.coord) < params.rho1) {
      return {FiberKind::Torus, c.coord};
    }
    return {FiberKind::Annulus, 1.0 / c.coord};
  }
  if (c.coord != Cx{0.0, 0.0} && std::abs(c.coord) > 1.0 / params.rho1) {
    const Cx w = 1.0 / c.coord;
    if (std::abs(w) < params.rho1) {
      return {FiberKind::Torus, w};
    }
  }
  return {FiberKind::Annulus, c.coord};
}

const char* to_string(FiberKind kind) noexcept {
  switch (kind) {
    case FiberKind::NodalSphere:
      return "NodalSphere";
    case FiberKind::Torus:
      return "Torus";
    case FiberKind::Annulus:
      return "Annulus";
  }
  return "?";
}

AtlasPoint preimage(const CP1Point& c, const ModuliParams& params) {
  check_cp1(c, params);
  if (c.chart == BaseChart::D2) {
    return ProductChart{Cx{std::sqrt(params.rho2), 0.0}, c.coord};
  }
  const Cx w = c.coord;
  if (w == Cx{0.0, 0.0}) {
    // The node x = y = 0 of y^2 = 4x^3 + x^2.
    return WeierstrassChart{w, Cx{0.0, 0.0}, Cx{0.0, 0.0}, false};
  }
  if (std::abs(w) < kSeamFraction * params.rho1) {
    // x = 0 gives y^2 = -g3(tau).
    return WeierstrassChart{w, Cx{0.0, 0.0},
                            std::sqrt(-weierstrass::g3(w)), false};
  }
  return QuotientChart{quotient::reduce(Cx{1.0, 0.0}, w)};
}

AtlasPoint w_chart_point(Cx z, Cx w) {
  return QuotientChart{quotient::reduce(z, w)};
}

Report chart_consistency_check(const ModuliParams& params,
                               const ConsistencyOptions& options) {
  Report report;
  report.suite = "chart_consistency";
  std::mt19937_64 rng(options.seed);
  // Stay a relative margin inside the open domains so the CR stencil does
  // not leave them; keep arg u away from the principal-log cut of 1/u.
  const double margin = 1e-3;
  std::uniform_real_distribution<double> rz(1.0 + margin, params.rho2 - margin);
  std::uniform_real_distribution<double> ru(1.0 / params.rho1 + margin,
                                            1.0 / params.rho0 - margin);
  std::uniform_real_distribution<double> arg_z(-kPi, kPi);
  std::uniform_real_distribution<double> arg_u(-kPi + 0.05, kPi - 0.05);

  double round_trip = 0.0;
  double base_dev = 0.0;
  double branch_dev = 0.0;
  double cr_z = 0.0;
  double cr_u = 0.0;
  for (std::size_t i = 0; i < options.samples; ++i) {
    const Cx z = std::polar(rz(rng), arg_z(rng));
    const Cx u = std::polar(ru(rng), arg_u(rng));

    const auto q = transition::glue_map(z, u, params);
    const auto back = transition::glue_inverse(q, params);
    round_trip = std::max(
        {round_trip, std::abs(back.z - z) / std::abs(z),
         std::abs(back.u - u) / std::abs(u)});

    const CP1Point via_w = base_map(QuotientChart{q});
    const CP1Point via_product = transport(base_map(ProductChart{z, u}));
    base_dev = std::max(base_dev, via_w == via_product
                                      ? 0.0
                                      : std::abs(via_w.coord - via_product.coord));

    const auto q3 = transition::glue_map(z, u, params, 3);
    const double shift_error = (q.shift - q3.shift == 3) ? 0.0 : 1.0;
    branch_dev = std::max({branch_dev, std::abs(q3.z - q.z), shift_error});

    // Canonical fiber coordinate, lifted to C* around the sample.
    const Cx w = 1.0 / u;
    const Cx lift_factor = int_pow(w, q.shift);
    cr_z = std::max(cr_z, cr_residual(
                              [&](Cx zz) {
                                return transition::glue_lift(zz, u) *
                                       lift_factor;
                              },
                              z, options.cr_step));
    cr_u = std::max(cr_u, cr_residual(
                              [&](Cx uu) {
                                return transition::glue_lift(z, uu) *
                                       int_pow(1.0 / uu, q.shift);
                              },
                              u, options.cr_step));
  }
  const auto n = options.samples;
  report.add(bounded_check("glue_round_trip", n, round_trip,
                           options.round_trip_tol, options.seed));
  report.add(bounded_check("glue_base_compatibility", n, base_dev, 0.0,
                           options.seed));
  report.add(bounded_check("glue_branch_independence", n, branch_dev, 1e-12,
                           options.seed));
  report.add(bounded_check("glue_cr_residual_z", n, cr_z, options.cr_tol,
                           options.seed));
  report.add(bounded_check("glue_cr_residual_u", n, cr_u, options.cr_tol,
                           options.seed));
  return report;
}

const char* to_string(CertificateKind kind) noexcept {
  switch (kind) {
    case CertificateKind::AnnulusModulus:
      return "annulus modulus";
    case CertificateKind::TorusFamily:
      return "torus-family moduli";
    case CertificateKind::Uncertified:
      return "uncertified";
  }
  return "?";
}

namespace {

// j restricted to the real segment [lo, hi] is strictly increasing when
// sampled at `points` equally spaced values.
bool j_increasing_on(double lo, double hi, int points) {
  double prev = quotient::j_torus(Cx{lo, 0.0}).real();
  for (int i = 1; i <= points; ++i) {
    const double w = lo + (hi - lo) * i / points;
    const double cur = quotient::j_torus(Cx{w, 0.0}).real();
    if (!(cur > prev)) {
      return false;
    }
    prev = cur;
  }
  return true;
}

// All coefficients of j(q) - 1/q are positive, so |j(w)| <= j(|w|) for
// every w; with j increasing on [s/2, w_star] the band s/2 <= |w| < s
// never reaches j(w_star).
Certificate torus_family_certificate(double small, double large) {
  Certificate c;
  c.kind = CertificateKind::TorusFamily;
  const double r_cert = quotient::kCertifiedRadius;
  const double band_lo = 0.5 * small;
  if (small >= r_cert || band_lo < 0.01) {
    c.kind = CertificateKind::Uncertified;
    std::ostringstream os;
    os << "rho1 values " << small << " and " << large
       << " differ, but the j-certificate needs 0.02 <= min rho1 < "
       << r_cert;
    c.detail = os.str();
    return c;
  }
  c.w_star = 0.5 * (small + std::min(large, r_cert));
  c.j_star = quotient::j_torus(Cx{c.w_star, 0.0}).real();
  c.band_bound = quotient::j_torus(Cx{small, 0.0}).real();
  const bool monotone = j_increasing_on(band_lo, c.w_star, 64);
  std::ostringstream os;
  os.precision(17);
  os << "T_w at w* = " << c.w_star << " (inside the family with rho1 = "
     << large << ") has j = " << c.j_star
     << "; on the band " << band_lo << " <= |w| < " << small
     << " of the other family |j| <= " << c.band_bound;
  if (!monotone || !(c.j_star > c.band_bound * (1.0 + 1e-9))) {
    c.kind = CertificateKind::Uncertified;
    os << " (separation failed numerically)";
  }
  c.detail = os.str();
  return c;
}

}  // namespace

Verdict distinguish(const ModuliParams& a, const ModuliParams& b, double tol) {
  ModuliParams::make(a.rho0, a.rho1, a.rho2);
  ModuliParams::make(b.rho0, b.rho1, b.rho2);
  Verdict v;
  const double ma = annulus_modulus(a.fiber_annulus());
  const double mb = annulus_modulus(b.fiber_annulus());
  if (std::abs(a.rho2 - b.rho2) > tol) {
    Certificate c;
    c.kind = CertificateKind::AnnulusModulus;
    c.modulus_a = ma;
    c.modulus_b = mb;
    std::ostringstream os;
    os.precision(17);
    os << "mod Delta(1, " << a.rho2 << ") = " << ma << " != mod Delta(1, "
       << b.rho2 << ") = " << mb;
    c.detail = os.str();
    v.certificates.push_back(std::move(c));
  }
  if (std::abs(a.rho1 - b.rho1) > tol) {
    v.certificates.push_back(torus_family_certificate(
        std::min(a.rho1, b.rho1), std::max(a.rho1, b.rho1)));
  }
  v.equivalent = v.certificates.empty();
  return v;
}

}  // namespace ncr4::atlas
