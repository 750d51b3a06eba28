#ifndef NCR4_ATLAS_HPP
#define NCR4_ATLAS_HPP

// The glued manifold E(rho1, rho2) = (Delta(1, rho2) x Delta(1/rho0)) u_V W
// together with the fibration f : E -> CP^1 that reads off the base
// coordinate (w on W, 1/u on the product chart).
//
// CP^1 is covered by D1' = Delta(rho1) and D2' = Delta(1/rho0) with
// transition psi(w) = 1/w on Delta(rho0, rho1).
//
// W is presented in two ways internally: near the nodal fiber by the
// affine Weierstrass chart (tau, x, y), elsewhere by the quotient
// coordinates (z, w). The seam at |w| = rho1/2 only decides which
// presentation `preimage` and `w_chart_point` produce.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ncr4/numerics.hpp"
#include "ncr4/quotient.hpp"
#include "ncr4/report.hpp"

namespace ncr4::atlas {

inline constexpr double kSeamFraction = 0.5;

struct QuotientChart {
  quotient::QuotientPoint point;
};

/// Affine point (x, y) of the fiber over tau, or the point at infinity of
/// that fiber.
struct WeierstrassChart {
  Cx tau;
  Cx x;
  Cx y;
  bool at_infinity = false;
};

struct ProductChart {
  Cx z;  // in Delta(1, rho2)
  Cx u;  // in Delta(1/rho0)
};

using AtlasPoint = std::variant<QuotientChart, WeierstrassChart, ProductChart>;

/// Throws DomainError if the coordinates leave their declared domains or a
/// Weierstrass point is off its cubic (|F| > 1e-9 (1 + |x|^3 + |y|^2)).
void validate(const AtlasPoint& p, const ModuliParams& params);

enum class BaseChart { D1, D2 };

struct CP1Point {
  BaseChart chart = BaseChart::D1;
  Cx coord;

  friend bool operator==(const CP1Point&, const CP1Point&) = default;
};

/// psi-transport into the other chart; throws DomainError when the point
/// is the center of its chart (no representation in the other one).
CP1Point transport(const CP1Point& c);

/// f_{rho1,rho2}: W points map to their base in D1', product points to
/// u in D2'.
CP1Point base_map(const AtlasPoint& p);

enum class FiberKind { NodalSphere, Torus, Annulus };

struct FiberClass {
  FiberKind kind = FiberKind::Annulus;
  /// w for tori (D1' coordinate), u for annuli (D2' coordinate), 0 for
  /// the nodal sphere.
  Cx base;
};

/// Base 0 in D1' -> NodalSphere; 0 < |w| < rho1 -> Torus; otherwise
/// (including |w| = rho1) -> Annulus.
FiberClass classify_fiber(const CP1Point& c, const ModuliParams& params);

const char* to_string(FiberKind kind) noexcept;

/// Some point of the fiber over c, built directly in the appropriate
/// chart. Throws DomainError if c is outside its chart disk.
AtlasPoint preimage(const CP1Point& c, const ModuliParams& params);

/// A point of W over w with fiber coordinate z: Weierstrass presentation
/// below the seam is not derivable from (z, w) without the W ~ S map, so
/// this always returns the quotient presentation for w != 0.
AtlasPoint w_chart_point(Cx z, Cx w);

/// Round trip, base compatibility and holomorphy of the attaching map on
/// random overlap samples.
struct ConsistencyOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 7;
  double round_trip_tol = 1e-8;
  double cr_tol = 1e-6;
  double cr_step = kDefaultCrStep;
};

Report chart_consistency_check(const ModuliParams& params,
                               const ConsistencyOptions& options = {});

enum class CertificateKind { AnnulusModulus, TorusFamily, Uncertified };

struct Certificate {
  CertificateKind kind = CertificateKind::Uncertified;
  /// Annulus: moduli of Delta(1, rho2) and Delta(1, rho2').
  double modulus_a = 0.0;
  double modulus_b = 0.0;
  /// Torus family: j(w_star) at the real point w_star lying strictly
  /// between the two rho1 values, and the bound sup |j| <= j(min rho1)
  /// on the band min(rho1)/2 <= |w| < min(rho1) of the smaller family.
  double w_star = 0.0;
  double j_star = 0.0;
  double band_bound = 0.0;
  std::string detail;
};

struct Verdict {
  bool equivalent = false;
  std::vector<Certificate> certificates;
};

const char* to_string(CertificateKind kind) noexcept;

/// Decides whether E(rho1, rho2) and E(rho1', rho2') are biholomorphic.
/// rho0 is ignored. Parameters are compared with absolute tolerance tol.
Verdict distinguish(const ModuliParams& a, const ModuliParams& b,
                    double tol = 1e-12);

}  // namespace ncr4::atlas

#endif  // NCR4_ATLAS_HPP
