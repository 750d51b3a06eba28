#ifndef NCR4_FIBRATION_HPP
#define NCR4_FIBRATION_HPP

// The sphere-level map f' = h o (suspension of h) : S^4 -> S^2 built on the
// Hopf fibration, with a rank-deficiency search for its critical points and
// a Newton sampler for its fibers.
//
// S^{2n} is the unit sphere |z_1|^2 + ... + |z_n|^2 + x^2 = 1 in C^n x R.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "ncr4/numerics.hpp"

namespace ncr4::fibration {

/// Tolerance on the unit-sphere equation accepted at API boundaries.
inline constexpr double kSphereTol = 1e-12;

struct S4Point {
  Cx z1;
  Cx z2;
  double x = 0.0;

  /// Deviation |z1|^2 + |z2|^2 + x^2 - 1.
  double sphere_defect() const noexcept {
    return std::norm(z1) + std::norm(z2) + x * x - 1.0;
  }
  /// Rescales an arbitrary nonzero vector of C^2 x R onto the sphere.
  static S4Point normalized(Cx z1, Cx z2, double x);
  std::array<double, 5> coords() const noexcept {
    return {z1.real(), z1.imag(), z2.real(), z2.imag(), x};
  }
  static S4Point from_coords(const std::array<double, 5>& c) noexcept {
    return {{c[0], c[1]}, {c[2], c[3]}, c[4]};
  }
};

struct S2Point {
  Cx z;
  double x = 0.0;

  double sphere_defect() const noexcept { return std::norm(z) + x * x - 1.0; }
  std::array<double, 3> coords() const noexcept {
    return {z.real(), z.imag(), x};
  }
};

/// Euclidean distance in C x R.
double distance(const S2Point& a, const S2Point& b) noexcept;
double distance(const S4Point& a, const S4Point& b) noexcept;

/// Hopf map (z1, z2) -> (2 z1 conj(z2), |z1|^2 - |z2|^2).
/// Throws DomainError when |z1|^2 + |z2|^2 is not 1 within kSphereTol.
S2Point hopf(Cx z1, Cx z2);

/// f'(z1, z2, x) = (4 z1 conj(z2) (|z1|^2 - |z2|^2 - i x sqrt(2 - x^2)),
///                  8 |z1|^2 |z2|^2 - 1).
/// Throws DomainError for points off S^4.
S2Point f_prime(const S4Point& p);

/// The same polynomial formula without the sphere check, defined for
/// |x| <= sqrt(2). Used by finite-difference and Newton code that steps
/// slightly off the sphere.
S2Point f_prime_unchecked(const S4Point& p) noexcept;

/// 2x4 Jacobian of f' in orthonormal tangent frames of S^4 at p and of S^2
/// at f'(p), row-major.
std::array<double, 8> tangent_jacobian(const S4Point& p);

/// Smallest singular value of tangent_jacobian(p); zero exactly on the
/// critical set.
double min_singular_value(const S4Point& p);

/// Seeded uniform point on S^4 (normalized 5-dimensional Gaussian).
S4Point random_s4(std::mt19937_64& rng);

struct CriticalSearchOptions {
  /// Grid spacing on the faces of the cube [-1,1]^5 that is projected
  /// onto S^4.
  double resolution = 0.1;
  /// Newton refinement stops once the tangent step is below this.
  double refinement_tol = 1e-10;
  /// A refined point counts as critical when sigma_min is below this.
  double rank_tol = 1e-6;
  /// Grid candidates are points with sigma_min < candidate_factor *
  /// resolution.
  double candidate_factor = 6.0;
  /// Seed of the fixed rotation applied to the grid, which keeps the
  /// critical points off grid nodes.
  std::uint64_t grid_seed = 0x5eed'c0de;
};

struct CriticalCluster {
  S4Point center;
  S2Point image;
  double sigma_min = 0.0;
  std::size_t grid_candidates = 0;
};

/// Dense rank-deficiency scan of f' followed by Newton refinement of
/// sigma_min^2 and clustering. Throws DomainError for non-positive options.
std::vector<CriticalCluster> critical_set_search(
    const CriticalSearchOptions& options = {});

struct FiberSampleOptions {
  double residual_tol = 1e-12;
  int max_iterations = 60;
  /// Fresh random starts per requested point before giving up on it.
  int retry_budget = 20;
};

struct FiberSample {
  std::vector<S4Point> points;
  std::size_t requested = 0;
  std::size_t failures = 0;
  /// Largest |f'(p) - target| over the returned points.
  double max_residual = 0.0;
};

/// Samples n points of f'^{-1}(target) by Newton projection from random
/// starts. Each step solves with the pseudo-inverse of the tangent
/// Jacobian; the step is halved whenever the residual would grow.
/// Points that do not converge within the retry budget are counted in
/// `failures`.
FiberSample sample_fiber(const S2Point& target, std::size_t n,
                         std::uint64_t seed,
                         const FiberSampleOptions& options = {});

/// Header: re(z1),im(z1),re(z2),im(z2),x
void write_fiber_csv(std::ostream& out, std::span<const S4Point> points);

}  // namespace ncr4::fibration

#endif  // NCR4_FIBRATION_HPP
