#ifndef NCR4_TRANSITION_HPP
#define NCR4_TRANSITION_HPP

// The multi-valued transition function
//   phi(w) = exp( (log w)^2 / (4 pi i) - (log w) / 2 ),
// where both occurrences of log w use the same branch L = Log w + 2 pi i k.
// Moving from branch k to k + 1 multiplies phi by exactly w, so the branch
// set is { w^n phi_0(w) } and the Z-action on fibers permutes the branches.
//
// The annulus chart Delta(1, rho2) x Delta(1/rho1, 1/rho0) is attached to
// the quotient W through (z, u) -> [z phi(1/u), 1/u].

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ncr4/numerics.hpp"
#include "ncr4/quotient.hpp"

namespace ncr4::transition {

struct BranchedPhi {
  Cx w;
  int k = 0;
  Cx value;
};

/// exp(L^2 / (4 pi i) - L / 2) for an explicit logarithm value L.
Cx phi_from_log(Cx log_w) noexcept;

/// Branch k of phi at w. Throws DomainError for w == 0.
BranchedPhi phi(Cx w, int k = 0);

/// The witnessing branch k with 1 < |z / phi(w, k)| < rho2, if any.
/// At most one branch qualifies because rho2 < 1/rho1 < 1/|w|.
/// Throws DomainError when w is outside Delta(rho0, rho1) or z == 0.
std::optional<int> in_region_Y(Cx z, Cx w, const ModuliParams& params);

/// Coordinates of the product chart Delta(1, rho2) x Delta(1/rho0).
struct ProductCoords {
  Cx z;
  Cx u;
};

/// pi o Phi o j^{-1}: (z, u) -> reduce(z phi(1/u, k), 1/u). The canonical
/// representative does not depend on k; only its shift does.
/// Throws DomainError outside Delta(1, rho2) x Delta(1/rho1, 1/rho0).
quotient::QuotientPoint glue_map(Cx z, Cx u, const ModuliParams& params,
                                 int branch = 0);

/// z phi(1/u, k) before reduction.
Cx glue_lift(Cx z, Cx u, int branch = 0);

/// Inverse of glue_map on V. Throws DomainError for points of W outside V.
ProductCoords glue_inverse(const quotient::QuotientPoint& q,
                           const ModuliParams& params);

struct MonodromyStep {
  double theta = 0.0;
  Cx value;  // continued, un-reduced fiber coordinate
  int branch = 0;
};

struct MonodromyResult {
  /// Net branch change k_end - k_start of the continued phi.
  int winding = 0;
  /// shift(start) - shift(end) of the reduced fiber coordinate; equals
  /// `winding` when the continued point ends in the w^winding translate.
  int domain_shifts = 0;
  /// Largest ratio of an accepted step jump to half the branch gap.
  double worst_jump_ratio = 0.0;
  std::vector<MonodromyStep> trace;
};

/// Continues z0 phi(w) along w(theta) = rho e^{i theta}, theta from 0 to
/// 2 pi turns (u = 1/w traverses the circle of radius 1/rho in the
/// opposite sense), with `steps_per_turn` steps per full turn. At each
/// step the branch minimizing the jump is kept.
/// Throws TrackingError if steps_per_turn < 64 or a jump exceeds half the
/// gap to the neighbouring branches, DomainError for rho outside
/// (rho0, rho1), z0 outside Delta(1, rho2) or turns == 0.
MonodromyResult longitude_monodromy(double rho, Cx z0,
                                    const ModuliParams& params,
                                    int turns = 1,
                                    std::size_t steps_per_turn = 256,
                                    bool keep_trace = false);

/// Header: theta,re(z),im(z),branch
void write_monodromy_csv(std::ostream& out,
                         std::span<const MonodromyStep> trace);

}  // namespace ncr4::transition

#endif  // NCR4_TRANSITION_HPP
