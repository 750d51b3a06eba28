#include "ncr4/transition.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace ncr4::transition {
namespace {

void check_overlap_w(Cx w, const ModuliParams& params, const char* name) {
  if (!is_finite(w) || !params.overlap_w().contains(w)) {
    throw DomainError(std::string(name) + ": w outside Delta(rho0, rho1)");
  }
}

}  // namespace

Cx phi_from_log(Cx log_w) noexcept {
  return std::exp(log_w * log_w / (4.0 * kPi * kI) - 0.5 * log_w);
}

BranchedPhi phi(Cx w, int k) {
  const Cx l = branched_log(w, k).value();
  return {w, k, phi_from_log(l)};
}

std::optional<int> in_region_Y(Cx z, Cx w, const ModuliParams& params) {
  check_overlap_w(w, params, "in_region_Y");
  if (!is_finite(z) || z == Cx{0.0, 0.0}) {
    throw DomainError("in_region_Y: z must be a finite nonzero number");
  }
  // log|z / phi_k| = A + k ell with A = log|z| - log|phi_0|, ell = -log|w|.
  const double ell = -std::log(std::abs(w));
  const double a = std::log(std::abs(z)) - std::log(std::abs(phi(w, 0).value));
  const double lo = -a / ell;
  const double hi = (std::log(params.rho2) - a) / ell;
  const int k_lo = static_cast<int>(std::floor(lo)) - 2;
  const int k_hi = static_cast<int>(std::ceil(hi)) + 2;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double m = std::abs(z / phi(w, k).value);
    if (m > 1.0 && m < params.rho2) {
      return k;
    }
  }
  return std::nullopt;
}

Cx glue_lift(Cx z, Cx u, int branch) {
  if (!is_finite(u) || u == Cx{0.0, 0.0}) {
    throw DomainError("glue_lift: u must be a finite nonzero number");
  }
  return z * phi(1.0 / u, branch).value;
}

quotient::QuotientPoint glue_map(Cx z, Cx u, const ModuliParams& params,
                                 int branch) {
  if (!is_finite(z) || !params.fiber_annulus().contains(z)) {
    throw DomainError("glue_map: z outside Delta(1, rho2)");
  }
  if (!is_finite(u) || !params.overlap_u().contains(u)) {
    throw DomainError("glue_map: u outside Delta(1/rho1, 1/rho0)");
  }
  const Cx w = 1.0 / u;
  return quotient::reduce(z * phi(w, branch).value, w);
}

ProductCoords glue_inverse(const quotient::QuotientPoint& q,
                           const ModuliParams& params) {
  const auto k = in_region_Y(q.z, q.w, params);
  if (!k) {
    throw DomainError("glue_inverse: point of W is not in the overlap V");
  }
  return {q.z / phi(q.w, *k).value, 1.0 / q.w};
}

MonodromyResult longitude_monodromy(double rho, Cx z0,
                                    const ModuliParams& params, int turns,
                                    std::size_t steps_per_turn,
                                    bool keep_trace) {
  if (!(rho > params.rho0 && rho < params.rho1)) {
    throw DomainError("longitude_monodromy: rho outside (rho0, rho1)");
  }
  if (!is_finite(z0) || !params.fiber_annulus().contains(z0)) {
    throw DomainError("longitude_monodromy: z0 outside Delta(1, rho2)");
  }
  if (turns == 0) {
    throw DomainError("longitude_monodromy: turns must be nonzero");
  }
  if (steps_per_turn < 64) {
    throw TrackingError(
        "longitude_monodromy: need at least 64 steps per turn to separate "
        "branches");
  }

  const std::size_t total =
      steps_per_turn * static_cast<std::size_t>(std::abs(turns));
  const double theta_end = kTwoPi * turns;

  MonodromyResult out;
  const Cx w_start{rho, 0.0};
  const int k_start = 0;
  int k = k_start;
  Cx prev = z0 * phi(w_start, k).value;
  if (keep_trace) {
    out.trace.reserve(total + 1);
    out.trace.push_back({0.0, prev, k});
  }

  for (std::size_t i = 1; i <= total; ++i) {
    const double theta = theta_end * static_cast<double>(i) /
                         static_cast<double>(total);
    const Cx w = std::polar(rho, theta);
    double best_jump = 0.0;
    int best_k = k;
    Cx best_value;
    for (int cand = k - 1; cand <= k + 1; ++cand) {
      const Cx v = z0 * phi(w, cand).value;
      const double jump = std::abs(v - prev);
      if (cand == k - 1 || jump < best_jump) {
        best_jump = jump;
        best_k = cand;
        best_value = v;
      }
    }
    // Neighbouring branches differ from the chosen one by factors w and
    // 1/w, so the smallest gap is |value| min(|w - 1|, |1/w - 1|).
    const double gap = std::abs(best_value) *
                       std::min(std::abs(w - 1.0), std::abs(1.0 / w - 1.0));
    const double ratio = best_jump / (0.5 * gap);
    out.worst_jump_ratio = std::max(out.worst_jump_ratio, ratio);
    if (ratio > 1.0) {
      throw TrackingError("longitude_monodromy: step " + std::to_string(i) +
                          " jumps more than half the branch gap");
    }
    k = best_k;
    prev = best_value;
    if (keep_trace) {
      out.trace.push_back({theta, prev, k});
    }
  }

  out.winding = k - k_start;
  const auto start = quotient::reduce(z0 * phi(w_start, k_start).value, w_start);
  const auto end = quotient::reduce(prev, w_start);
  out.domain_shifts = start.shift - end.shift;
  return out;
}

void write_monodromy_csv(std::ostream& out,
                         std::span<const MonodromyStep> trace) {
  out << "theta,re(z),im(z),branch\n";
  const auto old = out.precision(17);
  for (const auto& s : trace) {
    out << s.theta << ',' << s.value.real() << ',' << s.value.imag() << ','
        << s.branch << '\n';
  }
  out.precision(old);
}

}  // namespace ncr4::transition
