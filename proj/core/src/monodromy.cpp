#include "ncr4/monodromy.hpp"

#include <string>

#include "ncr4/transition.hpp"

namespace ncr4::monodromy {

MappingClass::MappingClass(std::int64_t a, std::int64_t b, std::int64_t c,
                           std::int64_t d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (det() != 1) {
    throw DomainError("MappingClass: determinant " + std::to_string(det()) +
                      " != 1");
  }
}

MappingClass operator*(const MappingClass& l, const MappingClass& r) {
  return {l.a_ * r.a_ + l.b_ * r.c_, l.a_ * r.b_ + l.b_ * r.d_,
          l.c_ * r.a_ + l.d_ * r.c_, l.c_ * r.b_ + l.d_ * r.d_};
}

MappingClass MappingClass::pow(int n) const {
  MappingClass base = n < 0 ? inverse() : *this;
  unsigned e = n < 0 ? static_cast<unsigned>(-(static_cast<long long>(n)))
                     : static_cast<unsigned>(n);
  MappingClass result = identity();
  while (e != 0) {
    if (e & 1U) {
      result = result * base;
    }
    e >>= 1U;
    if (e != 0) {
      base = base * base;
    }
  }
  return result;
}

MappingClass dehn_twist(TwistCurve /*curve*/, Handedness hand) {
  return {1, hand == Handedness::Right ? 1 : -1, 0, 1};
}

GluingAction gluing_action() { return {MappingClass::identity(), 1}; }

FibrationDescriptor matsumoto_fukaya() { return {2, 0, 1, 1, 1}; }

int euler_characteristic(const FibrationDescriptor& d) {
  if (d.positive_critical < 0 || d.negative_critical < 0) {
    throw DomainError("euler_characteristic: negative critical count");
  }
  return d.base_euler * d.fiber_euler + d.positive_critical +
         d.negative_critical;
}

OverlapConsistency overlap_monodromy_consistency(const ModuliParams& params,
                                                 double rho, Cx z0,
                                                 int turns) {
  GluingAction predicted{};
  const GluingAction one = turns > 0 ? gluing_action() : gluing_action().reversed();
  for (int i = 0; i < (turns > 0 ? turns : -turns); ++i) {
    predicted = predicted * one;
  }
  const auto measured = transition::longitude_monodromy(rho, z0, params, turns);
  OverlapConsistency out;
  out.predicted = predicted.framing_increment;
  out.measured = measured.winding;
  out.domain_shifts = measured.domain_shifts;
  out.consistent = predicted.fiber_action == MappingClass::identity() &&
                   out.predicted == out.measured &&
                   out.measured == out.domain_shifts;
  return out;
}

}  // namespace ncr4::monodromy
