#ifndef NCR4_MONODROMY_HPP
#define NCR4_MONODROMY_HPP

// Integer bookkeeping for the genus-1 fibration on S^4: mapping classes
// acting on H_1(T^2) in the basis (meridian, longitude), the Dehn twist
// monodromies of the two critical points, the longitude-rotating gluing
// and Euler-characteristic counts.

#include <array>
#include <cstdint>

#include "ncr4/numerics.hpp"

namespace ncr4::monodromy {

/// 2x2 integer matrix acting on coordinates (a, b) of a mu + b lambda.
class MappingClass {
 public:
  /// Throws DomainError unless ad - bc == 1.
  MappingClass(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

  static MappingClass identity() { return {1, 0, 0, 1}; }

  std::int64_t det() const noexcept { return a_ * d_ - b_ * c_; }
  MappingClass inverse() const { return {d_, -b_, -c_, a_}; }
  MappingClass pow(int n) const;

  /// Image of the class a mu + b lambda.
  std::array<std::int64_t, 2> apply(std::array<std::int64_t, 2> v) const noexcept {
    return {a_ * v[0] + b_ * v[1], c_ * v[0] + d_ * v[1]};
  }
  std::array<std::int64_t, 4> entries() const noexcept { return {a_, b_, c_, d_}; }

  friend MappingClass operator*(const MappingClass& l, const MappingClass& r);
  friend bool operator==(const MappingClass&, const MappingClass&) = default;

 private:
  std::int64_t a_, b_, c_, d_;
};

inline constexpr std::array<std::int64_t, 2> kMeridian{1, 0};
inline constexpr std::array<std::int64_t, 2> kLongitude{0, 1};

enum class TwistCurve { Meridian };
enum class Handedness { Right, Left };

/// Dehn twist about the meridian: mu -> mu, lambda -> lambda +- mu, i.e.
/// [[1, +-1], [0, 1]] (right-handed is +1).
MappingClass dehn_twist(TwistCurve curve = TwistCurve::Meridian,
                        Handedness hand = Handedness::Right);

/// Monodromies around the positive and negative critical values.
inline MappingClass positive_monodromy() { return dehn_twist(); }
inline MappingClass negative_monodromy() {
  return dehn_twist(TwistCurve::Meridian, Handedness::Left);
}

/// The gluing (t, x, y) -> (t, x, y + t) over a loop of the base: acts
/// trivially on the homology of each fiber and shifts the framing of the
/// longitude section by one per full loop.
struct GluingAction {
  MappingClass fiber_action = MappingClass::identity();
  int framing_increment = 0;

  friend GluingAction operator*(const GluingAction& l, const GluingAction& r) {
    return {l.fiber_action * r.fiber_action,
            l.framing_increment + r.framing_increment};
  }
  GluingAction reversed() const {
    return {fiber_action.inverse(), -framing_increment};
  }
};

GluingAction gluing_action();

struct FibrationDescriptor {
  int base_euler = 2;
  int fiber_euler = 0;
  int positive_critical = 0;
  int negative_critical = 0;
  int section_framing = 0;
};

/// The achiral genus-1 fibration S^4 -> S^2: one critical point of each
/// sign, framing-one section.
FibrationDescriptor matsumoto_fukaya();

/// chi(base) chi(fiber) + number of critical points. Throws DomainError
/// for negative critical counts.
int euler_characteristic(const FibrationDescriptor& d);

/// Compares the numerically continued longitude winding of the transition
/// function over `turns` base loops with the framing predicted by
/// gluing_action() composed `turns` times.
struct OverlapConsistency {
  int predicted = 0;
  int measured = 0;
  int domain_shifts = 0;
  bool consistent = false;
};

OverlapConsistency overlap_monodromy_consistency(const ModuliParams& params,
                                                 double rho, Cx z0,
                                                 int turns = 1);

}  // namespace ncr4::monodromy

#endif  // NCR4_MONODROMY_HPP
