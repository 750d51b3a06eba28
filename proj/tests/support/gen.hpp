#ifndef NCR4_TESTS_GEN_HPP
#define NCR4_TESTS_GEN_HPP

// Seeded generators for property tests. SplitMix64 is used here so test
// draws are independent of the std::mt19937_64 streams inside the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace ncr4::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  int integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(next() % span);
  }

  double normal() {
    const double u1 = 1.0 - unit();
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  std::complex<double> annulus(double r_in, double r_out, double arg_lo = -std::numbers::pi,
                               double arg_hi = std::numbers::pi) {
    return std::polar(uniform(r_in, r_out), uniform(arg_lo, arg_hi));
  }

  // Uniform on the disk of radius r.
  std::complex<double> disk(double r) {
    return std::polar(r * std::sqrt(unit()), 2.0 * std::numbers::pi * unit());
  }

 private:
  std::uint64_t state_;
};

}  // namespace ncr4::testing

#endif  // NCR4_TESTS_GEN_HPP
