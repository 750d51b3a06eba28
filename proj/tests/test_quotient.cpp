#include <doctest.h>

#include <cmath>
#include <vector>

#include "ncr4/quotient.hpp"
#include "support/gen.hpp"

using ncr4::Cx;
namespace qt = ncr4::quotient;

namespace {

// Brute force over n in [-50, 50].
int brute_shift(Cx z, Cx w) {
  for (int n = -50; n <= 50; ++n) {
    const double m = std::abs(z) * std::pow(std::abs(w), n);
    if (m > std::abs(w) && m <= 1.0) {
      return n;
    }
  }
  return 1000;
}

double mp_j(double q) {
  // 1728 kleinj at q = 0.1, 0.2, 0.3, 0.45 (mpmath, 50 digits).
  if (q == 0.1) return 27932056.242991239931;
  if (q == 0.2) return 44972635208.348493659;
  if (q == 0.3) return 174008288328478.21572;
  return 2.9622819096725187123e+21;
}

}  // namespace

TEST_CASE("reduce examples") {
  const Cx w{0.2, 0.1};
  const auto a = qt::reduce(Cx{1.0, 0.0}, w);
  CHECK(a.z == Cx{1.0, 0.0});
  CHECK(a.shift == 0);
  const auto b = qt::reduce(w * w * w, w);
  CHECK(b.shift == -3);
  CHECK(std::abs(b.z - Cx{1.0, 0.0}) < 1e-12);
  CHECK_THROWS_AS(qt::reduce(Cx{0.0, 0.0}, w), ncr4::DomainError);
  CHECK_THROWS_AS(qt::reduce(Cx{1.0, 0.0}, Cx{1.0, 0.0}), ncr4::DomainError);
  CHECK_THROWS_AS(qt::reduce(Cx{1.0, 0.0}, Cx{0.0, 0.0}), ncr4::DomainError);
}

TEST_CASE("reduce against brute force") {
  ncr4::testing::Gen g(21);
  for (int i = 0; i < 2000; ++i) {
    const Cx w = g.annulus(0.05, 0.95);
    const Cx z = std::polar(std::exp(g.uniform(-30.0, 30.0)), g.uniform(-3.0, 3.0));
    const auto r = qt::reduce(z, w);
    const int n = brute_shift(z, w);
    if (n == 1000) continue;
    // Points within rounding of the unit circle may land on either side.
    const double m = std::abs(z) * std::pow(std::abs(w), n);
    if (std::abs(m - 1.0) < 1e-10 || std::abs(m - std::abs(w)) < 1e-10) continue;
    CHECK(r.shift == n);
    CHECK(std::abs(r.z) > std::abs(w));
    CHECK(std::abs(r.z) <= 1.0);
  }
}

TEST_CASE("reduce is idempotent and Z-equivariant") {
  ncr4::testing::Gen g(22);
  for (int i = 0; i < 500; ++i) {
    const Cx w = g.annulus(0.1, 0.5);
    const Cx z = g.annulus(0.01, 50.0);
    const auto r = qt::reduce(z, w);
    const auto again = qt::reduce(r.z, w);
    CHECK(again.shift == 0);
    CHECK(again.z == r.z);
    const int m = g.integer(-10, 10);
    Cx zm = z;
    for (int k = 0; k < std::abs(m); ++k) {
      zm = m > 0 ? zm * w : zm / w;
    }
    const auto rm = qt::reduce(zm, w);
    if (std::abs(std::abs(r.z) - 1.0) < 1e-9) continue;
    CHECK(std::abs(rm.z - r.z) < 1e-12);
    CHECK(rm.shift == r.shift - m);
  }
}

TEST_CASE("lattice parameter") {
  const double rho = 0.2;
  const auto v = qt::lattice_param(Cx{rho, 0.0});
  CHECK(v.v.real() == 0.0);
  CHECK(v.v.imag() == doctest::Approx(-std::log(rho) / ncr4::kTwoPi).epsilon(1e-15));

  // [0, 2pi) convention: arg -pi/2 maps to 3/4.
  const auto down = qt::lattice_param(Cx{0.0, -0.3});
  CHECK(down.v.real() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(qt::lattice_param(Cx{-0.3, 0.0}).v.real() == doctest::Approx(0.5).epsilon(1e-15));

  CHECK(qt::lattice_param(Cx{0.01, 0.0}).v.imag() ==
        doctest::Approx(2.0 * qt::lattice_param(Cx{0.1, 0.0}).v.imag()).epsilon(1e-15));

  ncr4::testing::Gen g(23);
  for (int i = 0; i < 1000; ++i) {
    const Cx w = g.annulus(0.01, 0.99);
    const auto l = qt::lattice_param(w);
    CHECK(l.v.imag() > 0.0);
    CHECK(l.v.real() >= 0.0);
    CHECK(l.v.real() < 1.0);
    CHECK(std::abs(std::exp(Cx{0.0, ncr4::kTwoPi} * l.v) - w) < 1e-12);
  }
  CHECK_THROWS_AS(qt::lattice_param(Cx{1.0, 0.0}), ncr4::DomainError);
  CHECK_THROWS_AS(qt::lattice_param(Cx{0.0, 0.0}), ncr4::DomainError);
}

TEST_CASE("j coefficients") {
  // OEIS A000521.
  const std::vector<double> ref{1, 744, 196884, 21493760, 864299970, 20245856256.0,
                                333202640600.0, 4252023300096.0, 44656994071935.0};
  const auto c = qt::j_coefficients(ref.size());
  REQUIRE(c.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    CHECK(c[i] == ref[i]);
  }
}

TEST_CASE("j_torus against reference values") {
  for (double q : {0.1, 0.2, 0.3, 0.45}) {
    const auto v = qt::j_torus_certified(Cx{q, 0.0});
    CHECK(v.value.real() == doctest::Approx(mp_j(q)).epsilon(1e-11));
    CHECK(v.value.imag() == 0.0);
  }
  const Cx ref{34.199956984419668082, 878.73912769841393382};
  CHECK(std::abs(qt::j_torus(Cx{-0.25, 0.05}) - ref) < 1e-10 * std::abs(ref));
}

TEST_CASE("j_torus matches the raw expansion near q = 0") {
  ncr4::testing::Gen g(24);
  for (int i = 0; i < 200; ++i) {
    const Cx q = g.annulus(1e-3, 0.05);
    const Cx a = qt::j_torus(q);
    const Cx b = qt::j_qexpansion(q);
    CHECK(std::abs(a - b) < 1e-9 * std::abs(a));
  }
}

TEST_CASE("j_torus properties") {
  ncr4::testing::Gen g(25);
  for (int i = 0; i < 100; ++i) {
    const double r = g.uniform(0.01, 0.5);
    CHECK(qt::j_torus(Cx{r, 0.0}).imag() == 0.0);
    CHECK(qt::j_torus(Cx{-r, 0.0}).imag() == 0.0);
  }
  // j = 1/q + 744 + O(q): |j q| - 1 is O(q^2) on the imaginary axis.
  for (double r : {1e-3, 1e-4, 1e-6}) {
    CHECK(std::abs(std::abs(qt::j_torus(Cx{0.0, r})) * r - 1.0) < 744.0 * 744.0 * r * r);
  }
  // Increasing on [0.01, 0.4].
  double prev = qt::j_torus(Cx{0.01, 0.0}).real();
  for (int i = 1; i < 100; ++i) {
    const double cur = qt::j_torus(Cx{0.01 + 0.39 * i / 99.0, 0.0}).real();
    CHECK(cur > prev);
    prev = cur;
  }
  // Not injective on all of (0, 0.5): the minimum sits near q = 0.00225.
  CHECK(qt::j_torus(Cx{0.00225, 0.0}).real() < qt::j_torus(Cx{0.001, 0.0}).real());
  CHECK(qt::j_torus(Cx{0.00225, 0.0}).real() < qt::j_torus(Cx{0.005, 0.0}).real());

  const auto v = qt::j_torus_certified(Cx{0.4, 0.1});
  CHECK(v.error_bound < 1e-6 * std::abs(v.value));
  CHECK_THROWS_AS(qt::j_torus(Cx{0.51, 0.0}), ncr4::ConvergenceError);
  CHECK_THROWS_AS(qt::j_torus(Cx{0.0, 0.0}), ncr4::DomainError);
}

TEST_CASE("torus isomorphism") {
  CHECK(qt::tori_isomorphic(Cx{0.2, 0.1}, Cx{0.2, 0.1}));
  CHECK_FALSE(qt::tori_isomorphic(Cx{0.1, 0.0}, Cx{0.2, 0.0}));
  CHECK_FALSE(qt::tori_isomorphic(Cx{0.1, 0.1}, Cx{0.1, -0.1}));
  const Cx a = qt::j_torus(Cx{0.1, 0.1});
  CHECK(std::abs(a.imag()) > 1e6);
  CHECK(std::abs(qt::j_torus(Cx{0.1, -0.1}) - std::conj(a)) < 1e-9 * std::abs(a));
}
