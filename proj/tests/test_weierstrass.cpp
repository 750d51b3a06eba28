#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "ncr4/quotient.hpp"
#include "ncr4/weierstrass.hpp"
#include "support/gen.hpp"

using ncr4::Cx;
namespace ws = ncr4::weierstrass;

namespace {

// Fixed-length direct partial sums, no tail logic.
Cx direct(Cx tau, int terms, bool g3) {
  Cx s{0.0, 0.0};
  for (int n = 1; n <= terms; ++n) {
    const Cx p = std::pow(tau, n);
    const double d = n;
    const double c = g3 ? (7.0 * d * d * d * d * d + 5.0 * d * d * d) / 3.0 : 20.0 * d * d * d;
    s += c * p / (1.0 - p);
  }
  return s;
}

// Discriminant of a x^3 + b x^2 + c x + d (the resultant of the cubic
// and its derivative up to the leading coefficient).
Cx cubic_discriminant(Cx a, Cx b, Cx c, Cx d) {
  return 18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c -
         4.0 * a * c * c * c - 27.0 * a * a * d * d;
}

}  // namespace

TEST_CASE("series at zero") {
  CHECK(ws::g2(Cx{0.0, 0.0}) == Cx{0.0, 0.0});
  CHECK(ws::g3(Cx{0.0, 0.0}) == Cx{0.0, 0.0});
}

TEST_CASE("series match direct summation") {
  for (const Cx t : {Cx{0.05, 0.0}, Cx{0.1, 0.0}, Cx{0.2, 0.0}, Cx{0.1, 0.1}}) {
    CHECK(std::abs(ws::g2(t) - direct(t, 200, false)) < 1e-12);
    CHECK(std::abs(ws::g3(t) - direct(t, 200, true)) < 1e-12);
  }
}

TEST_CASE("series against 50-digit reference") {
  // mpmath, 400 terms at 50 digits.
  CHECK(ws::g2(Cx{0.1, 0.0}).real() == doctest::Approx(4.5370627203762572846).epsilon(1e-15));
  CHECK(ws::g3(Cx{0.1, 0.0}).real() == doctest::Approx(2.2939945585447727003).epsilon(1e-15));
  const Cx t{0.05, 0.02};
  CHECK(std::abs(ws::g2(t) - Cx{1.414537661554252474, 0.85296032077795978443}) < 1e-14);
  CHECK(std::abs(ws::g3(t) - Cx{0.43283550397725803881, 0.3768034028463937999}) < 1e-14);
}

TEST_CASE("g3 leading order") {
  // Next terms are O(t^2) with coefficients below 200.
  for (double r : {1e-4, 1e-6, 1e-8}) {
    const Cx t{r, 0.0};
    CHECK(std::abs(ws::g3(t) / t - 4.0) < 200.0 * r);
    CHECK(std::abs(ws::g2(t) / t - 20.0) < 200.0 * r);
  }
}

TEST_CASE("series conjugation symmetry") {
  ncr4::testing::Gen g(12);
  for (int i = 0; i < 200; ++i) {
    const Cx t = g.disk(0.9);
    CHECK(std::abs(ws::g2(std::conj(t)) - std::conj(ws::g2(t))) <= 1e-12 * (1.0 + std::abs(ws::g2(t))));
    CHECK(std::abs(ws::g3(std::conj(t)) - std::conj(ws::g3(t))) <= 1e-12 * (1.0 + std::abs(ws::g3(t))));
  }
}

TEST_CASE("truncation certificates") {
  ncr4::testing::Gen g(13);
  for (int i = 0; i < 100; ++i) {
    const Cx t = g.disk(0.6);
    for (double tol : {1e-6, 1e-9, 1e-12}) {
      const auto a = ws::g2_series(t, tol);
      const auto b = ws::g2_series(t, tol / 10.0);
      CHECK(a.tail_bound < tol);
      CHECK(std::abs(a.value - b.value) < tol);
      const auto c = ws::g3_series(t, tol);
      const auto d = ws::g3_series(t, tol / 10.0);
      CHECK(std::abs(c.value - d.value) < tol);
    }
  }
}

TEST_CASE("series domain errors") {
  CHECK_THROWS_AS(ws::g2_series(Cx{0.96, 0.0}), ncr4::ConvergenceError);
  CHECK_THROWS_AS(ws::g3_series(Cx{0.0, -0.99}), ncr4::ConvergenceError);
  CHECK_NOTHROW(ws::g2_series(Cx{0.94, 0.0}));
  CHECK_THROWS_AS(ws::g2_series(Cx{0.1, 0.0}, 0.0), ncr4::DomainError);
  CHECK_THROWS_AS(ws::g2_series(Cx{NAN, 0.0}), ncr4::DomainError);
}

TEST_CASE("nodal fiber at tau = 0") {
  const auto c = ws::fiber_cubic(Cx{0.0, 0.0});
  const Cx o{0.0, 0.0};
  CHECK(c(o, o) == o);
  CHECK(c.dx(o, o) == o);
  CHECK(c.dy(o, o) == o);
  CHECK(c.dxx(o, o) == Cx{-2.0, 0.0});
  CHECK(c.dyy(o, o) == Cx{2.0, 0.0});
  CHECK(c.dxy(o, o) == o);
  CHECK(c.hessian_det(o, o) == Cx{-4.0, 0.0});
  // y^2 = 4x^3 + x^2 through (-1/4, 0) and (2, 6).
  CHECK(c(Cx{-0.25, 0.0}, o) == o);
  CHECK(c(Cx{2.0, 0.0}, Cx{6.0, 0.0}) == o);
}

TEST_CASE("depressed invariants") {
  // 27 / 216^2 = 1 / 1728, so Delta(0) = 0.
  const auto d0 = ws::is_singular_fiber(Cx{0.0, 0.0});
  CHECK(d0.G2.real() == doctest::Approx(1.0 / 12.0).epsilon(1e-16));
  CHECK(d0.G3.real() == doctest::Approx(-1.0 / 216.0).epsilon(1e-16));
  CHECK(std::abs(d0.delta) <= 1e-14);
  CHECK(d0.singular);
  CHECK_THROWS_AS(ws::j_from_weierstrass(Cx{0.0, 0.0}), ncr4::PoleError);

  // Completing the cube: 4(X - 1/12)^3 + (X - 1/12)^2 - g2 (X - 1/12) - g3
  // = 4X^3 - G2 X - G3, checked coefficientwise at random g2, g3 via
  // evaluation at four X values.
  ncr4::testing::Gen g(14);
  for (int i = 0; i < 50; ++i) {
    const Cx g2{g.uniform(-3, 3), g.uniform(-3, 3)};
    const Cx g3{g.uniform(-3, 3), g.uniform(-3, 3)};
    const auto d = ws::depressed_invariants(g2, g3);
    for (double X : {-1.0, 0.0, 0.5, 2.0}) {
      const Cx x = X - 1.0 / 12.0;
      const Cx lhs = 4.0 * x * x * x + x * x - g2 * x - g3;
      const Cx rhs = 4.0 * X * X * X - d.G2 * X - d.G3;
      CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(lhs)));
    }
    // Resultant oracle: disc(4x^3 + x^2 - g2 x - g3) = 16 Delta.
    const Cx full = cubic_discriminant(4.0, 1.0, -g2, -g3);
    CHECK(std::abs(full - 16.0 * d.delta) < 1e-10 * (1.0 + std::abs(full)));
  }
}

TEST_CASE("smooth fibers away from zero") {
  const auto d = ws::is_singular_fiber(Cx{0.05, 0.0});
  CHECK_FALSE(d.singular);
  const auto c = ws::fiber_cubic(Cx{0.05, 0.0});
  const Cx full = cubic_discriminant(4.0, 1.0, -c.g2, -c.g3);
  CHECK(std::abs(full - 16.0 * d.delta) < 1e-12);

  CHECK(ws::is_singular_fiber(Cx{0.1, 0.0}).delta.real() ==
        doctest::Approx(0.0061020876712914383271).epsilon(1e-12));
  const Cx ref{0.014774464804603648073, -0.0026336446150341853639};
  CHECK(std::abs(ws::is_singular_fiber(Cx{0.05, 0.02}).delta - ref) < 1e-15);

  const Cx t{0.05, 0.02};
  const Cx a = ws::is_singular_fiber(std::conj(t)).delta;
  const Cx b = ws::is_singular_fiber(t).delta;
  CHECK(std::abs(a - std::conj(b)) < 1e-16);

  ncr4::testing::Gen g(15);
  for (int i = 0; i < 1000; ++i) {
    CHECK_FALSE(ws::is_singular_fiber(g.disk(0.3)).singular);
  }
}

TEST_CASE("j from the Weierstrass model") {
  // 1728 kleinj(tau) with q = exp(2 pi i tau), mpmath at 50 digits.
  CHECK(ws::j_from_weierstrass(Cx{0.1, 0.0}).real() ==
        doctest::Approx(27932056.242991239931).epsilon(1e-12));
  CHECK(ws::j_from_weierstrass(Cx{0.2, 0.0}).real() ==
        doctest::Approx(44972635208.348493659).epsilon(1e-10));
  const Cx ref{27135678.594030300281, 22659465.19720848652};
  CHECK(std::abs(ws::j_from_weierstrass(Cx{0.1, 0.1}) - ref) < 1e-12 * std::abs(ref));
  // Near the real axis at |tau| = 0.28 Delta is ~1e-11 of G2^3.
  const Cx ref2{18809835687898.32497, -22291937291361.239935};
  CHECK(std::abs(ws::j_from_weierstrass(Cx{0.28, -0.01}) - ref2) < 1e-7 * std::abs(ref2));

  ncr4::testing::Gen g(16);
  for (int i = 0; i < 100; ++i) {
    const Cx t = g.annulus(0.01, 0.3);
    const Cx a = ws::j_from_weierstrass(std::conj(t));
    const Cx b = ws::j_from_weierstrass(t);
    CHECK(std::abs(a - std::conj(b)) <= 1e-9 * std::abs(b));
  }
  // Pole at the nodal fiber.
  double prev = 0.0;
  // j = 1/tau + 744 + O(tau).
  for (double r : {1e-4, 1e-5, 1e-6, 1e-7}) {
    const double m = std::abs(ws::j_from_weierstrass(Cx{r, 0.0}));
    CHECK(m > prev);
    CHECK(std::abs(m * r - 1.0) < 1000.0 * r);
    prev = m;
  }
}

TEST_CASE("Weierstrass j equals torus j") {
  ncr4::testing::Gen g(18);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const Cx t = std::polar(g.uniform(0.01, 0.3), g.uniform(-ncr4::kPi, ncr4::kPi));
    const Cx a = ws::j_from_weierstrass(t);
    const Cx b = ncr4::quotient::j_torus(t);
    worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(a)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("jscan csv") {
  std::vector<ws::JSample> rows{{Cx{0.1, 0.0}, Cx{2.0, -1.0}}};
  std::ostringstream out;
  ws::write_jscan_csv(out, rows);
  CHECK(out.str() == "tau_re,tau_im,j_re,j_im\n0.10000000000000001,0,2,-1\n");
}
