#include "ncr4/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "ncr4/atlas.hpp"
#include "ncr4/fibration.hpp"
#include "ncr4/monodromy.hpp"
#include "ncr4/quotient.hpp"
#include "ncr4/transition.hpp"
#include "ncr4/weierstrass.hpp"

namespace ncr4::verify {
namespace {

// Per-suite stream: FNV-1a of the suite name mixed into the run seed.
std::uint64_t suite_seed(std::uint64_t seed, std::string_view suite) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : suite) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  std::uint64_t x = seed ^ h;
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Cx random_in_annulus(std::mt19937_64& rng, double r_in, double r_out,
                     double arg_lo = -kPi, double arg_hi = kPi) {
  std::uniform_real_distribution<double> r(r_in, r_out);
  std::uniform_real_distribution<double> a(arg_lo, arg_hi);
  const double rr = r(rng);
  return std::polar(rr, a(rng));
}

// Independent fixed-length summation of the Lambert series, without the
// tail logic of the library routine.
Cx direct_g2(Cx tau, int terms) {
  Cx s{0.0, 0.0};
  for (int n = 1; n <= terms; ++n) {
    const Cx p = std::pow(tau, n);
    s += 20.0 * std::pow(static_cast<double>(n), 3) * p / (1.0 - p);
  }
  return s;
}

Cx direct_g3(Cx tau, int terms) {
  Cx s{0.0, 0.0};
  for (int n = 1; n <= terms; ++n) {
    const Cx p = std::pow(tau, n);
    const double d = static_cast<double>(n);
    s += (7.0 * std::pow(d, 5) + 5.0 * std::pow(d, 3)) / 3.0 * p / (1.0 - p);
  }
  return s;
}

}  // namespace

Report sphere_suite(const RunConfig& config) {
  Report r;
  r.suite = "sphere";
  const auto seed = suite_seed(config.seed, r.suite);
  std::mt19937_64 rng(seed);
  const std::size_t n = config.sample_count("sphere");
  double worst = 0.0;
  double worst_sym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = fibration::random_s4(rng);
    const auto f = fibration::f_prime(p);
    worst = std::max(worst, std::abs(std::norm(f.z) + f.x * f.x - 1.0));
    if (i < 10000) {
      // Reflection x -> -x flips the sign of the i x sqrt(2 - x^2) term.
      const auto g = fibration::f_prime({p.z1, p.z2, -p.x});
      const double a = std::norm(p.z1);
      const double b = std::norm(p.z2);
      const Cx expected = 4.0 * p.z1 * std::conj(p.z2) *
                          Cx{a - b, p.x * std::sqrt(2.0 - p.x * p.x)};
      worst_sym = std::max({worst_sym, std::abs(g.z - expected),
                            std::abs(g.x - f.x)});
    }
  }
  r.add(bounded_check("sphere_image_identity", n, worst,
                      config.tolerance("sphere"), seed));
  r.add(bounded_check("sphere_equator_symmetry", std::min<std::size_t>(n, 10000),
                      worst_sym, config.tolerance("sphere"), seed));
  return r;
}

Report critical_suite(const RunConfig& config) {
  Report r;
  r.suite = "critical";
  const double tol = config.tolerance("critical");
  std::vector<std::vector<fibration::CriticalCluster>> runs;
  for (double res : {0.1, 0.125}) {
    fibration::CriticalSearchOptions opt;
    opt.resolution = res;
    runs.push_back(fibration::critical_set_search(opt));
  }
  const auto& main = runs.front();
  std::ostringstream note;
  note.precision(6);
  for (const auto& c : main) {
    note << "center (" << c.center.z1.real() << "," << c.center.z1.imag() << ","
         << c.center.z2.real() << "," << c.center.z2.imag() << ","
         << c.center.x << ") ";
  }
  r.add(bounded_check("critical_cluster_count", 1,
                      std::abs(static_cast<double>(main.size()) - 2.0), 0.0, 0,
                      note.str()));
  double spread = main.size() >= 2 ? 0.0 : INFINITY;
  for (std::size_t i = 1; i < main.size(); ++i) {
    spread = std::max(spread, fibration::distance(main[i].image, main[0].image));
  }
  r.add(bounded_check("critical_points_share_fiber", main.size(), spread, tol));

  double drift = runs[1].size() == main.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; std::isfinite(drift) && i < main.size(); ++i) {
    drift = std::max(drift,
                     fibration::distance(main[i].center, runs[1][i].center));
  }
  r.add(bounded_check("critical_resolution_stability", runs[1].size(), drift,
                      tol));
  return r;
}

Report fiber_suite(const RunConfig& config) {
  Report r;
  r.suite = "fiber";
  const auto seed = suite_seed(config.seed, r.suite);
  const std::size_t n = config.sample_count("fiber");
  const double tol = config.tolerance("fiber");

  const auto top = fibration::sample_fiber({{0.0, 0.0}, 1.0}, n, seed);
  double dev = top.failures == 0 ? 0.0 : INFINITY;
  for (const auto& p : top.points) {
    const double s = 1.0 / std::sqrt(2.0);
    dev = std::max({dev, std::abs(std::abs(p.z1) - s), std::abs(std::abs(p.z2) - s),
                    std::abs(p.x)});
  }
  r.add(bounded_check("fiber_top_is_clifford_torus", top.points.size(), dev,
                      1e-8, seed));
  r.add(bounded_check("fiber_top_residual", top.points.size(), top.max_residual,
                      tol, seed));

  const auto bottom = fibration::sample_fiber({{0.0, 0.0}, -1.0}, n, seed + 1);
  double dev_b = bottom.failures == 0 ? 0.0 : INFINITY;
  for (const auto& p : bottom.points) {
    dev_b = std::max(dev_b, std::min(std::abs(p.z1), std::abs(p.z2)));
  }
  r.add(bounded_check("fiber_bottom_in_coordinate_spheres",
                      bottom.points.size(), dev_b, 1e-6, seed + 1));

  // Regular value: 8|z1|^2|z2|^2 - 1 is constant along the fiber and the
  // fiber is invariant under the diagonal phase action.
  const fibration::S2Point regular{std::polar(std::sqrt(1.0 - 0.09), 0.7), 0.3};
  const auto reg = fibration::sample_fiber(regular, n, seed + 2);
  double dev_r = reg.failures == 0 ? 0.0 : INFINITY;
  std::mt19937_64 rng(seed + 3);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (const auto& p : reg.points) {
    const double ab = std::norm(p.z1) * std::norm(p.z2);
    dev_r = std::max(dev_r, std::abs(8.0 * ab - 1.0 - regular.x));
    const Cx e = std::polar(1.0, ang(rng));
    const auto rotated = fibration::f_prime({e * p.z1, e * p.z2, p.x});
    dev_r = std::max(dev_r, fibration::distance(rotated, regular));
  }
  r.add(bounded_check("fiber_regular_phase_invariance", reg.points.size(),
                      dev_r, tol, seed + 2));
  return r;
}

Report series_suite(const RunConfig& config) {
  Report r;
  r.suite = "series";
  const double tol = config.tolerance("series");
  const std::array<Cx, 4> taus{Cx{0.05, 0.0}, Cx{0.1, 0.0}, Cx{0.2, 0.0},
                               Cx{0.1, 0.1}};
  double worst = 0.0;
  for (const Cx t : taus) {
    worst = std::max({worst, std::abs(weierstrass::g2(t) - direct_g2(t, 200)),
                      std::abs(weierstrass::g3(t) - direct_g3(t, 200))});
  }
  r.add(bounded_check("series_vs_direct_200", taus.size(), worst, tol));
  const double at_zero = std::abs(weierstrass::g2(Cx{0.0, 0.0})) +
                         std::abs(weierstrass::g3(Cx{0.0, 0.0}));
  r.add(bounded_check("series_vanish_at_zero", 1, at_zero, 0.0));
  return r;
}

Report nodal_suite(const RunConfig& config) {
  Report r;
  r.suite = "nodal";
  const auto seed = suite_seed(config.seed, r.suite);
  const auto c = weierstrass::fiber_cubic(Cx{0.0, 0.0});
  const Cx o{0.0, 0.0};
  const double node = std::abs(c(o, o)) + std::abs(c.dx(o, o)) +
                      std::abs(c.dy(o, o));
  r.add(bounded_check("nodal_point_singular", 1, node, 0.0));
  r.add(bounded_check("nodal_hessian_det", 1,
                      std::abs(c.hessian_det(o, o) - Cx{-4.0, 0.0}), 0.0));
  const auto d0 = weierstrass::is_singular_fiber(o);
  r.add(bounded_check("nodal_discriminant_zero", 1, std::abs(d0.delta),
                      config.tolerance("discriminant")));

  std::mt19937_64 rng(seed);
  const std::size_t n = config.sample_count("discriminant");
  std::size_t singular = 0;
  double min_delta = INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    // Uniform on the disk of radius 0.3.
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Cx t = std::polar(0.3 * std::sqrt(u(rng)), kTwoPi * u(rng));
    const auto d = weierstrass::is_singular_fiber(t, config.tolerance("discriminant"));
    singular += d.singular ? 1 : 0;
    min_delta = std::min(min_delta, std::abs(d.delta));
  }
  std::ostringstream note;
  note << "min |Delta| = " << min_delta;
  r.add(bounded_check("nodal_only_at_zero", n, static_cast<double>(singular),
                      0.0, seed, note.str()));
  return r;
}

Report jcross_suite(const RunConfig& config) {
  Report r;
  r.suite = "jcross";
  const auto seed = suite_seed(config.seed, r.suite);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t n = config.sample_count("jcross");
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Radii in [0.01, 0.3]; the pole at 0 is excluded by construction.
    const Cx t = std::polar(0.01 + 0.29 * std::sqrt(u(rng)), kTwoPi * u(rng));
    const Cx jw = weierstrass::j_from_weierstrass(t);
    const Cx jt = quotient::j_torus(t);
    worst = std::max(worst, std::abs(jw - jt) / (1.0 + std::abs(jw)));
  }
  r.add(bounded_check("j_weierstrass_vs_torus", n, worst,
                      config.tolerance("jcross"), seed));

  double monotone = 0.0;
  double prev = quotient::j_torus(Cx{0.01, 0.0}).real();
  for (int i = 1; i < 100; ++i) {
    const double w = 0.01 + 0.39 * i / 99.0;
    const double cur = quotient::j_torus(Cx{w, 0.0}).real();
    if (!(cur > prev)) {
      monotone = 1.0;
    }
    prev = cur;
  }
  r.add(bounded_check("j_real_monotone", 100, monotone, 0.0));
  return r;
}

Report branch_suite(const RunConfig& config) {
  Report r;
  r.suite = "branch";
  const auto seed = suite_seed(config.seed, r.suite);
  std::mt19937_64 rng(seed);
  const auto& p = config.params;
  const std::size_t n = config.sample_count("branch");
  std::uniform_int_distribution<int> kd(-5, 5);
  double shift_law = 0.0;
  double shift_scaled = 0.0;
  double modulus_law = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Cx w = random_in_annulus(rng, p.rho0, p.rho1);
    const int k = kd(rng);
    const Cx next = transition::phi(w, k + 1).value;
    const Cx here = transition::phi(w, k).value;
    const double d = std::abs(next - w * here);
    shift_law = std::max(shift_law, d);
    shift_scaled = std::max(shift_scaled, d / std::max(1.0, std::abs(next)));
    const double rho = std::abs(w);
    const double theta = std::arg(w);
    const double expected = std::pow(rho, theta / kTwoPi - 0.5);
    modulus_law = std::max(
        modulus_law, std::abs(std::abs(transition::phi(w, 0).value) - expected));
  }
  // |phi_k| reaches ~1e5 on this window, where one ulp is ~1e-11.
  r.add(bounded_check("branch_shift_law", n, shift_law,
                      config.tolerance("branch"), seed,
                      "absolute |phi_{k+1} - w phi_k|"));
  r.add(bounded_check("branch_shift_law_scaled", n, shift_scaled,
                      config.tolerance("branch"), seed,
                      "|phi_{k+1} - w phi_k| / max(1, |phi_{k+1}|)"));
  r.add(bounded_check("branch_modulus_law", n, modulus_law,
                      config.tolerance("modulus"), seed));
  return r;
}

Report glue_suite(const RunConfig& config) {
  const auto seed = suite_seed(config.seed, "glue");
  atlas::ConsistencyOptions opt;
  opt.samples = config.sample_count("glue");
  opt.seed = seed;
  opt.round_trip_tol = config.tolerance("round_trip");
  opt.cr_tol = config.tolerance("cr");
  Report r = atlas::chart_consistency_check(config.params, opt);
  r.suite = "glue";

  // Holomorphy of each branch of phi and second-order convergence of the
  // residual for phi and for the attaching map in the base variable.
  std::mt19937_64 rng(seed + 1);
  const auto& p = config.params;
  const double h = kDefaultCrStep;
  const std::size_t m = opt.samples;
  double cr_phi = 0.0;
  double cr_phi_rel = 0.0;
  double ratio_dev = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Cx w = random_in_annulus(rng, p.rho0 * 1.01, p.rho1 * 0.99,
                                   -kPi + 0.05, kPi - 0.05);
    auto f = [](Cx x) { return transition::phi(x, 0).value; };
    const double r1 = cr_residual(f, w, h);
    const double r2 = cr_residual(f, w, h / 2.0);
    cr_phi = std::max(cr_phi, r1);
    const Cx dphi = (f(w + h) - f(w - h)) / (2.0 * h);
    cr_phi_rel = std::max(cr_phi_rel, r1 / std::max(1.0, std::abs(dphi)));
    ratio_dev = std::max(ratio_dev, std::abs(r1 / r2 - 4.0));

    const Cx z = random_in_annulus(rng, 1.01, p.rho2 * 0.99);
    const Cx u = 1.0 / w;
    const int shift = transition::glue_map(z, u, p).shift;
    auto g = [&](Cx uu) {
      return transition::glue_lift(z, uu) * int_pow(1.0 / uu, shift);
    };
    const double g1 = cr_residual(g, u, h);
    const double g2 = cr_residual(g, u, h / 2.0);
    ratio_dev = std::max(ratio_dev, std::abs(g1 / g2 - 4.0));
  }
  // Truncation error h^2 |phi'''| / 6 dominates near |w| = rho0.
  std::ostringstream rel;
  rel << "absolute |d phi/d wbar| in w; relative to |phi'|: " << cr_phi_rel;
  r.add(bounded_check("phi_cr_residual", m, cr_phi, config.tolerance("cr"),
                      seed + 1, rel.str()));
  r.add(bounded_check("cr_second_order_ratio", m, ratio_dev,
                      config.tolerance("cr_ratio"), seed + 1,
                      "|r(h)/r(h/2) - 4| for phi and the glue map in u"));
  return r;
}

Report winding_suite(const RunConfig& config) {
  Report r;
  r.suite = "winding";
  const auto seed = suite_seed(config.seed, r.suite);
  std::mt19937_64 rng(seed);
  const auto& p = config.params;
  const std::size_t n = config.sample_count("winding");
  std::uniform_real_distribution<double> rho_d(p.rho0 + 0.02 * (p.rho1 - p.rho0),
                                               p.rho1 - 0.02 * (p.rho1 - p.rho0));
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = rho_d(rng);
    const Cx z0 = random_in_annulus(rng, 1.01, p.rho2 * 0.99);
    for (const auto& [turns, expected] :
         std::array<std::pair<int, int>, 3>{{{1, 1}, {-1, -1}, {2, 2}}}) {
      const auto c = monodromy::overlap_monodromy_consistency(p, rho, z0, turns);
      dev = std::max({dev, std::abs(static_cast<double>(c.measured - expected)),
                      c.consistent ? 0.0 : 1.0});
    }
  }
  r.add(bounded_check("longitude_winding", n, dev, 0.0, seed,
                      "+1 per positive loop, -1 reversed, 2 doubled; matches "
                      "the framing-one gluing"));
  return r;
}

Report distinguish_suite(const RunConfig& config) {
  Report r;
  r.suite = "distinguish";
  const std::array<double, 4> rho1s{0.15, 0.2, 0.25, 0.3};
  const std::array<double, 4> rho2s{1.2, 1.5, 2.0, 2.5};
  std::vector<ModuliParams> grid;
  for (double a : rho1s) {
    for (double b : rho2s) {
      grid.push_back(ModuliParams::make(0.1, a, b));
    }
  }
  double wrong = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const auto v =
          atlas::distinguish(grid[i], grid[j], config.tolerance("modulus"));
      if (i == j) {
        wrong += v.equivalent ? 0.0 : 1.0;
        continue;
      }
      bool certified = !v.equivalent && !v.certificates.empty();
      for (const auto& c : v.certificates) {
        certified = certified && c.kind != atlas::CertificateKind::Uncertified;
      }
      wrong += certified ? 0.0 : 1.0;
    }
  }
  r.add(bounded_check("distinguish_grid", grid.size() * grid.size(), wrong, 0.0,
                      0, "count of wrong or uncertified verdicts"));

  double rho0_wrong = 0.0;
  for (const auto& g : grid) {
    const auto other = ModuliParams::make(0.5 * g.rho0, g.rho1, g.rho2);
    rho0_wrong += atlas::distinguish(g, other).equivalent ? 0.0 : 1.0;
  }
  r.add(bounded_check("distinguish_ignores_rho0", grid.size(), rho0_wrong, 0.0));
  return r;
}

Report symbolic_suite(const RunConfig& /*config*/) {
  Report r;
  r.suite = "symbolic";
  using monodromy::MappingClass;
  const MappingClass d = monodromy::positive_monodromy();
  const MappingClass di = monodromy::negative_monodromy();
  double bad = 0.0;
  for (const auto& m : {d, di, d * di, monodromy::gluing_action().fiber_action}) {
    bad += m.det() == 1 ? 0.0 : 1.0;
  }
  bad += (d * di == MappingClass::identity()) ? 0.0 : 1.0;
  for (int n = -5; n <= 5; ++n) {
    const auto img = d.pow(n).apply(monodromy::kLongitude);
    bad += (img == std::array<std::int64_t, 2>{n, 1}) ? 0.0 : 1.0;
    bad += (d.pow(n).apply(monodromy::kMeridian) == monodromy::kMeridian) ? 0.0
                                                                          : 1.0;
  }
  r.add(bounded_check("mapping_classes", 15, bad, 0.0));
  const int chi = monodromy::euler_characteristic(monodromy::matsumoto_fukaya());
  r.add(bounded_check("euler_characteristic_s4", 1, std::abs(chi - 2.0), 0.0));
  return r;
}

Report run_all(const RunConfig& config) {
  config.validate();
  Report all;
  all.suite = "verify";
  for (auto suite : {sphere_suite, critical_suite, fiber_suite, series_suite,
                     nodal_suite, jcross_suite, branch_suite, glue_suite,
                     winding_suite, distinguish_suite, symbolic_suite}) {
    all.append(suite(config));
  }
  return all;
}

std::string context_json(const RunConfig& config) {
  nlohmann::ordered_json j;
  j["rho0"] = config.params.rho0;
  j["rho1"] = config.params.rho1;
  j["rho2"] = config.params.rho2;
  j["seed"] = config.seed;
  nlohmann::ordered_json s;
  for (const auto& [k, v] : config.samples) {
    s[k] = v;
  }
  j["samples"] = s;
  nlohmann::ordered_json t;
  for (const auto& [k, v] : config.tolerances) {
    t[k] = v;
  }
  j["tolerances"] = t;
  return j.dump();
}

}  // namespace ncr4::verify
