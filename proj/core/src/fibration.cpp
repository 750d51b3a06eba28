#include "ncr4/fibration.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include <Eigen/Dense>

namespace ncr4::fibration {
namespace {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Vec3 = Eigen::Matrix<double, 3, 1>;
using Vec4 = Eigen::Matrix<double, 4, 1>;
using Mat5x4 = Eigen::Matrix<double, 5, 4>;
using Mat3x2 = Eigen::Matrix<double, 3, 2>;
using Mat3x5 = Eigen::Matrix<double, 3, 5>;
using Mat2x4 = Eigen::Matrix<double, 2, 4>;

Vec5 to_vec(const S4Point& p) {
  Vec5 v;
  v << p.z1.real(), p.z1.imag(), p.z2.real(), p.z2.imag(), p.x;
  return v;
}

S4Point from_vec(const Vec5& v) {
  return {{v(0), v(1)}, {v(2), v(3)}, v(4)};
}

Vec3 to_vec(const S2Point& q) { return {q.z.real(), q.z.imag(), q.x}; }

// Orthonormal basis of the complement of a unit vector v, taken from the
// Householder reflection that sends the largest coordinate axis to v.
template <int N>
Eigen::Matrix<double, N, N - 1> tangent_frame(
    const Eigen::Matrix<double, N, 1>& v) {
  Eigen::Index m = 0;
  v.cwiseAbs().maxCoeff(&m);
  Eigen::Matrix<double, N, 1> u = v;
  u(m) += (v(m) >= 0.0 ? 1.0 : -1.0);
  const Eigen::Matrix<double, N, N> h =
      Eigen::Matrix<double, N, N>::Identity() - 2.0 * u * u.transpose() /
                                                    u.squaredNorm();
  Eigen::Matrix<double, N, N - 1> frame;
  int col = 0;
  for (int i = 0; i < N; ++i) {
    if (i != m) {
      frame.col(col++) = h.col(i);
    }
  }
  return frame;
}

// Ambient 3x5 Jacobian of the polynomial formula for f'.
Mat3x5 ambient_jacobian(const S4Point& p) {
  const double x1 = p.z1.real();
  const double y1 = p.z1.imag();
  const double x2 = p.z2.real();
  const double y2 = p.z2.imag();
  const double a = std::norm(p.z1);
  const double b = std::norm(p.z2);
  const double s = std::sqrt(2.0 - p.x * p.x);
  const Cx prod = p.z1 * std::conj(p.z2);
  const Cx q = Cx{a - b, -p.x * s};

  std::array<Cx, 5> d1{
      4.0 * (std::conj(p.z2) * q + prod * (2.0 * x1)),
      4.0 * (kI * std::conj(p.z2) * q + prod * (2.0 * y1)),
      4.0 * (p.z1 * q - prod * (2.0 * x2)),
      4.0 * (-kI * p.z1 * q - prod * (2.0 * y2)),
      4.0 * prod * Cx{0.0, -(2.0 - 2.0 * p.x * p.x) / s},
  };
  Mat3x5 j;
  for (int c = 0; c < 5; ++c) {
    j(0, c) = d1[static_cast<std::size_t>(c)].real();
    j(1, c) = d1[static_cast<std::size_t>(c)].imag();
  }
  j(2, 0) = 16.0 * x1 * b;
  j(2, 1) = 16.0 * y1 * b;
  j(2, 2) = 16.0 * a * x2;
  j(2, 3) = 16.0 * a * y2;
  j(2, 4) = 0.0;
  return j;
}

struct FramedJacobian {
  Mat2x4 j;
  Mat5x4 frame4;
  Mat3x2 frame2;
  Vec3 image;
};

FramedJacobian framed_jacobian(const S4Point& p) {
  FramedJacobian out;
  const S2Point img = f_prime_unchecked(p);
  out.image = to_vec(img);
  const Vec3 img_unit = out.image.normalized();
  out.frame4 = tangent_frame<5>(to_vec(p).normalized());
  out.frame2 = tangent_frame<3>(img_unit);
  out.j = out.frame2.transpose() * ambient_jacobian(p) * out.frame4;
  return out;
}

double sigma_min_of(const Mat2x4& j) {
  const Eigen::Matrix2d m = j * j.transpose();
  const double tr = m.trace();
  const double det = std::max(0.0, m.determinant());
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  const double lmax = 0.5 * (tr + disc);
  if (lmax <= 0.0) {
    return 0.0;
  }
  return std::sqrt(det / lmax);
}

// Retraction from the tangent space at p back onto S^4.
S4Point retract(const S4Point& p, const Mat5x4& frame, const Vec4& step) {
  return from_vec((to_vec(p) + frame * step).normalized());
}

double objective(const S4Point& p) {
  const double s = min_singular_value(p);
  return s * s;
}

// Newton iteration on sigma_min^2 in tangent coordinates with
// finite-difference derivatives; falls back to backtracking gradient
// descent when the Newton step does not decrease the objective.
S4Point refine_critical(S4Point p, double tol) {
  constexpr double kFd = 1e-5;
  for (int iter = 0; iter < 100; ++iter) {
    const Mat5x4 frame = tangent_frame<5>(to_vec(p).normalized());
    auto g_at = [&](const Vec4& xi) { return objective(retract(p, frame, xi)); };
    const double g0 = g_at(Vec4::Zero());
    if (g0 == 0.0) {
      break;
    }
    Vec4 grad;
    Eigen::Matrix4d hess;
    for (int i = 0; i < 4; ++i) {
      Vec4 ei = Vec4::Zero();
      ei(i) = kFd;
      const double gp = g_at(ei);
      const double gm = g_at(-ei);
      grad(i) = (gp - gm) / (2.0 * kFd);
      hess(i, i) = (gp - 2.0 * g0 + gm) / (kFd * kFd);
      for (int k = i + 1; k < 4; ++k) {
        Vec4 ek = Vec4::Zero();
        ek(k) = kFd;
        const double v = (g_at(ei + ek) - g_at(ei - ek) - g_at(-ei + ek) +
                          g_at(-ei - ek)) /
                         (4.0 * kFd * kFd);
        hess(i, k) = v;
        hess(k, i) = v;
      }
    }
    Vec4 step = hess.ldlt().solve(-grad);
    if (!step.allFinite() || g_at(step) >= g0) {
      // Gradient descent with backtracking.
      step = -grad;
      double t = 1.0;
      while (t > 1e-12 && g_at(t * step) >= g0) {
        t *= 0.5;
      }
      step *= t;
      if (t <= 1e-12) {
        break;
      }
    }
    p = retract(p, frame, step);
    if (step.norm() < tol) {
      break;
    }
  }
  return p;
}

// Cube-sphere grid: each of the 10 faces of [-1,1]^5 sampled with the
// given spacing, rotated by a fixed orthogonal matrix and projected.
template <typename Visit>
void for_each_grid_point(double spacing, const Eigen::Matrix<double, 5, 5>& rot,
                         Visit&& visit) {
  const int n = static_cast<int>(std::ceil(2.0 / spacing)) + 1;
  const double h = 2.0 / (n - 1);
  std::array<int, 4> idx{};
  for (int axis = 0; axis < 5; ++axis) {
    for (double sign : {-1.0, 1.0}) {
      for (idx[0] = 0; idx[0] < n; ++idx[0]) {
        for (idx[1] = 0; idx[1] < n; ++idx[1]) {
          for (idx[2] = 0; idx[2] < n; ++idx[2]) {
            for (idx[3] = 0; idx[3] < n; ++idx[3]) {
              Vec5 v;
              int c = 0;
              for (int d = 0; d < 5; ++d) {
                v(d) = d == axis ? sign : -1.0 + h * idx[static_cast<std::size_t>(c++)];
              }
              visit(from_vec((rot * v).normalized()));
            }
          }
        }
      }
    }
  }
}

}  // namespace

S4Point S4Point::normalized(Cx z1, Cx z2, double x) {
  const double r = std::sqrt(std::norm(z1) + std::norm(z2) + x * x);
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError("S4Point::normalized: zero or non-finite vector");
  }
  return {z1 / r, z2 / r, x / r};
}

double distance(const S2Point& a, const S2Point& b) noexcept {
  return std::sqrt(std::norm(a.z - b.z) + (a.x - b.x) * (a.x - b.x));
}

double distance(const S4Point& a, const S4Point& b) noexcept {
  return std::sqrt(std::norm(a.z1 - b.z1) + std::norm(a.z2 - b.z2) +
                   (a.x - b.x) * (a.x - b.x));
}

S2Point hopf(Cx z1, Cx z2) {
  const double a = std::norm(z1);
  const double b = std::norm(z2);
  if (!(std::abs(a + b - 1.0) <= kSphereTol)) {
    throw DomainError("hopf: point is not on S^3");
  }
  return {2.0 * z1 * std::conj(z2), a - b};
}

S2Point f_prime_unchecked(const S4Point& p) noexcept {
  const double a = std::norm(p.z1);
  const double b = std::norm(p.z2);
  const double s = std::sqrt(2.0 - p.x * p.x);
  const Cx first = 4.0 * p.z1 * std::conj(p.z2) * Cx{a - b, -p.x * s};
  return {first, 8.0 * a * b - 1.0};
}

S2Point f_prime(const S4Point& p) {
  if (!(std::abs(p.sphere_defect()) <= kSphereTol)) {
    throw DomainError("f_prime: point is not on S^4");
  }
  return f_prime_unchecked(p);
}

std::array<double, 8> tangent_jacobian(const S4Point& p) {
  const Mat2x4 j = framed_jacobian(p).j;
  std::array<double, 8> out{};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 4; ++c) {
      out[static_cast<std::size_t>(r * 4 + c)] = j(r, c);
    }
  }
  return out;
}

double min_singular_value(const S4Point& p) {
  return sigma_min_of(framed_jacobian(p).j);
}

S4Point random_s4(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    const double a = g(rng), b = g(rng), c = g(rng), d = g(rng), e = g(rng);
    const double r2 = a * a + b * b + c * c + d * d + e * e;
    if (r2 > 1e-300) {
      return S4Point::normalized({a, b}, {c, d}, e);
    }
  }
}

std::vector<CriticalCluster> critical_set_search(
    const CriticalSearchOptions& options) {
  if (!(options.resolution > 0.0) || !(options.refinement_tol > 0.0) ||
      !(options.rank_tol > 0.0) || !(options.candidate_factor > 0.0)) {
    throw DomainError("critical_set_search: options must be positive");
  }
  if (options.resolution > 1.0) {
    throw DomainError("critical_set_search: resolution must be <= 1");
  }

  std::mt19937_64 rng(options.grid_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix<double, 5, 5> g;
  for (int i = 0; i < 25; ++i) {
    g(i / 5, i % 5) = gauss(rng);
  }
  const Eigen::Matrix<double, 5, 5> rot =
      Eigen::HouseholderQR<Eigen::Matrix<double, 5, 5>>(g).householderQ();

  struct Candidate {
    S4Point p;
    double sigma;
  };
  std::vector<Candidate> candidates;
  const double threshold = options.candidate_factor * options.resolution;
  for_each_grid_point(options.resolution, rot, [&](const S4Point& p) {
    const double s = min_singular_value(p);
    if (s < threshold) {
      candidates.push_back({p, s});
    }
  });
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& l, const Candidate& r) {
              return l.sigma < r.sigma;
            });

  // Greedy grouping of grid candidates: each group is seeded by its best
  // point and absorbs candidates within a few grid spacings.
  const double group_radius = std::max(5.0 * options.resolution, 0.05);
  struct Group {
    S4Point seed;
    std::size_t members;
  };
  std::vector<Group> groups;
  for (const auto& c : candidates) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& gr) {
      return distance(gr.seed, c.p) < group_radius;
    });
    if (it == groups.end()) {
      groups.push_back({c.p, 1});
    } else {
      ++it->members;
    }
  }

  std::vector<CriticalCluster> clusters;
  const double merge_radius = 1e-4;
  for (const auto& gr : groups) {
    const S4Point refined = refine_critical(gr.seed, options.refinement_tol);
    const double s = min_singular_value(refined);
    if (!(s < options.rank_tol)) {
      continue;
    }
    auto it = std::find_if(clusters.begin(), clusters.end(),
                           [&](const CriticalCluster& cl) {
                             return distance(cl.center, refined) < merge_radius;
                           });
    if (it == clusters.end()) {
      clusters.push_back({refined, f_prime(refined), s, gr.members});
    } else {
      it->grid_candidates += gr.members;
      if (s < it->sigma_min) {
        it->center = refined;
        it->image = f_prime(refined);
        it->sigma_min = s;
      }
    }
  }
  // Deterministic order: by x, then by the remaining coordinates.
  std::sort(clusters.begin(), clusters.end(),
            [](const CriticalCluster& l, const CriticalCluster& r) {
              return l.center.coords() < r.center.coords();
            });
  return clusters;
}

FiberSample sample_fiber(const S2Point& target, std::size_t n,
                         std::uint64_t seed,
                         const FiberSampleOptions& options) {
  if (!(std::abs(target.sphere_defect()) <= kSphereTol)) {
    throw DomainError("sample_fiber: target is not on S^2");
  }
  FiberSample out;
  out.requested = n;
  out.points.reserve(n);
  std::mt19937_64 rng(seed);
  const Vec3 t = to_vec(target);

  auto residual = [&](const S4Point& p) {
    return (t - to_vec(f_prime_unchecked(p))).norm();
  };

  for (std::size_t i = 0; i < n; ++i) {
    bool done = false;
    for (int attempt = 0; attempt <= options.retry_budget && !done; ++attempt) {
      S4Point p = random_s4(rng);
      double r = residual(p);
      for (int it = 0; it < options.max_iterations; ++it) {
        if (r < options.residual_tol) {
          break;
        }
        const FramedJacobian fj = framed_jacobian(p);
        const Eigen::Vector2d et = fj.frame2.transpose() * (t - fj.image);
        const Eigen::Matrix2d jjt = fj.j * fj.j.transpose();
        Vec4 step;
        if (std::abs(jjt.determinant()) > 1e-24) {
          step = fj.j.transpose() * jjt.inverse() * et;
        } else {
          step = fj.j.completeOrthogonalDecomposition().solve(et);
        }
        double scale = 1.0;
        S4Point next = retract(p, fj.frame4, step);
        double rn = residual(next);
        while (rn > r && scale > 1e-6) {
          scale *= 0.5;
          next = retract(p, fj.frame4, scale * step);
          rn = residual(next);
        }
        if (rn > r) {
          break;
        }
        p = next;
        r = rn;
      }
      if (r < options.residual_tol) {
        out.points.push_back(p);
        out.max_residual = std::max(out.max_residual, r);
        done = true;
      }
    }
    if (!done) {
      ++out.failures;
    }
  }
  return out;
}

void write_fiber_csv(std::ostream& out, std::span<const S4Point> points) {
  out << "re(z1),im(z1),re(z2),im(z2),x\n";
  const auto old = out.precision(17);
  for (const auto& p : points) {
    out << p.z1.real() << ',' << p.z1.imag() << ',' << p.z2.real() << ','
        << p.z2.imag() << ',' << p.x << '\n';
  }
  out.precision(old);
}

}  // namespace ncr4::fibration
