// ncr4: verification suites and plot-data export.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage/config/I-O error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncr4/atlas.hpp"
#include "ncr4/errors.hpp"
#include "ncr4/fibration.hpp"
#include "ncr4/monodromy.hpp"
#include "ncr4/quotient.hpp"
#include "ncr4/run_config.hpp"
#include "ncr4/transition.hpp"
#include "ncr4/verify.hpp"
#include "ncr4/weierstrass.hpp"

namespace {

using ncr4::Cx;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string config_path;
  std::optional<double> rho0, rho1, rho2;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::vector<std::string> tols;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--config", f.config_path, "key = value config file")
      ->check(CLI::ExistingFile);
  app->add_option("--rho0", f.rho0);
  app->add_option("--rho1", f.rho1);
  app->add_option("--rho2", f.rho2);
  app->add_option("--seed", f.seed);
  app->add_option("--samples", f.samples, "sample count for every suite");
  app->add_option("--tol", f.tols, "NAME=VALUE tolerance override")
      ->take_all();
  app->add_option("--out", f.out, "output file or directory");
  app->add_option("--format", f.format)->check(CLI::IsMember({"json", "csv"}));
}

// File values first, flags on top.
ncr4::RunConfig build_config(const CommonFlags& f) {
  auto c = ncr4::RunConfig::defaults();
  if (!f.config_path.empty()) {
    c = ncr4::load_config_file(f.config_path, c);
  }
  if (f.rho0) c.params.rho0 = *f.rho0;
  if (f.rho1) c.params.rho1 = *f.rho1;
  if (f.rho2) c.params.rho2 = *f.rho2;
  if (f.seed) c.seed = *f.seed;
  if (f.samples) c.set_all_samples(*f.samples);
  for (const auto& t : f.tols) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ncr4::ConfigError("--tol expects NAME=VALUE, got '" + t + "'");
    }
    c.set("tol." + t.substr(0, eq), t.substr(eq + 1));
  }
  if (!f.out.empty()) c.out = f.out;
  c.validate();
  return c;
}

Cx parse_complex(const std::string& s, const char* what) {
  std::istringstream in(s);
  double re = 0.0;
  double im = 0.0;
  char comma = 0;
  in >> re;
  if (in && !in.eof() && in.peek() == ',') {
    in >> comma >> im;
  }
  if (!in || !in.eof() || !std::isfinite(re) || !std::isfinite(im)) {
    throw ncr4::ConfigError(std::string(what) + ": expected RE[,IM], got '" +
                            s + "'");
  }
  return {re, im};
}

// Writes to `path` or stdout. A directory, or a path ending in '/', gets
// `default_name` inside it; missing directories are created.
template <typename Fn>
void emit(const std::string& path, const std::string& default_name, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::filesystem::path p(path);
  std::error_code ec;
  if (path.back() == '/' || std::filesystem::is_directory(p, ec)) {
    p /= default_name;
  }
  if (p.has_parent_path()) {
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(p);
  if (!out) {
    throw IoError("cannot write '" + p.string() + "'");
  }
  write(out);
  out.flush();
  if (!out) {
    throw IoError("write failed for '" + p.string() + "'");
  }
}

void write_checks_csv(std::ostream& os, const ncr4::Report& r) {
  os << "suite,name,samples,max_deviation,tolerance,pass,seed\n";
  os.precision(17);
  for (const auto& c : r.checks) {
    os << r.suite << ',' << c.name << ',' << c.samples << ',' << c.max_deviation
       << ',' << c.tolerance << ',' << (c.pass ? 1 : 0) << ',' << c.seed << '\n';
  }
}

int cmd_verify(const CommonFlags& f) {
  const auto config = build_config(f);
  const auto report = ncr4::verify::run_all(config);
  emit(config.out, f.format == "csv" ? "verify.csv" : "verify.json",
       [&](std::ostream& os) {
         if (f.format == "csv") {
           write_checks_csv(os, report);
         } else {
           os << ncr4::to_json(report, ncr4::verify::context_json(config));
         }
       });
  for (const auto& c : report.checks) {
    if (!c.pass) {
      std::cerr << "FAIL " << c.name << ": " << c.max_deviation << " > "
                << c.tolerance << '\n';
    }
  }
  return report.pass() ? kExitPass : kExitFail;
}

struct FiberFlags {
  std::string target;
  std::string base;
  std::string chart = "d1";
  std::size_t n = 100;
};

void atlas_fiber_csv(std::ostream& os, const ncr4::atlas::CP1Point& base,
                     const ncr4::ModuliParams& params, std::size_t n,
                     std::uint64_t seed) {
  namespace atlas = ncr4::atlas;
  const auto cls = atlas::classify_fiber(base, params);
  const char* kind = atlas::to_string(cls.kind);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  os << "class,chart,re_a,im_a,re_b,im_b\n";
  os.precision(17);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = unit(rng);
    const double arg = ncr4::kTwoPi * unit(rng);
    switch (cls.kind) {
      case atlas::FiberKind::Torus: {
        // |z| = |w|^t sweeps the fundamental domain.
        const Cx w = cls.base;
        const auto q = ncr4::quotient::reduce(
            std::polar(std::pow(std::abs(w), t), arg), w);
        os << kind << ",quotient," << q.z.real() << ',' << q.z.imag() << ','
           << q.w.real() << ',' << q.w.imag() << '\n';
        break;
      }
      case atlas::FiberKind::Annulus: {
        const Cx u = cls.base;
        const Cx z = std::polar(std::pow(params.rho2, t), arg);
        os << kind << ",product," << z.real() << ',' << z.imag() << ','
           << u.real() << ',' << u.imag() << '\n';
        break;
      }
      case atlas::FiberKind::NodalSphere: {
        // y^2 = x^2 (4x + 1) is parametrized by x = (s^2 - 1)/4, y = s x.
        const Cx s = std::polar(4.0 * t, arg);
        const Cx x = (s * s - 1.0) / 4.0;
        const Cx y = s * x;
        os << kind << ",weierstrass," << x.real() << ',' << x.imag() << ','
           << y.real() << ',' << y.imag() << '\n';
        break;
      }
    }
  }
}

int cmd_fiber(const CommonFlags& f, const FiberFlags& ff) {
  const auto config = build_config(f);
  if (ff.target.empty() == ff.base.empty()) {
    throw ncr4::ConfigError("fiber: give exactly one of --target or --base");
  }
  if (!ff.base.empty()) {
    const ncr4::atlas::CP1Point base{
        ff.chart == "d2" ? ncr4::atlas::BaseChart::D2 : ncr4::atlas::BaseChart::D1,
        parse_complex(ff.base, "--base")};
    // Rejects points outside the chart disk before any output.
    (void)ncr4::atlas::preimage(base, config.params);
    emit(config.out, "fiber.csv", [&](std::ostream& os) {
      atlas_fiber_csv(os, base, config.params, ff.n, config.seed);
    });
    return kExitPass;
  }
  std::vector<double> v;
  std::istringstream in(ff.target);
  for (std::string tok; std::getline(in, tok, ',');) {
    try {
      v.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ncr4::ConfigError("--target: bad number '" + tok + "'");
    }
  }
  if (v.size() != 2 && v.size() != 3) {
    throw ncr4::ConfigError("--target expects ZRE,X or ZRE,ZIM,X");
  }
  const ncr4::fibration::S2Point target =
      v.size() == 2 ? ncr4::fibration::S2Point{{v[0], 0.0}, v[1]}
                    : ncr4::fibration::S2Point{{v[0], v[1]}, v[2]};
  if (std::abs(target.sphere_defect()) > 1e-9) {
    throw ncr4::DomainError("--target is not on the unit sphere S^2");
  }
  ncr4::fibration::FiberSample sample;
  if (ff.n > 0) {
    ncr4::fibration::FiberSampleOptions opt;
    opt.residual_tol = std::min(opt.residual_tol, config.tolerance("fiber"));
    sample = ncr4::fibration::sample_fiber(target, ff.n, config.seed, opt);
  }
  emit(config.out, "fiber.csv", [&](std::ostream& os) {
    ncr4::fibration::write_fiber_csv(os, sample.points);
  });
  if (sample.failures != 0) {
    std::cerr << "fiber: " << sample.failures << " of " << ff.n
              << " points did not converge\n";
    return kExitFail;
  }
  return sample.max_residual <= config.tolerance("fiber") ? kExitPass : kExitFail;
}

struct JscanFlags {
  std::size_t n = 200;
  double radius = 0.3;
  std::string model = "weierstrass";
};

int cmd_jscan(const CommonFlags& f, const JscanFlags& jf) {
  const auto config = build_config(f);
  if (!(jf.radius > 0.0) || jf.radius > ncr4::quotient::kCertifiedRadius) {
    throw ncr4::ConfigError("jscan: --radius must lie in (0, 0.5]");
  }
  std::vector<ncr4::weierstrass::JSample> rows;
  rows.reserve(jf.n);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < jf.n; ++i) {
    // Radii start at 1% of the disk to stay off the pole at 0.
    const double r = jf.radius * (0.01 + 0.99 * std::sqrt(unit(rng)));
    const Cx tau = std::polar(r, ncr4::kTwoPi * unit(rng));
    const Cx j = jf.model == "torus" ? ncr4::quotient::j_torus(tau)
                                     : ncr4::weierstrass::j_from_weierstrass(tau);
    rows.push_back({tau, j});
  }
  emit(config.out, "jscan.csv", [&](std::ostream& os) {
    ncr4::weierstrass::write_jscan_csv(os, rows);
  });
  return kExitPass;
}

struct MonodromyFlags {
  std::optional<double> loop_radius;
  std::string z0 = "1.5";
  int turns = 1;
  std::size_t steps = 256;
};

int cmd_monodromy(const CommonFlags& f, const MonodromyFlags& mf) {
  const auto config = build_config(f);
  const auto& p = config.params;
  const double rho = mf.loop_radius.value_or(0.5 * (p.rho0 + p.rho1));
  const Cx z0 = parse_complex(mf.z0, "--z0");
  const auto res =
      ncr4::transition::longitude_monodromy(rho, z0, p, mf.turns, mf.steps, true);
  const int predicted = mf.turns * ncr4::monodromy::gluing_action().framing_increment;
  const bool ok = res.winding == predicted && res.domain_shifts == predicted;
  emit(config.out, f.format == "csv" ? "monodromy.csv" : "monodromy.json",
       [&](std::ostream& os) {
         if (f.format == "csv") {
           ncr4::transition::write_monodromy_csv(os, res.trace);
           return;
         }
         nlohmann::ordered_json j;
         j["schema"] = 1;
         j["rho"] = rho;
         j["z0"] = {z0.real(), z0.imag()};
         j["turns"] = mf.turns;
         j["winding"] = res.winding;
         j["domain_shifts"] = res.domain_shifts;
         j["predicted"] = predicted;
         j["worst_jump_ratio"] = res.worst_jump_ratio;
         j["pass"] = ok;
         os << j.dump(2) << '\n';
       });
  return ok ? kExitPass : kExitFail;
}

struct DistinguishFlags {
  std::optional<double> rho0, rho1, rho2;
};

int cmd_distinguish(const CommonFlags& f, const DistinguishFlags& df) {
  const auto config = build_config(f);
  const auto& a = config.params;
  const auto b = ncr4::ModuliParams::make(df.rho0.value_or(a.rho0),
                                          df.rho1.value_or(a.rho1),
                                          df.rho2.value_or(a.rho2));
  const auto v =
      ncr4::atlas::distinguish(a, b, config.tolerance("canonical"));
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["a"] = {a.rho0, a.rho1, a.rho2};
  j["b"] = {b.rho0, b.rho1, b.rho2};
  j["equivalent"] = v.equivalent;
  auto certs = nlohmann::ordered_json::array();
  bool certified = true;
  for (const auto& c : v.certificates) {
    certified = certified && c.kind != ncr4::atlas::CertificateKind::Uncertified;
    nlohmann::ordered_json cj;
    cj["kind"] = ncr4::atlas::to_string(c.kind);
    cj["modulus_a"] = c.modulus_a;
    cj["modulus_b"] = c.modulus_b;
    cj["w_star"] = c.w_star;
    cj["j_star"] = c.j_star;
    cj["band_bound"] = c.band_bound;
    cj["detail"] = c.detail;
    certs.push_back(cj);
  }
  j["certificates"] = certs;
  std::cout << (v.equivalent ? "equivalent" : "distinct");
  for (const auto& c : v.certificates) {
    std::cout << "\n  " << ncr4::atlas::to_string(c.kind) << ": " << c.detail;
  }
  std::cout << '\n';
  if (!config.out.empty()) {
    emit(config.out, "distinguish.json",
         [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  }
  return v.equivalent || certified ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ncr4: complex structures on R^4 via an elliptic fibration"};
  app.require_subcommand(1);

  CommonFlags common;
  auto* verify = app.add_subcommand("verify", "run all verification suites");
  add_common(verify, common);

  FiberFlags ff;
  auto* fiber = app.add_subcommand("fiber", "sample a fiber as CSV");
  add_common(fiber, common);
  fiber->add_option("--target", ff.target, "S^2 point ZRE,ZIM,X");
  fiber->add_option("--base", ff.base, "base point RE[,IM] in the atlas");
  fiber->add_option("--chart", ff.chart)->check(CLI::IsMember({"d1", "d2"}));
  fiber->add_option("-n", ff.n, "number of points");

  JscanFlags jf;
  auto* jscan = app.add_subcommand("jscan", "j-invariant over a tau disk");
  add_common(jscan, common);
  jscan->add_option("-n", jf.n);
  jscan->add_option("--radius", jf.radius);
  jscan->add_option("--model", jf.model)
      ->check(CLI::IsMember({"weierstrass", "torus"}));

  MonodromyFlags mf;
  auto* mono = app.add_subcommand("monodromy", "continue phi around the overlap");
  add_common(mono, common);
  mono->add_option("--loop-radius", mf.loop_radius);
  mono->add_option("--z0", mf.z0, "fiber coordinate RE[,IM]");
  mono->add_option("--turns", mf.turns);
  mono->add_option("--steps", mf.steps, "steps per turn");

  DistinguishFlags df;
  auto* dist = app.add_subcommand("distinguish", "compare two parameter sets");
  add_common(dist, common);
  dist->add_option("--vs-rho0", df.rho0);
  dist->add_option("--vs-rho1", df.rho1);
  dist->add_option("--vs-rho2", df.rho2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(common);
    if (*fiber) return cmd_fiber(common, ff);
    if (*jscan) return cmd_jscan(common, jf);
    if (*mono) return cmd_monodromy(common, mf);
    if (*dist) return cmd_distinguish(common, df);
  } catch (const ncr4::ConfigError& e) {
    std::cerr << "ncr4: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "ncr4: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "ncr4: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    // Numerical failures during a run count as failed verification.
    std::cerr << "ncr4: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
