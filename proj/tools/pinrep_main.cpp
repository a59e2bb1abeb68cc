// pinrep: numerical real (Majorana) representation machinery for the Lorentz
// and Poincare groups, with machine-readable output.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>

#include "pinrep/clifford.hpp"
#include "pinrep/fields.hpp"
#include "pinrep/group.hpp"
#include "pinrep/io.hpp"
#include "pinrep/kernels.hpp"
#include "pinrep/propagator.hpp"
#include "pinrep/rep.hpp"
#include "pinrep/special.hpp"
#include "pinrep/spherical.hpp"

using json = nlohmann::ordered_json;
using namespace pinrep;

namespace {

constexpr const char* kVersion = "1.0.0";

json matrix_json(const MatX& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json base_output(std::uint64_t seed) {
  json out;
  out["pinrep_version"] = kVersion;
  out["seed"] = seed;
  return out;
}

int cmd_basis(std::uint64_t seed) {
  const auto b = clifford::build_majorana_basis();
  json out = base_output(seed);
  for (int mu = 0; mu < 4; ++mu)
    out["igamma" + std::to_string(mu)] = matrix_json(b.igamma[mu]);
  out["igamma5"] = matrix_json(b.igamma5);
  out["residuals"] = {
      {"anticommutator", clifford::anticommutator_residual(b)},
      {"orthogonality", clifford::orthogonality_residual(b)},
      {"gamma5_product", clifford::gamma5_product_residual(b)},
  };
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_cover(const std::vector<double>& theta, const std::vector<double>& boost,
              std::uint64_t seed) {
  const auto b = clifford::build_majorana_basis();
  groups::BoostRotationParams p;
  for (int i = 0; i < 3; ++i) {
    p.theta(i) = theta[i];
    p.boost(i) = boost[i];
  }
  const auto s = groups::spin_element(p, b);
  const auto lam = groups::covering_map(s, b);
  const auto res = groups::pin_residuals(s, b);
  json out = base_output(seed);
  out["theta"] = theta;
  out["boost"] = boost;
  out["S"] = matrix_json(s.s);
  out["Lambda"] = matrix_json(lam.lambda);
  out["residuals"] = {{"metric", lam.metric_residual()},
                      {"det", res.det},
                      {"maj_span", res.maj_span}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_classify(const std::string& rep_name, int m2, int n2,
                 const std::string& subgroup, int samples, std::uint64_t seed) {
  const auto b = clifford::build_majorana_basis();
  reps::RepSpec spec;
  const reps::Subgroup sg =
      subgroup == "rotations" ? reps::Subgroup::Rotations : reps::Subgroup::Full;
  if (rep_name == "pinor") {
    spec = reps::make_pinor_rep(b, sg);
  } else if (rep_name == "w11span") {
    spec = reps::make_w_half_half_span_rep(b);
  } else if (rep_name.empty()) {
    spec = reps::build_w_mn(m2, n2, b).rep;
    if (sg == reps::Subgroup::Rotations) {
      auto inner = spec.rho;
      spec.rho = [inner](const groups::BoostRotationParams& p) {
        groups::BoostRotationParams q = p;
        q.boost.setZero();
        return inner(q);
      };
    }
  } else {
    throw Error(Errc::UsageError, "unknown rep name: " + rep_name);
  }
  reps::CommutantOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  const auto cls = reps::commutant(spec, opt);
  json out = base_output(seed);
  out["rep"] = rep_name.empty() ? ("W(" + std::to_string(m2) + "/2," +
                                   std::to_string(n2) + "/2)")
                                : rep_name;
  out["subgroup"] = subgroup;
  out["dimension"] = spec.dim;
  out["samples"] = samples;
  out["kernel_dim"] = cls.dimension;
  out["class"] = cls.name();
  out["kernel_tol"] = opt.kernel_tol;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_cg(int two_l, int two_mu, int two_j, int two_n, int two_J, int two_nu,
           int table_two_J, std::uint64_t seed) {
  if (table_two_J >= 0) {
    // CSV dump of all couplings (l mu j n | J nu) with the requested total J
    std::printf("two_l,two_mu,two_j,two_n,two_J,two_nu,value\n");
    for (int tl = 0; 2 * tl <= 2 * table_two_J + 16; tl += 2)
      for (int tj = 0; tj <= table_two_J + 8; ++tj) {
        if ((tl + tj) % 2 != table_two_J % 2) continue;
        if (table_two_J < std::abs(tl - tj) || table_two_J > tl + tj) continue;
        for (int tmu = -tl; tmu <= tl; tmu += 2)
          for (int tn = -tj; tn <= tj; tn += 2) {
            const int tnu = tmu + tn;
            if (std::abs(tnu) > table_two_J) continue;
            const double v = special::clebsch_gordan(
                {tl, tmu, tj, tn, table_two_J, tnu});
            if (v != 0.0)
              std::printf("%d,%d,%d,%d,%d,%d,%.17g\n", tl, tmu, tj, tn,
                          table_two_J, tnu, v);
          }
      }
    return 0;
  }
  const double v = special::clebsch_gordan({two_l, two_mu, two_j, two_n, two_J, two_nu});
  json out = base_output(seed);
  out["two_l"] = two_l;
  out["two_mu"] = two_mu;
  out["two_j"] = two_j;
  out["two_n"] = two_n;
  out["two_J"] = two_J;
  out["two_nu"] = two_nu;
  out["value"] = v;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_transform(const std::string& in_path, const std::string& out_path,
                  const std::string& op, double t, bool report, std::uint64_t seed) {
  const auto b = clifford::build_majorana_basis();
  json rep = base_output(seed);
  rep["op"] = op;
  if (op == "hm" || op == "ihm") {
    if (op == "hm") {
      fields::SpinorFieldGrid f = io::read_field(in_path);
      const auto spec = spherical::RadialSphericalSpec::make(
          8, 64, 3.14159265358979323846 / f.grid.dx, 64,
          (f.grid.n / 2) * f.grid.dx);
      const auto sph = spherical::resample_to_spherical(f, spec, b);
      const auto mom = spherical::hankel_majorana(sph, b);
      if (!out_path.empty()) io::write_spherical(out_path, mom);
      if (report) {
        const auto back = spherical::inverse_hankel_majorana(mom, b);
        double num = 0;
        for (std::size_t i = 0; i < back.data.size(); ++i) {
          const double d = back.data[i] - sph.data[i];
          num += d * d;
        }
        rep["parseval_rel"] =
            std::abs(mom.qnorm() - sph.qnorm()) / std::max(sph.qnorm(), 1e-300);
        rep["round_trip_rel"] = std::sqrt(num) / std::max(sph.qnorm(), 1e-300);
      }
    } else {
      const auto mom = io::read_spherical(in_path);
      const auto back = spherical::inverse_hankel_majorana(mom, b);
      if (!out_path.empty())
        throw Error(Errc::UsageError,
                    "ihm output is a spherical-grid field; use --report");
      rep["coord_qnorm"] = back.qnorm();
    }
  } else {
    fields::SpinorFieldGrid f = io::read_field(in_path);
    fields::SpinorFieldGrid g = f;
    if (op == "fm")
      g = fields::fourier_majorana(f, b);
    else if (op == "ifm")
      g = fields::inverse_fourier_majorana(f, b);
    else if (op == "evolve")
      g = fields::evolve(f, t, b);
    else
      throw Error(Errc::UsageError, "unknown op: " + op);
    if (!out_path.empty()) io::write_field(out_path, g);
    if (report) {
      rep["norm_in"] = f.norm();
      rep["norm_out"] = g.norm();
      rep["unitarity_rel"] =
          std::abs(g.norm() - f.norm()) / std::max(f.norm(), 1e-300);
      if (op == "fm") {
        const auto back = fields::inverse_fourier_majorana(g, b);
        double num = 0;
        for (std::size_t i = 0; i < back.data.size(); ++i) {
          const double d = back.data[i] - f.data[i];
          num += d * d;
        }
        rep["round_trip_rel"] = std::sqrt(num) / std::max(f.norm(), 1e-300);
      } else if (op == "evolve") {
        const auto back = fields::evolve(g, -t, b);
        double num = 0;
        for (std::size_t i = 0; i < back.data.size(); ++i) {
          const double d = back.data[i] - f.data[i];
          num += d * d;
        }
        rep["round_trip_rel"] = std::sqrt(num) / std::max(f.norm(), 1e-300);
      }
    }
  }
  std::cout << rep.dump(2) << "\n";
  return 0;
}

int cmd_propagator(double mass, const std::vector<double>& radii, int rungs,
                   std::uint64_t seed) {
  const auto b = clifford::build_majorana_basis();
  auto ladder = prop::default_ladder();
  if (rungs > 0 && rungs < int(ladder.size())) ladder.resize(rungs);
  const auto rows = prop::causality_scan(radii, mass, ladder, b);
  (void)seed;
  std::printf("radius,rung,normalized_norm\n");
  for (const auto& r : rows)
    std::printf("%.17g,%d,%.17g\n", r.radius, r.rung, r.normalized_norm);
  return 0;
}

int cmd_evolve(const std::string& in_path, const std::string& out_path, double t,
               const std::string& via, std::uint64_t seed) {
  const auto b = clifford::build_majorana_basis();
  fields::SpinorFieldGrid f = io::read_field(in_path);
  json rep = base_output(seed);
  rep["t"] = t;
  if (via == "propagator") {
    // regulator tied to the grid: wide enough for the band, inside Nyquist
    const double p_nyq = 3.14159265358979323846 / f.grid.dx;
    prop::QuadratureSpec quad{p_nyq, 256, p_nyq / 3.0};
    rep["reproduce_rel_error"] = prop::reproduce_check(f, t, f.mass, quad, b);
    rep["reproduce_note"] = "regulator-limited; see README";
  }
  const auto g = fields::evolve(f, t, b);
  if (!out_path.empty()) io::write_field(out_path, g);
  rep["norm_in"] = f.norm();
  rep["norm_out"] = g.norm();
  std::cout << rep.dump(2) << "\n";
  return 0;
}

int cmd_selftest(std::uint64_t seed) {
  const auto b = clifford::build_majorana_basis();
  json out = base_output(seed);
  json checks = json::array();
  auto add = [&](const std::string& name, double value, double tol) {
    checks.push_back({{"name", name}, {"value", value}, {"tol", tol},
                      {"pass", value <= tol}});
    return value <= tol;
  };
  bool ok = true;
  ok &= add("clifford_anticommutator", clifford::anticommutator_residual(b), 0.0);
  ok &= add("clifford_orthogonality", clifford::orthogonality_residual(b), 0.0);
  ok &= add("gamma5_product", clifford::gamma5_product_residual(b), 0.0);
  {
    Rng rng(seed);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      groups::BoostRotationParams p1{rng.normal3() * 0.5, rng.normal3() * 0.5};
      groups::BoostRotationParams p2{rng.normal3() * 0.5, rng.normal3() * 0.5};
      const auto s1 = groups::spin_element(p1, b);
      const auto s2 = groups::spin_element(p2, b);
      const Mat4 lhs = groups::covering_map({Mat4(s1.s * s2.s)}, b).lambda;
      const Mat4 rhs =
          groups::covering_map(s1, b).lambda * groups::covering_map(s2, b).lambda;
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    ok &= add("covering_homomorphism", worst, 1e-10);
  }
  {
    const auto cls =
        reps::commutant(reps::make_pinor_rep(b, reps::Subgroup::Full));
    checks.push_back({{"name", "pinor_commutant_class"},
                      {"value", cls.dimension},
                      {"expect", 2},
                      {"pass", cls.dimension == 2}});
    ok &= cls.dimension == 2;
  }
  {
    const double cg = special::clebsch_gordan({2, 0, 1, 1, 3, 1});
    const double err = std::abs(cg - std::sqrt(2.0 / 3.0));
    ok &= add("cg_sqrt_two_thirds", err, 1e-14);
  }
  {
    fields::GridSpec g{16, 0.25, true};
    const auto f = fields::random_band_limited(1, 1.0, g, seed + 5);
    const auto mom = fields::fourier_majorana(f, b);
    const auto back = fields::inverse_fourier_majorana(mom, b);
    double num = 0;
    for (std::size_t i = 0; i < back.data.size(); ++i) {
      const double d = back.data[i] - f.data[i];
      num += d * d;
    }
    ok &= add("fourier_majorana_round_trip", std::sqrt(num) / f.norm(), 1e-10);
    ok &= add("fourier_majorana_parseval",
              std::abs(mom.norm() - f.norm()) / f.norm(), 1e-10);
  }
  out["kernels"] = kernels::active_kernel_name();
  out["checks"] = checks;
  out["pass"] = ok;
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"real (Majorana) representation machinery for the Poincare group"};
  app.require_subcommand(1);
  std::uint64_t seed = 2024;
  app.add_option("--seed", seed, "RNG seed recorded in every output");

  auto* basis_cmd = app.add_subcommand("basis", "print the Majorana basis and residuals");

  std::vector<double> theta{0, 0, 0}, boost{0, 0, 0};
  auto* cover_cmd = app.add_subcommand("cover", "spin element and its Lorentz image");
  cover_cmd->add_option("--theta", theta, "rotation parameters")->expected(3);
  cover_cmd->add_option("--boost", boost, "boost parameters")->expected(3);

  std::string rep_name;
  int m2 = -1, n2 = -1, samples = 32;
  std::string subgroup = "full";
  auto* classify_cmd = app.add_subcommand("classify", "commutant classification");
  classify_cmd->add_option("--rep", rep_name, "builtin rep: pinor | w11span");
  classify_cmd->add_option("--m2", m2, "doubled label m2 of W_(m,n)");
  classify_cmd->add_option("--n2", n2, "doubled label n2 of W_(m,n)");
  classify_cmd->add_option("--subgroup", subgroup, "full | rotations");
  classify_cmd->add_option("--samples", samples, "sampled group elements");

  int two_l = 0, two_mu = 0, two_j = 0, two_n = 0, two_J = 0, two_nu = 0,
      table_two_J = -1;
  auto* cg_cmd = app.add_subcommand("cg", "Clebsch-Gordan coefficient");
  cg_cmd->add_option("--2l", two_l);
  cg_cmd->add_option("--2mu", two_mu);
  cg_cmd->add_option("--2j", two_j);
  cg_cmd->add_option("--2n", two_n);
  cg_cmd->add_option("--2J", two_J);
  cg_cmd->add_option("--2nu", two_nu);
  cg_cmd->add_option("--table", table_two_J, "dump a CSV table for doubled total J");

  std::string in_path, out_path, op = "fm";
  double tval = 0.0;
  bool report = false;
  auto* tr_cmd = app.add_subcommand("transform", "field transforms");
  tr_cmd->add_option("--in", in_path, "input field file")->required();
  tr_cmd->add_option("--out", out_path, "output field file");
  tr_cmd->add_option("--op", op, "fm | ifm | hm | ihm | evolve");
  tr_cmd->add_option("--t", tval, "evolution time");
  tr_cmd->add_flag("--report", report, "emit residual diagnostics");

  double mass = 1.0;
  std::vector<double> radii{1.0, 2.0, 4.0};
  int rungs = 3;
  auto* prop_cmd = app.add_subcommand("propagator", "causality scan table (CSV)");
  prop_cmd->add_option("--mass", mass);
  prop_cmd->add_option("--radii", radii);
  prop_cmd->add_option("--ladder", rungs, "number of quadrature rungs (max 3)");

  std::string via;
  std::string ev_in, ev_out;
  double ev_t = 0.5;
  auto* ev_cmd = app.add_subcommand("evolve", "evolve a stored field");
  ev_cmd->add_option("--in", ev_in)->required();
  ev_cmd->add_option("--out", ev_out);
  ev_cmd->add_option("--t", ev_t);
  ev_cmd->add_option("--via", via, "set to 'propagator' to run the reproducing check");

  auto* self_cmd = app.add_subcommand("selftest", "run the invariant battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (basis_cmd->parsed()) return cmd_basis(seed);
    if (cover_cmd->parsed()) return cmd_cover(theta, boost, seed);
    if (classify_cmd->parsed())
      return cmd_classify(rep_name, m2, n2, subgroup, samples, seed);
    if (cg_cmd->parsed())
      return cmd_cg(two_l, two_mu, two_j, two_n, two_J, two_nu, table_two_J, seed);
    if (tr_cmd->parsed())
      return cmd_transform(in_path, out_path, op, tval, report, seed);
    if (prop_cmd->parsed()) return cmd_propagator(mass, radii, rungs, seed);
    if (ev_cmd->parsed()) return cmd_evolve(ev_in, ev_out, ev_t, via, seed);
    if (self_cmd->parsed()) return cmd_selftest(seed);
  } catch (const Error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
