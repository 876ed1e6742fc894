// hypolab: command-line surface over the library.  Every invocation writes a
// single report (JSON or CSV) to stdout and optionally to --out (atomic
// temp+rename).  Exit status: 0 all verdicts pass, 1 any failure or runtime
// error, 2 usage error.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hypolab/geometry_estimates.hpp"
#include "hypolab/heat_kernels.hpp"
#include "hypolab/kolmogorov_kfp.hpp"
#include "hypolab/model_spaces.hpp"
#include "hypolab/polynomial.hpp"
#include "hypolab/spectral_bounds.hpp"

using nlohmann::ordered_json;
using namespace hypolab;

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Report {
  ordered_json j;
  bool all_pass = true;

  Report(const std::string& command, unsigned long long seed) {
    j["command"] = command;
    j["params"] = ordered_json::object();
    j["seed"] = seed;
    j["results"] = ordered_json::array();
    j["verdicts"] = ordered_json::array();
    j["paper_refs"] = ordered_json::array();
  }
  void param(const std::string& k, const ordered_json& v) { j["params"][k] = v; }
  void row(const ordered_json& r) { j["results"].push_back(r); }
  void verdict(const std::string& name, bool pass, const std::string& detail) {
    j["verdicts"].push_back(
        ordered_json{{"name", name}, {"pass", pass}, {"detail", detail}});
    all_pass = all_pass && pass;
  }
  void ref(const std::string& s) { j["paper_refs"].push_back(s); }
};

std::string to_csv(const ordered_json& rep) {
  std::string out;
  const auto& rows = rep["results"];
  if (rows.empty()) return "empty\n";
  bool first = true;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
    if (!first) out += ',';
    out += it.key();
    first = false;
  }
  out += '\n';
  for (const auto& r : rows) {
    first = true;
    for (auto it = r.begin(); it != r.end(); ++it) {
      if (!first) out += ',';
      const auto& v = it.value();
      if (v.is_number_float())
        out += fmt(v.get<double>());
      else if (v.is_boolean())
        out += v.get<bool>() ? "1" : "0";
      else if (v.is_string())
        out += v.get<std::string>();
      else
        out += v.dump();
      first = false;
    }
    out += '\n';
  }
  return out;
}

int emit(const Report& rep, const std::string& out_path,
         const std::string& format) {
  std::string text =
      format == "csv" ? to_csv(rep.j) : rep.j.dump(2) + "\n";
  std::fputs(text.c_str(), stdout);
  if (!out_path.empty()) {
    std::string tmp = out_path + ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary);
      if (!f) {
        std::fprintf(stderr, "hypolab: cannot open %s\n", tmp.c_str());
        return 1;
      }
      f << text;
    }
    if (std::rename(tmp.c_str(), out_path.c_str()) != 0) {
      std::fprintf(stderr, "hypolab: rename to %s failed\n", out_path.c_str());
      return 1;
    }
  }
  return rep.all_pass ? 0 : 1;
}

ModelKind parse_model(const std::string& s) {
  if (s == "heisenberg") return ModelKind::Heisenberg;
  if (s == "hopf") return ModelKind::Hopf;
  if (s == "quaternionic") return ModelKind::QuaternionicHopf;
  throw DomainError("unknown model: " + s);
}

std::pair<int, int> parse_range(const std::string& s) {
  auto pos = s.find("..");
  if (pos == std::string::npos) {
    int v = std::stoi(s);
    return {v, v};
  }
  return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
}

// random polynomial with all monomials of total degree <= deg
Poly random_poly(int nvars, int deg, Rng& rng) {
  Poly p(nvars);
  std::vector<int> e(nvars, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nvars) {
      p = p + Poly::monomial(nvars, e, rng.uni(-1.0, 1.0));
      return;
    }
    for (int d = 0; d <= left; ++d) {
      e[i] = d;
      rec(i + 1, left - d);
    }
    e[i] = 0;
  };
  rec(0, deg);
  return p;
}

// ---- verify suites --------------------------------------------------------

void suite_lichnerowicz(Report& rep, const std::string& drange) {
  rep.ref("sub-Riemannian Lichnerowicz eigenvalue bound and its sharpness");
  auto [dlo, dhi] = parse_range(drange);
  for (ModelKind kind : {ModelKind::Hopf, ModelKind::QuaternionicHopf}) {
    std::string mname = kind == ModelKind::Hopf ? "hopf" : "quaternionic";
    for (const auto& r : sharpness_table(kind, dlo, dhi)) {
      rep.row({{"model", mname},
               {"d", r.d},
               {"bound", r.bound.str()},
               {"bound_value", r.bound.to_double()},
               {"lambda1", r.lambda1},
               {"equal", r.sharp}});
      rep.verdict(mname + " d=" + std::to_string(r.d), r.sharp,
                  "bound " + r.bound.str() + " vs lambda1 " +
                      std::to_string(r.lambda1));
    }
  }
}

void suite_cd(Report& rep, unsigned long long seed, int samples, double tol) {
  rep.ref("curvature-dimension inequality of the Heisenberg horizontal "
          "Laplacian, quarter-trace convention");
  Rng rng(seed);
  for (int n : {1, 2}) {
    int nv = 2 * n + 1;
    for (double eps : {0.1, 1.0, 10.0}) {
      double min_slack = std::numeric_limits<double>::infinity();
      for (int s = 0; s < samples; ++s) {
        Poly f = random_poly(nv, 3, rng);
        std::vector<double> pt(nv);
        for (double& c : pt) c = rng.uni(-2.0, 2.0);
        min_slack = std::min(min_slack, cd_slack(n, f, pt, eps));
      }
      rep.row({{"n", n}, {"eps", eps}, {"samples", samples},
               {"min_slack", min_slack}});
      rep.verdict("cd n=" + std::to_string(n) + " eps=" + fmt(eps),
                  min_slack >= -tol, "min slack " + fmt(min_slack));
    }
  }
}

void suite_commutation(Report& rep) {
  rep.ref("commutation of the horizontal Laplacian with the vertical "
          "derivative on the Heisenberg group");
  struct Cfg { int n, deg; };
  for (Cfg c : {Cfg{1, 6}, Cfg{2, 4}}) {
    int nv = 2 * c.n + 1;
    double worst_comm = 0.0, worst_gex = 0.0;
    long long count = 0;
    std::vector<int> e(nv, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == nv) {
        Poly mono = Poly::monomial(nv, e, 1.0);
        worst_comm = std::max(worst_comm, commutation_residual(c.n, mono));
        worst_gex = std::max(worst_gex, gamma_exchange_residual(c.n, mono));
        ++count;
        return;
      }
      for (int d = 0; d <= left; ++d) {
        e[i] = d;
        rec(i + 1, left - d);
      }
      e[i] = 0;
    };
    rec(0, c.deg);
    rep.row({{"n", c.n}, {"max_degree", c.deg}, {"monomials", count},
             {"max_commutator", worst_comm}, {"max_gamma_exchange", worst_gex}});
    rep.verdict("vertical commutation n=" + std::to_string(c.n),
                worst_comm == 0.0, "max residual " + fmt(worst_comm));
    rep.verdict("gamma exchange n=" + std::to_string(c.n), worst_gex == 0.0,
                "max residual " + fmt(worst_gex));
  }
}

void suite_masses(Report& rep, double tol) {
  rep.ref("stochastic completeness: unit mass of the radial heat kernels");
  for (ModelKind kind : {ModelKind::Heisenberg, ModelKind::Hopf,
                         ModelKind::QuaternionicHopf}) {
    std::string mname = kind == ModelKind::Heisenberg ? "heisenberg"
                        : kind == ModelKind::Hopf     ? "hopf"
                                                      : "quaternionic";
    for (double t : {0.1, 0.5, 2.0}) {
      double m = kernel_mass(ModelSpace{kind, 1}, t);
      rep.row({{"model", mname}, {"n", 1}, {"t", t}, {"mass", m},
               {"abs_err", std::fabs(m - 1.0)}});
      rep.verdict(mname + " t=" + fmt(t), std::fabs(m - 1.0) < tol,
                  "mass " + fmt(m));
    }
  }
}

void suite_representations(Report& rep, double tol_hopf, double tol_quat) {
  rep.ref("dual spectral-series / integral-transform representations of the "
          "fibration heat kernels");
  const double ts[3] = {0.25, 0.5, 1.0};
  const double rs[3] = {0.3, 0.7, 1.1};
  const double fs[3] = {0.4, 1.2, 2.4};
  struct Job { std::string model; int n; double t, r, f; double tol; };
  std::vector<Job> jobs;
  for (int n : {1, 2})
    for (double t : ts)
      for (double r : rs)
        for (double f : fs) jobs.push_back({"hopf", n, t, r, f, tol_hopf});
  for (double t : ts)
    for (double r : rs)
      for (double f : fs)
        jobs.push_back({"quaternionic", 1, t, r, f, tol_quat});

  std::vector<double> series(jobs.size()), integral(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), [&](int i) {
    const Job& jb = jobs[i];
    if (jb.model == "hopf") {
      series[i] = hopf_kernel_series(jb.n, jb.t, jb.r, jb.f).value;
      integral[i] = hopf_kernel_integral(jb.n, jb.t, jb.r, jb.f);
    } else {
      series[i] = quaternionic_kernel_series(jb.n, jb.t, jb.r, jb.f).value;
      integral[i] = quaternionic_kernel_integral(jb.n, jb.t, jb.r, jb.f);
    }
  });
  double worst_h = 0.0, worst_q = 0.0;
  for (size_t i = 0; i < jobs.size(); ++i) {
    const Job& jb = jobs[i];
    double rel = std::fabs(series[i] - integral[i]) / std::fabs(series[i]);
    (jb.model == "hopf" ? worst_h : worst_q) =
        std::max(jb.model == "hopf" ? worst_h : worst_q, rel);
    rep.row({{"model", jb.model}, {"n", jb.n}, {"t", jb.t}, {"r", jb.r},
             {"fiber", jb.f}, {"series", series[i]},
             {"integral", integral[i]}, {"rel_diff", rel}});
  }
  rep.verdict("hopf n=1,2 (54 pts)", worst_h < tol_hopf,
              "max rel diff " + fmt(worst_h));
  rep.verdict("quaternionic n=1 (27 pts)", worst_q < tol_quat,
              "max rel diff " + fmt(worst_q));
}

void suite_relation(Report& rep, double tol) {
  rep.ref("inter-fibration transform: SU(2)-fiber kernel as a derivative of "
          "the U(1)-fiber kernel");
  const double pts[3][2] = {{0.4, 0.8}, {0.6, 1.4}, {0.3, 2.0}};
  double worst = 0.0;
  for (double t : {0.3, 0.6, 1.2})
    for (const auto& p : pts) {
      double res = hopf_quaternionic_relation_residual(1, t, p[0], p[1]);
      worst = std::max(worst, res);
      rep.row({{"n", 1}, {"t", t}, {"r", p[0]}, {"theta", p[1]},
               {"residual", res}});
    }
  rep.verdict("relation (9 pts)", worst < tol, "max residual " + fmt(worst));
}

void suite_liyau(Report& rep, double tol) {
  rep.ref("Li-Yau-type gradient estimate for the Heisenberg heat kernel");
  const double rz[3][2] = {{0.5, 0.2}, {0.8, 0.5}, {0.3, 0.8}};
  double worst = std::numeric_limits<double>::infinity();
  for (double t : {0.3, 0.6, 1.2})
    for (const auto& p : rz) {
      double s = liyau_slack(1, 3.0, 0.2, t, p[0], p[1]);
      worst = std::min(worst, s);
      rep.row({{"n", 1}, {"alpha", 3.0}, {"s", 0.2}, {"t", t}, {"r", p[0]},
               {"z", p[1]}, {"slack", s}});
    }
  rep.verdict("li-yau slack (9 pts)", worst >= -tol,
              "min slack " + fmt(worst));
}

void suite_harnack(Report& rep, double tol) {
  rep.ref("parabolic Harnack inequality for the Heisenberg heat kernel");
  double worst = std::numeric_limits<double>::infinity();
  for (double x : {0.0, 0.5, 1.0}) {
    double s = harnack_slack(1, 3.0, x, 0.0, 0.3, 0.6);
    worst = std::min(worst, s);
    rep.row({{"n", 1}, {"alpha", 3.0}, {"x", x}, {"y", 0.0}, {"s", 0.3},
             {"t", 0.6}, {"slack", s}});
  }
  rep.verdict("harnack slack (3 pts)", worst >= -tol,
              "min slack " + fmt(worst));
}

void suite_diameter(Report& rep, unsigned long long seed, int samples,
                    double tol) {
  rep.ref("Bonnet-Myers-type diameter bound; beta=3 specialization");
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    DiameterInputs in;
    in.rho1 = rng.uni(0.1, 10.0);
    in.rho2 = rng.uni(0.1, 10.0);
    in.kappa = rng.uni(0.1, 10.0);
    in.n = rng.uni(0.5, 10.0);
    in.beta = 3.0;
    double a = bonnet_myers_general(in), b = bonnet_myers_beta3(in);
    double rel = std::fabs(a - b) / b;
    worst = std::max(worst, rel);
    if (i < 5)
      rep.row({{"rho1", in.rho1}, {"rho2", in.rho2}, {"kappa", in.kappa},
               {"n", in.n}, {"general", a}, {"beta3", b}, {"rel_diff", rel}});
  }
  rep.row({{"rho1", 0.0}, {"rho2", 0.0}, {"kappa", 0.0}, {"n", 0.0},
           {"general", 0.0}, {"beta3", 0.0}, {"rel_diff", worst}});
  rep.verdict("beta=3 identity (" + std::to_string(samples) + " samples)",
              worst <= tol, "max rel diff " + fmt(worst));
}

void suite_phi(Report& rep, unsigned long long seed, double tol) {
  rep.ref("entropy-energy profile diameter integral vs closed form");
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    double alpha = rng.uni(0.1, 10.0), D = rng.uni(0.1, 10.0);
    PhiDiameterResult r = phi_diameter(alpha, D);
    double rel = std::fabs(r.quadrature - r.closed_form) / r.closed_form;
    worst = std::max(worst, rel);
    rep.row({{"alpha", alpha}, {"D", D}, {"quadrature", r.quadrature},
             {"closed_form", r.closed_form}, {"rel_diff", rel}});
  }
  PhiDiameterResult unit = phi_diameter(1.0, 1.0);
  rep.row({{"alpha", 1.0}, {"D", 1.0}, {"quadrature", unit.quadrature},
           {"closed_form", unit.closed_form},
           {"rel_diff", std::fabs(unit.quadrature - unit.closed_form) /
                            unit.closed_form}});
  rep.verdict("phi integral (10 samples)", worst < tol,
              "max rel diff " + fmt(worst));
  rep.verdict("phi(1,1) = 2 pi sqrt(2)",
              std::fabs(unit.quadrature - 2.0 * PI * std::sqrt(2.0)) < 1e-6,
              "quadrature " + fmt(unit.quadrature));
}

// ---- kfp subcommands ------------------------------------------------------

kfp::PolyGauss catalog_fn(const std::string& name) {
  Poly x = Poly::var(2, 0), v = Poly::var(2, 1);
  if (name == "x") return kfp::pg(x, 0.0);
  if (name == "v") return kfp::pg(v, 0.0);
  if (name == "x2") return kfp::pg(x * x, 0.0);
  if (name == "v2") return kfp::pg(v * v, 0.0);
  if (name == "xv") return kfp::pg(x * v, 0.0);
  if (name == "gauss") return kfp::pg(x + v * v, 0.25);
  throw DomainError("unknown test function: " + name);
}

void kfp_apply_cmd(Report& rep, const kfp::Potential& pot,
                   const std::string& fname) {
  rep.ref("kinetic Fokker-Planck generator, twisted gradient and its "
          "second-order form");
  kfp::PolyGauss f = catalog_fn(fname);
  double worst_gap = std::numeric_limits<double>::infinity();
  for (double x : {-1.5, 0.0, 1.5})
    for (double v : {-1.5, 0.0, 1.5}) {
      double lf = kfp::kfp_apply(pot, f, x, v);
      double ga = kfp::grad_twist_sq(f, x, v);
      double t2 = kfp::t2_form(pot, f, x, v);
      double bo = kfp::bochner_rhs(pot, f, x, v);
      worst_gap = std::min(worst_gap, t2 - bo);
      rep.row({{"x", x}, {"v", v}, {"f", kfp::pg_eval(f, x, v)}, {"Lf", lf},
               {"gamma", ga}, {"T2", t2}, {"bochner_rhs", bo},
               {"gap", t2 - bo}});
    }
  double inv = kfp::invariance_residual(pot, f);
  rep.verdict("T2 >= bochner rhs", worst_gap >= -1e-9,
              "min gap " + fmt(worst_gap));
  rep.verdict("invariance residual", inv < 1e-8, fmt(inv));
}

void kfp_invariance_cmd(Report& rep, const kfp::Potential& pot,
                        unsigned long long seed, double tol) {
  rep.ref("invariance of the Gibbs measure under the kinetic Fokker-Planck "
          "generator");
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    double s = (i % 3) * 0.2;
    kfp::PolyGauss f{random_poly(2, 3, rng), s};
    double res = kfp::invariance_residual(pot, f);
    worst = std::max(worst, res);
    rep.row({{"idx", i}, {"s", s}, {"residual", res}});
  }
  rep.verdict("invariance battery (20 fns)", worst < tol,
              "max residual " + fmt(worst));
}

void kfp_keta_cmd(Report& rep, kfp::Potential pot, double M, double eta) {
  rep.ref("curvature constant K(eta) of the twisted metric via the 2x2 "
          "matrix inequality");
  pot.hessian_bound = M;
  std::vector<double> etas =
      std::isnan(eta) ? std::vector<double>{0.1, 0.2, 0.25, 0.3, 0.4}
                      : std::vector<double>{eta};
  for (double e : etas) {
    double k = kfp::k_eta(pot, e);
    double kc = kfp::k_eta_closed(M, e);
    rep.row({{"eta", e}, {"K", k}, {"K_closed", kc},
             {"abs_diff", std::fabs(k - kc)}});
    rep.verdict("K(eta=" + fmt(e) + ") matches closed form",
                std::fabs(k - kc) <= 1e-9 * std::max(1.0, std::fabs(kc)),
                "bisection " + fmt(k) + " closed " + fmt(kc));
    rep.verdict("K(eta=" + fmt(e) + ") >= -1/2", k >= -0.5, fmt(k));
  }
}

void kfp_decay_cmd(Report& rep, const kfp::Potential& pot, double eta,
                   double T, int N, double box, const std::string& mode_s) {
  rep.ref("hypocoercive exponential decay of the twisted energy / entropy "
          "functional");
  kfp::DecayMode mode = mode_s == "logsob" ? kfp::DecayMode::LogSobolev
                                           : kfp::DecayMode::Poincare;
  kfp::PhaseGrid g;
  g.N = N;
  g.box = box;
  kfp::DecayReport r = kfp::hypocoercive_decay(pot, eta, T, g, mode);
  for (size_t i = 0; i < r.ts.size(); ++i)
    rep.row({{"t", r.ts[i]}, {"F", r.Fs[i]}});
  rep.j["summary"] = ordered_json{{"fitted_rate", r.fitted_rate},
                                  {"predicted_rate", r.predicted_rate},
                                  {"kappa", r.kappa},
                                  {"K", r.K},
                                  {"eta", r.eta},
                                  {"monotone", r.monotone}};
  rep.verdict("F monotone decreasing", r.monotone, "");
  rep.verdict("fitted rate >= 0.95 * predicted",
              r.fitted_rate >= 0.95 * r.predicted_rate,
              "fitted " + fmt(r.fitted_rate) + " predicted " +
                  fmt(r.predicted_rate));
}

void kfp_gradbound_cmd(Report& rep, const kfp::Potential& pot, double t,
                       int N, double box, double kshift) {
  rep.ref("pointwise twisted gradient bound under the kinetic Fokker-Planck "
          "semigroup");
  kfp::PhaseGrid g;
  g.N = N;
  g.box = box;
  kfp::GradBoundReport r = kfp::gradient_bound_check(pot, t, g, kshift);
  rep.row({{"K", r.K}, {"t", t}, {"min_interior_slack", r.min_interior_slack},
           {"scale", r.scale},
           {"rel_slack", r.min_interior_slack / r.scale}});
  rep.j["summary"] = ordered_json{{"K", r.K},
                                  {"margin_cells", r.margin},
                                  {"min_interior_slack", r.min_interior_slack},
                                  {"scale", r.scale}};
  rep.verdict("gradient bound slack >= -1e-4 * scale",
              r.min_interior_slack >= -1e-4 * r.scale,
              "slack " + fmt(r.min_interior_slack) + " scale " + fmt(r.scale));
}

void kfp_lyapunov_cmd(Report& rep, const kfp::Potential& pot, double box) {
  rep.ref("Lyapunov drift and gradient growth of W = 1 + x^2 + v^2");
  kfp::LyapunovReport r = kfp::lyapunov_check(pot, box);
  rep.row({{"c_drift", r.c_drift}, {"c_grad", r.c_grad}});
  rep.verdict("sup LW/W = 2 (quadratic potential)",
              std::fabs(r.c_drift - 2.0) <= 1e-9, fmt(r.c_drift));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypolab: heat kernels, spectra and convergence rates for "
               "hypoelliptic model diffusions"};
  app.fallthrough(true);
  app.require_subcommand(1);

  std::string out_path, format = "json";
  unsigned long long seed = 12345;
  double tol = 0.0;  // 0 = per-command default
  app.add_option("--out", out_path, "write the report here (atomic)");
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "seed for randomized batteries");
  app.add_option("--tol", tol, "override the default tolerance");

  // kernel
  auto* kernel = app.add_subcommand("kernel", "evaluate a radial heat kernel");
  std::string model = "hopf", method = "both", sweep = "none";
  int n = 1, points = 64;
  double t = 0.5, r = 0.7, theta = 0.4, eta = 0.8, z = 0.3;
  double from = 0.1, to = 2.0;
  kernel->add_option("--model", model)->required()->check(
      CLI::IsMember({"heisenberg", "hopf", "quaternionic"}));
  kernel->add_option("--n", n);
  kernel->add_option("--t", t);
  kernel->add_option("--r", r);
  kernel->add_option("--theta", theta, "U(1) fiber coordinate");
  kernel->add_option("--eta", eta, "SU(2) fiber radial coordinate");
  kernel->add_option("--z", z, "Heisenberg center coordinate");
  kernel->add_option("--method", method)
      ->check(CLI::IsMember({"series", "integral", "both"}));
  kernel->add_option("--sweep", sweep, "tabulate along t or r")
      ->check(CLI::IsMember({"none", "t", "r"}));
  kernel->add_option("--from", from);
  kernel->add_option("--to", to);
  kernel->add_option("--points", points);

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "enumerate eigenvalues");
  std::string sp_model = "hopf";
  int sp_n = 1, sp_count = 20;
  spectrum->add_option("--model", sp_model)
      ->required()
      ->check(CLI::IsMember({"hopf", "quaternionic", "heisenberg"}));
  spectrum->add_option("--n", sp_n);
  spectrum->add_option("--count", sp_count);

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite, drange = "1..5";
  int samples = 100;
  verify->add_option("--suite", suite)
      ->required()
      ->check(CLI::IsMember({"lichnerowicz", "cd", "commutation", "masses",
                             "representations", "relation", "liyau",
                             "harnack", "diameter", "phi"}));
  verify->add_option("--d", drange, "dimension range, e.g. 1..5");
  verify->add_option("--samples", samples);

  // kfp
  auto* kfpc = app.add_subcommand("kfp", "kinetic Fokker-Planck toolbox");
  kfpc->require_subcommand(1);
  kfpc->fallthrough(true);
  std::string potential = "quadratic", fname = "v2", mode_s = "poincare";
  double kf_eta = std::numeric_limits<double>::quiet_NaN();
  double kf_T = 10.0, kf_t = 1.0, kf_M = 1.0, kf_box = 7.0, kf_shift = 0.0;
  int kf_N = 128;
  kfpc->add_option("--potential", potential)
      ->check(CLI::IsMember({"quadratic"}));
  auto* k_apply = kfpc->add_subcommand("apply", "evaluate L, Gamma, T2");
  k_apply->add_option("--f", fname, "test function")
      ->check(CLI::IsMember({"x", "v", "x2", "v2", "xv", "gauss"}));
  auto* k_inv = kfpc->add_subcommand("invariance", "Gibbs invariance battery");
  auto* k_keta = kfpc->add_subcommand("keta", "curvature constant K(eta)");
  k_keta->add_option("--eta", kf_eta);
  k_keta->add_option("--M", kf_M, "Hessian bound");
  auto* k_decay = kfpc->add_subcommand("decay", "hypocoercive decay run");
  k_decay->add_option("--eta", kf_eta);
  k_decay->add_option("--T", kf_T);
  k_decay->add_option("--N", kf_N);
  k_decay->add_option("--box", kf_box);
  k_decay->add_option("--mode", mode_s)
      ->check(CLI::IsMember({"poincare", "logsob"}));
  auto* k_grad = kfpc->add_subcommand("gradbound", "pointwise gradient bound");
  k_grad->add_option("--t", kf_t);
  k_grad->add_option("--N", kf_N);
  k_grad->add_option("--box", kf_box);
  k_grad->add_option("--kshift", kf_shift, "probe tightness by shifting K");
  auto* k_lyap = kfpc->add_subcommand("lyapunov", "Lyapunov function report");
  k_lyap->add_option("--box", kf_box);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*kernel) {
      Report rep("kernel", seed);
      rep.param("model", model);
      rep.param("n", n);
      rep.param("method", method);
      rep.param("tol", tol);
      ModelKind kind = parse_model(model);
      double fiber = kind == ModelKind::Heisenberg ? z
                     : kind == ModelKind::Hopf     ? theta
                                                   : eta;
      rep.ref(model + " radial heat kernel");
      double dtol = tol > 0.0 ? tol
                    : kind == ModelKind::QuaternionicHopf ? 1e-6
                                                          : 1e-8;
      auto eval_pair = [&](double tt, double rr, double ff, double* sv,
                           double* iv) {
        if (kind == ModelKind::Heisenberg) {
          *sv = *iv = heisenberg_kernel(n, tt, rr, ff);
        } else if (kind == ModelKind::Hopf) {
          if (method != "integral") *sv = hopf_kernel_series(n, tt, rr, ff).value;
          if (method != "series") *iv = hopf_kernel_integral(n, tt, rr, ff);
        } else {
          if (method != "integral")
            *sv = quaternionic_kernel_series(n, tt, rr, ff).value;
          if (method != "series") *iv = quaternionic_kernel_integral(n, tt, rr, ff);
        }
      };
      if (sweep == "none") {
        rep.param("t", t);
        rep.param("r", r);
        rep.param("fiber", fiber);
        double sv = 0.0, iv = 0.0;
        eval_pair(t, r, fiber, &sv, &iv);
        if (kind == ModelKind::Heisenberg) {
          rep.row({{"t", t}, {"r", r}, {"z", fiber}, {"value", sv}});
        } else if (method == "both") {
          double rel = std::fabs(sv - iv) / std::fabs(sv);
          rep.row({{"t", t}, {"r", r}, {"fiber", fiber}, {"series", sv},
                   {"integral", iv}, {"rel_diff", rel}});
          rep.verdict("series vs integral", rel < dtol, "rel diff " + fmt(rel));
        } else {
          rep.row({{"t", t}, {"r", r}, {"fiber", fiber},
                   {"value", method == "series" ? sv : iv}});
        }
      } else {
        rep.param("sweep", sweep);
        rep.param("from", from);
        rep.param("to", to);
        rep.param("points", points);
        std::vector<double> ab(points), sv(points), iv(points);
        for (int i = 0; i < points; ++i)
          ab[i] = from + (to - from) * i / std::max(1, points - 1);
        parallel_for(points, [&](int i) {
          double tt = sweep == "t" ? ab[i] : t;
          double rr = sweep == "r" ? ab[i] : r;
          eval_pair(tt, rr, fiber, &sv[i], &iv[i]);
        });
        // plot data stays two-column; the cross-check only surfaces as a
        // verdict
        double worst = 0.0;
        for (int i = 0; i < points; ++i) {
          if (kind != ModelKind::Heisenberg && method == "both")
            worst = std::max(worst,
                             std::fabs(sv[i] - iv[i]) / std::fabs(sv[i]));
          double val = (kind == ModelKind::Heisenberg || method != "integral")
                           ? sv[i]
                           : iv[i];
          rep.row({{sweep, ab[i]}, {"value", val}});
        }
        if (kind != ModelKind::Heisenberg && method == "both")
          rep.verdict("series vs integral (sweep)", worst < dtol,
                      "max rel diff " + fmt(worst));
      }
      return emit(rep, out_path, format);
    }

    if (*spectrum) {
      Report rep("spectrum", seed);
      rep.param("model", sp_model);
      rep.param("n", sp_n);
      rep.param("count", sp_count);
      rep.param("tol", tol);
      rep.ref("spectrum of the horizontal Laplacian on the fibration");
      auto entries =
          enumerate_spectrum(ModelSpace{parse_model(sp_model), sp_n}, sp_count);
      int idx = 0;
      for (const auto& e : entries)
        rep.row({{"index", idx++}, {"eigenvalue", e.eigenvalue}, {"m", e.m},
                 {"k", e.k}});
      return emit(rep, out_path, format);
    }

    if (*verify) {
      Report rep("verify --suite " + suite, seed);
      rep.param("suite", suite);
      rep.param("seed_used", seed);
      if (suite == "lichnerowicz") {
        rep.param("d", drange);
        rep.param("tol", 0.0);
        suite_lichnerowicz(rep, drange);
      } else if (suite == "cd") {
        double d = tol > 0.0 ? tol : 1e-10;
        rep.param("samples", samples);
        rep.param("tol", d);
        suite_cd(rep, seed, samples, d);
      } else if (suite == "commutation") {
        rep.param("tol", 0.0);
        suite_commutation(rep);
      } else if (suite == "masses") {
        double d = tol > 0.0 ? tol : 1e-6;
        rep.param("tol", d);
        suite_masses(rep, d);
      } else if (suite == "representations") {
        double dh = tol > 0.0 ? tol : 1e-8;
        double dq = tol > 0.0 ? tol : 1e-6;
        rep.param("tol_hopf", dh);
        rep.param("tol_quaternionic", dq);
        suite_representations(rep, dh, dq);
      } else if (suite == "relation") {
        double d = tol > 0.0 ? tol : 1e-6;
        rep.param("tol", d);
        suite_relation(rep, d);
      } else if (suite == "liyau") {
        double d = tol > 0.0 ? tol : 1e-6;
        rep.param("tol", d);
        suite_liyau(rep, d);
      } else if (suite == "harnack") {
        double d = tol > 0.0 ? tol : 1e-6;
        rep.param("tol", d);
        suite_harnack(rep, d);
      } else if (suite == "diameter") {
        double d = tol > 0.0 ? tol : 1e-12;
        rep.param("samples", samples);
        rep.param("tol", d);
        suite_diameter(rep, seed, samples, d);
      } else {  // phi
        double d = tol > 0.0 ? tol : 1e-8;
        rep.param("tol", d);
        suite_phi(rep, seed, d);
      }
      return emit(rep, out_path, format);
    }

    if (*kfpc) {
      kfp::Potential pot = kfp::quadratic_potential();
      if (*k_apply) {
        Report rep("kfp apply", seed);
        rep.param("potential", potential);
        rep.param("f", fname);
        rep.param("tol", tol);
        kfp_apply_cmd(rep, pot, fname);
        return emit(rep, out_path, format);
      }
      if (*k_inv) {
        Report rep("kfp invariance", seed);
        rep.param("potential", potential);
        double d = tol > 0.0 ? tol : 1e-8;
        rep.param("tol", d);
        kfp_invariance_cmd(rep, pot, seed, d);
        return emit(rep, out_path, format);
      }
      if (*k_keta) {
        Report rep("kfp keta", seed);
        rep.param("potential", potential);
        rep.param("M", kf_M);
        rep.param("tol", tol);
        kfp_keta_cmd(rep, pot, kf_M, kf_eta);
        return emit(rep, out_path, format);
      }
      if (*k_decay) {
        Report rep("kfp decay", seed);
        double e = std::isnan(kf_eta) ? 0.25 : kf_eta;
        rep.param("potential", potential);
        rep.param("eta", e);
        rep.param("T", kf_T);
        rep.param("N", kf_N);
        rep.param("box", kf_box);
        rep.param("mode", mode_s);
        rep.param("tol", tol);
        kfp_decay_cmd(rep, pot, e, kf_T, kf_N, kf_box, mode_s);
        return emit(rep, out_path, format);
      }
      if (*k_grad) {
        Report rep("kfp gradbound", seed);
        rep.param("potential", potential);
        rep.param("t", kf_t);
        rep.param("N", kf_N);
        rep.param("box", kf_box);
        rep.param("kshift", kf_shift);
        rep.param("tol", tol);
        kfp_gradbound_cmd(rep, pot, kf_t, kf_N, kf_box, kf_shift);
        return emit(rep, out_path, format);
      }
      if (*k_lyap) {
        Report rep("kfp lyapunov", seed);
        rep.param("potential", potential);
        rep.param("box", kf_box);
        rep.param("tol", tol);
        kfp_lyapunov_cmd(rep, pot, kf_box);
        return emit(rep, out_path, format);
      }
    }
  } catch (const std::exception& e) {
    ordered_json err;
    err["command"] = argc > 1 ? argv[1] : "";
    err["seed"] = seed;
    err["error"] = e.what();
    std::fputs((err.dump(2) + "\n").c_str(), stdout);
    std::fprintf(stderr, "hypolab: %s\n", e.what());
    return 1;
  }
  return 2;
}
