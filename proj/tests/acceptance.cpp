// Acceptance suite: every criterion below runs at its stated tolerance and
// prints one pass/fail line. The binary exits nonzero if any criterion fails.

#include "helpers.hpp"

#include "riopt/experiment.hpp"
#include "riopt/mnist.hpp"
#include "riopt/plot.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

using namespace riopt;

namespace {

namespace fs = std::filesystem;

struct Checker {
  bool ok = true;
  std::string why;
  void require(bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      why = msg;
    }
  }
};

Matrix diag_h(std::initializer_list<Scalar> diag) {
  Matrix h = Matrix::Zero(static_cast<Index>(diag.size()), static_cast<Index>(diag.size()));
  Index i = 0;
  for (Scalar v : diag) h(i, i) = v, ++i;
  return h;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing " + path + ">";
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Scalar median_of(std::vector<Scalar> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---- criterion 1: manifold axiom suite ------------------------------------

void manifold_axioms(Checker& c) {
  SphereOps sphere(10);
  GrassmannOps grassmann(8, 3);
  FixedRankOps fixed_rank(10, 12, 3);
  const std::vector<const Manifold*> manifolds = {&sphere, &grassmann, &fixed_rank};
  const std::vector<Scalar> hs = {1e-2, 1e-3, 1e-4};

  Rng rng(2024);
  for (const Manifold* m : manifolds) {
    long bad_feas = 0, bad_idem = 0, bad_tang = 0, bad_slope = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const ManifoldPoint x = m->random_point(rng);
      const TangentVector eta = m->random_tangent(x, rng);

      const ManifoldPoint y = m->retract(x, eta);
      if (!(m->feasibility_error(y) <= 1e-10)) ++bad_feas;

      const Matrix a = rng.gaussian_matrix(m->ambient_rows(), m->ambient_cols());
      const TangentVector pa = m->project(x, a);
      if (!((m->ambient(m->project(x, m->ambient(pa))) - m->ambient(pa)).norm() <= 1e-12))
        ++bad_idem;

      const TangentVector xi = m->random_tangent(x, rng);
      const TangentVector moved = m->transport_to(y, xi);
      if (!((m->ambient(m->project(y, m->ambient(moved))) - m->ambient(moved)).norm() <=
            1e-10))
        ++bad_tang;

      const TangentVector dir = m->random_unit_tangent(x, rng);
      std::vector<Scalar> errs;
      bool degenerate = false;
      for (Scalar h : hs) {
        const Scalar err =
            (m->ambient(m->retract(x, h * dir)) - (m->ambient(x) + h * m->ambient(dir)))
                .norm();
        if (err < 1e-18) degenerate = true;
        errs.push_back(err);
      }
      if (!degenerate && !(oracle::log_log_slope(hs, errs) >= 1.9)) ++bad_slope;
    }
    c.require(bad_feas == 0, m->name() + ": " + std::to_string(bad_feas) +
                                 " feasibility failures over 1000 trials");
    c.require(bad_idem == 0, m->name() + ": " + std::to_string(bad_idem) +
                                 " idempotency failures over 1000 trials");
    c.require(bad_tang == 0, m->name() + ": " + std::to_string(bad_tang) +
                                 " transport tangency failures over 1000 trials");
    c.require(bad_slope == 0, m->name() + ": " + std::to_string(bad_slope) +
                                  " retraction remainder slope failures over 1000 trials");
  }
}

// ---- criterion 2: gradient correctness ------------------------------------

void gradient_correctness(Checker& c) {
  const McProblem mc(gen_mc_instance(20, 20, 8, 0.5, 1001));
  const PcaProblem pca(gen_pca_instance(20, 10, 1002));
  const SphereRayleighProblem ray(diag_h({3.0, 1.0, 1.0}));
  const std::vector<const Problem*> problems = {&mc, &pca, &ray};

  Rng rng(1003);
  for (const Problem* p : problems) {
    const Manifold& m = p->manifold();
    for (int i = 0; i < 20; ++i) {
      const ManifoldPoint x = m.random_point(rng);
      const TangentVector eta = m.random_unit_tangent(x, rng);
      const Scalar h = 1e-6 * (1.0 + m.ambient(x).norm());
      const Scalar fd = oracle::directional_derivative_fd(*p, x, eta, h);
      const Scalar ip = m.inner(x, p->riemannian_grad(x), eta);
      const Scalar rel = std::abs(fd - ip) / std::max({std::abs(ip), std::abs(fd), 1e-8});
      c.require(rel <= 1e-5, p->name() + ": fd mismatch " + format_double(rel) + " at point " +
                                 std::to_string(i));
    }
  }
}

// ---- criterion 3: oracle bound certification -------------------------------

void oracle_bounds(Checker& c) {
  const SphereRayleighProblem ray(diag_h({3.0, 1.0, 1.0}));
  const Manifold& m = ray.manifold();
  const Scalar lip = ray.lipschitz_bound();
  Rng rng(1004);

  auto realized_error = [&](const OracleOutput& out, const ManifoldPoint& x) {
    return m.norm(x, out.g - ray.riemannian_grad(x));
  };

  {  // exact
    ExactOracle o;
    long bad = 0;
    for (int i = 0; i < 1000; ++i) {
      const ManifoldPoint x = m.random_point(rng);
      if (realized_error(o.evaluate(ray, x, i, rng), x) != 0.0) ++bad;
    }
    c.require(bad == 0, "exact oracle: " + std::to_string(bad) + " nonzero errors");
  }
  {  // additive noise, equality construction
    AdditiveNoiseOracle o(ErrorSchedule::power_decay(1e-3, 2.1));
    long bad = 0;
    for (int i = 0; i < 1000; ++i) {
      const ManifoldPoint x = m.random_point(rng);
      const OracleOutput out = o.evaluate(ray, x, 0, rng);
      const Scalar ratio = realized_error(out, x) / out.bound_value;
      if (ratio < 1.0 - 1e-12 || ratio > 1.0 + 1e-12) ++bad;
    }
    c.require(bad == 0, "additive oracle: " + std::to_string(bad) + " equality violations");
  }
  {  // relative noise: declared bound + exact two-sided band
    const Scalar nu = 0.5;
    RelativeNoiseOracle o(nu);
    long bad = 0;
    for (int i = 0; i < 1000; ++i) {
      const ManifoldPoint x = m.random_point(rng);
      const TangentVector grad = ray.riemannian_grad(x);
      const Scalar gn = m.norm(x, grad);
      const OracleOutput out = o.evaluate(ray, x, i, rng);
      if (m.norm(x, out.g - grad) > nu * gn * (1.0 + 1e-12)) ++bad;
      const Scalar on = m.norm(x, out.g);
      if (!((1.0 - nu) * gn <= on && on <= (1.0 + nu) * gn)) ++bad;
    }
    c.require(bad == 0, "relative oracle: " + std::to_string(bad) + " bound violations");
  }
  {  // sharpness-aware perturbation: absolute bound L rho
    for (Scalar rho : {1e-3, 1e-2}) {
      SamOracle o(DecaySchedule{rho, 0.0});
      long bad = 0;
      for (int i = 0; i < 1000; ++i) {
        const ManifoldPoint x = m.random_point(rng);
        const OracleOutput out = o.evaluate(ray, x, 0, rng);
        if (realized_error(out, x) > lip * rho * (1.0 + 1e-12)) ++bad;
      }
      c.require(bad == 0, "sam oracle rho=" + format_double(rho) + ": " +
                              std::to_string(bad) + " bound violations");
    }
  }
  {  // extragradient lookahead: relative bound nu at rho = nu / L
    const Scalar nu = 0.5;
    ExtragradOracle o(DecaySchedule{nu / lip, 0.0});
    long bad = 0;
    for (int i = 0; i < 1000; ++i) {
      const ManifoldPoint x = m.random_point(rng);
      const TangentVector grad = ray.riemannian_grad(x);
      const OracleOutput out = o.evaluate(ray, x, 0, rng);
      if (m.norm(x, out.g - grad) > nu * m.norm(x, grad) * (1.0 + 1e-12)) ++bad;
    }
    c.require(bad == 0, "extragrad oracle: " + std::to_string(bad) + " bound violations");
  }
}

// ---- criterion 4: reduction identities ------------------------------------

void reduction_identities(Checker& c) {
  const SphereRayleighProblem ray(diag_h({3.0, 1.0, 1.0}));
  const StepSchedule sched = StepSchedule::diminishing(0.75);
  const StopRule stop{1e-6, 2000};
  const std::uint64_t seed = 99;

  auto fresh_start = [&](Rng& rng) { return ray.manifold().random_point(rng); };

  {  // rsam == generic loop + sam oracle
    Rng r1(seed);
    const IterTrace named =
        run_rsam(ray, fresh_start(r1), DecaySchedule{0.1, 1.5}, sched, stop, r1);
    Rng r2(seed);
    RunOptions opts{sched, stop, true, false,
                    validate_rsam_regime(sched, DecaySchedule{0.1, 1.5}, ray.lipschitz_bound())};
    const IterTrace generic =
        run_loop(ray, fresh_start(r2), SamOracle{DecaySchedule{0.1, 1.5}}, opts, r2);
    c.require(named.to_csv() == generic.to_csv(), "rsam differs from generic loop");
  }
  {  // reg == generic loop + extragrad oracle
    Rng r1(seed);
    const IterTrace named =
        run_reg(ray, fresh_start(r1), DecaySchedule{1e-3, 0.0}, sched, stop, r1);
    Rng r2(seed);
    RunOptions opts{sched, stop, true, false,
                    validate_reg_regime(DecaySchedule{1e-3, 0.0}, ray.lipschitz_bound())};
    const IterTrace generic =
        run_loop(ray, fresh_start(r2), ExtragradOracle{DecaySchedule{1e-3, 0.0}}, opts, r2);
    c.require(named.to_csv() == generic.to_csv(), "reg differs from generic loop");
  }
  {  // nu = 0 and rho = 0 collapse to rgd
    Rng r0(seed);
    const IterTrace rgd = run_rgd(ray, fresh_start(r0), sched, stop, r0);

    Rng r1(seed);
    const IterTrace irgd = run_irgd(ray, fresh_start(r1), ErrorSchedule::power_decay(0.0, 2.1),
                                    sched, stop, r1);
    c.require(rgd.to_csv() == irgd.to_csv(), "irgd(nu=0) differs from rgd");

    Rng r2(seed);
    const IterTrace irgdr = run_irgdr(ray, fresh_start(r2), 0.0, sched, stop, r2);
    c.require(rgd.to_csv() == irgdr.to_csv(), "irgdr(nu=0) differs from rgd");

    Rng r3(seed);
    const IterTrace reg = run_reg(ray, fresh_start(r3), DecaySchedule{0.0, 0.0}, sched, stop, r3);
    c.require(rgd.to_csv() == reg.to_csv(), "reg(rho=0) differs from rgd");
  }
}

// ---- criterion 5: descent audits ------------------------------------------

void descent_audits(Checker& c) {
  {  // irgdr with the capped constant stepsize: sphere and pca(20,10)
    const SphereRayleighProblem ray(diag_h({3.0, 1.0, 1.0}));
    const PcaProblem pca(gen_pca_instance(20, 10, 1006));
    const std::vector<const Problem*> problems = {&ray, &pca};
    const Scalar nu = 0.5, delta = 0.1;
    for (const Problem* p : problems) {
      const StepSchedule sched = StepSchedule::capped_constant(nu, delta, p->lipschitz_bound());
      Rng rng(1007);
      const ManifoldPoint x0 = p->manifold().random_point(rng);
      const IterTrace trace = run_irgdr(*p, x0, nu, sched, StopRule{1e-6, 4000}, rng);
      const AuditFindings audit =
          audit_report(trace, AuditContext{SolverKind::Irgdr, sched, p->lipschitz_bound()});
      c.require(audit.available && audit.descent_checked > 0,
                p->name() + ": irgdr descent audit has no checked iterations");
      c.require(audit.descent_violations == 0,
                p->name() + ": irgdr capped descent violations = " +
                    std::to_string(audit.descent_violations));
    }
  }
  {  // irgd with the experimental schedule: alpha per problem, nu = 1e-3, p = 2.1
    const McProblem mc(gen_mc_instance(20, 20, 8, 0.5, 1008));
    const PcaProblem pca(gen_pca_instance(20, 10, 1009));
    const SphereRayleighProblem ray(diag_h({3.0, 1.0, 1.0}));
    struct Run {
      const Problem* p;
      Scalar alpha;
    };
    for (const Run& r : {Run{&mc, 0.1}, Run{&pca, 0.75}, Run{&ray, 0.75}}) {
      const StepSchedule sched = StepSchedule::diminishing(r.alpha);
      Rng rng(1010);
      const ManifoldPoint x0 = r.p->manifold().random_point(rng);
      const IterTrace trace = run_irgd(*r.p, x0, ErrorSchedule::power_decay(1e-3, 2.1), sched,
                                       StopRule{1e-6, 10000}, rng);
      const AuditFindings audit =
          audit_report(trace, AuditContext{SolverKind::Irgd, sched, r.p->lipschitz_bound()});
      c.require(audit.available, r.p->name() + ": irgd audit unavailable");
      c.require(audit.descent_violations == 0,
                r.p->name() + ": irgd descent violations = " +
                    std::to_string(audit.descent_violations) + " of " +
                    std::to_string(audit.descent_checked));
      c.require(audit.bound_violations == 0,
                r.p->name() + ": irgd bound violations = " +
                    std::to_string(audit.bound_violations));
    }
  }
}

// ---- criterion 6: convergence targets --------------------------------------

void convergence_targets(Checker& c) {
  {  // (a) all five solvers on sphere rayleigh diag(3,1,1)
    const SphereRayleighProblem ray(diag_h({3.0, 1.0, 1.0}));
    const StopRule stop{1e-6, 10000};
    const StepSchedule dim = StepSchedule::diminishing(0.75);
    auto check_run = [&](const char* name, const IterTrace& trace) {
      c.require(trace.reason == TerminationReason::GradTol,
                std::string(name) + " on sphere: no convergence within 10000 iterations");
      c.require(std::abs(trace.last().f + 3.0) < 1e-5,
                std::string(name) + " on sphere: f_final = " + format_double(trace.last().f));
    };
    {
      Rng rng(42);
      const ManifoldPoint x0 = ray.manifold().random_point(rng);
      check_run("rgd", run_rgd(ray, x0, dim, stop, rng));
    }
    {
      Rng rng(42);
      const ManifoldPoint x0 = ray.manifold().random_point(rng);
      check_run("irgd",
                run_irgd(ray, x0, ErrorSchedule::power_decay(1e-3, 2.1), dim, stop, rng));
    }
    {
      Rng rng(42);
      const ManifoldPoint x0 = ray.manifold().random_point(rng);
      check_run("irgdr",
                run_irgdr(ray, x0, 0.5,
                          StepSchedule::capped_constant(0.5, 0.1, ray.lipschitz_bound()), stop,
                          rng));
    }
    {
      Rng rng(42);
      const ManifoldPoint x0 = ray.manifold().random_point(rng);
      check_run("rsam", run_rsam(ray, x0, DecaySchedule{0.1, 1.5}, dim, stop, rng));
    }
    {
      Rng rng(42);
      const ManifoldPoint x0 = ray.manifold().random_point(rng);
      check_run("reg", run_reg(ray, x0, DecaySchedule{1e-3, 0.0}, dim, stop, rng));
    }
  }
  {  // (b) pca(20,10): rgd and reg reach the spectral optimum
    const PcaInstance inst = gen_pca_instance(20, 10, 1011);
    const PcaProblem pca(inst);
    const Scalar f_opt = -0.5 * oracle::top_eigenvalue_sum(inst.h, 10);
    const StopRule stop{1e-6, 10000};
    const StepSchedule dim = StepSchedule::diminishing(0.75);
    {
      Rng rng(1012);
      const ManifoldPoint x0 = pca.manifold().random_point(rng);
      const IterTrace trace = run_rgd(pca, x0, dim, stop, rng);
      c.require(trace.reason == TerminationReason::GradTol, "pca rgd: no convergence");
      c.require(std::abs(trace.last().f - f_opt) < 1e-4,
                "pca rgd: f_final off optimum by " +
                    format_double(std::abs(trace.last().f - f_opt)));
    }
    {
      Rng rng(1012);
      const ManifoldPoint x0 = pca.manifold().random_point(rng);
      const IterTrace trace = run_reg(pca, x0, DecaySchedule{1e-3, 0.0}, dim, stop, rng);
      c.require(trace.reason == TerminationReason::GradTol, "pca reg: no convergence");
      c.require(std::abs(trace.last().f - f_opt) < 1e-4,
                "pca reg: f_final off optimum by " +
                    format_double(std::abs(trace.last().f - f_opt)));
    }
  }
  {  // (c) mc(20,20,8): rgd with line search
    const McProblem mc(gen_mc_instance(20, 20, 8, 0.5, 1013));
    Rng rng(1014);
    const ManifoldPoint x0 = mc.manifold().random_point(rng);
    const IterTrace trace =
        run_rgd(mc, x0, StepSchedule::armijo(), StopRule{1e-6, 10000}, rng);
    c.require(trace.reason == TerminationReason::GradTol,
              "mc rgd-armijo: no convergence within 10000 iterations");
  }
}

// ---- criterion 7: order-of-magnitude iteration counts ----------------------

void iteration_bands(Checker& c) {
  {  // mc(20,20,8), rgd with line search, 10 seeds: median in [100, 2700]
    std::vector<Scalar> iters;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const McProblem mc(gen_mc_instance(20, 20, 8, 0.5, seed));
      Rng rng(seed, 1);
      const ManifoldPoint x0 = mc.manifold().random_point(rng);
      Rng loop(seed, 2);
      const IterTrace trace =
          run_rgd(mc, x0, StepSchedule::armijo(), StopRule{1e-6, 10000}, loop);
      iters.push_back(static_cast<Scalar>(trace.iterations()));
    }
    const Scalar med = median_of(iters);
    c.require(med >= 100.0 && med <= 2700.0,
              "mc rgd-armijo median iterations = " + format_double(med) +
                  ", outside [100, 2700]");
  }
  {  // pca(20,10): rgd diminishing vs reg(rho=1e-3) under identical seeds
    std::vector<Scalar> rgd_iters, reg_iters;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const PcaProblem pca(gen_pca_instance(20, 10, seed));
      const StepSchedule dim = StepSchedule::diminishing(0.75);
      const StopRule stop{1e-6, 10000};
      {
        Rng rng(seed, 1);
        const ManifoldPoint x0 = pca.manifold().random_point(rng);
        Rng loop(seed, 2);
        rgd_iters.push_back(
            static_cast<Scalar>(run_rgd(pca, x0, dim, stop, loop).iterations()));
      }
      {
        Rng rng(seed, 1);
        const ManifoldPoint x0 = pca.manifold().random_point(rng);
        Rng loop(seed, 2);
        reg_iters.push_back(static_cast<Scalar>(
            run_reg(pca, x0, DecaySchedule{1e-3, 0.0}, dim, stop, loop).iterations()));
      }
    }
    const Scalar rgd_med = median_of(rgd_iters);
    const Scalar reg_med = median_of(reg_iters);
    c.require(rgd_med >= 35.0 && rgd_med <= 900.0,
              "pca rgd median iterations = " + format_double(rgd_med) + ", outside [35, 900]");
    c.require(reg_med <= 1.2 * rgd_med, "pca reg median " + format_double(reg_med) +
                                            " exceeds 1.2 x rgd median " +
                                            format_double(rgd_med));
  }
}

// ---- criterion 8: rate fitting ---------------------------------------------

void rate_fitting(Checker& c) {
  {  // synthetic geometric decay
    IterTrace geo;
    for (int k = 0; k < 200; ++k) {
      IterRecord r;
      r.k = k;
      r.t = k < 199 ? 0.1 : 0.0;
      r.f = -1.0;
      r.gradnorm = std::pow(0.9, static_cast<Scalar>(k));
      r.evals = 2 * (k + 1);
      geo.rows.push_back(r);
    }
    const RateReport rep = fit_rate(geo);
    c.require(rep.conclusive, "geometric trace: inconclusive fit");
    c.require(std::abs(rep.q - 0.9) <= 1e-6,
              "geometric trace: Q = " + format_double(rep.q));
    c.require(rep.linear_r2 >= 0.999, "geometric trace: R^2 = " + format_double(rep.linear_r2));
  }
  {  // irgdr with line search on a sphere rayleigh with a distinct top
     // eigenvalue. The tolerance stays above the line search's certifiable
     // decrease (one ulp of f), where traces flat-line.
    const SphereRayleighProblem ray(diag_h({3.0, 2.7, 0.9, 0.3}));
    Rng rng(1015);
    const ManifoldPoint x0 = ray.manifold().random_point(rng);
    const IterTrace trace =
        run_irgdr(ray, x0, 1e-3, StepSchedule::armijo(), StopRule{1e-7, 4000}, rng);
    const RateReport rep = fit_rate(trace);
    c.require(rep.conclusive, "irgdr-armijo trace: inconclusive fit (" + rep.note + ")");
    c.require(rep.preferred == RateReport::Model::Geometric,
              "irgdr-armijo: power-law model preferred");
    c.require(rep.q < 1.0, "irgdr-armijo: Q = " + format_double(rep.q));
    c.require(rep.linear_r2 >= 0.95,
              "irgdr-armijo: R^2 = " + format_double(rep.linear_r2));
  }
}

// ---- criterion 9: idx parser fixtures ---------------------------------------

void idx_fixtures(Checker& c) {
  const std::vector<std::vector<std::uint8_t>> images = {{0, 51, 102, 153},
                                                         {204, 255, 0, 255}};
  const std::vector<unsigned char> good = make_idx_image_bytes(images, 2, 2);
  const MnistImages parsed = parse_mnist_idx(good, "fixture");
  Matrix expected(2, 4);
  expected << 0.0, 51.0 / 255.0, 102.0 / 255.0, 153.0 / 255.0, 204.0 / 255.0, 1.0, 0.0, 1.0;
  c.require(parsed.data.rows() == 2 && parsed.data.cols() == 4 &&
                (parsed.data - expected).norm() == 0.0,
            "idx round-trip mismatch");

  std::vector<unsigned char> bad_magic = good;
  bad_magic[3] = 0x01;
  bool threw = false;
  try {
    parse_mnist_idx(bad_magic, "bad-magic");
  } catch (const ParseError& e) {
    threw = std::string(e.what()).find("expected image tensor magic") != std::string::npos &&
            e.offset() == 0;
  }
  c.require(threw, "bad magic not rejected with the specified error");

  std::vector<unsigned char> truncated(good.begin(), good.end() - 3);
  threw = false;
  try {
    parse_mnist_idx(truncated, "truncated");
  } catch (const ParseError& e) {
    threw = std::string(e.what()).find("truncated") != std::string::npos &&
            e.offset() == static_cast<long long>(truncated.size());
  }
  c.require(threw, "truncated payload not rejected at the declared offset");
}

// ---- criterion 10: artifact determinism -------------------------------------

void artifact_determinism(Checker& c) {
  const std::string base = (fs::temp_directory_path() / "riopt_acceptance").string();
  const std::string dir_a = base + "_a", dir_b = base + "_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);

  const std::string config_text = "problem = pca\n"
                                  "sizes = 20x10\n"
                                  "solvers = rgd, reg\n"
                                  "steps = diminishing\n"
                                  "alpha = 0.75\n"
                                  "rhos = 1e-3\n"
                                  "seeds = 1, 2, 3\n"
                                  "max_iters = 10000\n";
  ExperimentConfig cfg_a = parse_config_text(config_text, "acceptance");
  cfg_a.out_dir = dir_a;
  run_experiment(cfg_a);

  ExperimentConfig cfg_b = parse_config_text(config_text, "acceptance");
  cfg_b.out_dir = dir_b;
  cfg_b.threads = 3;  // worker pool must change nothing observable
  run_experiment(cfg_b);

  size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir_a)) {
    const std::string name = entry.path().filename().string();
    ++files;
    if (read_file(dir_a + "/" + name) != read_file(dir_b + "/" + name)) {
      c.require(false, "artifact " + name + " differs between reruns");
      break;
    }
  }
  c.require(files >= 10, "unexpectedly few artifacts: " + std::to_string(files));
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

struct Criterion {
  int id;
  std::string name;
  std::function<void(Checker&)> fn;
  Scalar budget_seconds;  // 0 = no budget
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "manifold axiom suite", manifold_axioms, 30.0},
      {2, "gradient correctness", gradient_correctness, 10.0},
      {3, "oracle bound certification", oracle_bounds, 10.0},
      {4, "reduction identities", reduction_identities, 0.0},
      {5, "descent audits", descent_audits, 0.0},
      {6, "convergence targets", convergence_targets, 0.0},
      {7, "iteration-count bands", iteration_bands, 300.0},
      {8, "rate fitting", rate_fitting, 0.0},
      {9, "idx parser fixtures", idx_fixtures, 0.0},
      {10, "artifact determinism", artifact_determinism, 0.0},
  };

  int failures = 0;
  for (const Criterion& crit : criteria) {
    Checker checker;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      crit.fn(checker);
    } catch (const std::exception& e) {
      checker.require(false, std::string("exception: ") + e.what());
    }
    const Scalar secs =
        std::chrono::duration<Scalar>(std::chrono::steady_clock::now() - t0).count();
    if (crit.budget_seconds > 0.0 && secs > crit.budget_seconds)
      checker.require(false, "runtime " + format_double(secs) + "s exceeds budget " +
                                 format_double(crit.budget_seconds) + "s");
    char line[256];
    std::snprintf(line, sizeof(line), "criterion %2d [%s]: %s (%.2fs)%s%s", crit.id,
                  crit.name.c_str(), checker.ok ? "PASS" : "FAIL", secs,
                  checker.ok ? "" : " — ", checker.ok ? "" : checker.why.c_str());
    std::cout << line << "\n";
    if (!checker.ok) ++failures;
  }
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
