#include "riopt/solver.hpp"

#include <chrono>

namespace riopt {

ManifoldPoint step(const Manifold& m, const ManifoldPoint& x, const TangentVector& g, Scalar t,
                   RetractInfo* info) {
  if (t < 0.0) throw ContractViolation("step: negative stepsize");
  return m.retract(x, (-t) * g, info);
}

ArmijoResult armijo_search(const Problem& problem, const ManifoldPoint& x,
                           const TangentVector& g, Scalar t0, Scalar f_x, Scalar g_norm,
                           Scalar contraction, Scalar sufficient_decrease, int max_backtracks,
                           RetractInfo* info) {
  const Manifold& m = problem.manifold();
  const Scalar slope = g_norm * g_norm;
  Scalar t = t0;
  long evals = 0;
  for (int j = 0;; ++j) {
    ManifoldPoint y = step(m, x, g, t, info);
    const Scalar f_y = problem.cost(y);
    ++evals;
    if (f_y <= f_x - sufficient_decrease * t * slope)
      return {t, std::move(y), f_y, evals, false};
    // Nothing passed: accept the smallest trial and flag it.
    if (j == max_backtracks) return {t, std::move(y), f_y, evals, true};
    t *= contraction;
  }
}

IterTrace run_loop(const Problem& problem, const ManifoldPoint& x0,
                   const GradientOracle& oracle, const RunOptions& opts, Rng& rng) {
  const Manifold& m = problem.manifold();
  IterTrace trace;
  trace.audited = opts.audit;
  trace.warnings = opts.warnings;

  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [&t_start]() {
    return std::chrono::duration<Scalar>(std::chrono::steady_clock::now() - t_start).count();
  };

  ManifoldPoint x = x0;
  long cum_evals = 0;
  Scalar armijo_warm = opts.schedule.t0;
  long forced_steps = 0, first_forced = -1;
  long tie_steps = 0, first_tie = -1;

  for (long k = 0;; ++k) {
    IterRecord rec;
    rec.k = k;
    rec.f = problem.cost(x);
    ++cum_evals;

    OracleOutput out = oracle.evaluate(problem, x, k, rng);
    cum_evals += out.evals;
    rec.bound_kind = out.bound_kind;
    rec.errbound = out.bound_kind == BoundKind::None
                       ? std::numeric_limits<Scalar>::quiet_NaN()
                       : out.bound_value;
    rec.g_norm = m.norm(x, out.g);

    if (opts.audit) {
      const TangentVector grad = problem.riemannian_grad(x);
      rec.gradnorm = m.norm(x, grad);
      rec.err_actual = m.norm(x, out.g - grad);
    } else {
      // Conservative surrogate: an upper bound on the true gradient norm
      // implied by the declared error certificate.
      switch (out.bound_kind) {
        case BoundKind::Absolute:
          rec.gradnorm = rec.g_norm + out.bound_value;
          break;
        case BoundKind::Relative:
          rec.gradnorm = out.bound_value < 1.0
                             ? rec.g_norm / (1.0 - out.bound_value)
                             : std::numeric_limits<Scalar>::infinity();
          break;
        case BoundKind::None:
          rec.gradnorm = rec.g_norm;
          break;
      }
    }
    rec.evals = cum_evals;
    if (opts.record_walltime) rec.wall_s = elapsed();

    if (rec.gradnorm < opts.stop.grad_tol) {
      trace.rows.push_back(rec);
      trace.reason = TerminationReason::GradTol;
      break;
    }
    if (k >= opts.stop.max_iters) {
      trace.rows.push_back(rec);
      trace.reason = TerminationReason::MaxIters;
      break;
    }
    if (opts.stop.max_wall_seconds && elapsed() > *opts.stop.max_wall_seconds) {
      trace.rows.push_back(rec);
      trace.reason = TerminationReason::WallClock;
      break;
    }

    RetractInfo info;
    try {
      if (opts.schedule.is_armijo()) {
        ArmijoResult ls = armijo_search(problem, x, out.g, armijo_warm, rec.f, rec.g_norm,
                                        opts.schedule.contraction,
                                        opts.schedule.sufficient_decrease,
                                        opts.schedule.max_backtracks, &info);
        cum_evals += ls.cost_evals;
        rec.evals = cum_evals;
        rec.t = ls.t;
        rec.armijo_forced = ls.forced;
        if (ls.forced && ++forced_steps == 1) first_forced = k;
        armijo_warm = 2.0 * ls.t;
        x = std::move(ls.y);
      } else {
        rec.t = opts.schedule.step_at(k);
        x = step(m, x, out.g, rec.t, &info);
      }
    } catch (const SingularityError& e) {
      rec.t = 0.0;
      trace.rows.push_back(rec);
      trace.reason = TerminationReason::SingularityError;
      trace.singularity_message = e.what();
      trace.warnings.push_back(std::string("singularity: ") + e.what());
      break;
    }
    if (info.rank_truncation_tie) {
      rec.rank_truncation_tie = true;
      if (++tie_steps == 1) first_tie = k;
    }
    trace.rows.push_back(rec);
  }
  if (forced_steps > 0)
    trace.warnings.push_back("armijo: no trial satisfied the decrease condition on " +
                             std::to_string(forced_steps) + " iterations (first at k=" +
                             std::to_string(first_forced) + ")");
  if (tie_steps > 0)
    trace.warnings.push_back("fixed-rank retraction: near-tied singular values on " +
                             std::to_string(tie_steps) + " iterations (first at k=" +
                             std::to_string(first_tie) + ")");
  return trace;
}

IterTrace run_rgd(const Problem& problem, const ManifoldPoint& x0, const StepSchedule& schedule,
                  const StopRule& stop, Rng& rng, bool audit, bool record_walltime) {
  RunOptions opts{schedule, stop, audit, record_walltime, validate_step_schedule(schedule)};
  return run_loop(problem, x0, ExactOracle{}, opts, rng);
}

IterTrace run_irgd(const Problem& problem, const ManifoldPoint& x0, const ErrorSchedule& errors,
                   const StepSchedule& schedule, const StopRule& stop, Rng& rng, bool audit,
                   bool record_walltime) {
  RunOptions opts{schedule, stop, audit, record_walltime,
                  validate_irgd_regime(schedule, errors)};
  return run_loop(problem, x0, AdditiveNoiseOracle{errors}, opts, rng);
}

IterTrace run_irgdr(const Problem& problem, const ManifoldPoint& x0, Scalar nu,
                    const StepSchedule& schedule, const StopRule& stop, Rng& rng, bool audit,
                    bool record_walltime) {
  RunOptions opts{schedule, stop, audit, record_walltime, validate_irgdr_regime(schedule, nu)};
  return run_loop(problem, x0, RelativeNoiseOracle{nu}, opts, rng);
}

IterTrace run_rsam(const Problem& problem, const ManifoldPoint& x0, const DecaySchedule& rho,
                   const StepSchedule& schedule, const StopRule& stop, Rng& rng, bool audit,
                   bool record_walltime, std::optional<Scalar> lipschitz_override) {
  const Scalar lip = lipschitz_override.value_or(problem.lipschitz_bound());
  RunOptions opts{schedule, stop, audit, record_walltime,
                  validate_rsam_regime(schedule, rho, lip)};
  return run_loop(problem, x0, SamOracle{rho, lipschitz_override}, opts, rng);
}

IterTrace run_reg(const Problem& problem, const ManifoldPoint& x0, const DecaySchedule& rho,
                  const StepSchedule& schedule, const StopRule& stop, Rng& rng, bool audit,
                  bool record_walltime, std::optional<Scalar> lipschitz_override,
                  std::optional<Scalar> declared_nu) {
  const Scalar lip = lipschitz_override.value_or(problem.lipschitz_bound());
  RunOptions opts{schedule, stop, audit, record_walltime, validate_reg_regime(rho, lip)};
  return run_loop(problem, x0, ExtragradOracle{rho, lipschitz_override, declared_nu}, opts,
                  rng);
}

}  // namespace riopt
