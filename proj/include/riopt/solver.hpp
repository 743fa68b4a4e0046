#pragma once

#include "riopt/schedule.hpp"
#include "riopt/trace.hpp"

#include <optional>

namespace riopt {

/// One descent step: retract(x, -t g).
ManifoldPoint step(const Manifold& m, const ManifoldPoint& x, const TangentVector& g, Scalar t,
                   RetractInfo* info = nullptr);

struct ArmijoResult {
  Scalar t = 0.0;
  ManifoldPoint y;
  Scalar f_y = 0.0;
  long cost_evals = 0;
  bool forced = false;  // no trial satisfied the decrease condition
};

/// Backtracking line search along -g: largest t in {t0 beta^j} with
/// f(retract(x, -t g)) <= f(x) - c t |g|^2. When no trial passes, the
/// smallest trial is returned with the forced flag set.
ArmijoResult armijo_search(const Problem& problem, const ManifoldPoint& x,
                           const TangentVector& g, Scalar t0, Scalar f_x, Scalar g_norm,
                           Scalar contraction = 0.5, Scalar sufficient_decrease = 1e-4,
                           int max_backtracks = 50, RetractInfo* info = nullptr);

struct RunOptions {
  StepSchedule schedule;
  StopRule stop;
  /// Compute the exact gradient alongside each oracle call; the trace then
  /// records the true gradient norm and the realized oracle error, and the
  /// stopping rule uses the true norm.
  bool audit = true;
  /// Record wall-clock time in the trace. Off by default so artifacts are
  /// byte-reproducible.
  bool record_walltime = false;
  std::vector<std::string> warnings;  // carried into the trace
};

/// The generic inexact descent loop x_{k+1} = retract(x_k, -t_k g_k). Every
/// named solver is this loop with its oracle plugged in.
IterTrace run_loop(const Problem& problem, const ManifoldPoint& x0,
                   const GradientOracle& oracle, const RunOptions& opts, Rng& rng);

IterTrace run_rgd(const Problem& problem, const ManifoldPoint& x0, const StepSchedule& schedule,
                  const StopRule& stop, Rng& rng, bool audit = true,
                  bool record_walltime = false);

/// Absolute-error family (additive noise), diminishing stepsizes.
IterTrace run_irgd(const Problem& problem, const ManifoldPoint& x0, const ErrorSchedule& errors,
                   const StepSchedule& schedule, const StopRule& stop, Rng& rng,
                   bool audit = true, bool record_walltime = false);

/// Relative-error family.
IterTrace run_irgdr(const Problem& problem, const ManifoldPoint& x0, Scalar nu,
                    const StepSchedule& schedule, const StopRule& stop, Rng& rng,
                    bool audit = true, bool record_walltime = false);

IterTrace run_rsam(const Problem& problem, const ManifoldPoint& x0, const DecaySchedule& rho,
                   const StepSchedule& schedule, const StopRule& stop, Rng& rng,
                   bool audit = true, bool record_walltime = false,
                   std::optional<Scalar> lipschitz_override = std::nullopt);

/// declared_nu overrides the oracle's certified relative level (default
/// L rho_k); declaring less than the realized error makes audits flag it.
IterTrace run_reg(const Problem& problem, const ManifoldPoint& x0, const DecaySchedule& rho,
                  const StepSchedule& schedule, const StopRule& stop, Rng& rng,
                  bool audit = true, bool record_walltime = false,
                  std::optional<Scalar> lipschitz_override = std::nullopt,
                  std::optional<Scalar> declared_nu = std::nullopt);

}  // namespace riopt
