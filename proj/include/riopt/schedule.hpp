#pragma once

#include "riopt/oracles.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace riopt {

/// Stepsize selection. Diminishing uses t_k = (k+1)^(-alpha) with the trace's
/// 0-based k, i.e. the 1-based rule t_j = 1/j^alpha. CappedConstant pins
/// t = (2 - 2 nu - delta) / (L (1 + nu)^2).
struct StepSchedule {
  enum class Kind { Diminishing, Constant, Armijo, CappedConstant };
  Kind kind = Kind::Diminishing;

  Scalar alpha = 0.75;  // Diminishing
  Scalar t = 1.0;       // Constant

  // Armijo backtracking; t0 is warm-started with twice the previously
  // accepted step.
  Scalar t0 = 1.0;
  Scalar contraction = 0.5;
  Scalar sufficient_decrease = 1e-4;
  int max_backtracks = 50;

  // CappedConstant
  Scalar nu = 0.0;
  Scalar delta = 0.1;
  Scalar lipschitz = 1.0;

  static StepSchedule diminishing(Scalar alpha);
  static StepSchedule constant(Scalar t);
  static StepSchedule armijo(Scalar t0 = 1.0, Scalar contraction = 0.5,
                             Scalar sufficient_decrease = 1e-4, int max_backtracks = 50);
  static StepSchedule capped_constant(Scalar nu, Scalar delta, Scalar lipschitz);

  bool is_armijo() const { return kind == Kind::Armijo; }
  Scalar step_at(long k) const;
  std::string describe() const;
};

/// Stopping rule: gradient tolerance, iteration cap, optional wall-clock cap.
struct StopRule {
  Scalar grad_tol = 1e-6;
  long max_iters = 10000;
  std::optional<Scalar> max_wall_seconds;

  StopRule() = default;
  StopRule(Scalar tol, long iters, std::optional<Scalar> wall = std::nullopt)
      : grad_tol(tol), max_iters(iters), max_wall_seconds(wall) {}
};

enum class SolverKind { Rgd, Irgd, Irgdr, Rsam, Reg };

const char* to_string(SolverKind k);
SolverKind solver_from_string(const std::string& s);

// Parameter-regime validation. Violations come back as named warnings; they
// are attached to the run manifest rather than aborting the run.
std::vector<std::string> validate_step_schedule(const StepSchedule& s);
std::vector<std::string> validate_irgd_regime(const StepSchedule& s, const ErrorSchedule& e);
std::vector<std::string> validate_irgdr_regime(const StepSchedule& s, Scalar nu);
std::vector<std::string> validate_rsam_regime(const StepSchedule& s, const DecaySchedule& rho,
                                              Scalar lipschitz);
std::vector<std::string> validate_reg_regime(const DecaySchedule& rho, Scalar lipschitz);

}  // namespace riopt
