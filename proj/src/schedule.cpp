#include "riopt/schedule.hpp"

namespace riopt {

StepSchedule StepSchedule::diminishing(Scalar alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ConfigError("diminishing stepsize: need alpha in (0, 1)");
  StepSchedule s;
  s.kind = Kind::Diminishing;
  s.alpha = alpha;
  return s;
}

StepSchedule StepSchedule::constant(Scalar t) {
  if (!(t > 0.0)) throw ConfigError("constant stepsize: need t > 0");
  StepSchedule s;
  s.kind = Kind::Constant;
  s.t = t;
  return s;
}

StepSchedule StepSchedule::armijo(Scalar t0, Scalar contraction, Scalar sufficient_decrease,
                                  int max_backtracks) {
  if (!(t0 > 0.0)) throw ConfigError("armijo: need t0 > 0");
  if (!(contraction > 0.0 && contraction < 1.0))
    throw ConfigError("armijo: need contraction in (0, 1)");
  if (!(sufficient_decrease > 0.0 && sufficient_decrease < 1.0))
    throw ConfigError("armijo: need sufficient decrease in (0, 1)");
  if (max_backtracks < 1) throw ConfigError("armijo: need max_backtracks >= 1");
  StepSchedule s;
  s.kind = Kind::Armijo;
  s.t0 = t0;
  s.contraction = contraction;
  s.sufficient_decrease = sufficient_decrease;
  s.max_backtracks = max_backtracks;
  return s;
}

StepSchedule StepSchedule::capped_constant(Scalar nu, Scalar delta, Scalar lipschitz) {
  if (!(nu >= 0.0 && nu < 1.0)) throw ConfigError("capped stepsize: need nu in [0, 1)");
  if (!(delta > 0.0)) throw ConfigError("capped stepsize: need delta > 0");
  if (!(delta < 2.0 - 2.0 * nu))
    throw ConfigError("capped stepsize: need delta < 2 - 2 nu for a positive step");
  if (!(lipschitz > 0.0)) throw ConfigError("capped stepsize: need L > 0");
  StepSchedule s;
  s.kind = Kind::CappedConstant;
  s.nu = nu;
  s.delta = delta;
  s.lipschitz = lipschitz;
  return s;
}

Scalar StepSchedule::step_at(long k) const {
  switch (kind) {
    case Kind::Diminishing:
      return std::pow(static_cast<Scalar>(k + 1), -alpha);
    case Kind::Constant:
      return t;
    case Kind::CappedConstant:
      return (2.0 - 2.0 * nu - delta) / (lipschitz * (1.0 + nu) * (1.0 + nu));
    case Kind::Armijo:
      throw ContractViolation("armijo schedule has no closed-form step");
  }
  return 0.0;
}

std::string StepSchedule::describe() const {
  switch (kind) {
    case Kind::Diminishing: return "diminishing(alpha=" + std::to_string(alpha) + ")";
    case Kind::Constant: return "constant(t=" + std::to_string(t) + ")";
    case Kind::Armijo: return "armijo(t0=" + std::to_string(t0) + ")";
    case Kind::CappedConstant:
      return "capped(nu=" + std::to_string(nu) + ",delta=" + std::to_string(delta) +
             ",L=" + std::to_string(lipschitz) + ")";
  }
  return "?";
}

const char* to_string(SolverKind k) {
  switch (k) {
    case SolverKind::Rgd: return "rgd";
    case SolverKind::Irgd: return "irgd";
    case SolverKind::Irgdr: return "irgdr";
    case SolverKind::Rsam: return "rsam";
    case SolverKind::Reg: return "reg";
  }
  return "?";
}

SolverKind solver_from_string(const std::string& s) {
  if (s == "rgd") return SolverKind::Rgd;
  if (s == "irgd") return SolverKind::Irgd;
  if (s == "irgdr") return SolverKind::Irgdr;
  if (s == "rsam") return SolverKind::Rsam;
  if (s == "reg") return SolverKind::Reg;
  throw ConfigError("unknown solver '" + s + "'");
}

std::vector<std::string> validate_step_schedule(const StepSchedule& s) {
  std::vector<std::string> notes;
  if (s.kind == StepSchedule::Kind::Diminishing && s.alpha <= 0.5)
    notes.push_back(
        "stepsize-square-sum: alpha <= 1/2 leaves sum t_k^2 divergent; the schedule still has "
        "t_k -> 0 with divergent sum t_k");
  return notes;
}

std::vector<std::string> validate_irgd_regime(const StepSchedule& s, const ErrorSchedule& e) {
  std::vector<std::string> notes = validate_step_schedule(s);
  if (s.kind == StepSchedule::Kind::Constant)
    notes.push_back("parameter-regime: constant stepsize does not satisfy t_k -> 0");
  if (e.kind == ErrorSchedule::Kind::Constant) {
    if (e.eps > 0.0)
      notes.push_back("parameter-regime: constant error level makes sum t_k eps_k diverge");
    if (e.eps >= 2.0) notes.push_back("parameter-regime: limsup eps_k >= 2");
  } else if (s.kind == StepSchedule::Kind::Diminishing) {
    if (s.alpha + e.p <= 1.0)
      notes.push_back("parameter-regime: alpha + p <= 1 makes sum t_k eps_k diverge");
    if (e.nu >= 2.0) notes.push_back("parameter-regime: limsup eps_k = nu >= 2");
  }
  return notes;
}

std::vector<std::string> validate_irgdr_regime(const StepSchedule& s, Scalar nu) {
  std::vector<std::string> notes = validate_step_schedule(s);
  if (!(nu >= 0.0 && nu < 1.0))
    notes.push_back("parameter-regime: relative error nu outside [0, 1)");
  if (s.kind == StepSchedule::Kind::CappedConstant && s.nu != nu)
    notes.push_back("parameter-regime: capped stepsize was built for a different nu");
  return notes;
}

std::vector<std::string> validate_rsam_regime(const StepSchedule& s, const DecaySchedule& rho,
                                              Scalar lipschitz) {
  std::vector<std::string> notes = validate_step_schedule(s);
  const Scalar rho_limsup = rho.power > 0.0 ? 0.0 : rho.coeff;
  if (!(rho_limsup < 2.0 / lipschitz))
    notes.push_back("parameter-regime: limsup rho_k >= 2/L");
  if (s.kind == StepSchedule::Kind::Diminishing) {
    if (s.alpha + rho.power <= 1.0)
      notes.push_back("parameter-regime: sum t_k rho_k diverges (alpha + rho power <= 1)");
  } else if (rho.power == 0.0) {
    notes.push_back("parameter-regime: sum t_k rho_k diverges for constant rho");
  }
  if (s.kind == StepSchedule::Kind::Constant)
    notes.push_back("parameter-regime: constant stepsize does not satisfy t_k -> 0");
  return notes;
}

std::vector<std::string> validate_reg_regime(const DecaySchedule& rho, Scalar lipschitz) {
  std::vector<std::string> notes;
  const Scalar rho_max = rho.value(0);
  if (!(rho_max * lipschitz < 1.0))
    notes.push_back("parameter-regime: rho > nu/L for every nu in [0, 1) (L rho = " +
                    std::to_string(rho_max * lipschitz) + ")");
  return notes;
}

}  // namespace riopt
