#pragma once

#include "riopt/schedule.hpp"
#include "riopt/trace.hpp"

namespace riopt {

/// What audit_report needs to know about how a trace was produced.
struct AuditContext {
  SolverKind solver = SolverKind::Rgd;
  StepSchedule schedule;
  Scalar lipschitz = 1.0;
};

/// Violation counts for (a) the descent inequality that applies to the run's
/// solver family and schedule, (b) the declared oracle error bound, and
/// (c) the two-sided norm bound for relative-error oracles. Inequalities are
/// tested with a 1e-12 relative slack for floating-point roundoff; the
/// descent checks allow 1e-10 * (1 + |f|) of absolute slack.
struct AuditFindings {
  bool available = false;
  std::string note;

  long descent_checked = 0;
  long descent_violations = 0;
  long bound_checked = 0;
  long bound_violations = 0;
  long two_sided_checked = 0;
  long two_sided_violations = 0;

  bool pass() const {
    return available && descent_violations == 0 && bound_violations == 0 &&
           two_sided_violations == 0;
  }
  std::string to_text() const;
};

AuditFindings audit_report(const IterTrace& trace, const AuditContext& ctx);

}  // namespace riopt
