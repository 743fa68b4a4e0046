#include "riopt/audit.hpp"

#include <cmath>

namespace riopt {

namespace {

constexpr Scalar kRelSlack = 1e-12;

bool exceeds(Scalar value, Scalar limit) {
  return value > limit * (1.0 + kRelSlack) + 1e-300;
}

// The realized error |g - grad| is recomputed by subtracting nearby vectors,
// so it carries cancellation noise on the order of eps * |grad| even when the
// declared bound is far smaller. Certifying below this floor is meaningless.
Scalar float_floor(Scalar gradnorm) { return 1e-13 * (1.0 + gradnorm); }

}  // namespace

AuditFindings audit_report(const IterTrace& trace, const AuditContext& ctx) {
  AuditFindings out;
  if (!trace.audited) {
    out.note = "report unavailable: trace was not recorded in audit mode";
    return out;
  }
  out.available = true;

  const bool relative_family =
      ctx.solver == SolverKind::Irgdr || ctx.solver == SolverKind::Reg;
  const Scalar lip = ctx.lipschitz;

  for (size_t i = 0; i < trace.rows.size(); ++i) {
    const IterRecord& r = trace.rows[i];

    // (b) declared oracle bound against the realized error.
    if (r.bound_kind == BoundKind::Absolute && std::isfinite(r.err_actual)) {
      ++out.bound_checked;
      if (exceeds(r.err_actual, r.errbound + float_floor(r.gradnorm)))
        ++out.bound_violations;
    } else if (r.bound_kind == BoundKind::Relative && std::isfinite(r.err_actual)) {
      ++out.bound_checked;
      if (exceeds(r.err_actual, r.errbound * r.gradnorm + float_floor(r.gradnorm)))
        ++out.bound_violations;
    }

    // (c) two-sided norm bound for the relative condition.
    if (r.bound_kind == BoundKind::Relative && std::isfinite(r.g_norm)) {
      ++out.two_sided_checked;
      const Scalar nu = r.errbound;
      const bool lower_ok = r.g_norm >= (1.0 - nu) * r.gradnorm * (1.0 - kRelSlack) - 1e-300;
      const bool upper_ok = !exceeds(r.g_norm, (1.0 + nu) * r.gradnorm);
      if (!lower_ok || !upper_ok) ++out.two_sided_violations;
    }

    // (a) the applicable descent inequality across the transition i -> i+1.
    if (i + 1 >= trace.rows.size() || r.t <= 0.0) continue;
    const IterRecord& next = trace.rows[i + 1];
    const Scalar slack = 1e-10 * (1.0 + std::abs(r.f));

    if (ctx.schedule.is_armijo()) {
      if (r.armijo_forced) continue;
      ++out.descent_checked;
      const Scalar rhs =
          r.f - ctx.schedule.sufficient_decrease * r.t * r.g_norm * r.g_norm + slack;
      if (next.f > rhs) ++out.descent_violations;
    } else if (relative_family) {
      // Sharpest per-iteration margin: delta_k = 2 - 2 nu - L t_k (1 + nu)^2,
      // checked from the second iteration on.
      if (i < 1) continue;
      const Scalar nu = r.errbound;
      const Scalar margin = 2.0 - 2.0 * nu - lip * r.t * (1.0 + nu) * (1.0 + nu);
      if (margin <= 0.0) continue;
      ++out.descent_checked;
      const Scalar rhs = r.f - 0.5 * margin * r.t * r.gradnorm * r.gradnorm + slack;
      if (next.f > rhs) ++out.descent_violations;
    } else {
      // Absolute family: per-iteration constants, valid once L t_k < 1.
      if (lip * r.t >= 1.0) continue;
      const Scalar eps = std::isfinite(r.errbound) ? r.errbound : 0.0;
      const Scalar lt = lip * r.t;
      const Scalar c1 = 0.5 * (2.0 - lt - eps + lt * eps);
      const Scalar c2 = 0.5 * (1.0 - lt) + 0.5 * lt * eps;
      if (c1 <= 0.0) continue;
      ++out.descent_checked;
      const Scalar rhs =
          r.f - c1 * r.t * r.gradnorm * r.gradnorm + c2 * r.t * eps + slack;
      if (next.f > rhs) ++out.descent_violations;
    }
  }
  return out;
}

std::string AuditFindings::to_text() const {
  if (!available) return "audit: " + note + "\n";
  std::string out = "audit report:\n";
  out += "  descent inequality: " + std::to_string(descent_violations) + " violations / " +
         std::to_string(descent_checked) + " checked\n";
  out += "  oracle error bound: " + std::to_string(bound_violations) + " violations / " +
         std::to_string(bound_checked) + " checked\n";
  out += "  two-sided norm bound: " + std::to_string(two_sided_violations) +
         " violations / " + std::to_string(two_sided_checked) + " checked\n";
  out += pass() ? "  PASS\n" : "  FAIL\n";
  return out;
}

}  // namespace riopt
