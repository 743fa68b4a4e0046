#include "riopt/rate.hpp"

#include <cmath>
#include <vector>

namespace riopt {

namespace {

struct LsqFit {
  Scalar slope = 0.0;
  Scalar intercept = 0.0;
  Scalar r2 = 0.0;
  bool ok = false;
};

LsqFit least_squares(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
  LsqFit fit;
  const size_t n = xs.size();
  if (n < 2) return fit;
  Scalar mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<Scalar>(n);
  my /= static_cast<Scalar>(n);
  Scalar sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Scalar dx = xs[i] - mx;
    const Scalar dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  Scalar ss_res = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Scalar e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += e * e;
  }
  // A flat series is fit perfectly by a flat line.
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.ok = true;
  return fit;
}

}  // namespace

RateReport fit_rate(const IterTrace& trace) {
  RateReport report;

  const size_t n = trace.rows.size();
  const size_t burn_in = n / 10;
  std::vector<Scalar> ks, log_r;
  for (size_t i = burn_in; i < n; ++i) {
    const IterRecord& r = trace.rows[i];
    if (r.gradnorm > 0.0 && std::isfinite(r.gradnorm)) {
      ks.push_back(static_cast<Scalar>(r.k));
      log_r.push_back(std::log(r.gradnorm));
    }
  }
  if (ks.size() < 50) {
    report.note = "insufficient data: " + std::to_string(ks.size()) +
                  " usable iterations after burn-in, need 50";
    return report;
  }

  const LsqFit lin = least_squares(ks, log_r);
  if (lin.ok) {
    report.q = std::exp(lin.slope);
    report.linear_r2 = lin.r2;
  }

  std::vector<Scalar> log_k, log_r_pos;
  for (size_t i = 0; i < ks.size(); ++i)
    if (ks[i] >= 1.0) {
      log_k.push_back(std::log(ks[i]));
      log_r_pos.push_back(log_r[i]);
    }
  const LsqFit pow_fit = least_squares(log_k, log_r_pos);
  if (pow_fit.ok) {
    report.exponent = pow_fit.slope;
    report.power_r2 = pow_fit.r2;
  }

  if (!lin.ok && !pow_fit.ok) {
    report.note = "degenerate data: both regressions are singular";
    return report;
  }
  report.conclusive = true;
  if (lin.ok && (!pow_fit.ok || lin.r2 >= pow_fit.r2))
    report.preferred = RateReport::Model::Geometric;
  else
    report.preferred = RateReport::Model::PowerLaw;
  return report;
}

std::string RateReport::to_text() const {
  if (!conclusive) return "rate fit: inconclusive (" + note + ")\n";
  std::string out = "rate fit:\n";
  out += "  geometric model: Q = " + format_double(q) +
         ", R^2 = " + format_double(linear_r2) + "\n";
  out += "  power-law model: exponent = " + format_double(exponent) +
         ", R^2 = " + format_double(power_r2) + "\n";
  out += std::string("  preferred: ") +
         (preferred == Model::Geometric ? "geometric" : "power-law") + "\n";
  return out;
}

}  // namespace riopt
