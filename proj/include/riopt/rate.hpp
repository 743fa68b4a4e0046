#pragma once

#include "riopt/trace.hpp"

#include <string>

namespace riopt {

/// Empirical convergence-rate fit over a trace's gradient norms. Two models
/// are tried after burn-in: log r_k = a + k log Q (geometric) and
/// log r_k = a + e log k (power law). Reports both fits and which one
/// explains the data better; makes no claim about theoretical exponents.
struct RateReport {
  bool conclusive = false;
  std::string note;

  Scalar q = 0.0;  // geometric ratio
  Scalar linear_r2 = 0.0;
  Scalar exponent = 0.0;  // power-law exponent
  Scalar power_r2 = 0.0;

  enum class Model { None, Geometric, PowerLaw };
  Model preferred = Model::None;

  std::string to_text() const;
};

/// Pre: at least 50 usable iterations after burn-in (the first tenth of the
/// trace); otherwise the report comes back marked inconclusive.
RateReport fit_rate(const IterTrace& trace);

}  // namespace riopt
