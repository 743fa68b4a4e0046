#pragma once

#include "riopt/oracles.hpp"

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace riopt {

enum class TerminationReason { GradTol, MaxIters, WallClock, SingularityError };

const char* to_string(TerminationReason r);

/// One visited iterate. The first seven fields form the stable CSV schema
/// `k,t,f,gradnorm,errbound,evals,wall_s`; the remaining fields are in-memory
/// audit instrumentation and never serialized.
struct IterRecord {
  long k = 0;
  Scalar t = 0.0;         // step taken from this iterate (0 on the final row)
  Scalar f = 0.0;         // cost at the iterate
  Scalar gradnorm = 0.0;  // true gradient norm (audit) or conservative surrogate
  Scalar errbound = 0.0;  // declared oracle bound value (nan when none declared)
  long evals = 0;         // cumulative cost/gradient evaluations
  Scalar wall_s = 0.0;

  // Audit extras.
  Scalar g_norm = std::numeric_limits<Scalar>::quiet_NaN();      // |g_k|
  Scalar err_actual = std::numeric_limits<Scalar>::quiet_NaN();  // |g_k - grad f(x_k)|
  BoundKind bound_kind = BoundKind::None;
  bool armijo_forced = false;
  bool rank_truncation_tie = false;
};

/// Per-run record of the iteration, plus warnings and the termination cause.
struct IterTrace {
  std::vector<IterRecord> rows;
  TerminationReason reason = TerminationReason::MaxIters;
  bool audited = false;
  std::vector<std::string> warnings;
  std::string singularity_message;

  /// Steps actually taken (the final row takes none when the run stopped).
  long iterations() const;
  const IterRecord& last() const { return rows.back(); }

  std::string to_csv() const;
  void write_csv(const std::string& path) const;
  static IterTrace from_csv_text(const std::string& text, const std::string& origin);
  static IterTrace read_csv(const std::string& path);
};

/// Shortest round-tripping decimal form of a double (to_chars), so CSV and
/// plot artifacts are byte-stable and parse back to the same value.
std::string format_double(Scalar v);

}  // namespace riopt
