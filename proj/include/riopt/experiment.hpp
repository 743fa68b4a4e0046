#pragma once

#include "riopt/audit.hpp"
#include "riopt/config.hpp"
#include "riopt/rate.hpp"
#include "riopt/solver.hpp"

#include <memory>

namespace riopt {

/// One grid cell: a (problem size, solver, step rule, parameter) combination.
/// Runs of a cell differ only in their seed.
struct GridCell {
  int size_index = 0;
  std::string problem_label;  // e.g. "mc20x20x8"
  SolverKind solver = SolverKind::Rgd;
  std::string step;
  Scalar param = 0.0;  // nu or rho; unused for rgd
  bool has_param = false;
  std::string slug;    // filesystem-safe cell name
  std::string label;   // human-readable cell name
};

struct RunSummary {
  int run_index = 0;
  int cell_index = 0;
  std::uint64_t seed = 0;
  long iterations = 0;
  TerminationReason reason = TerminationReason::MaxIters;
  Scalar final_f = 0.0;
  Scalar final_gradnorm = 0.0;
  Scalar wall_seconds = 0.0;
  RateReport rate;
  AuditFindings audit;
};

struct ExperimentResult {
  std::vector<GridCell> cells;
  std::vector<RunSummary> summaries;          // ordered by run index
  std::vector<std::shared_ptr<IterTrace>> traces;  // parallel to summaries
  std::vector<std::string> artifacts;
  std::vector<std::string> warnings;
  std::string out_dir;
  std::string config_digest;
};

/// Expands the grid, executes every run (optionally in a worker pool; the
/// merged output does not depend on the thread count), and writes per-run
/// trace CSVs, per-cell and per-size plots, summary.csv, summary.txt, and
/// manifest.txt under the resolved output directory.
ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write_artifacts = true);

/// Builds the problem a run uses; exposed for the audit subcommand, which
/// re-runs a single-run config deterministically.
std::unique_ptr<Problem> build_problem(const ExperimentConfig& cfg, int size_index,
                                       std::uint64_t seed);

/// Re-runs one run of a single-run config. Used by `audit`.
IterTrace rerun_single(const ExperimentConfig& cfg, bool force_audit,
                       AuditContext* ctx_out = nullptr);

std::string summary_csv(const ExperimentResult& result);
std::string summary_text(const ExperimentResult& result, const ExperimentConfig& cfg);

}  // namespace riopt
