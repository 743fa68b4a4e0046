#pragma once

#include "riopt/schedule.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace riopt {

/// A fully expanded grid is the cross product of problem sizes, solvers,
/// stepsize rules, the per-solver parameter axis (nu for irgd/irgdr, rho for
/// rsam/reg, nothing for rgd), and seeds. Parsed from a flat key = value
/// file; see configs/ for annotated examples.
struct ExperimentConfig {
  // Problem axis.
  std::string problem;  // "mc" | "pca" | "sphere" | "pca-mnist"
  std::vector<std::array<Index, 3>> mc_sizes;   // m x n x k
  std::vector<std::array<Index, 2>> pca_sizes;  // n x p
  std::vector<Index> mnist_ps;
  Scalar mask_prob = 0.5;
  std::vector<Scalar> sphere_h_diag;
  std::string mnist_path;
  Index mnist_subsample = 1000;

  // Seeds: data and initial point both derive from the run seed, so runs of
  // different solvers under one seed share their instance and start point.
  std::vector<std::uint64_t> seeds{0};

  // Solver axes.
  std::vector<SolverKind> solvers{SolverKind::Rgd};
  std::vector<std::string> steps{"diminishing"};  // diminishing|constant|armijo|capped
  std::vector<Scalar> nus;                        // irgd / irgdr parameter axis
  std::vector<Scalar> rhos;                       // rsam / reg parameter axis

  Scalar alpha = 0.75;       // diminishing exponent
  Scalar const_t = 0.1;      // constant stepsize
  Scalar armijo_t0 = 1.0;
  Scalar armijo_contraction = 0.5;
  Scalar armijo_decrease = 1e-4;
  int armijo_max_backtracks = 50;
  Scalar capped_delta = 0.1;  // capped stepsize slack
  Scalar noise_p = 2.1;       // additive-noise decay exponent
  Scalar rho_power = 0.0;     // rho_k = rho (k+1)^(-rho_power)
  std::optional<Scalar> lipschitz_override;
  // reg only: certify this relative level instead of L rho_k. Declaring less
  // than the realized error is how audit sensitivity is demonstrated.
  std::optional<Scalar> declared_nu;

  // Stopping.
  Scalar grad_tol = 1e-6;
  long max_iters = 10000;
  std::optional<Scalar> max_wall_seconds;

  // Harness.
  bool audit = true;
  bool record_walltime = false;
  bool emit_plots = true;
  int threads = 1;
  std::string out_dir;

  /// Fingerprint of every field that influences the run.
  std::uint64_t digest() const;
  /// Named parameter-regime warnings; hard errors throw ConfigError instead.
  std::vector<std::string> validate() const;
};

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);
ExperimentConfig parse_config_file(const std::string& path);

/// Output directory resolution: explicit config value, else $RIOPT_OUT_ROOT,
/// else ./riopt-out.
std::string resolve_out_dir(const ExperimentConfig& cfg);

}  // namespace riopt
