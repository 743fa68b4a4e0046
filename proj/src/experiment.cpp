#include "riopt/experiment.hpp"

#include "riopt/mnist.hpp"
#include "riopt/plot.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

namespace riopt {

namespace {

std::string slugify(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
      out += c;
    else if (c == '.')
      out += 'p';
    // everything else dropped
  }
  return out;
}

std::string param_name(SolverKind s) {
  return (s == SolverKind::Rsam || s == SolverKind::Reg) ? "rho" : "nu";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct SizeInfo {
  std::string label;
  int count = 0;
};

std::vector<SizeInfo> problem_sizes(const ExperimentConfig& cfg) {
  std::vector<SizeInfo> sizes;
  if (cfg.problem == "mc") {
    for (const auto& s : cfg.mc_sizes)
      sizes.push_back({"mc" + std::to_string(s[0]) + "x" + std::to_string(s[1]) + "x" +
                       std::to_string(s[2])});
  } else if (cfg.problem == "pca") {
    for (const auto& s : cfg.pca_sizes)
      sizes.push_back({"pca" + std::to_string(s[0]) + "x" + std::to_string(s[1])});
  } else if (cfg.problem == "pca-mnist") {
    for (Index p : cfg.mnist_ps) sizes.push_back({"mnistp" + std::to_string(p)});
  } else {
    sizes.push_back({"sphere" + std::to_string(cfg.sphere_h_diag.size())});
  }
  return sizes;
}

std::vector<GridCell> expand_grid(const ExperimentConfig& cfg) {
  std::vector<GridCell> cells;
  const std::vector<SizeInfo> sizes = problem_sizes(cfg);
  for (int si = 0; si < static_cast<int>(sizes.size()); ++si) {
    for (SolverKind solver : cfg.solvers) {
      for (const std::string& step : cfg.steps) {
        const bool uses_nu = solver == SolverKind::Irgd || solver == SolverKind::Irgdr;
        const bool uses_rho = solver == SolverKind::Rsam || solver == SolverKind::Reg;
        std::vector<Scalar> params;
        if (uses_nu)
          params = cfg.nus;
        else if (uses_rho)
          params = cfg.rhos;
        else
          params = {0.0};
        for (Scalar param : params) {
          GridCell cell;
          cell.size_index = si;
          cell.problem_label = sizes[static_cast<size_t>(si)].label;
          cell.solver = solver;
          cell.step = step;
          cell.param = param;
          cell.has_param = uses_nu || uses_rho;
          cell.label = std::string(to_string(solver)) + "-" + step;
          if (cell.has_param)
            cell.label += " " + param_name(solver) + "=" + format_double(param);
          cell.slug = slugify(cell.problem_label + "_" + std::string(to_string(solver)) + "-" +
                              step +
                              (cell.has_param
                                   ? "-" + param_name(solver) + format_double(param)
                                   : ""));
          cells.push_back(std::move(cell));
        }
      }
    }
  }
  return cells;
}

StepSchedule make_schedule(const ExperimentConfig& cfg, const GridCell& cell, Scalar lip) {
  if (cell.step == "diminishing") return StepSchedule::diminishing(cfg.alpha);
  if (cell.step == "constant") return StepSchedule::constant(cfg.const_t);
  if (cell.step == "armijo")
    return StepSchedule::armijo(cfg.armijo_t0, cfg.armijo_contraction, cfg.armijo_decrease,
                                cfg.armijo_max_backtracks);
  const Scalar nu = cell.solver == SolverKind::Irgdr ? cell.param : 0.0;
  return StepSchedule::capped_constant(nu, cfg.capped_delta, lip);
}

IterTrace execute_run(const ExperimentConfig& cfg, const GridCell& cell, std::uint64_t seed,
                      const Problem& problem, StepSchedule* schedule_out) {
  const Scalar lip = cfg.lipschitz_override.value_or(problem.lipschitz_bound());
  const StepSchedule schedule = make_schedule(cfg, cell, lip);
  if (schedule_out) *schedule_out = schedule;
  const StopRule stop{cfg.grad_tol, cfg.max_iters, cfg.max_wall_seconds};

  Rng x0_rng(seed, 1);
  const ManifoldPoint x0 = problem.manifold().random_point(x0_rng);
  Rng loop_rng(seed, 2);

  switch (cell.solver) {
    case SolverKind::Rgd:
      return run_rgd(problem, x0, schedule, stop, loop_rng, cfg.audit, cfg.record_walltime);
    case SolverKind::Irgd:
      return run_irgd(problem, x0, ErrorSchedule::power_decay(cell.param, cfg.noise_p),
                      schedule, stop, loop_rng, cfg.audit, cfg.record_walltime);
    case SolverKind::Irgdr:
      return run_irgdr(problem, x0, cell.param, schedule, stop, loop_rng, cfg.audit,
                       cfg.record_walltime);
    case SolverKind::Rsam:
      return run_rsam(problem, x0, DecaySchedule{cell.param, cfg.rho_power}, schedule, stop,
                      loop_rng, cfg.audit, cfg.record_walltime, cfg.lipschitz_override);
    case SolverKind::Reg:
      return run_reg(problem, x0, DecaySchedule{cell.param, cfg.rho_power}, schedule, stop,
                     loop_rng, cfg.audit, cfg.record_walltime, cfg.lipschitz_override,
                     cfg.declared_nu);
  }
  throw ConfigError("unreachable solver kind");
}

Scalar median(std::vector<Scalar> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::unique_ptr<Problem> build_problem(const ExperimentConfig& cfg, int size_index,
                                       std::uint64_t seed) {
  if (cfg.problem == "mc") {
    const auto& s = cfg.mc_sizes[static_cast<size_t>(size_index)];
    return std::make_unique<McProblem>(gen_mc_instance(s[0], s[1], s[2], cfg.mask_prob, seed));
  }
  if (cfg.problem == "pca") {
    const auto& s = cfg.pca_sizes[static_cast<size_t>(size_index)];
    return std::make_unique<PcaProblem>(gen_pca_instance(s[0], s[1], seed));
  }
  if (cfg.problem == "pca-mnist") {
    // Grid runs share one parse of the (immutable) image file.
    static std::mutex cache_mutex;
    static std::map<std::string, std::shared_ptr<const MnistImages>> cache;
    std::shared_ptr<const MnistImages> images;
    {
      std::lock_guard<std::mutex> lock(cache_mutex);
      auto it = cache.find(cfg.mnist_path);
      if (it == cache.end())
        it = cache.emplace(cfg.mnist_path,
                           std::make_shared<MnistImages>(load_mnist_idx(cfg.mnist_path)))
                 .first;
      images = it->second;
    }
    const Index p = cfg.mnist_ps[static_cast<size_t>(size_index)];
    if (p >= images->data.cols())
      throw ConfigError("pca-mnist: p = " + std::to_string(p) +
                        " must be below the pixel count " +
                        std::to_string(images->data.cols()));
    return std::make_unique<PcaProblem>(
        mnist_pca_instance(*images, p, cfg.mnist_subsample, seed));
  }
  const Index n = static_cast<Index>(cfg.sphere_h_diag.size());
  Matrix h = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) h(i, i) = cfg.sphere_h_diag[static_cast<size_t>(i)];
  return std::make_unique<SphereRayleighProblem>(std::move(h));
}

IterTrace rerun_single(const ExperimentConfig& cfg, bool force_audit, AuditContext* ctx_out) {
  const std::vector<GridCell> cells = expand_grid(cfg);
  if (cells.size() != 1 || cfg.seeds.size() != 1)
    throw ConfigError("audit requires a config that expands to exactly one run; this one has " +
                      std::to_string(cells.size()) + " cells x " +
                      std::to_string(cfg.seeds.size()) + " seeds");
  ExperimentConfig single = cfg;
  if (force_audit) single.audit = true;
  const std::unique_ptr<Problem> problem = build_problem(single, 0, single.seeds[0]);
  StepSchedule schedule;
  IterTrace trace = execute_run(single, cells[0], single.seeds[0], *problem, &schedule);
  if (ctx_out)
    *ctx_out = AuditContext{cells[0].solver, schedule,
                            single.lipschitz_override.value_or(problem->lipschitz_bound())};
  return trace;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write_artifacts) {
  ExperimentResult result;
  result.cells = expand_grid(cfg);
  result.warnings = cfg.validate();
  result.out_dir = resolve_out_dir(cfg);
  result.config_digest = digest_hex(cfg.digest());

  // Schedules that cannot be built (bad capped parameters and the like)
  // should fail before any run starts; probe with a nominal L.
  for (const GridCell& cell : result.cells) make_schedule(cfg, cell, 1.0);

  struct RunSpec {
    int cell_index;
    std::uint64_t seed;
  };
  std::vector<RunSpec> specs;
  for (int ci = 0; ci < static_cast<int>(result.cells.size()); ++ci)
    for (std::uint64_t seed : cfg.seeds) specs.push_back({ci, seed});

  result.summaries.resize(specs.size());
  result.traces.resize(specs.size());

  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= specs.size() || failed.load()) return;
      const RunSpec& spec = specs[i];
      const GridCell& cell = result.cells[static_cast<size_t>(spec.cell_index)];
      try {
        const std::unique_ptr<Problem> problem = build_problem(cfg, cell.size_index, spec.seed);
        StepSchedule schedule;
        const auto t0 = std::chrono::steady_clock::now();
        IterTrace trace = execute_run(cfg, cell, spec.seed, *problem, &schedule);
        const Scalar wall =
            std::chrono::duration<Scalar>(std::chrono::steady_clock::now() - t0).count();

        RunSummary s;
        s.run_index = static_cast<int>(i);
        s.cell_index = spec.cell_index;
        s.seed = spec.seed;
        s.iterations = trace.iterations();
        s.reason = trace.reason;
        s.final_f = trace.rows.empty() ? 0.0 : trace.last().f;
        s.final_gradnorm = trace.rows.empty() ? 0.0 : trace.last().gradnorm;
        s.wall_seconds = cfg.record_walltime ? wall : 0.0;
        s.rate = fit_rate(trace);
        if (cfg.audit) {
          const Scalar lip = cfg.lipschitz_override.value_or(problem->lipschitz_bound());
          s.audit = audit_report(trace, AuditContext{cell.solver, schedule, lip});
        }
        result.summaries[i] = std::move(s);
        result.traces[i] = std::make_shared<IterTrace>(std::move(trace));
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failed = true;
        if (failure.empty())
          failure = "run " + std::to_string(i) + " (" + cell.label + "): " + e.what();
      }
    }
  };

  const int workers =
      std::max(1, std::min<int>(cfg.threads, static_cast<int>(specs.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failed.load()) throw std::runtime_error("experiment failed: " + failure);

  for (const auto& s : result.summaries)
    for (const std::string& w : result.traces[static_cast<size_t>(s.run_index)]->warnings)
      result.warnings.push_back(result.cells[static_cast<size_t>(s.cell_index)].label + " seed " +
                                std::to_string(s.seed) + ": " + w);

  if (!write_artifacts) return result;

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(result.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + result.out_dir);
  auto emit = [&result](const std::string& name, const std::string& content) {
    const std::string path = result.out_dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("write failed for " + path);
    result.artifacts.push_back(path);
  };

  // Per-run traces.
  for (size_t i = 0; i < specs.size(); ++i) {
    const GridCell& cell = result.cells[static_cast<size_t>(specs[i].cell_index)];
    emit("trace_" + cell.slug + "_s" + std::to_string(specs[i].seed) + ".csv",
         result.traces[i]->to_csv());
  }

  if (cfg.emit_plots) {
    // One plot per cell overlaying its seeds.
    for (int ci = 0; ci < static_cast<int>(result.cells.size()); ++ci) {
      std::vector<const IterTrace*> traces;
      std::vector<std::string> labels;
      for (size_t i = 0; i < specs.size(); ++i)
        if (specs[i].cell_index == ci) {
          traces.push_back(result.traces[i].get());
          labels.push_back("seed " + std::to_string(specs[i].seed));
        }
      const GridCell& cell = result.cells[static_cast<size_t>(ci)];
      emit("plot_" + cell.slug + ".svg",
           render_gradnorm_svg(traces, labels, cell.problem_label + " " + cell.label));
    }
    // One plot per problem size overlaying all cells (first seed).
    const std::vector<SizeInfo> sizes = problem_sizes(cfg);
    for (int si = 0; si < static_cast<int>(sizes.size()); ++si) {
      std::vector<const IterTrace*> traces;
      std::vector<std::string> labels;
      for (size_t i = 0; i < specs.size(); ++i) {
        const GridCell& cell = result.cells[static_cast<size_t>(specs[i].cell_index)];
        if (cell.size_index == si && specs[i].seed == cfg.seeds.front()) {
          traces.push_back(result.traces[i].get());
          labels.push_back(cell.label);
        }
      }
      if (!traces.empty())
        emit("plot_" + slugify(sizes[static_cast<size_t>(si)].label) + "_solvers.svg",
             render_gradnorm_svg(traces, labels, sizes[static_cast<size_t>(si)].label));
    }
  }

  emit("summary.csv", summary_csv(result));
  emit("summary.txt", summary_text(result, cfg));

  std::string manifest = "config digest: " + result.config_digest + "\n";
  manifest += "problem: " + cfg.problem + "\n";
  manifest += "runs: " + std::to_string(specs.size()) + "\n";
  if (result.warnings.empty()) {
    manifest += "warnings: none\n";
  } else {
    manifest += "warnings:\n";
    for (const std::string& w : result.warnings) manifest += "  - " + w + "\n";
  }
  emit("manifest.txt", manifest);
  return result;
}

std::string summary_csv(const ExperimentResult& result) {
  std::string out =
      "run,problem,cell,solver,step,param,seed,iterations,reason,final_f,final_gradnorm,"
      "rate_model,rate_value,rate_r2,audit,wall_s,config_digest\n";
  for (const RunSummary& s : result.summaries) {
    const GridCell& cell = result.cells[static_cast<size_t>(s.cell_index)];
    out += std::to_string(s.run_index) + ",";
    out += csv_field(cell.problem_label) + ",";
    out += csv_field(cell.label) + ",";
    out += std::string(to_string(cell.solver)) + ",";
    out += cell.step + ",";
    out += (cell.has_param ? format_double(cell.param) : "") + ",";
    out += std::to_string(s.seed) + ",";
    out += std::to_string(s.iterations) + ",";
    out += std::string(to_string(s.reason)) + ",";
    out += format_double(s.final_f) + ",";
    out += format_double(s.final_gradnorm) + ",";
    if (s.rate.conclusive) {
      const bool geo = s.rate.preferred == RateReport::Model::Geometric;
      out += std::string(geo ? "geometric" : "power-law") + ",";
      out += format_double(geo ? s.rate.q : s.rate.exponent) + ",";
      out += format_double(geo ? s.rate.linear_r2 : s.rate.power_r2) + ",";
    } else {
      out += "inconclusive,,,";
    }
    out += s.audit.available ? (s.audit.pass() ? "pass," : "fail,") : ",";
    out += format_double(s.wall_seconds) + ",";
    out += result.config_digest + "\n";
  }
  return out;
}

std::string summary_text(const ExperimentResult& result, const ExperimentConfig& cfg) {
  std::string out;
  out += "experiment summary (config " + result.config_digest + ")\n";
  out += "problem: " + cfg.problem + ", seeds: " + std::to_string(cfg.seeds.size()) +
         ", median iterations and wall seconds per cell\n\n";

  // One table: a row per solver variant, an (iter, time) column pair per
  // problem size.
  const std::vector<SizeInfo> sizes = problem_sizes(cfg);
  std::vector<std::string> row_labels;
  for (const GridCell& cell : result.cells)
    if (cell.size_index == 0) row_labels.push_back(cell.label);

  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-36s", "solver");
  out += buf;
  for (const SizeInfo& size : sizes) {
    std::snprintf(buf, sizeof(buf), " | %21s", size.label.c_str());
    out += buf;
  }
  out += "\n";
  std::snprintf(buf, sizeof(buf), "%-36s", "");
  out += buf;
  for (size_t i = 0; i < sizes.size(); ++i) {
    std::snprintf(buf, sizeof(buf), " | %10s %10s", "iter", "time");
    out += buf;
  }
  out += "\n";

  for (const std::string& label : row_labels) {
    std::snprintf(buf, sizeof(buf), "%-36s", label.c_str());
    out += buf;
    for (int si = 0; si < static_cast<int>(sizes.size()); ++si) {
      std::vector<Scalar> iters, walls;
      int missed = 0;
      for (const RunSummary& s : result.summaries) {
        const GridCell& cell = result.cells[static_cast<size_t>(s.cell_index)];
        if (cell.size_index != si || cell.label != label) continue;
        iters.push_back(static_cast<Scalar>(s.iterations));
        walls.push_back(s.wall_seconds);
        if (s.reason != TerminationReason::GradTol) ++missed;
      }
      std::snprintf(buf, sizeof(buf), " | %9.1f%s %10.4f", median(iters),
                    missed > 0 ? "*" : " ", median(walls));
      out += buf;
    }
    out += "\n";
  }
  out += "\n(* at least one run ended without reaching the gradient tolerance)\n";
  return out;
}

}  // namespace riopt
