#include "riopt/config.hpp"

#include "riopt/problems.hpp"
#include "riopt/trace.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace riopt {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Scalar to_scalar(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const Scalar r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for '" + key + "': '" + v + "'");
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const long r = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer for '" + key + "': '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config: bad boolean for '" + key + "': '" + v + "'");
}

std::vector<Index> to_dims(const std::string& key, const std::string& item) {
  std::vector<Index> dims;
  for (const std::string& d : split(item, 'x')) dims.push_back(to_long(key, d));
  return dims;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ": line " + std::to_string(lineno) +
                        " is not 'key = value': '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(origin + ": empty key on line " + std::to_string(lineno));
    if (kv.count(key)) throw ConfigError(origin + ": duplicate key '" + key + "'");
    kv[key] = value;
  }

  ExperimentConfig cfg;
  auto take = [&kv](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  if (auto v = take("problem")) cfg.problem = *v;
  if (cfg.problem.empty()) throw ConfigError(origin + ": missing required key 'problem'");

  if (auto v = take("sizes")) {
    for (const std::string& item : split(*v, ',')) {
      const std::vector<Index> dims = to_dims("sizes", item);
      if (cfg.problem == "mc") {
        if (dims.size() != 3) throw ConfigError(origin + ": mc sizes need m x n x k");
        if (dims[0] < 1 || dims[1] < 1 || dims[2] < 1 ||
            dims[2] > std::min(dims[0], dims[1]))
          throw ConfigError(origin + ": mc size '" + item + "' needs 1 <= k <= min(m, n)");
        cfg.mc_sizes.push_back({dims[0], dims[1], dims[2]});
      } else if (cfg.problem == "pca") {
        if (dims.size() != 2) throw ConfigError(origin + ": pca sizes need n x p");
        if (dims[1] < 1 || dims[1] >= dims[0])
          throw ConfigError(origin + ": pca size '" + item + "' needs 1 <= p < n");
        cfg.pca_sizes.push_back({dims[0], dims[1]});
      } else if (cfg.problem == "pca-mnist") {
        if (dims.size() != 1) throw ConfigError(origin + ": pca-mnist sizes are p values");
        if (dims[0] < 1) throw ConfigError(origin + ": pca-mnist p must be >= 1");
        cfg.mnist_ps.push_back(dims[0]);
      } else {
        throw ConfigError(origin + ": 'sizes' does not apply to problem '" + cfg.problem + "'");
      }
    }
  }
  if (auto v = take("mask_prob")) cfg.mask_prob = to_scalar("mask_prob", *v);
  if (auto v = take("h_diag")) {
    cfg.sphere_h_diag.clear();
    for (const std::string& item : split(*v, ','))
      cfg.sphere_h_diag.push_back(to_scalar("h_diag", item));
  }
  if (auto v = take("mnist_path")) cfg.mnist_path = *v;
  if (auto v = take("mnist_subsample")) cfg.mnist_subsample = to_long("mnist_subsample", *v);

  {
    const auto many = take("seeds");
    const auto one = take("seed");
    if (many && one) throw ConfigError(origin + ": give either 'seed' or 'seeds', not both");
    if (many) {
      cfg.seeds.clear();
      for (const std::string& item : split(*many, ','))
        cfg.seeds.push_back(static_cast<std::uint64_t>(to_long("seeds", item)));
    } else if (one) {
      cfg.seeds = {static_cast<std::uint64_t>(to_long("seed", *one))};
    }
  }

  if (auto v = take("solvers")) {
    cfg.solvers.clear();
    for (const std::string& item : split(*v, ',')) cfg.solvers.push_back(solver_from_string(item));
  }
  if (auto v = take("steps")) {
    cfg.steps.clear();
    for (const std::string& item : split(*v, ',')) {
      if (item != "diminishing" && item != "constant" && item != "armijo" && item != "capped")
        throw ConfigError(origin + ": unknown step rule '" + item + "'");
      cfg.steps.push_back(item);
    }
  }
  {
    const auto many = take("nus");
    const auto one = take("nu");
    if (many && one) throw ConfigError(origin + ": give either 'nu' or 'nus', not both");
    if (many)
      for (const std::string& item : split(*many, ','))
        cfg.nus.push_back(to_scalar("nus", item));
    else if (one)
      cfg.nus = {to_scalar("nu", *one)};
  }
  {
    const auto many = take("rhos");
    const auto one = take("rho");
    if (many && one) throw ConfigError(origin + ": give either 'rho' or 'rhos', not both");
    if (many)
      for (const std::string& item : split(*many, ','))
        cfg.rhos.push_back(to_scalar("rhos", item));
    else if (one)
      cfg.rhos = {to_scalar("rho", *one)};
  }

  if (auto v = take("alpha")) cfg.alpha = to_scalar("alpha", *v);
  if (auto v = take("const_t")) cfg.const_t = to_scalar("const_t", *v);
  if (auto v = take("armijo_t0")) cfg.armijo_t0 = to_scalar("armijo_t0", *v);
  if (auto v = take("armijo_contraction"))
    cfg.armijo_contraction = to_scalar("armijo_contraction", *v);
  if (auto v = take("armijo_decrease")) cfg.armijo_decrease = to_scalar("armijo_decrease", *v);
  if (auto v = take("armijo_max_backtracks"))
    cfg.armijo_max_backtracks = static_cast<int>(to_long("armijo_max_backtracks", *v));
  if (auto v = take("capped_delta")) cfg.capped_delta = to_scalar("capped_delta", *v);
  if (auto v = take("noise_p")) cfg.noise_p = to_scalar("noise_p", *v);
  if (auto v = take("rho_power")) cfg.rho_power = to_scalar("rho_power", *v);
  if (auto v = take("lipschitz")) cfg.lipschitz_override = to_scalar("lipschitz", *v);
  if (auto v = take("declared_nu")) cfg.declared_nu = to_scalar("declared_nu", *v);

  if (auto v = take("grad_tol")) cfg.grad_tol = to_scalar("grad_tol", *v);
  if (auto v = take("max_iters")) cfg.max_iters = to_long("max_iters", *v);
  if (auto v = take("max_wall_seconds"))
    cfg.max_wall_seconds = to_scalar("max_wall_seconds", *v);

  if (auto v = take("audit")) cfg.audit = to_bool("audit", *v);
  if (auto v = take("record_walltime")) cfg.record_walltime = to_bool("record_walltime", *v);
  if (auto v = take("emit_plots")) cfg.emit_plots = to_bool("emit_plots", *v);
  if (auto v = take("threads")) cfg.threads = static_cast<int>(to_long("threads", *v));
  if (auto v = take("out_dir")) cfg.out_dir = *v;

  if (!kv.empty()) throw ConfigError(origin + ": unknown key '" + kv.begin()->first + "'");

  // Structural checks; parameter-regime checks live in validate().
  if (cfg.problem == "mc") {
    if (cfg.mc_sizes.empty()) throw ConfigError(origin + ": mc needs a nonempty 'sizes' axis");
  } else if (cfg.problem == "pca") {
    if (cfg.pca_sizes.empty()) throw ConfigError(origin + ": pca needs a nonempty 'sizes' axis");
  } else if (cfg.problem == "sphere") {
    if (cfg.sphere_h_diag.size() < 2)
      throw ConfigError(origin + ": sphere needs 'h_diag' with at least two entries");
  } else if (cfg.problem == "pca-mnist") {
    if (cfg.mnist_ps.empty())
      throw ConfigError(origin + ": pca-mnist needs a nonempty 'sizes' axis of p values");
    if (cfg.mnist_path.empty()) throw ConfigError(origin + ": pca-mnist needs 'mnist_path'");
  } else {
    throw ConfigError(origin + ": unknown problem '" + cfg.problem + "'");
  }
  if (cfg.seeds.empty()) throw ConfigError(origin + ": empty 'seeds' axis");
  if (cfg.solvers.empty()) throw ConfigError(origin + ": empty 'solvers' axis");
  if (cfg.steps.empty()) throw ConfigError(origin + ": empty 'steps' axis");
  for (SolverKind s : cfg.solvers) {
    if ((s == SolverKind::Irgd || s == SolverKind::Irgdr) && cfg.nus.empty())
      throw ConfigError(origin + ": solver '" + std::string(to_string(s)) +
                        "' needs a nonempty 'nus' axis");
    if ((s == SolverKind::Rsam || s == SolverKind::Reg) && cfg.rhos.empty())
      throw ConfigError(origin + ": solver '" + std::string(to_string(s)) +
                        "' needs a nonempty 'rhos' axis");
  }
  if (cfg.threads < 1) throw ConfigError(origin + ": threads must be >= 1");
  if (cfg.max_iters < 1) throw ConfigError(origin + ": max_iters must be >= 1");
  if (!(cfg.grad_tol > 0.0)) throw ConfigError(origin + ": grad_tol must be > 0");
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::uint64_t ExperimentConfig::digest() const {
  std::string blob = problem + "|";
  for (const auto& s : mc_sizes)
    blob += std::to_string(s[0]) + "x" + std::to_string(s[1]) + "x" + std::to_string(s[2]) + ",";
  for (const auto& s : pca_sizes) blob += std::to_string(s[0]) + "x" + std::to_string(s[1]) + ",";
  for (Index p : mnist_ps) blob += std::to_string(p) + ",";
  blob += "|" + mnist_path + "|" + std::to_string(mnist_subsample);
  for (auto s : seeds) blob += ";" + std::to_string(s);
  for (auto s : solvers) blob += ";" + std::string(to_string(s));
  for (const auto& s : steps) blob += ";" + s;
  std::uint64_t h = fnv1a(blob.data(), blob.size());
  const Scalar reals[] = {mask_prob,
                          alpha,
                          const_t,
                          armijo_t0,
                          armijo_contraction,
                          armijo_decrease,
                          static_cast<Scalar>(armijo_max_backtracks),
                          capped_delta,
                          noise_p,
                          rho_power,
                          lipschitz_override.value_or(-1.0),
                          declared_nu.value_or(-1.0),
                          grad_tol,
                          static_cast<Scalar>(max_iters),
                          max_wall_seconds.value_or(-1.0),
                          audit ? 1.0 : 0.0,
                          record_walltime ? 1.0 : 0.0};
  h = fnv1a(reals, sizeof(reals), h);
  for (Scalar v : sphere_h_diag) h = fnv1a(&v, sizeof(v), h);
  for (Scalar v : nus) h = fnv1a(&v, sizeof(v), h);
  for (Scalar v : rhos) h = fnv1a(&v, sizeof(v), h);
  return h;
}

std::vector<std::string> ExperimentConfig::validate() const {
  std::vector<std::string> warnings;
  auto step_schedule = [this](const std::string& step, Scalar nu_for_capped,
                              Scalar lip) -> StepSchedule {
    if (step == "diminishing") return StepSchedule::diminishing(alpha);
    if (step == "constant") return StepSchedule::constant(const_t);
    if (step == "armijo")
      return StepSchedule::armijo(armijo_t0, armijo_contraction, armijo_decrease,
                                  armijo_max_backtracks);
    return StepSchedule::capped_constant(nu_for_capped, capped_delta, lip);
  };
  // The Lipschitz constant is data dependent; regime checks here use the
  // override when given and 1.0 otherwise, and run_experiment re-validates
  // per instance.
  const Scalar lip = lipschitz_override.value_or(1.0);
  for (SolverKind solver : solvers) {
    for (const std::string& step : steps) {
      switch (solver) {
        case SolverKind::Rgd: {
          for (const std::string& w : validate_step_schedule(step_schedule(step, 0.0, lip)))
            warnings.push_back("rgd/" + step + ": " + w);
          break;
        }
        case SolverKind::Irgd: {
          for (Scalar nu : nus)
            for (const std::string& w : validate_irgd_regime(
                     step_schedule(step, 0.0, lip), ErrorSchedule::power_decay(nu, noise_p)))
              warnings.push_back("irgd/" + step + "/nu=" + format_double(nu) + ": " + w);
          break;
        }
        case SolverKind::Irgdr: {
          for (Scalar nu : nus)
            for (const std::string& w :
                 validate_irgdr_regime(step_schedule(step, nu, lip), nu))
              warnings.push_back("irgdr/" + step + "/nu=" + format_double(nu) + ": " + w);
          break;
        }
        case SolverKind::Rsam: {
          for (Scalar rho : rhos)
            for (const std::string& w : validate_rsam_regime(
                     step_schedule(step, 0.0, lip), DecaySchedule{rho, rho_power}, lip))
              warnings.push_back("rsam/" + step + "/rho=" + format_double(rho) + ": " + w);
          break;
        }
        case SolverKind::Reg: {
          for (Scalar rho : rhos)
            for (const std::string& w :
                 validate_reg_regime(DecaySchedule{rho, rho_power}, lip))
              warnings.push_back("reg/" + step + "/rho=" + format_double(rho) + ": " + w);
          break;
        }
      }
    }
  }
  return warnings;
}

std::string resolve_out_dir(const ExperimentConfig& cfg) {
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  if (const char* root = std::getenv("RIOPT_OUT_ROOT")) return root;
  return "riopt-out";
}

}  // namespace riopt
