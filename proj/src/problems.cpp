#include "riopt/problems.hpp"

#include <cstring>

namespace riopt {

std::uint64_t fnv1a(const void* data, size_t len, std::uint64_t h) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a(const Matrix& m, std::uint64_t h) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      const Scalar v = m(i, j);
      h = fnv1a(&v, sizeof(v), h);
    }
  return h;
}

std::string digest_hex(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(digest));
  return std::string(buf);
}

Scalar mc_cost(const McInstance& inst, const ManifoldPoint& x) {
  Scalar acc = 0.0;
  for (const auto& [i, j] : inst.observed) {
    const Scalar d = FixedRankOps::entry(x, i, j) - inst.a(i, j);
    acc += d * d;
  }
  return acc;
}

Matrix mc_egrad(const McInstance& inst, const ManifoldPoint& x) {
  Matrix g = Matrix::Zero(inst.m, inst.n);
  for (const auto& [i, j] : inst.observed)
    g(i, j) = 2.0 * (FixedRankOps::entry(x, i, j) - inst.a(i, j));
  return g;
}

Scalar pca_cost(const PcaInstance& inst, const ManifoldPoint& x) {
  const Matrix& basis = x.part(0);
  return -0.5 * (basis.transpose() * inst.h * basis).trace();
}

Matrix pca_egrad(const PcaInstance& inst, const ManifoldPoint& x) {
  return -inst.h * x.part(0);
}

McInstance gen_mc_instance(Index m, Index n, Index k, Scalar mask_prob, std::uint64_t seed) {
  if (!(mask_prob > 0.0 && mask_prob <= 1.0))
    throw ConfigError("mc instance: mask_prob must be in (0, 1]");
  McInstance inst;
  inst.m = m;
  inst.n = n;
  inst.k = k;

  Rng data_rng(seed, /*stream=*/101);
  const Matrix g1 = data_rng.gaussian_matrix(m, k);
  const Matrix g2 = data_rng.gaussian_matrix(n, k);
  inst.a = g1 * g2.transpose();

  inst.mask.resize(m, n);
  for (std::uint64_t attempt = 0; attempt < 10; ++attempt) {
    Rng mask_rng(seed, /*stream=*/202 + attempt);
    inst.observed.clear();
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < n; ++j) {
        const bool on = mask_rng.bernoulli(mask_prob);
        inst.mask(i, j) = on;
        if (on) inst.observed.emplace_back(i, j);
      }
    if (!inst.observed.empty()) break;
  }
  if (inst.observed.empty()) throw ConfigError("mc instance: mask came out empty 10 times");

  std::uint64_t d = fnv1a(inst.a);
  for (const auto& [i, j] : inst.observed) {
    d = fnv1a(&i, sizeof(i), d);
    d = fnv1a(&j, sizeof(j), d);
  }
  inst.manifest = {"synthetic-gaussian",
                   "mc m=" + std::to_string(m) + " n=" + std::to_string(n) + " k=" +
                       std::to_string(k) + " mask_prob=" + std::to_string(mask_prob),
                   seed, d};
  return inst;
}

PcaInstance gen_pca_instance(Index n, Index p, std::uint64_t seed) {
  if (p > n) throw ConfigError("pca instance: need p <= n");
  PcaInstance inst;
  inst.n = n;
  inst.p = p;
  Rng data_rng(seed, /*stream=*/303);
  const Matrix a = data_rng.gaussian_matrix(n, p);
  inst.h = a * a.transpose();
  inst.manifest = {"synthetic-gaussian",
                   "pca n=" + std::to_string(n) + " p=" + std::to_string(p), seed,
                   fnv1a(inst.h)};
  return inst;
}

Scalar power_iteration_lmax(const Matrix& h, int steps) {
  const Index n = h.rows();
  Vector v = Vector::Ones(n) / std::sqrt(static_cast<Scalar>(n));
  for (int i = 0; i < steps; ++i) {
    Vector w = h * v;
    const Scalar nw = w.norm();
    if (nw < 1e-300) return 0.0;
    v = w / nw;
  }
  return v.dot(h * v);
}

McProblem::McProblem(McInstance inst)
    : inst_(std::move(inst)), ops_(inst_.m, inst_.n, inst_.k) {
  if (inst_.observed.empty()) throw ConfigError("mc problem: empty mask");
  if (!inst_.a.allFinite()) throw ConfigError("mc problem: data matrix has non-finite entries");
}

std::string McProblem::name() const {
  return "mc(" + std::to_string(inst_.m) + "," + std::to_string(inst_.n) + "," +
         std::to_string(inst_.k) + ")";
}

PcaProblem::PcaProblem(PcaInstance inst)
    : inst_(std::move(inst)), ops_(inst_.n, inst_.p),
      lip_(2.0 * power_iteration_lmax(inst_.h)) {
  if ((inst_.h - inst_.h.transpose()).norm() > 1e-10)
    throw ConfigError("pca problem: H is not symmetric");
}

std::string PcaProblem::name() const {
  return "pca(" + std::to_string(inst_.n) + "," + std::to_string(inst_.p) + ")";
}

SphereRayleighProblem::SphereRayleighProblem(Matrix h)
    : h_(std::move(h)), ops_(h_.rows()), lip_(2.0 * power_iteration_lmax(h_)) {
  if ((h_ - h_.transpose()).norm() > 1e-10)
    throw ConfigError("sphere rayleigh: H is not symmetric");
}

std::string SphereRayleighProblem::name() const {
  return "sphere-rayleigh(" + std::to_string(h_.rows()) + ")";
}

Scalar SphereRayleighProblem::cost(const ManifoldPoint& x) const {
  const Matrix& v = x.part(0);
  return -(v.transpose() * h_ * v)(0, 0);
}

Matrix SphereRayleighProblem::euclidean_grad(const ManifoldPoint& x) const {
  return -2.0 * h_ * x.part(0);
}

}  // namespace riopt
