#pragma once

#include "riopt/fixed_rank.hpp"
#include "riopt/grassmann.hpp"
#include "riopt/rng.hpp"
#include "riopt/sphere.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace riopt {

/// Where a dataset came from and a digest of its content, so a run can be
/// reproduced bit-exactly from its manifest.
struct DatasetManifest {
  std::string source;       // "synthetic-gaussian" or "mnist-idx"
  std::string params;       // generation parameters / file path, human readable
  std::uint64_t seed = 0;
  std::uint64_t digest = 0;  // FNV-1a over the canonical content bytes
};

/// FNV-1a digest helpers used for dataset and config fingerprints.
std::uint64_t fnv1a(const void* data, size_t len, std::uint64_t h = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a(const Matrix& m, std::uint64_t h = 0xcbf29ce484222325ULL);
std::string digest_hex(std::uint64_t digest);

/// Matrix completion instance: recover a rank-k matrix from the entries of A
/// observed on the mask.
struct McInstance {
  Matrix a;                                  // m x n data matrix
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> mask;
  Index m = 0, n = 0, k = 0;
  std::vector<std::pair<Index, Index>> observed;  // (i, j) with mask true
  DatasetManifest manifest;
};

/// PCA instance: H symmetric positive semidefinite, subspace dimension p.
struct PcaInstance {
  Matrix h;  // n x n
  Index n = 0, p = 0;
  DatasetManifest manifest;
};

// Costs and Euclidean gradients as free functions. The matrix-completion cost
// reads only the masked entries of the factored point.
Scalar mc_cost(const McInstance& inst, const ManifoldPoint& x);
Matrix mc_egrad(const McInstance& inst, const ManifoldPoint& x);
Scalar pca_cost(const PcaInstance& inst, const ManifoldPoint& x);
Matrix pca_egrad(const PcaInstance& inst, const ManifoldPoint& x);

/// A = G1 G2^T with i.i.d. standard Gaussian factors (rank-k ground truth),
/// mask i.i.d. Bernoulli(mask_prob). Fully determined by the seed. Regenerates
/// the mask with an incremented sub-seed if it comes out empty (at most ten
/// tries).
McInstance gen_mc_instance(Index m, Index n, Index k, Scalar mask_prob, std::uint64_t seed);

/// H = A A^T with A an n x p i.i.d. Gaussian matrix; deterministic from seed.
PcaInstance gen_pca_instance(Index n, Index p, std::uint64_t seed);

/// Largest eigenvalue estimate by 100 power-iteration steps (deterministic
/// start vector).
Scalar power_iteration_lmax(const Matrix& h, int steps = 100);

/// Cost functions the solvers minimize. Implementations provide the Euclidean
/// gradient; the Riemannian gradient is its tangent projection.
class Problem {
 public:
  virtual ~Problem() = default;
  virtual const Manifold& manifold() const = 0;
  virtual std::string name() const = 0;
  virtual Scalar cost(const ManifoldPoint& x) const = 0;
  virtual Matrix euclidean_grad(const ManifoldPoint& x) const = 0;
  TangentVector riemannian_grad(const ManifoldPoint& x) const {
    return manifold().egrad_to_rgrad(x, euclidean_grad(x));
  }
  /// Retraction-smoothness constant used by schedules and audits.
  virtual Scalar lipschitz_bound() const = 0;
};

/// f(X) = sum over observed (i,j) of (X_ij - A_ij)^2 on the fixed-rank
/// manifold. The cost Hessian is 2 P_mask, so L = 2.
class McProblem : public Problem {
 public:
  explicit McProblem(McInstance inst);
  const Manifold& manifold() const override { return ops_; }
  std::string name() const override;
  Scalar cost(const ManifoldPoint& x) const override { return mc_cost(inst_, x); }
  Matrix euclidean_grad(const ManifoldPoint& x) const override { return mc_egrad(inst_, x); }
  Scalar lipschitz_bound() const override { return 2.0; }
  const McInstance& instance() const { return inst_; }

 private:
  McInstance inst_;
  FixedRankOps ops_;
};

/// f(X) = -1/2 tr(X^T H X) on the Grassmannian; L = 2 lambda_max(H).
class PcaProblem : public Problem {
 public:
  explicit PcaProblem(PcaInstance inst);
  const Manifold& manifold() const override { return ops_; }
  std::string name() const override;
  Scalar cost(const ManifoldPoint& x) const override { return pca_cost(inst_, x); }
  Matrix euclidean_grad(const ManifoldPoint& x) const override { return pca_egrad(inst_, x); }
  Scalar lipschitz_bound() const override { return lip_; }
  const PcaInstance& instance() const { return inst_; }

 private:
  PcaInstance inst_;
  GrassmannOps ops_;
  Scalar lip_;
};

/// f(x) = -x^T H x on the unit sphere; the minimizer is a top eigenvector of
/// H and the minimum is -lambda_max(H). Small test geometry.
class SphereRayleighProblem : public Problem {
 public:
  explicit SphereRayleighProblem(Matrix h);
  const Manifold& manifold() const override { return ops_; }
  std::string name() const override;
  Scalar cost(const ManifoldPoint& x) const override;
  Matrix euclidean_grad(const ManifoldPoint& x) const override;
  Scalar lipschitz_bound() const override { return lip_; }
  const Matrix& h() const { return h_; }

 private:
  Matrix h_;
  SphereOps ops_;
  Scalar lip_;
};

}  // namespace riopt
