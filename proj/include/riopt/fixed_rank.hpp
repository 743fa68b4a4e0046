#pragma once

#include "riopt/manifold.hpp"

namespace riopt {

/// Manifold of m x n matrices of exact rank k, embedded in R^{m x n}.
/// A point stores the thin SVD factors {U (m x k, orthonormal), s (k x 1,
/// positive), V (n x k, orthonormal)} of X = U diag(s) V^T. A tangent vector
/// stores {M (k x k), Up (m x k, U^T Up = 0), Vp (n x k, V^T Vp = 0)}
/// representing U M V^T + Up V^T + U Vp^T.
///
/// The retraction is metric projection: the rank-k truncated SVD of X + eta,
/// assembled from a 2k x 2k core so the m x n matrix is never materialized.
class FixedRankOps : public Manifold {
 public:
  FixedRankOps(Index m, Index n, Index k);

  std::string name() const override {
    return "fixed-rank(" + std::to_string(m_) + "," + std::to_string(n_) + "," +
           std::to_string(k_) + ")";
  }
  Index ambient_rows() const override { return m_; }
  Index ambient_cols() const override { return n_; }
  Index dim() const override { return k_ * (m_ + n_ - k_); }
  Index rank() const { return k_; }

  Matrix ambient(const ManifoldPoint& x) const override;
  Matrix ambient(const TangentVector& v) const override;
  Scalar feasibility_error(const ManifoldPoint& x) const override;

  TangentVector project(const ManifoldPoint& x, const Matrix& a) const override;
  ManifoldPoint retract(const ManifoldPoint& x, const TangentVector& eta,
                        RetractInfo* info = nullptr) const override;
  ManifoldPoint random_point(Rng& rng) const override;

  /// Entry (i, j) of the represented matrix, without assembling it.
  static Scalar entry(const ManifoldPoint& x, Index i, Index j);

 protected:
  void check_point_factors(const std::vector<Matrix>& parts) const override;

 private:
  Index m_, n_, k_;
};

}  // namespace riopt
