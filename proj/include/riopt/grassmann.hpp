#pragma once

#include "riopt/manifold.hpp"

namespace riopt {

/// Grassmannian Gr(n, p): p-dimensional subspaces of R^n represented by an
/// n x p matrix with orthonormal columns. Retraction takes the Q factor of
/// the thin QR decomposition with the sign convention diag(R) > 0, which
/// makes it deterministic across runs.
class GrassmannOps : public Manifold {
 public:
  GrassmannOps(Index n, Index p);

  std::string name() const override {
    return "grassmann(" + std::to_string(n_) + "," + std::to_string(p_) + ")";
  }
  Index ambient_rows() const override { return n_; }
  Index ambient_cols() const override { return p_; }
  Index dim() const override { return p_ * (n_ - p_); }

  Matrix ambient(const ManifoldPoint& x) const override;
  Matrix ambient(const TangentVector& v) const override;
  Scalar feasibility_error(const ManifoldPoint& x) const override;

  TangentVector project(const ManifoldPoint& x, const Matrix& a) const override;
  ManifoldPoint retract(const ManifoldPoint& x, const TangentVector& eta,
                        RetractInfo* info = nullptr) const override;
  ManifoldPoint random_point(Rng& rng) const override;

  /// Q factor of the thin QR decomposition with diag(R) > 0. Throws
  /// SingularityError when the input is numerically rank deficient.
  static Matrix qr_canonical(const Matrix& a);

 protected:
  void check_point_factors(const std::vector<Matrix>& parts) const override;

 private:
  Index n_, p_;
};

}  // namespace riopt
