#pragma once

#include "riopt/manifold.hpp"

namespace riopt {

/// Unit sphere S^{n-1} embedded in R^n. Points and tangents are stored as a
/// single n x 1 factor. Retraction is metric projection (normalization),
/// transport is tangent projection at the target.
class SphereOps : public Manifold {
 public:
  explicit SphereOps(Index n);

  std::string name() const override { return "sphere(" + std::to_string(n_) + ")"; }
  Index ambient_rows() const override { return n_; }
  Index ambient_cols() const override { return 1; }
  Index dim() const override { return n_ - 1; }

  Matrix ambient(const ManifoldPoint& x) const override;
  Matrix ambient(const TangentVector& v) const override;
  Scalar feasibility_error(const ManifoldPoint& x) const override;

  TangentVector project(const ManifoldPoint& x, const Matrix& a) const override;
  ManifoldPoint retract(const ManifoldPoint& x, const TangentVector& eta,
                        RetractInfo* info = nullptr) const override;
  ManifoldPoint random_point(Rng& rng) const override;

  ManifoldPoint point_from(const Vector& v) const;

 protected:
  Scalar point_tolerance() const override { return 1e-12; }
  void check_point_factors(const std::vector<Matrix>& parts) const override;

 private:
  Index n_;
};

}  // namespace riopt
