#include "riopt/grassmann.hpp"

#include <Eigen/QR>

namespace riopt {

GrassmannOps::GrassmannOps(Index n, Index p) : Manifold(ManifoldId::Grassmann), n_(n), p_(p) {
  if (p < 1 || p >= n) throw ContractViolation("grassmann: need 1 <= p < n");
}

Matrix GrassmannOps::ambient(const ManifoldPoint& x) const {
  require_point(x);
  return x.part(0);
}

Matrix GrassmannOps::ambient(const TangentVector& v) const {
  if (v.id() != id()) throw ContractViolation("tangent from a different manifold");
  return v.part(0);
}

Scalar GrassmannOps::feasibility_error(const ManifoldPoint& x) const {
  require_point(x);
  const Matrix& b = x.part(0);
  return (b.transpose() * b - Matrix::Identity(p_, p_)).norm();
}

TangentVector GrassmannOps::project(const ManifoldPoint& x, const Matrix& a) const {
  require_point(x);
  require_ambient_shape(a);
  const Matrix& basis = x.part(0);
  return TangentVector(id(), x.token(), {a - basis * (basis.transpose() * a)},
                       x.shared_parts());
}

Matrix GrassmannOps::qr_canonical(const Matrix& a) {
  Eigen::HouseholderQR<Matrix> qr(a);
  const Index p = a.cols();
  Matrix q = qr.householderQ() * Matrix::Identity(a.rows(), p);
  const Matrix r = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
  const Scalar scale = std::max(1.0, a.norm());
  for (Index j = 0; j < p; ++j) {
    if (std::abs(r(j, j)) <= 1e-14 * scale)
      throw SingularityError("qr retraction: rank-deficient input (R(" +
                             std::to_string(j) + "," + std::to_string(j) + ") ~ 0)");
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

ManifoldPoint GrassmannOps::retract(const ManifoldPoint& x, const TangentVector& eta,
                                    RetractInfo*) const {
  require_tangent(x, eta);
  if (eta.is_zero()) return x;
  return ManifoldPoint(id(), {qr_canonical(x.part(0) + eta.part(0))});
}

ManifoldPoint GrassmannOps::random_point(Rng& rng) const {
  return ManifoldPoint(id(), {qr_canonical(rng.gaussian_matrix(n_, p_))});
}

void GrassmannOps::check_point_factors(const std::vector<Matrix>& parts) const {
  if (parts.size() != 1) throw ContractViolation("grassmann: expected one factor");
  if (parts[0].rows() != n_ || parts[0].cols() != p_)
    throw ContractViolation("grassmann: factor must be n x p");
}

}  // namespace riopt
