#include "riopt/fixed_rank.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <functional>

namespace riopt {

FixedRankOps::FixedRankOps(Index m, Index n, Index k)
    : Manifold(ManifoldId::FixedRank), m_(m), n_(n), k_(k) {
  if (k < 1 || k > std::min(m, n)) throw ContractViolation("fixed-rank: need 1 <= k <= min(m,n)");
}

Matrix FixedRankOps::ambient(const ManifoldPoint& x) const {
  require_point(x);
  return x.part(0) * x.part(1).col(0).asDiagonal() * x.part(2).transpose();
}

Matrix FixedRankOps::ambient(const TangentVector& v) const {
  if (v.id() != id()) throw ContractViolation("tangent from a different manifold");
  const Matrix& u = v.base_part(0);
  const Matrix& base_v = v.base_part(2);
  return u * v.part(0) * base_v.transpose() + v.part(1) * base_v.transpose() +
         u * v.part(2).transpose();
}

Scalar FixedRankOps::feasibility_error(const ManifoldPoint& x) const {
  require_point(x);
  const Matrix& u = x.part(0);
  const Matrix& v = x.part(2);
  const Scalar eu = (u.transpose() * u - Matrix::Identity(k_, k_)).norm();
  const Scalar ev = (v.transpose() * v - Matrix::Identity(k_, k_)).norm();
  return std::max(eu, ev);
}

TangentVector FixedRankOps::project(const ManifoldPoint& x, const Matrix& a) const {
  require_point(x);
  require_ambient_shape(a);
  const Matrix& u = x.part(0);
  const Matrix& v = x.part(2);
  const Matrix av = a * v;
  const Matrix atu = a.transpose() * u;
  Matrix mid = u.transpose() * av;
  Matrix up = av - u * mid;
  Matrix vp = atu - v * mid.transpose();
  return TangentVector(id(), x.token(), {std::move(mid), std::move(up), std::move(vp)},
                       x.shared_parts());
}

ManifoldPoint FixedRankOps::retract(const ManifoldPoint& x, const TangentVector& eta,
                                    RetractInfo* info) const {
  require_tangent(x, eta);
  if (eta.is_zero()) return x;

  const Matrix& u = x.part(0);
  const Vector s = x.part(1).col(0);
  const Matrix& v = x.part(2);
  const Matrix& mid = eta.part(0);
  const Matrix& up = eta.part(1);
  const Matrix& vp = eta.part(2);

  // X + eta = [U Qu] K [V Qv]^T with Up = Qu Ru, Vp = Qv Rv and
  // K = [diag(s) + M, Rv^T; Ru, 0] of size 2k x 2k.
  Eigen::HouseholderQR<Matrix> qru(up), qrv(vp);
  const Matrix qu = qru.householderQ() * Matrix::Identity(m_, k_);
  const Matrix ru = qru.matrixQR().topRows(k_).triangularView<Eigen::Upper>();
  const Matrix qv = qrv.householderQ() * Matrix::Identity(n_, k_);
  const Matrix rv = qrv.matrixQR().topRows(k_).triangularView<Eigen::Upper>();

  Matrix core = Matrix::Zero(2 * k_, 2 * k_);
  core.topLeftCorner(k_, k_) = mid;
  core.topLeftCorner(k_, k_).diagonal() += s;
  core.topRightCorner(k_, k_) = rv.transpose();
  core.bottomLeftCorner(k_, k_) = ru;

  Eigen::JacobiSVD<Matrix> svd(core, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sig = svd.singularValues();
  if (sig(k_ - 1) < 1e-14)
    throw SingularityError(name() + ": rank collapse in retraction (sigma_k = " +
                           std::to_string(sig(k_ - 1)) + ")");
  if (info && sig(k_ - 1) - sig(k_) <= 1e-12) info->rank_truncation_tie = true;

  Matrix left(m_, 2 * k_), right(n_, 2 * k_);
  left << u, qu;
  right << v, qv;
  Matrix nu = left * svd.matrixU().leftCols(k_);
  Matrix nv = right * svd.matrixV().leftCols(k_);
  Matrix ns = sig.head(k_);
  return ManifoldPoint(id(), {std::move(nu), std::move(ns), std::move(nv)});
}

ManifoldPoint FixedRankOps::random_point(Rng& rng) const {
  Eigen::HouseholderQR<Matrix> qru(rng.gaussian_matrix(m_, k_));
  Eigen::HouseholderQR<Matrix> qrv(rng.gaussian_matrix(n_, k_));
  Matrix u = qru.householderQ() * Matrix::Identity(m_, k_);
  Matrix v = qrv.householderQ() * Matrix::Identity(n_, k_);
  Vector s(k_);
  for (Index i = 0; i < k_; ++i) s(i) = 1.0 + rng.uniform01();
  std::sort(s.data(), s.data() + k_, std::greater<Scalar>());
  return ManifoldPoint(id(), {std::move(u), Matrix(s), std::move(v)});
}

Scalar FixedRankOps::entry(const ManifoldPoint& x, Index i, Index j) {
  const Matrix& u = x.part(0);
  const Matrix& s = x.part(1);
  const Matrix& v = x.part(2);
  Scalar acc = 0.0;
  for (Index r = 0; r < s.rows(); ++r) acc += u(i, r) * s(r, 0) * v(j, r);
  return acc;
}

void FixedRankOps::check_point_factors(const std::vector<Matrix>& parts) const {
  if (parts.size() != 3) throw ContractViolation("fixed-rank: expected factors {U, s, V}");
  if (parts[0].rows() != m_ || parts[0].cols() != k_)
    throw ContractViolation("fixed-rank: U must be m x k");
  if (parts[1].rows() != k_ || parts[1].cols() != 1)
    throw ContractViolation("fixed-rank: s must be k x 1");
  if (parts[2].rows() != n_ || parts[2].cols() != k_)
    throw ContractViolation("fixed-rank: V must be n x k");
  if (parts[1].col(0).minCoeff() <= 0.0)
    throw ContractViolation("fixed-rank: singular values must be positive");
}

}  // namespace riopt
