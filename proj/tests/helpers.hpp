#pragma once

#include "riopt/problems.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <vector>

// Independent brute-force oracles used to freeze expected values. These stay
// deliberately naive and never share code with the library paths they check.
namespace oracle {

using riopt::Index;
using riopt::Matrix;
using riopt::Scalar;
using riopt::Vector;

// Dense tangent projection on the sphere: (I - x x^T) a.
inline Matrix sphere_project_dense(const Matrix& x, const Matrix& a) {
  const Matrix p = Matrix::Identity(x.rows(), x.rows()) - x * x.transpose();
  return p * a;
}

// Dense tangent projection on the Grassmannian: (I - X X^T) A.
inline Matrix grassmann_project_dense(const Matrix& basis, const Matrix& a) {
  const Matrix p =
      Matrix::Identity(basis.rows(), basis.rows()) - basis * basis.transpose();
  return p * a;
}

// Dense tangent projection on the fixed-rank manifold:
// P_U A P_V + (I - P_U) A P_V + P_U A (I - P_V).
inline Matrix fixed_rank_project_dense(const Matrix& u, const Matrix& v, const Matrix& a) {
  const Matrix pu = u * u.transpose();
  const Matrix pv = v * v.transpose();
  const Matrix iu = Matrix::Identity(u.rows(), u.rows()) - pu;
  const Matrix iv = Matrix::Identity(v.rows(), v.rows()) - pv;
  return pu * a * pv + iu * a * pv + pu * a * iv;
}

// Central finite difference of f(retract(x, h eta)) at h = 0.
inline Scalar directional_derivative_fd(const riopt::Problem& problem,
                                        const riopt::ManifoldPoint& x,
                                        const riopt::TangentVector& eta, Scalar h) {
  const riopt::Manifold& m = problem.manifold();
  const Scalar fp = problem.cost(m.retract(x, h * eta));
  const Scalar fm = problem.cost(m.retract(x, (-h) * eta));
  return (fp - fm) / (2.0 * h);
}

// Least-squares slope of log(err) against log(h).
inline Scalar log_log_slope(const std::vector<Scalar>& hs, const std::vector<Scalar>& errs) {
  const size_t n = hs.size();
  Scalar mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += std::log(hs[i]);
    my += std::log(errs[i]);
  }
  mx /= static_cast<Scalar>(n);
  my /= static_cast<Scalar>(n);
  Scalar sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Scalar dx = std::log(hs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(errs[i]) - my);
  }
  return sxy / sxx;
}

// Sum of the p largest eigenvalues via a dense symmetric eigensolver.
inline Scalar top_eigenvalue_sum(const Matrix& h, Index p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Vector evs = es.eigenvalues();  // ascending
  Scalar sum = 0.0;
  for (Index i = 0; i < p; ++i) sum += evs(evs.size() - 1 - i);
  return sum;
}

inline Scalar lambda_max(const Matrix& h) { return top_eigenvalue_sum(h, 1); }

// Dense masked least-squares cost for matrix completion.
inline Scalar mc_cost_dense(const Matrix& a,
                            const Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>& mask,
                            const Matrix& x_full) {
  Scalar acc = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (mask(i, j)) {
        const Scalar d = x_full(i, j) - a(i, j);
        acc += d * d;
      }
  return acc;
}

inline riopt::ManifoldPoint fixed_rank_point_from_dense(const riopt::FixedRankOps& ops,
                                                        const Matrix& x_full) {
  Eigen::JacobiSVD<Matrix> svd(x_full, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Index k = ops.rank();
  return ops.make_point({svd.matrixU().leftCols(k), Matrix(svd.singularValues().head(k)),
                         svd.matrixV().leftCols(k)});
}

}  // namespace oracle
