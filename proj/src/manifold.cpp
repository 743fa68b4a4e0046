#include "riopt/manifold.hpp"

#include <cmath>

namespace riopt {

namespace {

void require_same_base(const TangentVector& a, const TangentVector& b) {
  if (!a.same_base(b))
    throw ContractViolation("tangent vectors belong to different base points");
}

}  // namespace

TangentVector operator+(const TangentVector& a, const TangentVector& b) {
  require_same_base(a, b);
  std::vector<Matrix> parts;
  parts.reserve(static_cast<size_t>(a.num_parts()));
  for (int i = 0; i < a.num_parts(); ++i) parts.push_back(a.part(i) + b.part(i));
  return TangentVector(a.id(), a.base_token(), std::move(parts), a.base_parts());
}

TangentVector operator-(const TangentVector& a, const TangentVector& b) {
  require_same_base(a, b);
  std::vector<Matrix> parts;
  parts.reserve(static_cast<size_t>(a.num_parts()));
  for (int i = 0; i < a.num_parts(); ++i) parts.push_back(a.part(i) - b.part(i));
  return TangentVector(a.id(), a.base_token(), std::move(parts), a.base_parts());
}

TangentVector operator*(Scalar s, const TangentVector& a) {
  std::vector<Matrix> parts;
  parts.reserve(static_cast<size_t>(a.num_parts()));
  for (int i = 0; i < a.num_parts(); ++i) parts.push_back(s * a.part(i));
  return TangentVector(a.id(), a.base_token(), std::move(parts), a.base_parts());
}

ManifoldPoint Manifold::make_point(std::vector<Matrix> parts) const {
  check_point_factors(parts);
  ManifoldPoint x(id(), std::move(parts));
  const Scalar err = feasibility_error(x);
  if (!(err <= point_tolerance()))
    throw ContractViolation(name() + ": representation infeasible (error " +
                            std::to_string(err) + ")");
  return x;
}

TangentVector Manifold::transport_to(const ManifoldPoint& y, const TangentVector& xi) const {
  require_point(y);
  if (xi.id() != id()) throw ContractViolation("tangent from a different manifold");
  return project(y, ambient(xi));
}

TangentVector Manifold::transport(const ManifoldPoint& x, const TangentVector& eta,
                                  const TangentVector& xi, RetractInfo* info) const {
  require_tangent(x, eta);
  require_tangent(x, xi);
  if (eta.is_zero()) return xi;  // T_0 is the identity
  const ManifoldPoint y = retract(x, eta, info);
  return transport_to(y, xi);
}

TangentVector Manifold::egrad_to_rgrad(const ManifoldPoint& x, const Matrix& egrad) const {
  return project(x, egrad);
}

Scalar Manifold::inner(const ManifoldPoint& x, const TangentVector& u,
                       const TangentVector& v) const {
  require_tangent(x, u);
  require_tangent(x, v);
  // Factor-wise Frobenius sum; equals the ambient inner product because the
  // cross terms vanish under the factor orthogonality constraints.
  Scalar s = 0.0;
  for (int i = 0; i < u.num_parts(); ++i)
    s += (u.part(i).array() * v.part(i).array()).sum();
  return s;
}

Scalar Manifold::norm(const ManifoldPoint& x, const TangentVector& u) const {
  return std::sqrt(inner(x, u, u));
}

TangentVector Manifold::zero_tangent(const ManifoldPoint& x) const {
  require_point(x);
  TangentVector probe = project(x, Matrix::Zero(ambient_rows(), ambient_cols()));
  for (int i = 0; i < probe.num_parts(); ++i) probe.part(i).setZero();
  return probe;
}

TangentVector Manifold::random_tangent(const ManifoldPoint& x, Rng& rng) const {
  require_point(x);
  return project(x, rng.gaussian_matrix(ambient_rows(), ambient_cols()));
}

TangentVector Manifold::random_unit_tangent(const ManifoldPoint& x, Rng& rng) const {
  for (int attempt = 0; attempt < 10; ++attempt) {
    TangentVector v = random_tangent(x, rng);
    const Scalar n = norm(x, v);
    if (n > 1e-12) return (1.0 / n) * v;
  }
  throw SingularityError(name() + ": projected Gaussian sample vanished 10 times");
}

void Manifold::require_point(const ManifoldPoint& x) const {
  if (x.id() != id()) throw ContractViolation("point from a different manifold");
}

void Manifold::require_tangent(const ManifoldPoint& x, const TangentVector& v) const {
  require_point(x);
  if (!v.based_at(x))
    throw ContractViolation("tangent vector is not based at the given point");
}

void Manifold::require_ambient_shape(const Matrix& a) const {
  if (a.rows() != ambient_rows() || a.cols() != ambient_cols())
    throw ContractViolation(name() + ": ambient shape mismatch: got " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            ", want " + std::to_string(ambient_rows()) + "x" +
                            std::to_string(ambient_cols()));
}

}  // namespace riopt
