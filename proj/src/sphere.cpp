#include "riopt/sphere.hpp"

namespace riopt {

SphereOps::SphereOps(Index n) : Manifold(ManifoldId::Sphere), n_(n) {
  if (n < 2) throw ContractViolation("sphere: need n >= 2");
}

Matrix SphereOps::ambient(const ManifoldPoint& x) const {
  require_point(x);
  return x.part(0);
}

Matrix SphereOps::ambient(const TangentVector& v) const {
  if (v.id() != id()) throw ContractViolation("tangent from a different manifold");
  return v.part(0);
}

Scalar SphereOps::feasibility_error(const ManifoldPoint& x) const {
  require_point(x);
  return std::abs(x.part(0).norm() - 1.0);
}

TangentVector SphereOps::project(const ManifoldPoint& x, const Matrix& a) const {
  require_point(x);
  require_ambient_shape(a);
  const Matrix& p = x.part(0);
  const Scalar c = (p.array() * a.array()).sum();
  return TangentVector(id(), x.token(), {a - c * p}, x.shared_parts());
}

ManifoldPoint SphereOps::retract(const ManifoldPoint& x, const TangentVector& eta,
                                 RetractInfo*) const {
  require_tangent(x, eta);
  if (eta.is_zero()) return x;
  Matrix moved = x.part(0) + eta.part(0);
  // <x, eta> = 0 gives |x + eta| >= 1; never degenerate.
  moved /= moved.norm();
  return ManifoldPoint(id(), {std::move(moved)});
}

ManifoldPoint SphereOps::random_point(Rng& rng) const {
  Matrix g = rng.gaussian_matrix(n_, 1);
  while (g.norm() < 1e-12) g = rng.gaussian_matrix(n_, 1);
  g /= g.norm();
  return ManifoldPoint(id(), {std::move(g)});
}

ManifoldPoint SphereOps::point_from(const Vector& v) const {
  return make_point({Matrix(v)});
}

void SphereOps::check_point_factors(const std::vector<Matrix>& parts) const {
  if (parts.size() != 1) throw ContractViolation("sphere: expected one factor");
  if (parts[0].rows() != n_ || parts[0].cols() != 1)
    throw ContractViolation("sphere: factor must be n x 1");
}

}  // namespace riopt
