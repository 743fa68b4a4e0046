#include "riopt/oracles.hpp"

namespace riopt {

OracleOutput ExactOracle::evaluate(const Problem& problem, const ManifoldPoint& x, long,
                                   Rng&) const {
  return {problem.riemannian_grad(x), BoundKind::Absolute, 0.0, 1};
}

OracleOutput AdditiveNoiseOracle::evaluate(const Problem& problem, const ManifoldPoint& x,
                                           long k, Rng& rng) const {
  const Manifold& m = problem.manifold();
  TangentVector grad = problem.riemannian_grad(x);
  const TangentVector u = m.random_unit_tangent(x, rng);
  const Scalar eps = eps_at(k);
  return {grad + eps * u, BoundKind::Absolute, eps, 1};
}

RelativeNoiseOracle::RelativeNoiseOracle(Scalar nu) : nu_(nu) {
  if (!(nu >= 0.0 && nu < 1.0)) throw ConfigError("relative-noise oracle: need nu in [0, 1)");
}

OracleOutput RelativeNoiseOracle::evaluate(const Problem& problem, const ManifoldPoint& x,
                                           long, Rng& rng) const {
  const Manifold& m = problem.manifold();
  TangentVector grad = problem.riemannian_grad(x);
  const Scalar gn = m.norm(x, grad);
  if (gn == 0.0) return {std::move(grad), BoundKind::Relative, nu_, 1};
  const TangentVector u = m.random_unit_tangent(x, rng);
  return {grad + (nu_ * gn) * u, BoundKind::Relative, nu_, 1};
}

OracleOutput ZerothOrderOracle::evaluate(const Problem& problem, const ManifoldPoint& x,
                                         long, Rng& rng) const {
  const Manifold& m = problem.manifold();
  const Scalar mu = mu_ > 0.0 ? mu_ : 1e-5 * (1.0 + m.ambient(x).norm());
  const TangentVector u = m.random_tangent(x, rng);
  const Scalar f0 = problem.cost(x);
  const Scalar f1 = problem.cost(m.retract(x, mu * u));
  return {((f1 - f0) / mu) * u, BoundKind::None, 0.0, 2};
}

SamOracle::SamOracle(DecaySchedule rho, std::optional<Scalar> lipschitz_override)
    : rho_(rho), lipschitz_override_(lipschitz_override) {
  if (rho_.coeff <= 0.0) throw ConfigError("sam oracle: need rho > 0");
}

OracleOutput SamOracle::evaluate(const Problem& problem, const ManifoldPoint& x, long k,
                                 Rng&) const {
  const Manifold& m = problem.manifold();
  const Scalar rho = rho_.value(k);
  const Scalar lip = lipschitz_override_.value_or(problem.lipschitz_bound());
  TangentVector grad = problem.riemannian_grad(x);
  const Scalar gn = m.norm(x, grad);
  if (gn < 1e-16) return {m.zero_tangent(x), BoundKind::Absolute, lip * rho, 1};

  const ManifoldPoint ascent = m.retract(x, (rho / gn) * grad);
  const TangentVector grad_ascent = problem.riemannian_grad(ascent);
  return {m.transport_to(x, grad_ascent), BoundKind::Absolute, lip * rho, 2};
}

ExtragradOracle::ExtragradOracle(DecaySchedule rho, std::optional<Scalar> lipschitz_override,
                                 std::optional<Scalar> declared_nu)
    : rho_(rho), lipschitz_override_(lipschitz_override), declared_nu_(declared_nu) {
  if (rho_.coeff < 0.0) throw ConfigError("extragrad oracle: need rho >= 0");
}

OracleOutput ExtragradOracle::evaluate(const Problem& problem, const ManifoldPoint& x, long k,
                                       Rng&) const {
  const Manifold& m = problem.manifold();
  const Scalar rho = rho_.value(k);
  const Scalar lip = lipschitz_override_.value_or(problem.lipschitz_bound());
  const Scalar nu = declared_nu_.value_or(lip * rho);
  TangentVector grad = problem.riemannian_grad(x);
  if (rho == 0.0) return {std::move(grad), BoundKind::Relative, nu, 1};

  const ManifoldPoint ahead = m.retract(x, (-rho) * grad);
  const TangentVector grad_ahead = problem.riemannian_grad(ahead);
  return {m.transport_to(x, grad_ahead), BoundKind::Relative, nu, 2};
}

}  // namespace riopt
