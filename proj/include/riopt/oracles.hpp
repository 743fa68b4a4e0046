#pragma once

#include "riopt/problems.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace riopt {

enum class BoundKind { Absolute, Relative, None };

inline const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::Absolute: return "absolute";
    case BoundKind::Relative: return "relative";
    case BoundKind::None: return "none";
  }
  return "?";
}

/// Approximate Riemannian gradient together with its certified error
/// descriptor. Absolute: |g - grad f(x)| <= bound_value. Relative:
/// |g - grad f(x)| <= bound_value * |grad f(x)|. None: no certificate (the
/// zeroth-order estimator is biased).
struct OracleOutput {
  TangentVector g;
  BoundKind bound_kind = BoundKind::None;
  Scalar bound_value = 0.0;
  long evals = 0;  // cost/gradient evaluations consumed by this call
};

/// c * (k+1)^(-power), k 0-based. power = 0 gives a constant sequence.
/// Used both for the error decay delta_k and for perturbation radii rho_k.
struct DecaySchedule {
  Scalar coeff = 1.0;
  Scalar power = 0.0;
  Scalar value(long k) const {
    return power == 0.0 ? coeff : coeff * std::pow(static_cast<Scalar>(k + 1), -power);
  }
};

/// Error sequence for the absolute-error oracle: eps_k = nu * delta_k with
/// delta_k = (k+1)^(-p) (PowerDecay) or eps_k = eps (Constant).
struct ErrorSchedule {
  enum class Kind { PowerDecay, Constant };
  Kind kind = Kind::PowerDecay;
  Scalar nu = 0.0;   // PowerDecay magnitude
  Scalar p = 2.1;    // PowerDecay exponent, p >= 1
  Scalar eps = 0.0;  // Constant level

  static ErrorSchedule power_decay(Scalar nu, Scalar p) {
    if (p < 1.0) throw ConfigError("error schedule: power decay needs p >= 1");
    return {Kind::PowerDecay, nu, p, 0.0};
  }
  static ErrorSchedule constant(Scalar eps) {
    if (eps < 0.0) throw ConfigError("error schedule: constant level must be >= 0");
    return {Kind::Constant, 0.0, 0.0, eps};
  }
  Scalar eps_at(long k) const {
    return kind == Kind::PowerDecay ? nu * std::pow(static_cast<Scalar>(k + 1), -p) : eps;
  }
};

/// One gradient evaluation at iteration k. Implementations are pure given
/// (problem, x, k, rng state); solver runs own private rng streams.
class GradientOracle {
 public:
  virtual ~GradientOracle() = default;
  virtual std::string name() const = 0;
  virtual OracleOutput evaluate(const Problem& problem, const ManifoldPoint& x, long k,
                                Rng& rng) const = 0;
};

/// g = grad f(x); bound Absolute(0).
class ExactOracle : public GradientOracle {
 public:
  std::string name() const override { return "exact"; }
  OracleOutput evaluate(const Problem& problem, const ManifoldPoint& x, long k,
                        Rng& rng) const override;
};

/// g = grad f(x) + eps_k * u with u a uniformly random unit tangent
/// direction and eps_k = nu * delta_k from the schedule; the declared bound
/// Absolute(eps_k) holds with equality.
class AdditiveNoiseOracle : public GradientOracle {
 public:
  explicit AdditiveNoiseOracle(ErrorSchedule schedule) : schedule_(schedule) {}
  std::string name() const override { return "additive-noise"; }
  OracleOutput evaluate(const Problem& problem, const ManifoldPoint& x, long k,
                        Rng& rng) const override;
  Scalar eps_at(long k) const { return schedule_.eps_at(k); }

 private:
  ErrorSchedule schedule_;
};

/// g = grad f(x) + nu * |grad f(x)| * u; bound Relative(nu) with equality.
class RelativeNoiseOracle : public GradientOracle {
 public:
  explicit RelativeNoiseOracle(Scalar nu);
  std::string name() const override { return "relative-noise"; }
  OracleOutput evaluate(const Problem& problem, const ManifoldPoint& x, long k,
                        Rng& rng) const override;
  Scalar nu() const { return nu_; }

 private:
  Scalar nu_;
};

/// Finite-difference estimator along a projected Gaussian direction:
/// g = [f(R_x(mu u)) - f(x)] / mu * u. Biased; declares no bound.
class ZerothOrderOracle : public GradientOracle {
 public:
  /// mu <= 0 selects the default smoothing 1e-5 * (1 + |x|_F) per call.
  explicit ZerothOrderOracle(Scalar mu = 0.0) : mu_(mu) {}
  std::string name() const override { return "zeroth-order"; }
  OracleOutput evaluate(const Problem& problem, const ManifoldPoint& x, long k,
                        Rng& rng) const override;

 private:
  Scalar mu_;
};

/// Sharpness-aware perturbation: evaluate the gradient at the ascent point
/// R_x(rho_k grad/|grad|) and pull it back by projection transport. Declares
/// Absolute(L rho_k). A vanishing gradient (norm < 1e-16) short-circuits to
/// g = 0.
class SamOracle : public GradientOracle {
 public:
  SamOracle(DecaySchedule rho, std::optional<Scalar> lipschitz_override = std::nullopt);
  std::string name() const override { return "sam"; }
  OracleOutput evaluate(const Problem& problem, const ManifoldPoint& x, long k,
                        Rng& rng) const override;
  Scalar rho_at(long k) const { return rho_.value(k); }

 private:
  DecaySchedule rho_;
  std::optional<Scalar> lipschitz_override_;
};

/// Extragradient look-ahead: evaluate the gradient at R_x(-rho_k grad f(x))
/// and pull it back by projection transport. Declares Relative(L rho_k)
/// unless an explicit nu is configured (useful for audit-sensitivity runs).
/// rho_k = 0 is the identity transport and returns the exact gradient.
class ExtragradOracle : public GradientOracle {
 public:
  ExtragradOracle(DecaySchedule rho, std::optional<Scalar> lipschitz_override = std::nullopt,
                  std::optional<Scalar> declared_nu = std::nullopt);
  std::string name() const override { return "extragrad"; }
  OracleOutput evaluate(const Problem& problem, const ManifoldPoint& x, long k,
                        Rng& rng) const override;
  Scalar rho_at(long k) const { return rho_.value(k); }

 private:
  DecaySchedule rho_;
  std::optional<Scalar> lipschitz_override_;
  std::optional<Scalar> declared_nu_;
};

}  // namespace riopt
