#pragma once

#include "riopt/rng.hpp"
#include "riopt/types.hpp"

#include <atomic>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace riopt {

/// A point on an embedded manifold. The representation is a list of dense
/// factors whose meaning is fixed by the owning manifold (a single column
/// vector on the sphere, an orthonormal basis on the Grassmannian, the thin
/// SVD factors on the fixed-rank manifold). Every point carries a fresh
/// identity token; tangent vectors remember the token of the point they were
/// created at, and operations that combine tangents compare tokens rather
/// than floating-point representations.
class ManifoldPoint {
 public:
  using Parts = std::vector<Matrix>;

  ManifoldPoint(ManifoldId id, Parts parts)
      : id_(id), parts_(std::make_shared<const Parts>(std::move(parts))), token_(next_token()) {}

  ManifoldId id() const { return id_; }
  std::uint64_t token() const { return token_; }
  int num_parts() const { return static_cast<int>(parts_->size()); }
  const Matrix& part(int i) const { return (*parts_)[static_cast<size_t>(i)]; }
  const std::shared_ptr<const Parts>& shared_parts() const { return parts_; }

 private:
  static std::uint64_t next_token() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
  }

  ManifoldId id_;
  std::shared_ptr<const Parts> parts_;
  std::uint64_t token_;
};

/// An element of the tangent space at a specific point, stored in the same
/// factor family as the point's representation. Keeps a handle on the base
/// point's factors so it can be expanded to ambient form on its own.
class TangentVector {
 public:
  using Parts = std::vector<Matrix>;

  TangentVector(ManifoldId id, std::uint64_t base_token, Parts parts,
                std::shared_ptr<const Parts> base_parts = nullptr)
      : id_(id),
        base_token_(base_token),
        parts_(std::move(parts)),
        base_parts_(std::move(base_parts)) {}

  ManifoldId id() const { return id_; }
  std::uint64_t base_token() const { return base_token_; }
  int num_parts() const { return static_cast<int>(parts_.size()); }
  const Matrix& part(int i) const { return parts_[static_cast<size_t>(i)]; }
  Matrix& part(int i) { return parts_[static_cast<size_t>(i)]; }
  const std::shared_ptr<const Parts>& base_parts() const { return base_parts_; }
  const Matrix& base_part(int i) const {
    if (!base_parts_) throw ContractViolation("tangent vector has no base factors attached");
    return (*base_parts_)[static_cast<size_t>(i)];
  }

  bool same_base(const TangentVector& other) const {
    return base_token_ == other.base_token_ && id_ == other.id_;
  }
  bool based_at(const ManifoldPoint& x) const {
    return base_token_ == x.token() && id_ == x.id();
  }

  bool is_zero() const {
    for (const Matrix& p : parts_)
      if (!(p.array() == 0.0).all()) return false;
    return true;
  }

 private:
  ManifoldId id_;
  std::uint64_t base_token_;
  Parts parts_;
  std::shared_ptr<const Parts> base_parts_;
};

// Tangent arithmetic stays within one tangent space; mixing base points is a
// contract violation.
TangentVector operator+(const TangentVector& a, const TangentVector& b);
TangentVector operator-(const TangentVector& a, const TangentVector& b);
TangentVector operator*(Scalar s, const TangentVector& a);
inline TangentVector operator*(const TangentVector& a, Scalar s) { return s * a; }
inline TangentVector operator-(const TangentVector& a) { return -1.0 * a; }

/// Extra outputs of a retraction. The fixed-rank manifold reports when the
/// rank-k truncation was decided by a near-tie between adjacent singular
/// values.
struct RetractInfo {
  bool rank_truncation_tie = false;
};

/// Contract shared by all supported geometries: induced-metric inner product,
/// tangent projection, projection-based retraction and vector transport.
/// All operations are pure; points and tangents are immutable after
/// construction and safe to share across threads.
class Manifold {
 public:
  virtual ~Manifold() = default;

  ManifoldId id() const { return id_; }
  virtual std::string name() const = 0;

  virtual Index ambient_rows() const = 0;
  virtual Index ambient_cols() const = 0;
  /// Intrinsic dimension of the manifold.
  virtual Index dim() const = 0;

  /// Dense ambient representation of a point (resp. tangent vector).
  virtual Matrix ambient(const ManifoldPoint& x) const = 0;
  virtual Matrix ambient(const TangentVector& v) const = 0;

  /// How far the representation is from satisfying the feasibility equations
  /// (unit norm / orthonormality / factor orthogonality), in Frobenius norm.
  virtual Scalar feasibility_error(const ManifoldPoint& x) const = 0;

  /// Validated construction from raw factors.
  ManifoldPoint make_point(std::vector<Matrix> parts) const;

  /// Orthogonal projection of an ambient matrix onto T_x M.
  virtual TangentVector project(const ManifoldPoint& x, const Matrix& a) const = 0;

  virtual ManifoldPoint retract(const ManifoldPoint& x, const TangentVector& eta,
                                RetractInfo* info = nullptr) const = 0;

  /// Projection transport: carries xi into the tangent space at y. y need not
  /// share xi's base point; that is the purpose of the operation.
  TangentVector transport_to(const ManifoldPoint& y, const TangentVector& xi) const;

  /// Vector transport along eta: tangent at retract(x, eta).
  TangentVector transport(const ManifoldPoint& x, const TangentVector& eta,
                          const TangentVector& xi, RetractInfo* info = nullptr) const;

  /// Riemannian gradient from the Euclidean gradient of the cost; for
  /// embedded submanifolds with the induced metric this is the projection.
  TangentVector egrad_to_rgrad(const ManifoldPoint& x, const Matrix& egrad) const;

  /// Induced (ambient Frobenius) inner product on T_x M.
  Scalar inner(const ManifoldPoint& x, const TangentVector& u, const TangentVector& v) const;
  Scalar norm(const ManifoldPoint& x, const TangentVector& u) const;

  TangentVector zero_tangent(const ManifoldPoint& x) const;

  virtual ManifoldPoint random_point(Rng& rng) const = 0;
  /// Projection of an ambient standard Gaussian sample.
  TangentVector random_tangent(const ManifoldPoint& x, Rng& rng) const;
  /// Uniform direction on the unit sphere of T_x M (projected Gaussian,
  /// normalized; redraws on a vanishing projection, at most ten times).
  TangentVector random_unit_tangent(const ManifoldPoint& x, Rng& rng) const;

 protected:
  explicit Manifold(ManifoldId id) : id_(id) {}

  void require_point(const ManifoldPoint& x) const;
  void require_tangent(const ManifoldPoint& x, const TangentVector& v) const;
  void require_ambient_shape(const Matrix& a) const;

  /// Feasibility tolerance accepted by make_point.
  virtual Scalar point_tolerance() const { return 1e-10; }
  virtual void check_point_factors(const std::vector<Matrix>& parts) const = 0;

 private:
  ManifoldId id_;
};

}  // namespace riopt
