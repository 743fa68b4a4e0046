#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace riopt {

using Scalar = double;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class ManifoldId { Sphere, Grassmann, FixedRank };

inline const char* to_string(ManifoldId id) {
  switch (id) {
    case ManifoldId::Sphere: return "sphere";
    case ManifoldId::Grassmann: return "grassmann";
    case ManifoldId::FixedRank: return "fixed-rank";
  }
  return "?";
}

// Mixing tangents from different base points, shape mismatches, and similar
// caller errors. These are bugs in the calling code, not runtime conditions.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// Geometric degeneracies surfaced by the manifolds (rank collapse under the
// fixed-rank retraction, rank-deficient QR input).
class SingularityError : public std::runtime_error {
 public:
  explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed binary/text inputs. Carries the byte offset where parsing failed
// (or -1 when no offset applies).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long long offset = -1)
      : std::runtime_error(what), offset_(offset) {}
  long long offset() const { return offset_; }

 private:
  long long offset_;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace riopt
