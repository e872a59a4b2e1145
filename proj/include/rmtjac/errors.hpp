#pragma once

#include <stdexcept>
#include <string>

namespace rmtjac {

/// Caller violated a documented precondition (bad dimensions, out-of-range
/// parameters). The CLI maps this to exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical result broke an algebraic structure it must carry
/// (unitarity, quaternion form, Kramers pairing, Hermiticity).
class StructureError : public std::runtime_error {
 public:
  explicit StructureError(const std::string& what) : std::runtime_error(what) {}
};

/// A measure-zero singular event (rank-deficient Ginibre draw, PSD floor hit).
/// Samplers catch this and redraw.
class SingularityError : public std::runtime_error {
 public:
  explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rmtjac
