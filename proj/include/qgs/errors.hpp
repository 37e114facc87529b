// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace qgs {

/// Bad input: dimension mismatch, constraint violation, unparseable file.
/// The CLI maps this family to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Well-formed request with no unique answer because the relevant top
/// eigenvalue is tied (e.g. a best response when epsilon1 == epsilon2).
class DegeneracyError : public ValidationError {
 public:
  explicit DegeneracyError(const std::string& what) : ValidationError(what) {}
};

/// An eigenvector without the structure the caller asked to extract
/// (e.g. a best response outside the cos/sin unitary strategy family).
class StructuralError : public ValidationError {
 public:
  explicit StructuralError(const std::string& what) : ValidationError(what) {}
};

/// Numerical failure: an iteration hit its cap without converging.
/// The CLI maps this to exit code 2.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qgs
