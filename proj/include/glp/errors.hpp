// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace glp {

// Raised when a configurable cap (universe size, instance count,
// normalization depth) would be exceeded.  Never used to mask a wrong
// answer: callers either stage down to a smaller bound or surface the error.
class ResourceError : public std::runtime_error {
public:
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an annotation is internally inconsistent or does not cover
// the program it is checked against (missing level expression, unknown
// part or set name, argument index out of range).
class AnnotationError : public std::runtime_error {
public:
  explicit AnnotationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace glp
