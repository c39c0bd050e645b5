// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace hypercheck {

/// Bad argument (dimension mismatch, out-of-range index or order, ...).
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Division by a jet with zero constant term, sqrt of a non-positive one.
struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Degenerate metric: the chart fails the immersion condition at a point.
struct ImmersionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid model specification (violated invariants, unknown names).
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested data the model does not provide (no closed form, non-compact).
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A check was invoked on a point/model violating its precondition.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hypercheck
