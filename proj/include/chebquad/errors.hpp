#pragma once

#include <stdexcept>

namespace chebquad {

/// A numerical procedure failed to deliver a trustworthy result (Newton
/// non-convergence, oracle disagreement, unreachable asymptotic regime).
/// Precondition violations use std::invalid_argument / std::domain_error.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chebquad
