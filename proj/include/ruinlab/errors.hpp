// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ruinlab {

/// Malformed or out-of-range model parameters and configuration.
class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A well-formed request outside the region where a result exists,
/// e.g. ruin quantities that need the net condition.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative method ran out of iterations.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ruinlab
