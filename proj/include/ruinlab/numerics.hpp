// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

//! Thin quadrature front end over Boost.Math's adaptive Gauss-Kronrod rules.

#pragma once

#include <functional>

namespace ruinlab::numerics {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Adaptive G30K61 on [a, b]; b may be +infinity.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-12, unsigned max_depth = 18);

}  // namespace ruinlab::numerics
