// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

//! Large-surplus results for general delays with a finite tail integral
//! I(t) = int_t^inf (1 - L(s)) ds.
//!
//! All of these are rigorous two-sided bounds whose gap closes as x grows;
//! the returned `asymptotic` value is the side that becomes exact as x -> inf.

#pragma once

#include "ruinlab/model.hpp"
#include "ruinlab/ruin_time_law.hpp"

namespace ruinlab {

enum class BoundSide { lower, upper };

struct BoundsResult {
    double lower = 0.0;
    double upper = 0.0;
    /// Unclamped values; the ruin-probability upper bound exceeds 1 for small x.
    double raw_lower = 0.0;
    double raw_upper = 0.0;
    double asymptotic = 0.0;
    BoundSide asymptotic_side = BoundSide::upper;
    /// Marks the asymptotic value as exact only in the limit x -> inf.
    bool asymptotic_in_x = true;
};

/// exp(-alpha x + alpha rho I(t)) * exp(-alpha rho I(t + x/rho)) <= psi(x,t)
///     <= exp(-alpha x + alpha rho I(t)), clamped to [0, 1].
BoundsResult ruin_prob_bounds(const QueryPoint& q, const CheckedModel& model);

struct LaplaceBounds {
    double asymptotic = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double beta = 0.0;
    bool asymptotic_in_x = true;
};

/// E[exp(-theta tau_t) | X_t = x] ~ exp(-beta x + (beta rho - theta) I(t) - theta t).
LaplaceBounds ruin_laplace_asymptotic(const QueryPoint& q, double theta, const CheckedModel& model);

/// Large-x ruin-time law: atom exp(-lambda x/rho + lambda I(t)) at t + x/rho and the
/// passage density from effective surplus x - rho I(t), shifted by t + I(t).
/// Throws DomainError when x < rho I(t).
AtomPlusDensity ruin_time_law_asymptotic(const QueryPoint& q, const CheckedModel& model,
                                         SeriesOptions opts = {});

/// Continuous part of ruin_time_law_asymptotic at time T; zero for T <= t + x/rho.
double ruin_density_asymptotic(double T, const QueryPoint& q, const CheckedModel& model,
                               double tol = 1e-12);

/// Sandwich for E[tau_t] when lambda E[Y] < rho; `asymptotic` is the lower side.
BoundsResult mean_ruin_time_bounds(const QueryPoint& q, const CheckedModel& model);

}  // namespace ruinlab
