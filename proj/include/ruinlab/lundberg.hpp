// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

//! Adjustment coefficients of the dual risk model.
//!
//! alpha is the positive root of  rho*a + lambda*(E[e^{-aY}] - 1) = 0 and
//! beta(theta) the positive root of rho*b + lambda*(E[e^{-bY}] - 1) - theta = 0.
//! Both left-hand sides are convex in the unknown, so a bracket that starts at
//! the minimiser (or at 0 when theta > 0) always holds exactly one sign change.

#pragma once

#include "ruinlab/model.hpp"

namespace ruinlab {

struct LundbergRoot {
    double value = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

/// Positive root of rho*b + intensity*(LT(b) - 1) - theta = 0.
/// With theta = 0 the trivial root 0 is skipped; that case needs
/// intensity * E[Y] > rho and throws DomainError otherwise.
LundbergRoot solve_lundberg(double rho, double intensity, const ProfitDistribution& profit,
                            double theta);

LundbergRoot solve_alpha(const ModelParams& params, const ProfitDistribution& profit);
LundbergRoot solve_beta(const ModelParams& params, const ProfitDistribution& profit,
                        double theta);

inline LundbergRoot solve_alpha(const CheckedModel& m) { return solve_alpha(m.params(), m.profit()); }
inline LundbergRoot solve_beta(const CheckedModel& m, double theta)
{
    return solve_beta(m.params(), m.profit(), theta);
}

/// beta(theta) from its Lagrange series
///   (theta+lambda)/rho - sum_n (lambda/rho)^n / n! * int y^{n-1} e^{-(lambda+theta) y / rho} dP^{*n}(y),
/// stopped once a term falls below `tol`. Throws ConvergenceError after 200 terms.
double beta_series(const ModelParams& params, const ProfitDistribution& profit, double theta,
                   double tol = 1e-12);

}  // namespace ruinlab
