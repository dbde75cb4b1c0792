// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

//! Closed forms for delays with bounded support [0, ell].
//!
//! Before ell no profit can be realized under a constant delay, so the surplus
//! simply drains. Once ell is reached the process is the undelayed dual model.
//! Three regions of the (x, t) plane follow from that picture; the boundary
//! x = rho (ell - t) belongs to pre_delay_low.

#pragma once

#include <functional>
#include <string_view>

#include "ruinlab/model.hpp"
#include "ruinlab/ruin_time_law.hpp"

namespace ruinlab {

enum class Region {
    pre_delay_low,   // t < ell, x <= rho (ell - t): ruin before ell is certain
    pre_delay_high,  // t < ell, x >  rho (ell - t)
    post_delay,      // t >= ell
};

Region classify_region(const QueryPoint& q, double ell, double rho);
std::string_view to_string(Region r);

/// Region of q under the model's delay; throws DomainError for unbounded delays.
Region classify_region(const QueryPoint& q, const CheckedModel& model);

// -- constant delay ---------------------------------------------------------//

double ruin_prob_constant_delay(const QueryPoint& q, const CheckedModel& model);

/// E[exp(-theta tau_t)] under a constant delay, theta >= 0.
double ruin_laplace_constant_delay(const QueryPoint& q, double theta, const CheckedModel& model);

AtomPlusDensity ruin_density_constant_delay(const QueryPoint& q, const CheckedModel& model,
                                            SeriesOptions opts = {});

// -- bounded delay ----------------------------------------------------------//

/// psi(x,t) = exp(-alpha x + alpha rho int_t^ell (1 - L)) outside pre_delay_low.
/// Throws DomainError in pre_delay_low, where no closed form is known.
double ruin_prob_bounded_delay(const QueryPoint& q, const CheckedModel& model);

/// exp(-theta (t + J)) * exp(-beta (x - rho J)), J = int_t^ell (1 - L), outside pre_delay_low.
double ruin_laplace_bounded_delay(const QueryPoint& q, double theta, const CheckedModel& model);

AtomPlusDensity ruin_density_bounded_delay(const QueryPoint& q, const CheckedModel& model,
                                           SeriesOptions opts = {});

struct EpsilonBounds {
    double lower = 0.0;
    double upper = 0.0;
    double alpha = 0.0;
    double alpha_eps = 0.0;
    /// inf{s : L(s) >= 1 - eps}
    double ell_eps = 0.0;
};

/// Two-sided bound for any delay law, using the (1 - eps) quantile as a
/// surrogate support bound. Needs lambda (1 - eps) E[Y] > rho and x > rho (ell_eps - t).
EpsilonBounds ruin_prob_epsilon_bounds(const QueryPoint& q, double eps, const CheckedModel& model);

// -- verification -----------------------------------------------------------//

using Surface = std::function<double(double x, double t)>;

struct PideOptions {
    double h = 1e-4;
    double quad_tol = 1e-10;
    bool richardson = true;
};

/// Residual of the survival equation
///   d_t phi - rho d_x phi + lambda L(t) int [phi(x+y,t) - phi(x,t)] p(y) dy
/// for phi = 1 - psi, with central differences and quadrature.
/// Requires x >= h and t >= h.
double pide_residual(const Surface& psi, const QueryPoint& q, const CheckedModel& model,
                     PideOptions opts = {});

}  // namespace ruinlab
