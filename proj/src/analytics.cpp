// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ruinlab/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "ruinlab/errors.hpp"
#include "ruinlab/lundberg.hpp"

namespace ruinlab {

namespace {

double clamp01(double p)
{
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace

BoundsResult ruin_prob_bounds(const QueryPoint& q, const CheckedModel& model)
{
    check_query(q);
    model.require_net_condition("ruin probability bounds");

    const double alpha = solve_alpha(model).value;
    const double rho = model.rho();
    const auto& delay = model.delay();

    const double log_upper = -alpha * q.x + alpha * rho * delay.tail_integral(q.t);
    const double log_lower = log_upper - alpha * rho * delay.tail_integral(q.t + q.x / rho);

    BoundsResult r;
    r.raw_upper = std::exp(log_upper);
    r.raw_lower = std::exp(log_lower);
    r.upper = clamp01(r.raw_upper);
    r.lower = std::min(clamp01(r.raw_lower), r.upper);
    r.asymptotic = r.upper;
    r.asymptotic_side = BoundSide::upper;
    return r;
}

LaplaceBounds ruin_laplace_asymptotic(const QueryPoint& q, double theta, const CheckedModel& model)
{
    check_query(q);
    if (!(theta > 0.0))
        throw ModelError("Laplace asymptotics need theta > 0; use ruin_prob_bounds for theta = 0");

    const double beta = solve_beta(model, theta).value;
    const double rho = model.rho();
    const auto& delay = model.delay();
    // beta rho - theta = lambda * (1 - LT(beta)) >= 0
    const double weight = std::max(beta * rho - theta, 0.0);

    const double log_asym = -beta * q.x + weight * delay.tail_integral(q.t) - theta * q.t;
    LaplaceBounds r;
    r.beta = beta;
    r.asymptotic = std::exp(log_asym);
    r.upper = r.asymptotic;
    r.lower = std::exp(log_asym - weight * delay.tail_integral(q.t + q.x / rho));
    return r;
}

AtomPlusDensity ruin_time_law_asymptotic(const QueryPoint& q, const CheckedModel& model,
                                         SeriesOptions opts)
{
    check_query(q);
    model.require_net_condition("ruin-time density asymptotics");
    const double tail = model.delay().tail_integral(q.t);
    const double u = q.x - model.rho() * tail;
    if (u < 0.0)
        throw DomainError("ruin-time density asymptotics need x >= rho * I(t)");
    return AtomPlusDensity::shifted_passage(u, q.t + tail, model, opts);
}

double ruin_density_asymptotic(double T, const QueryPoint& q, const CheckedModel& model, double tol)
{
    if (!(tol > 0.0))
        throw ModelError("series tolerance must be positive");
    const auto law = ruin_time_law_asymptotic(q, model, SeriesOptions{tol, 500});
    if (T <= q.t + q.x / model.rho())
        return 0.0;
    return law.density(T);
}

BoundsResult mean_ruin_time_bounds(const QueryPoint& q, const CheckedModel& model)
{
    check_query(q);
    if (model.net_margin() >= 0.0)
        throw DomainError("ruin time has no finite mean unless lambda*E[Y] < rho");

    const double inflow = model.lambda() * model.profit().mean();
    const double drift = model.rho() - inflow;
    const double c = inflow / drift;
    const auto& delay = model.delay();

    BoundsResult r;
    r.lower = q.t + q.x / drift - c * delay.tail_integral(q.t);
    r.upper = r.lower + c * delay.tail_integral(q.t + q.x / model.rho());
    r.raw_lower = r.lower;
    r.raw_upper = r.upper;
    r.asymptotic = r.lower;
    r.asymptotic_side = BoundSide::lower;
    return r;
}

}  // namespace ruinlab
