// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ruinlab/exact.hpp"

#include <cmath>
#include <limits>
#include <variant>

#include "ruinlab/errors.hpp"
#include "ruinlab/lundberg.hpp"
#include "ruinlab/numerics.hpp"

namespace ruinlab {

namespace {

double constant_ell(const CheckedModel& model)
{
    const auto* d = std::get_if<ConstantDelay>(&model.delay().variant());
    if (!d)
        throw DomainError("operation requires a constant delay, got " + model.delay().to_string());
    return d->ell;
}

double bounded_ell(const CheckedModel& model)
{
    const auto ell = model.delay().support_bound();
    if (!ell)
        throw DomainError("operation requires a delay with bounded support, got " +
                          model.delay().to_string());
    return *ell;
}

// int_t^ell (1 - L(s)) ds for a delay supported on [0, ell]
double pending_integral(const CheckedModel& model, double t)
{
    return model.delay().tail_integral(t);
}

}  // namespace

Region classify_region(const QueryPoint& q, double ell, double rho)
{
    if (q.t >= ell)
        return Region::post_delay;
    return q.x <= rho * (ell - q.t) ? Region::pre_delay_low : Region::pre_delay_high;
}

Region classify_region(const QueryPoint& q, const CheckedModel& model)
{
    return classify_region(q, bounded_ell(model), model.rho());
}

std::string_view to_string(Region r)
{
    switch (r) {
    case Region::pre_delay_low:
        return "pre_delay_low";
    case Region::pre_delay_high:
        return "pre_delay_high";
    case Region::post_delay:
        return "post_delay";
    }
    return "?";
}

double ruin_prob_constant_delay(const QueryPoint& q, const CheckedModel& model)
{
    check_query(q);
    const double ell = constant_ell(model);
    model.require_net_condition("constant-delay ruin probability");
    const double rho = model.rho();
    switch (classify_region(q, ell, rho)) {
    case Region::pre_delay_low:
        return 1.0;
    case Region::pre_delay_high:
        return std::exp(-solve_alpha(model).value * (q.x - rho * (ell - q.t)));
    case Region::post_delay:
        break;
    }
    return std::exp(-solve_alpha(model).value * q.x);
}

double ruin_laplace_constant_delay(const QueryPoint& q, double theta, const CheckedModel& model)
{
    check_query(q);
    if (!(theta >= 0.0))
        throw ModelError("theta must be nonnegative");
    const double ell = constant_ell(model);
    const double rho = model.rho();
    switch (classify_region(q, ell, rho)) {
    case Region::pre_delay_low:
        return std::exp(-theta * (q.t + q.x / rho));
    case Region::pre_delay_high:
        // the surplus drains until ell, then the undelayed model takes over
        return std::exp(-theta * ell - solve_beta(model, theta).value * (q.x - rho * (ell - q.t)));
    case Region::post_delay:
        break;
    }
    return std::exp(-theta * q.t - solve_beta(model, theta).value * q.x);
}

AtomPlusDensity ruin_density_constant_delay(const QueryPoint& q, const CheckedModel& model,
                                            SeriesOptions opts)
{
    check_query(q);
    const double ell = constant_ell(model);
    const double rho = model.rho();
    switch (classify_region(q, ell, rho)) {
    case Region::pre_delay_low:
        return AtomPlusDensity::point_mass(q.t + q.x / rho);
    case Region::pre_delay_high:
        return AtomPlusDensity::shifted_passage(q.x - rho * (ell - q.t), ell, model, opts);
    case Region::post_delay:
        break;
    }
    return AtomPlusDensity::shifted_passage(q.x, q.t, model, opts);
}

double ruin_prob_bounded_delay(const QueryPoint& q, const CheckedModel& model)
{
    check_query(q);
    const double ell = bounded_ell(model);
    model.require_net_condition("bounded-delay ruin probability");
    const double alpha = solve_alpha(model).value;
    switch (classify_region(q, ell, model.rho())) {
    case Region::pre_delay_low:
        throw DomainError("no closed form for t < ell and x <= rho (ell - t)");
    case Region::pre_delay_high:
        return std::exp(-alpha * q.x + alpha * model.rho() * pending_integral(model, q.t));
    case Region::post_delay:
        break;
    }
    return std::exp(-alpha * q.x);
}

double ruin_laplace_bounded_delay(const QueryPoint& q, double theta, const CheckedModel& model)
{
    check_query(q);
    if (!(theta >= 0.0))
        throw ModelError("theta must be nonnegative");
    const double ell = bounded_ell(model);
    const double rho = model.rho();
    const Region region = classify_region(q, ell, rho);
    if (region == Region::pre_delay_low)
        throw DomainError("no closed form for t < ell and x <= rho (ell - t)");
    const double pending = region == Region::pre_delay_high ? pending_integral(model, q.t) : 0.0;
    const double beta = solve_beta(model, theta).value;
    return std::exp(-theta * (q.t + pending) - beta * (q.x - rho * pending));
}

AtomPlusDensity ruin_density_bounded_delay(const QueryPoint& q, const CheckedModel& model,
                                           SeriesOptions opts)
{
    check_query(q);
    const double ell = bounded_ell(model);
    const double rho = model.rho();
    const Region region = classify_region(q, ell, rho);
    if (region == Region::pre_delay_low)
        throw DomainError("no closed form for t < ell and x <= rho (ell - t)");
    const double pending = region == Region::pre_delay_high ? pending_integral(model, q.t) : 0.0;
    return AtomPlusDensity::shifted_passage(q.x - rho * pending, q.t + pending, model, opts);
}

EpsilonBounds ruin_prob_epsilon_bounds(const QueryPoint& q, double eps, const CheckedModel& model)
{
    check_query(q);
    if (!(eps > 0.0 && eps < 1.0))
        throw ModelError("epsilon must lie in (0, 1)");
    model.require_net_condition("epsilon bounds");

    const double rho = model.rho();
    const double thinned = model.lambda() * (1.0 - eps);
    if (thinned * model.profit().mean() <= rho)
        throw DomainError("alpha_eps does not exist: lambda (1 - eps) E[Y] <= rho");

    EpsilonBounds b;
    b.ell_eps = model.delay().quantile_upper(eps);
    if (!(q.x > rho * (b.ell_eps - q.t)))
        throw DomainError("epsilon bounds need x > rho (ell_eps - t)");

    const auto& delay = model.delay();
    const double pending =
        q.t < b.ell_eps ? std::max(delay.tail_integral(q.t) - delay.tail_integral(b.ell_eps), 0.0)
                        : 0.0;
    b.alpha = solve_alpha(model).value;
    b.alpha_eps = solve_lundberg(rho, thinned, model.profit(), 0.0).value;
    b.lower = std::exp(-b.alpha * q.x + b.alpha * rho * pending);
    const double k = rho * b.alpha_eps / (1.0 - eps);
    b.upper = std::exp(-b.alpha_eps * q.x + k * eps + k * pending);
    return b;
}

double pide_residual(const Surface& psi, const QueryPoint& q, const CheckedModel& model,
                     PideOptions opts)
{
    check_query(q);
    if (!(opts.h > 0.0))
        throw ModelError("finite-difference step must be positive");
    if (q.x < opts.h || q.t < opts.h)
        throw ModelError("pide_residual needs x >= h and t >= h");

    const double x = q.x;
    const double t = q.t;
    auto phi = [&](double xx, double tt) { return 1.0 - psi(xx, tt); };

    auto central = [&](auto&& f, double h) { return (f(h) - f(-h)) / (2.0 * h); };
    auto derivative = [&](auto&& f) {
        const double d = central(f, opts.h);
        if (!opts.richardson)
            return d;
        return (4.0 * central(f, 0.5 * opts.h) - d) / 3.0;
    };

    const double dt = derivative([&](double h) { return phi(x, t + h); });
    const double dx = derivative([&](double h) { return phi(x + h, t); });

    double jump = 0.0;
    const double rate = model.lambda() * model.delay().cdf(t);
    if (rate > 0.0) {
        const double here = phi(x, t);
        const auto& profit = model.profit();
        if (auto y0 = profit.convolution_atom(1)) {
            jump = phi(x + *y0, t) - here;
        } else {
            auto integrand = [&](double y) { return (phi(x + y, t) - here) * profit.density(y); };
            jump = numerics::integrate(integrand, 0.0, std::numeric_limits<double>::infinity(),
                                       opts.quad_tol)
                       .value;
        }
    }
    return dt - model.rho() * dx + rate * jump;
}

}  // namespace ruinlab
