// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ruinlab/lundberg.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "ruinlab/errors.hpp"

namespace ruinlab {

namespace {

constexpr int kMaxBisection = 400;
constexpr int kMaxExpansion = 200;
constexpr int kMaxSeriesTerms = 200;

struct Equation {
    double rho;
    double intensity;
    const ProfitDistribution& profit;
    double theta;

    double value(double b) const { return rho * b + intensity * (profit.laplace(b) - 1.0) - theta; }
    double slope(double b) const { return rho + intensity * profit.laplace_derivative(b); }
};

double tolerance(double rho, double b)
{
    return 1e-12 * std::max(1.0, rho * b);
}

}  // namespace

LundbergRoot solve_lundberg(double rho, double intensity, const ProfitDistribution& profit,
                            double theta)
{
    if (!(theta >= 0.0))
        throw ModelError("theta must be nonnegative");
    if (!(rho > 0.0) || !(intensity > 0.0))
        throw ModelError("rho and the intensity must be positive");

    const Equation g{rho, intensity, profit, theta};
    LundbergRoot root;

    // Lower end: the minimiser of g when g decreases at 0, else 0 itself.
    double lo = 0.0;
    if (g.slope(0.0) < 0.0) {
        double a = 0.0;
        double b = 1.0 / profit.mean();
        for (int i = 0; g.slope(b) < 0.0; ++i) {
            if (i == kMaxExpansion)
                throw ConvergenceError("Lundberg solver: slope bracket not found");
            a = b;
            b *= 2.0;
        }
        for (int i = 0; i < kMaxBisection && b - a > 1e-15 * b; ++i) {
            const double mid = 0.5 * (a + b);
            (g.slope(mid) < 0.0 ? a : b) = mid;
        }
        lo = a;
    } else if (theta == 0.0) {
        throw DomainError("no positive Lundberg root: net condition violated");
    }
    if (g.value(lo) > 0.0)
        throw ConvergenceError("Lundberg solver: lower bracket has the wrong sign");

    double hi = std::max(2.0 * lo, 1.0 / profit.mean() + theta / rho);
    for (int i = 0; g.value(hi) <= 0.0; ++i) {
        if (i == kMaxExpansion)
            throw ConvergenceError("Lundberg solver: upper bracket not found");
        lo = hi;
        hi *= 2.0;
    }

    int it = 0;
    for (; it < kMaxBisection; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        (g.value(mid) <= 0.0 ? lo : hi) = mid;
    }
    double b = 0.5 * (lo + hi);

    // Newton polish, kept inside the bracket.
    for (int k = 0; k < 3; ++k) {
        const double s = g.slope(b);
        if (!(s > 0.0))
            break;
        const double next = b - g.value(b) / s;
        if (!(next >= lo && next <= hi) || std::abs(g.value(next)) >= std::abs(g.value(b)))
            break;
        b = next;
    }

    root.value = b;
    root.residual = g.value(b);
    root.iterations = it;
    if (std::abs(root.residual) > tolerance(rho, b))
        throw ConvergenceError("Lundberg solver: residual above tolerance");
    return root;
}

LundbergRoot solve_alpha(const ModelParams& params, const ProfitDistribution& profit)
{
    if (net_margin(params, profit) <= 0.0)
        throw DomainError("alpha: net condition lambda*E[Y] > rho violated");
    return solve_lundberg(params.rho, params.lambda, profit, 0.0);
}

LundbergRoot solve_beta(const ModelParams& params, const ProfitDistribution& profit,
                        double theta)
{
    if (!(theta >= 0.0))
        throw ModelError("theta must be nonnegative");
    if (theta == 0.0)
        return solve_alpha(params, profit);
    return solve_lundberg(params.rho, params.lambda, profit, theta);
}

double beta_series(const ModelParams& params, const ProfitDistribution& profit, double theta,
                   double tol)
{
    if (!(theta > 0.0))
        throw ModelError("beta_series needs theta > 0");
    if (!(tol > 0.0))
        throw ModelError("beta_series needs a positive tolerance");

    const double a = (theta + params.lambda) / params.rho;
    const double log_ratio = std::log(params.lambda / params.rho);

    // log of int y^{n-1} e^{-a y} dP^{*n}(y)
    auto log_moment = [&](int n) -> double {
        const double dn = n;
        if (const auto* e = std::get_if<ExponentialProfit>(&profit.variant())) {
            return dn * std::log(e->nu) + std::lgamma(2.0 * dn - 1.0) - std::lgamma(dn) -
                   (2.0 * dn - 1.0) * std::log(a + e->nu);
        }
        if (const auto* e = std::get_if<ErlangProfit>(&profit.variant())) {
            const double m = dn * e->shape;
            return m * std::log(e->nu) + std::lgamma(m + dn - 1.0) - std::lgamma(m) -
                   (m + dn - 1.0) * std::log(a + e->nu);
        }
        const double z = dn * std::get<DeterministicProfit>(profit.variant()).y0;
        return (dn - 1.0) * std::log(z) - a * z;
    };

    double sum = 0.0;
    for (int n = 1; n <= kMaxSeriesTerms; ++n) {
        const double term =
            std::exp(n * log_ratio - std::lgamma(n + 1.0) + log_moment(n));
        sum += term;
        if (term < tol)
            return a - sum;
    }
    throw ConvergenceError("beta series did not converge within 200 terms");
}

}  // namespace ruinlab
