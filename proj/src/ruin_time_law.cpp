// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ruinlab/ruin_time_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ruinlab/errors.hpp"
#include "ruinlab/numerics.hpp"

namespace ruinlab {

namespace {

constexpr int kMaxLatticeAtoms = 100000;

}  // namespace

double dual_passage_density(double s, double u, const ModelParams& params,
                            const ProfitDistribution& profit, SeriesOptions opts, int* terms_used)
{
    if (terms_used)
        *terms_used = 0;
    if (profit.is_atomic() || !(u > 0.0))
        return 0.0;
    const double y = params.rho * s - u;
    if (!(y >= 0.0))
        return 0.0;

    const double lambda_s = params.lambda * s;
    const double log_lambda_s = std::log(lambda_s);
    int evaluated = 0;
    auto log_term = [&](long n) {
        ++evaluated;
        return static_cast<double>(n) * log_lambda_s - std::lgamma(n + 1.0) +
               profit.log_convolution_density(static_cast<int>(n), y);
    };
    const double log_pre = std::log(u / s) - lambda_s;

    if (y == 0.0) {
        // only a single profit can have positive density at the support edge
        const double v = std::exp(log_pre + log_term(1));
        if (terms_used)
            *terms_used = evaluated;
        return v;
    }

    // The log terms are concave in n: locate the largest one, then sum outward.
    auto rising = [&](long n) { return log_term(n + 1) > log_term(n); };
    long lo = 1, hi = 1;
    while (rising(hi)) {
        lo = hi;
        hi *= 2;
        if (hi > (1L << 40))
            throw ConvergenceError("passage density: no peak in the series");
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        rising(mid) ? lo = mid : hi = mid;
    }
    const long peak = rising(lo) ? hi : lo;
    const double log_peak = log_term(peak);
    if (!std::isfinite(log_peak)) {
        if (terms_used)
            *terms_used = evaluated;
        return 0.0;
    }

    // Walk both sides in step; at the term cap the partial sum is returned.
    double scaled = 1.0;
    int summed = 1;
    bool up = true, down = peak > 1;
    for (long k = 1; (up || down) && summed < opts.max_terms; ++k) {
        if (up) {
            const double r = std::exp(log_term(peak + k) - log_peak);
            scaled += r;
            ++summed;
            up = r > opts.rel_tol * scaled;
        }
        if (down && summed < opts.max_terms) {
            const double r = std::exp(log_term(peak - k) - log_peak);
            scaled += r;
            ++summed;
            down = peak - k > 1 && r > opts.rel_tol * scaled;
        }
    }
    if (terms_used)
        *terms_used = summed;
    return std::exp(log_pre + log_peak) * scaled;
}

AtomPlusDensity AtomPlusDensity::point_mass(double time)
{
    AtomPlusDensity law;
    law.atoms_.push_back({time, 1.0});
    law.support_start_ = time;
    law.shift_ = time;
    return law;
}

AtomPlusDensity AtomPlusDensity::shifted_passage(double u, double time_shift,
                                                 const CheckedModel& model, SeriesOptions opts)
{
    if (!(u >= 0.0))
        throw DomainError("effective surplus must be nonnegative");
    if (u == 0.0)
        return point_mass(time_shift);

    AtomPlusDensity law;
    law.params_ = model.params();
    law.profit_ = model.profit();
    law.opts_ = opts;
    law.surplus_ = u;
    law.shift_ = time_shift;

    const double rho = model.rho();
    const double lambda = model.lambda();
    law.support_start_ = time_shift + u / rho;
    law.atoms_.push_back({law.support_start_, std::exp(-lambda * u / rho)});

    if (auto step = model.profit().convolution_atom(1)) {
        double total = law.atoms_.front().mass;
        double previous = 0.0;
        for (int n = 1; n <= kMaxLatticeAtoms; ++n) {
            const double reach = u + n * *step;
            const double s = reach / rho;
            const double log_mass = std::log(u / reach) - lambda * s + n * std::log(lambda * s) -
                                    std::lgamma(n + 1.0);
            const double mass = std::exp(log_mass);
            law.atoms_.push_back({time_shift + s, mass});
            total += mass;
            if (mass < previous && mass <= 1e-16 * total)
                break;
            previous = mass;
        }
    } else {
        law.continuous_ = true;
    }
    return law;
}

double AtomPlusDensity::density(double T) const
{
    if (!continuous_ || T < support_start_)
        return 0.0;
    return dual_passage_density(T - shift_, surplus_, params_, *profit_, opts_);
}

double AtomPlusDensity::expectation(const std::function<double(double)>& g, double rel_tol) const
{
    double atom_part = 0.0;
    for (const auto& a : atoms_)
        atom_part += g(a.time) * a.mass;
    if (!continuous_)
        return atom_part;

    auto integrand = [&](double T) { return g(T) * density(T); };
    // march outward in doubling panels until a panel stops contributing
    const double scale = std::max({surplus_ / params_.rho, 1.0 / params_.lambda, 1.0});
    double a = support_start_;
    double width = scale;
    double cont = 0.0;
    for (int panel = 0; panel < 80; ++panel) {
        const double piece = numerics::integrate(integrand, a, a + width, rel_tol).value;
        cont += piece;
        a += width;
        if (panel > 2 && std::abs(piece) <= 1e-15 * std::max(std::abs(cont), 1e-300))
            break;
        if (panel >= 4)
            width *= 1.5;
    }
    return atom_part + cont;
}

double AtomPlusDensity::total_mass() const
{
    return expectation([](double) { return 1.0; });
}

double AtomPlusDensity::laplace(double theta) const
{
    return expectation([theta](double T) { return std::exp(-theta * T); });
}

}  // namespace ruinlab
