// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ruinlab/model.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ruinlab/errors.hpp"

namespace ruinlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value))
        throw ModelError(std::string(name) + " must be positive and finite");
}

// log of the Erlang(shape, nu) density at y >= 0.
double log_erlang_density(long shape, double nu, double y)
{
    if (y < 0.0)
        return kNegInf;
    if (y == 0.0)
        return shape == 1 ? std::log(nu) : kNegInf;
    const double k = static_cast<double>(shape);
    return k * std::log(nu) + (k - 1.0) * std::log(y) - nu * y - std::lgamma(k);
}

std::string format_number(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

void check_query(const QueryPoint& q)
{
    if (!(q.x >= 0.0) || !std::isfinite(q.x))
        throw ModelError("surplus x must be nonnegative and finite");
    if (!(q.t >= 0.0) || !std::isfinite(q.t))
        throw ModelError("present time t must be nonnegative and finite");
}

double normal_cdf(double z)
{
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

//---------------------------------------------------------------------------//
// ProfitDistribution
//---------------------------------------------------------------------------//

void ProfitDistribution::validate() const
{
    std::visit(overloaded{
                   [](const ExponentialProfit& p) { require_positive(p.nu, "profit rate nu"); },
                   [](const ErlangProfit& p) {
                       if (p.shape < 1)
                           throw ModelError("Erlang shape must be a positive integer");
                       require_positive(p.nu, "profit rate nu");
                   },
                   [](const DeterministicProfit& p) { require_positive(p.y0, "profit size y0"); },
               },
               v_);
}

double ProfitDistribution::mean() const
{
    return std::visit(overloaded{
                          [](const ExponentialProfit& p) { return 1.0 / p.nu; },
                          [](const ErlangProfit& p) { return p.shape / p.nu; },
                          [](const DeterministicProfit& p) { return p.y0; },
                      },
                      v_);
}

double ProfitDistribution::second_moment() const
{
    return std::visit(overloaded{
                          [](const ExponentialProfit& p) { return 2.0 / (p.nu * p.nu); },
                          [](const ErlangProfit& p) {
                              return p.shape * (p.shape + 1.0) / (p.nu * p.nu);
                          },
                          [](const DeterministicProfit& p) { return p.y0 * p.y0; },
                      },
                      v_);
}

double ProfitDistribution::laplace(double s) const
{
    if (!(s >= 0.0))
        throw ModelError("Laplace argument must be nonnegative");
    return std::visit(overloaded{
                          [s](const ExponentialProfit& p) { return p.nu / (p.nu + s); },
                          [s](const ErlangProfit& p) {
                              return std::pow(p.nu / (p.nu + s), p.shape);
                          },
                          [s](const DeterministicProfit& p) { return std::exp(-s * p.y0); },
                      },
                      v_);
}

double ProfitDistribution::laplace_derivative(double s) const
{
    return std::visit(overloaded{
                          [s](const ExponentialProfit& p) {
                              return -p.nu / ((p.nu + s) * (p.nu + s));
                          },
                          [s](const ErlangProfit& p) {
                              return -p.shape * std::pow(p.nu / (p.nu + s), p.shape) /
                                     (p.nu + s);
                          },
                          [s](const DeterministicProfit& p) {
                              return -p.y0 * std::exp(-s * p.y0);
                          },
                      },
                      v_);
}

double ProfitDistribution::density(double y) const
{
    if (is_atomic())
        return 0.0;
    return std::exp(log_convolution_density(1, y));
}

double ProfitDistribution::log_convolution_density(int n, double y) const
{
    return std::visit(overloaded{
                          [&](const ExponentialProfit& p) { return log_erlang_density(n, p.nu, y); },
                          [&](const ErlangProfit& p) {
                              return log_erlang_density(static_cast<long>(n) * p.shape, p.nu, y);
                          },
                          [](const DeterministicProfit&) { return kNegInf; },
                      },
                      v_);
}

double ProfitDistribution::convolution_density(int n, double y) const
{
    if (n < 1)
        throw ModelError("convolution order must be at least 1");
    if (!(y > 0.0))
        throw ModelError("convolution density argument must be positive");
    return std::exp(log_convolution_density(n, y));
}

std::optional<double> ProfitDistribution::convolution_atom(int n) const
{
    if (const auto* d = std::get_if<DeterministicProfit>(&v_))
        return n * d->y0;
    return std::nullopt;
}

std::string ProfitDistribution::to_string() const
{
    return std::visit(overloaded{
                          [](const ExponentialProfit& p) { return "exp:" + format_number(p.nu); },
                          [](const ErlangProfit& p) {
                              return "erlang:" + std::to_string(p.shape) + ":" + format_number(p.nu);
                          },
                          [](const DeterministicProfit& p) { return "det:" + format_number(p.y0); },
                      },
                      v_);
}

//---------------------------------------------------------------------------//
// DelayDistribution
//---------------------------------------------------------------------------//

void DelayDistribution::validate() const
{
    std::visit(overloaded{
                   [](const ZeroDelay&) {},
                   [](const ConstantDelay& d) { require_positive(d.ell, "delay ell"); },
                   [](const UniformDelay& d) { require_positive(d.ell, "delay ell"); },
                   [](const ExponentialDelay& d) { require_positive(d.gamma, "delay gamma"); },
                   [](const PowerTailDelay& d) {
                       require_positive(d.gamma, "delay gamma");
                       if (d.gamma <= 1.0)
                           throw ModelError(
                               "power-tail delay needs gamma > 1: the tail integral diverges");
                   },
                   [](const GaussianTailDelay& d) { require_positive(d.gamma, "delay gamma"); },
               },
               v_);
}

double DelayDistribution::cdf(double t) const
{
    if (t < 0.0)
        return 0.0;
    return std::visit(overloaded{
                          [](const ZeroDelay&) { return 1.0; },
                          [t](const ConstantDelay& d) { return t >= d.ell ? 1.0 : 0.0; },
                          [t](const UniformDelay& d) { return t >= d.ell ? 1.0 : t / d.ell; },
                          [t](const ExponentialDelay& d) { return -std::expm1(-d.gamma * t); },
                          [t](const PowerTailDelay& d) {
                              return -std::expm1(-d.gamma * std::log1p(t));
                          },
                          [t](const GaussianTailDelay& d) { return -std::expm1(-d.gamma * t * t); },
                      },
                      v_);
}

double DelayDistribution::tail_integral(double t) const
{
    if (t < 0.0)
        return -t + tail_integral(0.0);
    return std::visit(
        overloaded{
            [](const ZeroDelay&) { return 0.0; },
            [t](const ConstantDelay& d) { return std::max(d.ell - t, 0.0); },
            [t](const UniformDelay& d) {
                return t < d.ell ? (d.ell - t) * (d.ell - t) / (2.0 * d.ell) : 0.0;
            },
            [t](const ExponentialDelay& d) { return std::exp(-d.gamma * t) / d.gamma; },
            [t](const PowerTailDelay& d) {
                return std::exp((1.0 - d.gamma) * std::log1p(t)) / (d.gamma - 1.0);
            },
            [t](const GaussianTailDelay& d) {
                // sqrt(pi/gamma) * (1 - N(sqrt(2 gamma) t)), via erfc to keep the tail accurate
                return 0.5 * std::sqrt(std::numbers::pi / d.gamma) *
                       std::erfc(std::sqrt(d.gamma) * t);
            },
        },
        v_);
}

double DelayDistribution::cdf_integral(double a, double b) const
{
    if (b < a)
        throw ModelError("cdf_integral needs a <= b");
    a = std::max(a, 0.0);
    b = std::max(b, 0.0);
    return std::max((b - a) - (tail_integral(a) - tail_integral(b)), 0.0);
}

double DelayDistribution::quantile_upper(double eps) const
{
    if (!(eps > 0.0 && eps < 1.0))
        throw ModelError("epsilon must lie in (0, 1)");
    return std::visit(overloaded{
                          [](const ZeroDelay&) { return 0.0; },
                          [](const ConstantDelay& d) { return d.ell; },
                          [eps](const UniformDelay& d) { return d.ell * (1.0 - eps); },
                          [eps](const ExponentialDelay& d) { return -std::log(eps) / d.gamma; },
                          [eps](const PowerTailDelay& d) {
                              return std::pow(eps, -1.0 / d.gamma) - 1.0;
                          },
                          [eps](const GaussianTailDelay& d) {
                              return std::sqrt(-std::log(eps) / d.gamma);
                          },
                      },
                      v_);
}

std::optional<double> DelayDistribution::support_bound() const
{
    return std::visit(overloaded{
                          [](const ZeroDelay&) -> std::optional<double> { return 0.0; },
                          [](const ConstantDelay& d) -> std::optional<double> { return d.ell; },
                          [](const UniformDelay& d) -> std::optional<double> { return d.ell; },
                          [](const auto&) -> std::optional<double> { return std::nullopt; },
                      },
                      v_);
}

double DelayDistribution::sample(double u) const
{
    return std::visit(overloaded{
                          [](const ZeroDelay&) { return 0.0; },
                          [](const ConstantDelay& d) { return d.ell; },
                          [u](const UniformDelay& d) { return u * d.ell; },
                          [u](const ExponentialDelay& d) { return -std::log1p(-u) / d.gamma; },
                          [u](const PowerTailDelay& d) {
                              return std::expm1(-std::log1p(-u) / d.gamma);
                          },
                          [u](const GaussianTailDelay& d) {
                              return std::sqrt(-std::log1p(-u) / d.gamma);
                          },
                      },
                      v_);
}

std::string DelayDistribution::to_string() const
{
    return std::visit(overloaded{
                          [](const ZeroDelay&) { return std::string("zero"); },
                          [](const ConstantDelay& d) { return "const:" + format_number(d.ell); },
                          [](const UniformDelay& d) { return "unif:" + format_number(d.ell); },
                          [](const ExponentialDelay& d) { return "exp:" + format_number(d.gamma); },
                          [](const PowerTailDelay& d) { return "power:" + format_number(d.gamma); },
                          [](const GaussianTailDelay& d) {
                              return "gauss:" + format_number(d.gamma);
                          },
                      },
                      v_);
}

//---------------------------------------------------------------------------//
// CheckedModel
//---------------------------------------------------------------------------//

double net_margin(const ModelParams& params, const ProfitDistribution& profit)
{
    return params.lambda * profit.mean() - params.rho;
}

CheckedModel validate_model(const ModelParams& params, const ProfitDistribution& profit,
                            const DelayDistribution& delay)
{
    require_positive(params.rho, "cost rate rho");
    require_positive(params.lambda, "intensity lambda");
    profit.validate();
    delay.validate();

    CheckedModel model(params, profit, delay);
    model.net_margin_ = net_margin(params, profit);
    // every supported delay family has a finite tail integral once validated
    model.tail_finite_ = std::isfinite(delay.tail_integral(0.0));
    return model;
}

void CheckedModel::require_net_condition(const char* what) const
{
    if (!net_condition())
        throw DomainError(std::string(what) + ": net condition lambda*E[Y] > rho violated");
}

}  // namespace ruinlab
