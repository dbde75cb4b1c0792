// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

//! Domain types of the delayed dual risk model.
//!
//! The surplus decreases at cost rate rho and jumps up by profit Y_k at the
//! realization time T_k + L_k of the k-th innovation, where the innovation
//! times T_k form a Poisson process of intensity lambda and the delays L_k are
//! i.i.d. with CDF L. Realized profits then arrive as a non-homogeneous
//! Poisson process with intensity lambda * L(s).

#pragma once

#include <cmath>
#include <cstdint>
#include <type_traits>
#include <optional>
#include <string>
#include <variant>

namespace ruinlab {

struct ModelParams {
    double rho = 1.0;     // cost per unit time
    double lambda = 1.0;  // innovation arrival intensity
};

/// Surplus x observed at present time t.
struct QueryPoint {
    double x = 0.0;
    double t = 0.0;
};

void check_query(const QueryPoint& q);

//---------------------------------------------------------------------------//
// Profit sizes
//---------------------------------------------------------------------------//

struct ExponentialProfit {
    double nu;
};
struct ErlangProfit {
    int shape;
    double nu;
};
struct DeterministicProfit {
    double y0;
};

class ProfitDistribution {
public:
    using Variant = std::variant<ExponentialProfit, ErlangProfit, DeterministicProfit>;

    ProfitDistribution(Variant v) : v_(v) {}  // NOLINT(google-explicit-constructor)

    static ProfitDistribution exponential(double nu) { return {ExponentialProfit{nu}}; }
    static ProfitDistribution erlang(int k, double nu) { return {ErlangProfit{k, nu}}; }
    static ProfitDistribution deterministic(double y0) { return {DeterministicProfit{y0}}; }

    const Variant& variant() const { return v_; }
    bool is_atomic() const { return std::holds_alternative<DeterministicProfit>(v_); }

    /// Throws ModelError on nonpositive rate, shape or size.
    void validate() const;

    double mean() const;
    double second_moment() const;

    /// E[exp(-s Y)] for s >= 0.
    double laplace(double s) const;
    /// d/ds E[exp(-s Y)].
    double laplace_derivative(double s) const;

    /// Density p(y); zero for the deterministic variant.
    double density(double y) const;

    /// Density of Y_1 + ... + Y_n at y > 0. Deterministic profits have no
    /// density, use convolution_atom() instead.
    double convolution_density(int n, double y) const;
    /// log of convolution_density; -inf where the density vanishes. Accepts y = 0.
    double log_convolution_density(int n, double y) const;
    /// Location of the n-fold convolution atom, if the law is atomic.
    std::optional<double> convolution_atom(int n) const;

    /// Inverse-CDF draw from a uniform u in [0, 1). Erlang consumes `shape`
    /// uniforms, so it takes a generator-like callable instead.
    template <class UniformSource>
    double sample(UniformSource&& uniform) const;

    std::string to_string() const;

private:
    Variant v_;
};

//---------------------------------------------------------------------------//
// Delays
//---------------------------------------------------------------------------//

struct ZeroDelay {};
struct ConstantDelay {
    double ell;
};
/// Uniform on [0, ell].
struct UniformDelay {
    double ell;
};
/// Survival exp(-gamma t).
struct ExponentialDelay {
    double gamma;
};
/// Survival (1 + t)^-gamma, gamma > 1.
struct PowerTailDelay {
    double gamma;
};
/// Survival exp(-gamma t^2).
struct GaussianTailDelay {
    double gamma;
};

class DelayDistribution {
public:
    using Variant = std::variant<ZeroDelay, ConstantDelay, UniformDelay, ExponentialDelay,
                                 PowerTailDelay, GaussianTailDelay>;

    DelayDistribution(Variant v) : v_(v) {}  // NOLINT(google-explicit-constructor)

    static DelayDistribution zero() { return {ZeroDelay{}}; }
    static DelayDistribution constant(double ell) { return {ConstantDelay{ell}}; }
    static DelayDistribution uniform(double ell) { return {UniformDelay{ell}}; }
    static DelayDistribution exponential(double gamma) { return {ExponentialDelay{gamma}}; }
    static DelayDistribution power_tail(double gamma) { return {PowerTailDelay{gamma}}; }
    static DelayDistribution gaussian_tail(double gamma) { return {GaussianTailDelay{gamma}}; }

    const Variant& variant() const { return v_; }

    /// Throws ModelError on nonpositive parameters or a divergent tail integral.
    void validate() const;

    /// L(t) = P(delay <= t); zero for t < 0.
    double cdf(double t) const;
    double survival(double t) const { return 1.0 - cdf(t); }

    /// I(t) = integral of the survival function over [t, inf).
    double tail_integral(double t) const;

    /// integral of L over [a, b], a <= b.
    double cdf_integral(double a, double b) const;

    /// inf{s : L(s) >= 1 - eps} for eps in (0, 1).
    double quantile_upper(double eps) const;

    /// ell with L(t) = 1 for t >= ell; none for unbounded delays, 0 for no delay.
    std::optional<double> support_bound() const;

    double sample(double uniform) const;

    std::string to_string() const;

private:
    Variant v_;
};

/// Standard normal CDF.
double normal_cdf(double z);

//---------------------------------------------------------------------------//
// Validated bundle
//---------------------------------------------------------------------------//

class CheckedModel {
public:
    const ModelParams& params() const { return params_; }
    const ProfitDistribution& profit() const { return profit_; }
    const DelayDistribution& delay() const { return delay_; }

    double rho() const { return params_.rho; }
    double lambda() const { return params_.lambda; }

    /// lambda * E[Y] - rho.
    double net_margin() const { return net_margin_; }
    bool net_condition() const { return net_margin_ > 0.0; }
    bool tail_integral_finite() const { return tail_finite_; }

    /// Throws DomainError unless the net condition holds.
    void require_net_condition(const char* what) const;

private:
    friend CheckedModel validate_model(const ModelParams&, const ProfitDistribution&,
                                       const DelayDistribution&);
    CheckedModel(ModelParams p, ProfitDistribution y, DelayDistribution d)
        : params_(p), profit_(y), delay_(d) {}

    ModelParams params_;
    ProfitDistribution profit_;
    DelayDistribution delay_;
    double net_margin_ = 0.0;
    bool tail_finite_ = true;
};

CheckedModel validate_model(const ModelParams& params, const ProfitDistribution& profit,
                            const DelayDistribution& delay);

double net_margin(const ModelParams& params, const ProfitDistribution& profit);

//---------------------------------------------------------------------------//

template <class UniformSource>
double ProfitDistribution::sample(UniformSource&& uniform) const
{
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ExponentialProfit>) {
                return -std::log1p(-uniform()) / p.nu;
            } else if constexpr (std::is_same_v<T, ErlangProfit>) {
                double sum = 0.0;
                for (int i = 0; i < p.shape; ++i)
                    sum -= std::log1p(-uniform());
                return sum / p.nu;
            } else {
                return p.y0;
            }
        },
        v_);
}

}  // namespace ruinlab
