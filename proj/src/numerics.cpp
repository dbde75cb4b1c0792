// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ruinlab/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ruinlab::numerics {

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, unsigned max_depth)
{
    using boost::math::quadrature::gauss_kronrod;
    QuadratureResult out;
    out.value = gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, rel_tol,
                                                     &out.error_estimate);
    return out;
}

}  // namespace ruinlab::numerics
