#pragma once

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "relay_sinr/errors.hpp"

namespace relay_sinr::specfun {

namespace detail {

// log of the Gamma(shape, 1) density of x = ln t relative to its peak at
// x = ln(shape); d = x - ln(shape).
inline double log_weight(double shape, double d) { return shape * (d - std::expm1(d)); }

// Distance from the mode at which the weight has dropped by `drop` nats.
inline double weight_edge(double shape, double dir, double drop)
{
    double inner = 0.0;
    double outer = dir / std::sqrt(shape);
    while (log_weight(shape, outer) > -drop) {
        inner = outer;
        outer *= 2.0;
    }
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (inner + outer);
        if (log_weight(shape, mid) > -drop)
            inner = mid;
        else
            outer = mid;
    }
    return outer;
}

}  // namespace detail

template <class Phi>
double gamma_expectation(double shape, Phi&& phi)
{
    if (!(shape > 0.0))
        throw DomainError("gamma_expectation requires a positive shape");
    constexpr double drop = 46.0;  // e^-46 ~ 1e-20 of the peak weight
    const double mode = std::log(shape);
    const double lo = detail::weight_edge(shape, -1.0, drop);
    const double hi = detail::weight_edge(shape, +1.0, drop);
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

    // The weight is integrated numerically as well; the ratio avoids the
    // cancellation in lgamma(shape) - shape ln(shape) for large shapes.
    double err_w = 0.0;
    const double mass = GK::integrate([&](double d) { return std::exp(detail::log_weight(shape, d)); }, lo, hi,
                                      10, 1e-12, &err_w);
    double err = 0.0;
    double l1 = 0.0;
    const double value = GK::integrate(
        [&](double d) {
            const double w = std::exp(detail::log_weight(shape, d));
            return w == 0.0 ? 0.0 : w * phi(mode + d);
        },
        lo, hi, 10, 1e-12, &err, &l1);
    if (err > 1e-10 * l1 + 1e-300 || err_w > 1e-10 * mass)
        throw QuadratureError("gamma_expectation missed its tolerance", err);
    return value / mass;
}

}  // namespace relay_sinr::specfun
