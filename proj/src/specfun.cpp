#include "relay_sinr/specfun.hpp"

#include <cmath>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/digamma.hpp>

#include "relay_sinr/errors.hpp"

namespace relay_sinr::specfun {

double log_gamma(double x)
{
    if (!(x > 0.0))
        throw DomainError("log_gamma requires x > 0");
    return std::lgamma(x);
}

double digamma(double x)
{
    if (!(x > 0.0))
        throw DomainError("digamma requires x > 0");
    return boost::math::digamma(x);
}

double psi_k(int k)
{
    if (k < 0)
        throw DomainError("psi_k requires k >= 0");
    return 0.5 * (digamma(k + 1.0) + digamma(k + 2.0));
}

double bessel_k0(double x)
{
    if (!(x > 0.0))
        throw DomainError("bessel_k0 requires x > 0");
    if (x > 705.0)
        return 0.0;
    return boost::math::cyl_bessel_k(0, x);
}

double bessel_k1(double x)
{
    if (!(x > 0.0))
        throw DomainError("bessel_k1 requires x > 0");
    // Beyond ~705 the value is below the smallest subnormal.
    if (x > 705.0)
        return 0.0;
    return boost::math::cyl_bessel_k(1, x);
}

namespace {

void check_meijer_args(double a, double y)
{
    if (!(a >= 1.0))
        throw DomainError("Meijer-G shape parameter must be >= 1");
    if (!(y > 0.0) || !std::isfinite(y))
        throw DomainError("Meijer-G argument must be finite and > 0");
}

}  // namespace

double meijer_g_ln_normalized(double a, double y)
{
    check_meijer_args(a, y);
    return gamma_expectation(a, [y](double x) { return std::log1p(y * std::exp(x)); });
}

double meijer_g_frac_normalized(double a, double y)
{
    check_meijer_args(a, y);
    return gamma_expectation(a, [y](double x) {
        const double yt = y * std::exp(x);
        return yt / (1.0 + yt);
    });
}

double meijer_g_ln(double a, double y) { return std::exp(std::lgamma(a)) * meijer_g_ln_normalized(a, y); }

double meijer_g_frac(double a, double y) { return std::exp(std::lgamma(a)) * meijer_g_frac_normalized(a, y); }

}  // namespace relay_sinr::specfun
