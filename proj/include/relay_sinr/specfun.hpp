#pragma once

// Special functions used by the closed-form distributions.
//
// Two Meijer-G families appear. With T ~ Gamma(a, 1):
//
//   G^{1,3}_{3,2}(y | 1-a,1,1 ; 1,0)   = Gamma(a) E[ln(1 + y T)]          (meijer_g_ln)
//   G^{2,3}_{4,3}(y | 1-a,1,1,0 ; 1,1,0) = -Gamma(a) E[y T / (1 + y T)]   (-meijer_g_frac)
//
// The second is -y d/dy of the first. Both are evaluated by adaptive
// Gauss-Kronrod quadrature of the Gamma-weighted integrand in log-time,
// which keeps the weight unimodal and free of the t^(a-1) endpoint
// behaviour. The *_normalized variants drop the Gamma(a) factor and stay
// finite for shapes well beyond 171.

namespace relay_sinr::specfun {

double log_gamma(double x);
double digamma(double x);

/// (psi(k + 1) + psi(k + 2)) / 2
double psi_k(int k);

double bessel_k0(double x);
double bessel_k1(double x);

double meijer_g_ln(double a, double y);
double meijer_g_ln_normalized(double a, double y);

double meijer_g_frac(double a, double y);
double meijer_g_frac_normalized(double a, double y);

/// E[phi(T)] for T ~ Gamma(shape, 1), phi given on the log-time axis.
/// Exposed for the series engine and tests.
template <class Phi>
double gamma_expectation(double shape, Phi&& phi);

}  // namespace relay_sinr::specfun

#include "relay_sinr/detail/gamma_expectation.hpp"
