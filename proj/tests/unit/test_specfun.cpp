#include <gtest/gtest.h>

#include <cmath>

#include "mellin_barnes.hpp"
#include "properties.hpp"
#include "reference.hpp"
#include "relay_sinr/errors.hpp"
#include "relay_sinr/specfun.hpp"

using namespace relay_sinr;
namespace sf = relay_sinr::specfun;

TEST(Digamma, HalfIntegerClosedForm)
{
    EXPECT_NEAR(sf::digamma(10.5), oracle::digamma_half_integer(10), 1e-13);
    EXPECT_NEAR(sf::digamma(0.5), oracle::digamma_half_integer(0), 1e-14);
}

TEST(Digamma, AsymptoticSeries)
{
    for (double x : {0.3, 1.0, 2.7, 11.0, 150.0})
        EXPECT_NEAR(sf::digamma(x), oracle::digamma_series(x), 1e-12 * std::max(1.0, std::abs(sf::digamma(x))));
    EXPECT_THROW(sf::digamma(0.0), DomainError);
}

TEST(Digamma, PsiKAveragesNeighbours)
{
    EXPECT_NEAR(sf::psi_k(0), 0.5 * (-std::numbers::egamma + 1.0 - std::numbers::egamma), 1e-15);
    EXPECT_NEAR(sf::psi_k(5), 0.5 * (oracle::digamma_series(6.0) + oracle::digamma_series(7.0)), 1e-13);
}

TEST(Bessel, KnownValue)
{
    EXPECT_NEAR(sf::bessel_k1(1.0), 0.6019072302, 1e-10);
    EXPECT_NEAR(sf::bessel_k0(1.0), 0.4210244382, 1e-10);
}

TEST(Bessel, IntegralRepresentation)
{
    for (double x : {1e-3, 0.1, 1.0, 7.5, 40.0, 300.0}) {
        EXPECT_NEAR(sf::bessel_k0(x), oracle::bessel_k_integral(0, x), 1e-12 * oracle::bessel_k_integral(0, x));
        EXPECT_NEAR(sf::bessel_k1(x), oracle::bessel_k_integral(1, x), 1e-12 * oracle::bessel_k_integral(1, x));
    }
}

TEST(Bessel, UnderflowIsZero)
{
    EXPECT_EQ(sf::bessel_k1(800.0), 0.0);
    EXPECT_THROW(sf::bessel_k1(0.0), DomainError);
}

TEST(MeijerG, GompertzConstant)
{
    // a = 1, y = 1 gives e E1(1) and its complement.
    EXPECT_NEAR(sf::meijer_g_ln(1.0, 1.0), 0.596347362323194, 1e-14);
    EXPECT_NEAR(sf::meijer_g_frac(1.0, 1.0), 1.0 - 0.596347362323194, 1e-14);
}

TEST(MeijerG, ContourOracleSpotValue)
{
    EXPECT_NEAR(sf::meijer_g_ln(3.0, 0.7), oracle::mb_g_ln(3.0, 0.7), 1e-8);
    EXPECT_NEAR(sf::meijer_g_frac(3.0, 0.7), -oracle::mb_g_frac_family(3.0, 0.7), 1e-8);
}

TEST(MeijerG, ContourOracleGrid)
{
    const oracle::CheckResult r = oracle::check_meijer_vs_contour(1e-7, 50);
    EXPECT_TRUE(r.pass) << r.detail;
}

TEST(MeijerG, FracIsLogDerivative)
{
    for (double a : {1.0, 2.5, 9.0})
        for (double y : {0.05, 1.0, 20.0}) {
            const double h = 1e-5 * y;
            const double d = (sf::meijer_g_ln(a, y + h) - sf::meijer_g_ln(a, y - h)) / (2 * h);
            EXPECT_NEAR(y * d, sf::meijer_g_frac(a, y), 1e-7 * sf::meijer_g_frac(a, y));
        }
}

TEST(MeijerG, NormalizedDropsGammaFactor)
{
    for (double a : {1.0, 4.0, 30.5}) {
        const double g = std::exp(std::lgamma(a));
        EXPECT_NEAR(sf::meijer_g_ln(a, 0.3), g * sf::meijer_g_ln_normalized(a, 0.3), 1e-12 * sf::meijer_g_ln(a, 0.3));
        EXPECT_NEAR(sf::meijer_g_frac(a, 0.3), g * sf::meijer_g_frac_normalized(a, 0.3),
                    1e-12 * sf::meijer_g_frac(a, 0.3));
    }
}

TEST(MeijerG, LargeShapeConcentrates)
{
    // T ~ Gamma(a, 1) concentrates at a, so E ln(1 + yT) -> ln(1 + ya).
    const double a = 20000.0;
    const double y = 0.01;
    EXPECT_NEAR(sf::meijer_g_ln_normalized(a, y), std::log1p(y * a), 1e-3);
    EXPECT_TRUE(std::isfinite(sf::meijer_g_frac_normalized(a, y)));
}

TEST(MeijerG, DomainChecks)
{
    EXPECT_THROW(sf::meijer_g_ln(0.5, 1.0), DomainError);
    EXPECT_THROW(sf::meijer_g_frac(2.0, 0.0), DomainError);
}
