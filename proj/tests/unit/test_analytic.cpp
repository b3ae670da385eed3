#include <gtest/gtest.h>

#include <cmath>

#include "reference.hpp"
#include "relay_sinr/analytic.hpp"
#include "relay_sinr/errors.hpp"
#include "relay_sinr/oracle.hpp"

using namespace relay_sinr;

namespace {

HypoexpSum hx(std::vector<double> means) { return HypoexpSum::from_means(means); }

// |analytic - empirical| inside the two-sided 99% Wilson interval.
void expect_in_wilson(double analytic, const std::vector<double>& samples, double x)
{
    std::size_t hits = 0;
    for (double s : samples)
        hits += s <= x;
    const Interval ci = wilson_interval(hits, samples.size(), normal_quantile_two_sided(0.99));
    EXPECT_GE(analytic, ci.lo) << "empirical " << static_cast<double>(hits) / samples.size();
    EXPECT_LE(analytic, ci.hi) << "empirical " << static_cast<double>(hits) / samples.size();
}

}  // namespace

TEST(Sm1, ZeroAbscissa)
{
    const Sm1Params p{100, 100, hx({1.5, 2, 3})};
    EXPECT_EQ(cdf_sm1(0.0, p), 0.0);
    EXPECT_EQ(sf_sm1(0.0, p), 1.0);
}

TEST(Sm1, SingleInterfererMatchesQuadrature)
{
    const Sm1Params p{100, 100, hx({2.0})};
    EXPECT_NEAR(cdf_sm1(3.0, p), quad_cdf_sm1(3.0, p), 1e-8);
}

TEST(Sm1, InidInterferersMatchMonteCarlo)
{
    const Sm1Params p{100, 100, hx({1.5, 2, 2, 3})};
    const InterfererPopulation relay{{1.5, 2, 2, 3}};
    const auto set = sample_sinr(oracle::config_for(100, 100, SystemModel::SM1), relay, {}, GainModel::Hypothetical,
                                 10000000, 11);
    expect_in_wilson(cdf_sm1(3.0, p), set.samples, 3.0);
}

TEST(Sm1, EmptySpectrumIsInterferenceFree)
{
    const Sm1Params p{40, 70, HypoexpSum{}};
    for (double w : {0.1, 3.0, 25.0})
        EXPECT_NEAR(cdf_sm1(w, p), cdf_no_interference(w, 40, 70), 1e-15);
}

TEST(Sm1, DensityMatchesFiniteDifference)
{
    const Sm1Params p{80, 120, hx({1.5, 2, 2, 3})};
    for (double w : {0.5, 3.0, 10.0}) {
        const double h = 1e-5 * w;
        const double fd = (cdf_sm1(w + h, p) - cdf_sm1(w - h, p)) / (2 * h);
        EXPECT_NEAR(pdf_sm1(w, p), fd, 1e-4 * fd);
    }
}

TEST(Sm1, DensityMatchesDifferentiatedQuadrature)
{
    const Sm1Params p{10, 10, hx({2.0})};
    // Fourth-order central difference of the quadrature CDF.
    const double w = 1.0;
    const double h = 1e-3;
    const double d = (-quad_cdf_sm1(w + 2 * h, p) + 8 * quad_cdf_sm1(w + h, p) - 8 * quad_cdf_sm1(w - h, p) +
                      quad_cdf_sm1(w - 2 * h, p)) / (12 * h);
    EXPECT_NEAR(pdf_sm1(w, p), d, 1e-7);
}

TEST(Sm1, IsSm2WithQuietRelay)
{
    // With U = 1, XY/(XU + YV) is XY/(X + YV).
    const HypoexpSum h = hx({1.0, 4.0});
    for (double w : {0.2, 2.0, 9.0}) {
        const double a = cdf_sm1(w, Sm1Params{30, 200, h});
        const double b = cdf_sm2(w, Sm2Params{30, 200, HypoexpSum{}, h});
        EXPECT_NEAR(a, b, 1e-12);
    }
}

TEST(Sm2, ZeroAbscissa)
{
    EXPECT_EQ(cdf_sm2(0.0, Sm2Params{100, 100, hx({2}), hx({2})}), 0.0);
}

TEST(Sm2, IidInterferersMatchMonteCarlo)
{
    const Sm2Params p{100, 100, HypoexpSum::iid(2.0, 4), HypoexpSum::iid(2.0, 4)};
    const InterfererPopulation pop{std::vector<double>(4, 2.0)};
    const auto set = sample_sinr(oracle::config_for(100, 100, SystemModel::SM2), pop, pop, GainModel::Hypothetical,
                                 10000000, 12);
    expect_in_wilson(cdf_sm2(3.0, p), set.samples, 3.0);
}

TEST(Sm2, VanishingDestinationInterference)
{
    const HypoexpSum relay = hx({1.0, 2.5});
    for (double z : {0.5, 3.0, 12.0}) {
        const double sm2 = cdf_sm2(z, Sm2Params{60, 90, relay, hx({1e-12})});
        const double sm1 = cdf_sm1(z, Sm1Params{90, 60, relay});
        EXPECT_NEAR(sm2, sm1, 1e-6);
    }
}

TEST(Sm2, DensityMatchesFiniteDifference)
{
    const Sm2Params p{50, 200, hx({1.0, 3.0}), hx({2.0, 2.0, 5.0})};
    for (double z : {0.3, 2.0, 6.0}) {
        const double h = 1e-5 * z;
        const double fd = (cdf_sm2(z + h, p) - cdf_sm2(z - h, p)) / (2 * h);
        EXPECT_NEAR(pdf_sm2(z, p), fd, 1e-4 * fd);
    }
}

TEST(Sm2, HigherInrShiftsDensityDown)
{
    // Stochastic dominance: with more interference the CDF is larger everywhere.
    NetworkConfig c;
    c.total_power = db_to_linear(20.0);
    const InterfererPopulation lo{std::vector<double>(4, db_to_linear(3.0))};
    const InterfererPopulation hi{std::vector<double>(4, db_to_linear(9.0))};
    for (double z : oracle::log_grid(0.05, 20.0, 25))
        EXPECT_GT(sinr_cdf(z, c, hi, hi), sinr_cdf(z, c, lo, lo));
}

TEST(Sm2, MonotoneDegradation)
{
    NetworkConfig c;
    c.total_power = 1000.0;
    const InterfererPopulation base{{1.0, 2.0, 3.0}};
    InterfererPopulation worse = base;
    worse.mean_inrs[1] = 2.5;
    const InterfererPopulation dest{{1.5}};
    for (double z : oracle::log_grid(0.1, 50.0, 20))
        EXPECT_GE(sinr_cdf(z, c, worse, dest), sinr_cdf(z, c, base, dest));
}

TEST(IidEqualPower, EqualsGeneralFormIid)
{
    for (int l : {1, 3, 6}) {
        for (double g : {0.5, 3.0, 10.0}) {
            const double a = cdf_sm2_iid_equal(g, 100, 2, l);
            const double b = cdf_sm2(g, Sm2Params{100, 100, HypoexpSum::iid(2, l), HypoexpSum::iid(2, l)});
            EXPECT_NEAR(a, b, 1e-10);
        }
    }
    EXPECT_EQ(cdf_sm2_iid_equal(0.0, 100, 2, 4), 0.0);
}

TEST(IidEqualPower, MatchesMonteCarlo)
{
    const InterfererPopulation pop{std::vector<double>(4, 2.0)};
    const auto set = sample_sinr(oracle::config_for(100, 100, SystemModel::SM2), pop, pop, GainModel::Hypothetical,
                                 10000000, 13);
    expect_in_wilson(cdf_sm2_iid_equal(3.0, 100, 2, 4), set.samples, 3.0);
}

TEST(NakagamiForm, UnitShapeIsRayleigh)
{
    for (double g : {0.4, 3.0, 15.0}) {
        const double a = cdf_nakagami(g, NakagamiParams{80, 150, 2.0, 1.5, 1.0, 1.0, 3, 2});
        // relay interference pairs with the first hop: Y = gamma1, U = relay
        const double b = cdf_sm2(g, Sm2Params{150, 80, HypoexpSum::iid(2.0, 3), HypoexpSum::iid(1.5, 2)});
        EXPECT_NEAR(a, b, 1e-10);
    }
}

TEST(NakagamiForm, IntegerShapeIsExpandedSpectrum)
{
    for (double g : {0.4, 3.0, 15.0}) {
        const double a = cdf_nakagami(g, NakagamiParams{100, 100, 2.0, 3.0, 2.0, 3.0, 2, 1});
        const double b = cdf_sm2(g, Sm2Params{100, 100, HypoexpSum::iid(1.0, 4), HypoexpSum::iid(1.0, 3)});
        EXPECT_NEAR(a, b, 1e-10);
    }
    EXPECT_EQ(cdf_nakagami(0.0, NakagamiParams{100, 100, 2.0, 3.0, 2.0, 3.0, 2, 1}), 0.0);
}

TEST(NakagamiForm, IntegerShapeAgreesWithMonteCarlo)
{
    NetworkConfig c = oracle::config_for(100, 100, SystemModel::SM2);
    const InterfererPopulation relay{{2.0, 2.0}, Nakagami{2.0}};
    const InterfererPopulation dest{{3.0}, Nakagami{3.0}};
    const auto set = sample_sinr(c, relay, dest, GainModel::Hypothetical, 10000000, 14);
    expect_in_wilson(cdf_nakagami(3.0, NakagamiParams{100, 100, 2.0, 3.0, 2.0, 3.0, 2, 1}), set.samples, 3.0);
}

TEST(NoInterference, Limits)
{
    EXPECT_EQ(cdf_no_interference(0.0, 100, 100), 0.0);
    double prev = 0.0;
    for (double w : oracle::log_grid(1e-3, 1e3, 100)) {
        const double f = cdf_no_interference(w, 100, 100);
        EXPECT_GE(f, prev);
        prev = f;
    }
    EXPECT_NEAR(prev, 1.0, 1e-12);
}

TEST(NoInterference, MatchesMonteCarlo)
{
    const auto set = sample_sinr(oracle::config_for(100, 100, SystemModel::SM1), {}, {}, GainModel::Hypothetical,
                                 10000000, 15);
    expect_in_wilson(cdf_no_interference(3.0, 100, 100), set.samples, 3.0);
}

TEST(Outage, VanishingThreshold)
{
    NetworkConfig c;
    const InterfererPopulation pop{{2.0}};
    EXPECT_EQ(outage_probability(c, pop, pop, ThresholdSpec{1.0, 2, 0.0}), 0.0);
    EXPECT_LT(outage_probability(c, pop, pop, ThresholdSpec{1.0, 2, 1e-6}), 1e-5);
}

TEST(Series, FixedAndAdaptiveAgree)
{
    const Sm2Params p{300, 40, hx({1.0, 2.0, 6.0}), hx({0.7, 3.0})};
    for (double z : {0.1, 1.0, 5.0})
        EXPECT_NEAR(cdf_sm2(z, p, SeriesControl::fixed(100)), cdf_sm2(z, p, SeriesControl::adaptive()), 1e-9);
}

TEST(Series, TruncationFailureIsReported)
{
    // Deep outage with a tiny cap: the fixed series must not pass silently.
    const Sm2Params p{1.0, 1.0, hx({3.0}), hx({3.0})};
    EXPECT_THROW(cdf_sm2(0.5, p, SeriesControl::fixed(3)), SeriesDivergence);
    try {
        cdf_sm2(0.5, p, SeriesControl::fixed(3));
    } catch (const SeriesDivergence& e) {
        EXPECT_NE(e.last_term(), 0.0);
    }
}

TEST(Series, ControlValidation)
{
    EXPECT_THROW(cdf_sm1(1.0, Sm1Params{1, 1, hx({1})}, SeriesControl{0, 1e-12, SeriesControl::Mode::FixedK}),
                 ConfigError);
    EXPECT_THROW(cdf_sm1(1.0, Sm1Params{1, 1, hx({1})}, SeriesControl{100, 0.5, SeriesControl::Mode::Adaptive}),
                 ConfigError);
}

TEST(Domain, NegativeAbscissa)
{
    EXPECT_THROW(cdf_sm1(-1.0, Sm1Params{1, 1, hx({1})}), DomainError);
    EXPECT_THROW(pdf_sm2(0.0, Sm2Params{1, 1, hx({1}), hx({1})}), DomainError);
}
