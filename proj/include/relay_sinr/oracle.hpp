#pragma once

// Independent ground truth for the closed forms: a Monte-Carlo channel
// simulator and adaptive quadrature of the single/double integral forms.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "relay_sinr/analytic.hpp"
#include "relay_sinr/model.hpp"

namespace relay_sinr {

enum class GainModel { Hypothetical, CsiAssisted };

inline constexpr const char* kRngAlgorithm = "philox4x32-10";

struct SinrSampleSet
{
    std::vector<double> samples;
    std::uint64_t seed = 0;
    GainModel gain_model = GainModel::Hypothetical;
    SystemModel model = SystemModel::SM2;

    std::size_t n() const { return samples.size(); }
};

/// Draws n end-to-end SINR samples. Sample i depends only on (seed, i); the
/// result is identical for any worker count.
///
/// Hypothetical gain:   g1 g2 / (g1 + g2 + g1 I2 + g2 I1)
/// CSI-assisted gain:   g1 g2 / (g2 (1 + I1) + (g1 + 1)(1 + I2))
/// where I1, I2 are the total relay and destination INRs (I2 = 0 for SM1).
SinrSampleSet sample_sinr(const NetworkConfig& config, const InterfererPopulation& relay,
                          const InterfererPopulation& dest, GainModel gain, std::size_t n, std::uint64_t seed,
                          unsigned workers = 0);

struct EmpiricalCurve
{
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> stderr_;
};

/// Fraction of samples <= x at each grid point.
EmpiricalCurve empirical_cdf(std::span<const double> samples, std::span<const double> grid);

/// Histogram density over consecutive bin edges; grid holds the bin centres.
EmpiricalCurve empirical_pdf(std::span<const double> samples, std::span<const double> edges);

struct Interval
{
    double lo;
    double hi;
};

/// Wilson score interval for `hits` successes out of n at normal quantile z.
Interval wilson_interval(std::size_t hits, std::size_t n, double z);

/// Two-sided standard normal quantile for the given coverage, e.g. 0.99 -> 2.5758.
double normal_quantile_two_sided(double coverage);

/// CDF of XY/(X + YU) by quadrature of the single u-integral with the
/// Bessel K1 kernel. Throws QuadratureError if the target is missed.
double quad_cdf_sm1(double w, const Sm1Params& params);

/// CDF of XY/(XU + YV): closed-form P(Y <= zU) plus a nested (u, v)
/// quadrature of the conditional Bessel form.
double quad_cdf_sm2(double z, const Sm2Params& params);

}  // namespace relay_sinr
