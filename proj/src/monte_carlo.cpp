#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <boost/math/distributions/normal.hpp>

#include "relay_sinr/errors.hpp"
#include "relay_sinr/oracle.hpp"
#include "relay_sinr/parallel.hpp"
#include "relay_sinr/philox.hpp"

namespace relay_sinr {

namespace {

bool identical_means(const InterfererPopulation& pop)
{
    return std::adjacent_find(pop.mean_inrs.begin(), pop.mean_inrs.end(), std::not_equal_to<>()) ==
           pop.mean_inrs.end();
}

// Large i.i.d. populations are drawn as one Gamma(L m, mean / m) variate,
// which has exactly the law of the sum.
constexpr std::size_t kPooledDrawMin = 8;

double total_inr(const InterfererPopulation& pop, bool pooled, PhiloxStream& rng)
{
    if (pooled) {
        const double m = pop.is_rayleigh() ? 1.0 : pop.nakagami_m();
        std::gamma_distribution<double> g(m * static_cast<double>(pop.size()), pop.mean_inrs.front() / m);
        return g(rng);
    }
    double acc = 0.0;
    if (pop.is_rayleigh()) {
        for (double mean : pop.mean_inrs)
            acc -= mean * std::log(rng.uniform());
        return acc;
    }
    const double m = pop.nakagami_m();
    for (double mean : pop.mean_inrs) {
        std::gamma_distribution<double> g(m, mean / m);
        acc += g(rng);
    }
    return acc;
}

}  // namespace

SinrSampleSet sample_sinr(const NetworkConfig& config, const InterfererPopulation& relay,
                          const InterfererPopulation& dest, GainModel gain, std::size_t n, std::uint64_t seed,
                          unsigned workers)
{
    if (n < 1)
        throw ConfigError("sample count must be >= 1");
    relay.validate();
    dest.validate();
    if (config.model == SystemModel::SM1 && !dest.empty())
        throw ConfigError("system model 1 has no destination interferers");
    const HopParams hp = derive_hop_params(config);

    SinrSampleSet out;
    out.seed = seed;
    out.gain_model = gain;
    out.model = config.model;
    out.samples.resize(n);
    const double csi = gain == GainModel::CsiAssisted ? 1.0 : 0.0;
    const bool pooled1 = relay.size() >= kPooledDrawMin && identical_means(relay);
    const bool pooled2 = dest.size() >= kPooledDrawMin && identical_means(dest);

    parallel_for(n, workers == 0 ? worker_count() : workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            PhiloxStream rng(seed, i);
            const double g1 = -hp.lambda1 * std::log(rng.uniform());
            const double g2 = -hp.lambda2 * std::log(rng.uniform());
            const double i1 = total_inr(relay, pooled1, rng);
            const double i2 = total_inr(dest, pooled2, rng);
            out.samples[i] = g1 * g2 / (g2 * (1.0 + i1) + (g1 + csi) * (1.0 + i2));
        }
    });
    return out;
}

EmpiricalCurve empirical_cdf(std::span<const double> samples, std::span<const double> grid)
{
    if (samples.empty())
        throw ConfigError("empirical CDF needs samples");
    if (grid.empty())
        throw ConfigError("empirical CDF needs a nonempty grid");
    std::vector<double> sorted_grid(grid.begin(), grid.end());
    if (!std::is_sorted(sorted_grid.begin(), sorted_grid.end()))
        throw ConfigError("empirical CDF grid must be nondecreasing");
    // counts[b] = samples falling in (grid[b-1], grid[b]]
    std::vector<std::size_t> counts(grid.size() + 1, 0);
    for (double s : samples) {
        const auto it = std::lower_bound(sorted_grid.begin(), sorted_grid.end(), s);
        ++counts[static_cast<std::size_t>(it - sorted_grid.begin())];
    }
    EmpiricalCurve out;
    out.grid = sorted_grid;
    const double n = static_cast<double>(samples.size());
    std::size_t cum = 0;
    for (std::size_t b = 0; b < grid.size(); ++b) {
        cum += counts[b];
        const double p = static_cast<double>(cum) / n;
        out.values.push_back(p);
        out.stderr_.push_back(std::sqrt(p * (1.0 - p) / n));
    }
    return out;
}

EmpiricalCurve empirical_pdf(std::span<const double> samples, std::span<const double> edges)
{
    if (samples.empty())
        throw ConfigError("empirical PDF needs samples");
    if (edges.size() < 2)
        throw ConfigError("empirical PDF needs at least two bin edges");
    if (!std::is_sorted(edges.begin(), edges.end()))
        throw ConfigError("bin edges must be increasing");
    std::vector<std::size_t> counts(edges.size() - 1, 0);
    for (double s : samples) {
        if (s < edges.front() || s >= edges.back())
            continue;
        const auto it = std::upper_bound(edges.begin(), edges.end(), s);
        ++counts[static_cast<std::size_t>(it - edges.begin()) - 1];
    }
    EmpiricalCurve out;
    const double n = static_cast<double>(samples.size());
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
        const double width = edges[b + 1] - edges[b];
        const double p = static_cast<double>(counts[b]) / n;
        out.grid.push_back(0.5 * (edges[b] + edges[b + 1]));
        out.values.push_back(p / width);
        out.stderr_.push_back(std::sqrt(p * (1.0 - p) / n) / width);
    }
    return out;
}

Interval wilson_interval(std::size_t hits, std::size_t n, double z)
{
    if (n == 0)
        throw ConfigError("Wilson interval needs n >= 1");
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(hits) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double normal_quantile_two_sided(double coverage)
{
    if (!(coverage > 0.0 && coverage < 1.0))
        throw DomainError("coverage must lie in (0, 1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + 0.5 * coverage);
}

}  // namespace relay_sinr
