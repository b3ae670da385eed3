#include "relay_sinr/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relay_sinr/errors.hpp"
#include "relay_sinr/specfun.hpp"
#include "series_engine.hpp"

namespace relay_sinr {

void SeriesControl::validate() const
{
    if (k_max < 1)
        throw ConfigError("series k_max must be >= 1");
    if (!(rel_tol > 0.0 && rel_tol <= 1e-3))
        throw ConfigError("series rel_tol must lie in (0, 1e-3]");
}

namespace {

void check_means(double lx, double ly)
{
    if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly))
        throw DomainError("hop mean SNRs must be finite and positive");
}

}  // namespace

double sf_sm1(double w, const Sm1Params& p, const SeriesControl& ctl)
{
    ctl.validate();
    check_means(p.lambda_x, p.lambda_y);
    return detail::survival(w, p.lambda_x, p.lambda_y, {}, detail::mixture_of(p.interference), ctl);
}

double cdf_sm1(double w, const Sm1Params& p, const SeriesControl& ctl)
{
    if (w == 0.0)
        return 0.0;
    return detail::cdf_from_survival(sf_sm1(w, p, ctl));
}

double pdf_sm1(double w, const Sm1Params& p, const SeriesControl& ctl)
{
    ctl.validate();
    check_means(p.lambda_x, p.lambda_y);
    return detail::density(w, p.lambda_x, p.lambda_y, {}, detail::mixture_of(p.interference), ctl);
}

double sf_sm2(double z, const Sm2Params& p, const SeriesControl& ctl)
{
    ctl.validate();
    check_means(p.lambda_x, p.lambda_y);
    return detail::survival(z, p.lambda_x, p.lambda_y, detail::mixture_of(p.relay), detail::mixture_of(p.dest),
                            ctl);
}

double cdf_sm2(double z, const Sm2Params& p, const SeriesControl& ctl)
{
    if (z == 0.0)
        return 0.0;
    return detail::cdf_from_survival(sf_sm2(z, p, ctl));
}

double pdf_sm2(double z, const Sm2Params& p, const SeriesControl& ctl)
{
    ctl.validate();
    check_means(p.lambda_x, p.lambda_y);
    return detail::density(z, p.lambda_x, p.lambda_y, detail::mixture_of(p.relay), detail::mixture_of(p.dest),
                           ctl);
}

double cdf_sm2_iid_equal(double gamma, double lambda, double lambda_i, int count, const SeriesControl& ctl)
{
    ctl.validate();
    if (count < 1)
        throw DomainError("i.i.d. closed form needs at least one interferer per node");
    if (gamma == 0.0)
        return 0.0;
    const double l = static_cast<double>(count);
    return detail::cdf_from_survival(
        detail::survival_iid_direct(gamma, lambda, lambda, l, lambda_i, l, lambda_i, ctl));
}

double cdf_nakagami(double gamma, const NakagamiParams& p, const SeriesControl& ctl)
{
    ctl.validate();
    if (p.count1 < 1 || p.count2 < 1)
        throw DomainError("Nakagami closed form needs at least one interferer per node");
    if (!(p.m1 > 0.0) || !(p.m2 > 0.0))
        throw DomainError("Nakagami shapes must be positive");
    if (gamma == 0.0)
        return 0.0;
    return detail::cdf_from_survival(detail::survival_iid_direct(gamma, p.lambda1, p.lambda2, p.m1 * p.count1,
                                                                 p.inr1 / p.m1, p.m2 * p.count2, p.inr2 / p.m2,
                                                                 ctl));
}

double cdf_no_interference(double w, double lambda_x, double lambda_y)
{
    check_means(lambda_x, lambda_y);
    if (!(w >= 0.0))
        throw DomainError("SINR abscissa must be nonnegative");
    if (w == 0.0)
        return 0.0;
    const double x = 2.0 * w / std::sqrt(lambda_x * lambda_y);
    const double tail = x * std::exp(-w * (1.0 / lambda_x + 1.0 / lambda_y)) * specfun::bessel_k1(x);
    return std::clamp(1.0 - tail, 0.0, 1.0);
}

double pdf_no_interference(double w, double lambda_x, double lambda_y)
{
    check_means(lambda_x, lambda_y);
    if (!(w > 0.0))
        throw DomainError("density requires a positive abscissa");
    const double kappa = 2.0 / std::sqrt(lambda_x * lambda_y);
    const double s = 1.0 / lambda_x + 1.0 / lambda_y;
    const double x = kappa * w;
    // d/dx [x K1(x)] = -x K0(x)
    return std::exp(-w * s) * (s * x * specfun::bessel_k1(x) + kappa * x * specfun::bessel_k0(x));
}

namespace {

struct NodeLaw
{
    detail::Mixture mixture;
    bool iid = false;
    double shape = 0.0;  // total Gamma shape when iid
    double scale = 0.0;
};

NodeLaw node_law(const InterfererPopulation& pop)
{
    pop.validate();
    NodeLaw law;
    if (pop.empty())
        return law;
    const double first = pop.mean_inrs.front();
    const bool all_equal = std::all_of(pop.mean_inrs.begin(), pop.mean_inrs.end(), [&](double v) {
        return std::abs(v - first) <= kDefaultGroupingTol * first;
    });
    const double m = pop.nakagami_m();
    if (pop.is_rayleigh()) {
        law.mixture = detail::mixture_of(HypoexpSum::from_means(pop.mean_inrs));
    } else {
        if (!all_equal)
            throw ConfigError("Nakagami interferers must share one mean INR per node");
        law.mixture = {{1.0, m * static_cast<double>(pop.size()), first / m}};
    }
    if (all_equal) {
        law.iid = true;
        law.shape = m * static_cast<double>(pop.size());
        law.scale = first / m;
    }
    return law;
}

struct Routed
{
    double lambda_x;
    double lambda_y;
    detail::Mixture u;  // pairs with lambda_y
    detail::Mixture v;  // pairs with lambda_x
};

// SM1 relay interference pairs with the first hop: lambda_x = lambda1, V = relay.
// SM2 uses X = gamma2, Y = gamma1, so U = relay pairs with lambda1.
Routed route(const NetworkConfig& config, const NodeLaw& relay, const NodeLaw& dest)
{
    const HopParams hp = derive_hop_params(config);
    if (config.model == SystemModel::SM1) {
        if (!dest.mixture.empty())
            throw ConfigError("system model 1 has no destination interferers");
        return {hp.lambda1, hp.lambda2, {}, relay.mixture};
    }
    return {hp.lambda2, hp.lambda1, relay.mixture, dest.mixture};
}

}  // namespace

double sinr_cdf(double gamma, const NetworkConfig& config, const InterfererPopulation& relay,
                const InterfererPopulation& dest, const SeriesControl& ctl)
{
    ctl.validate();
    if (!(gamma >= 0.0))
        throw DomainError("SINR threshold must be nonnegative");
    if (gamma == 0.0)
        return 0.0;
    const NodeLaw r = node_law(relay);
    const NodeLaw d = node_law(dest);
    const bool nakagami = (!relay.empty() && !relay.is_rayleigh()) || (!dest.empty() && !dest.is_rayleigh());
    if (config.model == SystemModel::SM2 && nakagami && r.iid && d.iid) {
        const HopParams hp = derive_hop_params(config);
        return detail::cdf_from_survival(
            detail::survival_iid_direct(gamma, hp.lambda1, hp.lambda2, r.shape, r.scale, d.shape, d.scale, ctl));
    }
    const Routed rt = route(config, r, d);
    if (rt.u.empty() && rt.v.empty())
        return cdf_no_interference(gamma, rt.lambda_x, rt.lambda_y);
    return detail::cdf_from_survival(detail::survival(gamma, rt.lambda_x, rt.lambda_y, rt.u, rt.v, ctl));
}

double sinr_pdf(double gamma, const NetworkConfig& config, const InterfererPopulation& relay,
                const InterfererPopulation& dest, const SeriesControl& ctl)
{
    ctl.validate();
    const Routed rt = route(config, node_law(relay), node_law(dest));
    return detail::density(gamma, rt.lambda_x, rt.lambda_y, rt.u, rt.v, ctl);
}

double outage_probability(const NetworkConfig& config, const InterfererPopulation& relay,
                          const InterfererPopulation& dest, const ThresholdSpec& spec, const SeriesControl& ctl)
{
    return sinr_cdf(outage_threshold(spec), config, relay, dest, ctl);
}

}  // namespace relay_sinr
