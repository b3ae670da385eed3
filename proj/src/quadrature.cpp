#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "relay_sinr/errors.hpp"
#include "relay_sinr/oracle.hpp"
#include "relay_sinr/specfun.hpp"

namespace relay_sinr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Gamma(shape, 1) density at t > 0.
double gamma_density(double t, double shape)
{
    if (t <= 0.0)
        return 0.0;
    return std::exp((shape - 1.0) * std::log(t) - t - std::lgamma(shape));
}

// x K1(x) with its limit 1 at the origin; zero once K1 underflows.
double x_k1(double x) { return x == 0.0 ? 1.0 : x * specfun::bessel_k1(x); }

template <class F>
double integrate_half_line(F&& f, double tol, const char* what)
{
    boost::math::quadrature::exp_sinh<double> integrator;
    double err = 0.0;
    double l1 = 0.0;
    const double v = integrator.integrate(f, 0.0, kInf, tol, &err, &l1);
    if (!std::isfinite(v) || err > 1e3 * tol * std::max(l1, 1e-300))
        throw QuadratureError(what, err);
    return v;
}

}  // namespace

double quad_cdf_sm1(double w, const Sm1Params& p)
{
    if (!(w >= 0.0))
        throw DomainError("SINR abscissa must be nonnegative");
    if (p.interference.empty())
        throw DomainError("quadrature oracle needs at least one interferer");
    if (w == 0.0)
        return 0.0;
    const double lx = p.lambda_x;
    const double ly = p.lambda_y;
    const double kappa = 2.0 * w / std::sqrt(lx * ly);
    const auto& sp = p.interference.spectrum;
    double tail = 0.0;
    for (std::size_t i = 0; i < sp.distinct(); ++i) {
        const double mean = sp.distinct_means[i];
        for (int j = 1; j <= sp.multiplicities[i]; ++j) {
            const double x = p.interference.table(i, j);
            if (x == 0.0)
                continue;
            auto integrand = [&](double t) {
                const double u = 1.0 + mean * t;
                return gamma_density(t, j) * std::exp(-w / ly - w * u / lx) * x_k1(kappa * std::sqrt(u));
            };
            tail += x * integrate_half_line(integrand, 1e-12, "quad_cdf_sm1 did not converge");
        }
    }
    return 1.0 - tail;
}

double quad_cdf_sm2(double z, const Sm2Params& p)
{
    if (!(z >= 0.0))
        throw DomainError("SINR abscissa must be nonnegative");
    if (p.relay.empty() || p.dest.empty())
        throw DomainError("two-node quadrature oracle needs interferers at both nodes");
    if (z == 0.0)
        return 0.0;
    const double lx = p.lambda_x;
    const double ly = p.lambda_y;
    const double kappa = 2.0 * z / std::sqrt(lx * ly);
    const auto& su = p.relay.spectrum;
    const auto& sv = p.dest.spectrum;

    // P(Y <= zU) in closed form.
    double p_uy = 1.0;
    for (std::size_t i = 0; i < su.distinct(); ++i)
        for (int j = 1; j <= su.multiplicities[i]; ++j)
            p_uy -= p.relay.table(i, j) * std::exp(-z / ly - j * std::log1p(z * su.distinct_means[i] / ly));

    // E[e^{-zU/ly} (1 - e^{-zV/lx} x K1(x))],  x = kappa sqrt(UV)
    double rest = 0.0;
    for (std::size_t i = 0; i < su.distinct(); ++i) {
        const double mu = su.distinct_means[i];
        for (int j = 1; j <= su.multiplicities[i]; ++j) {
            const double xu = p.relay.table(i, j);
            if (xu == 0.0)
                continue;
            for (std::size_t q = 0; q < sv.distinct(); ++q) {
                const double mv = sv.distinct_means[q];
                for (int r = 1; r <= sv.multiplicities[q]; ++r) {
                    const double xv = p.dest.table(q, r);
                    if (xv == 0.0)
                        continue;
                    auto outer = [&](double t1) {
                        const double u = 1.0 + mu * t1;
                        const double du = gamma_density(t1, j);
                        if (du == 0.0)
                            return 0.0;
                        auto inner = [&](double t2) {
                            const double v = 1.0 + mv * t2;
                            return gamma_density(t2, r) * -std::expm1(std::log(x_k1(kappa * std::sqrt(u * v))) - z * v / lx);
                        };
                        return du * std::exp(-z * u / ly) *
                               integrate_half_line(inner, 1e-12, "quad_cdf_sm2 inner integral did not converge");
                    };
                    rest += xu * xv * integrate_half_line(outer, 1e-11, "quad_cdf_sm2 did not converge");
                }
            }
        }
    }
    return p_uy + rest;
}

}  // namespace relay_sinr
