#include "reference.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace oracle {

double bessel_k_integral(int nu, double x)
{
    // Trapezoid rule; the integrand is entire and doubly exponentially decaying.
    const double h = 1e-3;
    double sum = 0.5 * std::exp(-x);
    for (int k = 1;; ++k) {
        const double t = k * h;
        const double term = std::exp(-x * std::cosh(t)) * std::cosh(nu * t);
        sum += term;
        if (term < 1e-20 * sum)
            break;
    }
    return sum * h;
}

double digamma_half_integer(int n)
{
    double acc = -std::numbers::egamma - 2.0 * std::numbers::ln2;
    for (int k = 1; k <= n; ++k)
        acc += 2.0 / (2.0 * k - 1.0);
    return acc;
}

double digamma_series(double x)
{
    double shift = 0.0;
    while (x < 20.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    const double i2 = 1.0 / (x * x);
    return shift + std::log(x) - 0.5 / x -
           i2 * (1.0 / 12 - i2 * (1.0 / 120 - i2 * (1.0 / 252 - i2 * (1.0 / 240 - i2 * (1.0 / 132)))));
}

relay_sinr::NetworkConfig config_for(double lambda1, double lambda2, relay_sinr::SystemModel model)
{
    relay_sinr::NetworkConfig c;
    c.total_power = 2.0;
    c.power_share = 0.5;
    c.noise_relay = 1.0 / lambda1;
    c.noise_dest = 1.0 / lambda2;
    c.model = model;
    return c;
}

std::vector<double> log_grid(double lo, double hi, int n)
{
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(lo * std::pow(hi / lo, n == 1 ? 0.0 : static_cast<double>(i) / (n - 1)));
    return out;
}

RandomCase random_case(std::mt19937_64& rng, int max_l1, int min_l2, int max_l2)
{
    std::uniform_real_distribution<double> log_lambda(0.0, 4.0);
    std::uniform_real_distribution<double> mean(0.5, 10.0);
    std::uniform_int_distribution<int> l1(1, max_l1);
    std::uniform_int_distribution<int> l2(min_l2, max_l2);
    RandomCase c;
    c.lambda1 = std::pow(10.0, log_lambda(rng));
    c.lambda2 = std::pow(10.0, log_lambda(rng));
    const int n1 = l1(rng);
    const int n2 = max_l2 > 0 ? l2(rng) : 0;
    for (int i = 0; i < n1; ++i)
        c.relay.push_back(mean(rng));
    for (int i = 0; i < n2; ++i)
        c.dest.push_back(mean(rng));
    return c;
}

double typical_sinr(const RandomCase& c)
{
    const double i1 = std::accumulate(c.relay.begin(), c.relay.end(), 0.0);
    const double i2 = std::accumulate(c.dest.begin(), c.dest.end(), 0.0);
    return c.lambda1 * c.lambda2 / (c.lambda2 * (1.0 + i1) + c.lambda1 * (1.0 + i2));
}

}  // namespace oracle
