#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "charcoef_oracle.hpp"
#include "mellin_barnes.hpp"
#include "reference.hpp"
#include "relay_sinr/analytic.hpp"
#include "relay_sinr/oracle.hpp"
#include "relay_sinr/specfun.hpp"

namespace oracle {

using namespace relay_sinr;

namespace {

struct Case
{
    const char* name;
    NetworkConfig config;
    InterfererPopulation relay;
    InterfererPopulation dest;
};

std::vector<Case> cases()
{
    std::vector<Case> out;
    out.push_back({"sm1 inid", config_for(100, 100, SystemModel::SM1), {{1.5, 2.0, 2.0, 3.0}}, {}});
    out.push_back({"sm1 single", config_for(10, 40, SystemModel::SM1), {{2.0}}, {}});
    out.push_back({"sm2 inid", config_for(50, 200, SystemModel::SM2), {{1.0, 3.0}}, {{2.0, 2.0, 5.0}}});
    out.push_back({"sm2 relay only", config_for(300, 80, SystemModel::SM2), {{0.7, 4.0}}, {}});
    Case nak{"sm2 nakagami", config_for(100, 100, SystemModel::SM2), {{2.0, 2.0, 2.0}}, {{1.5, 1.5}}};
    nak.relay.fading = Nakagami{2.0};
    nak.dest.fading = Nakagami{3.0};
    out.push_back(nak);
    return out;
}

double scale_of(const Case& c)
{
    const HopParams hp = derive_hop_params(c.config);
    double i1 = 0.0, i2 = 0.0;
    for (double v : c.relay.mean_inrs)
        i1 += v;
    for (double v : c.dest.mean_inrs)
        i2 += v;
    return hp.lambda1 * hp.lambda2 / (hp.lambda2 * (1.0 + i1) + hp.lambda1 * (1.0 + i2));
}

void fail(CheckResult& r, const std::string& what)
{
    r.pass = false;
    if (r.detail.size() < 2000)
        r.detail += what + "\n";
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

}  // namespace

CheckResult check_cdf_monotone_bounds()
{
    CheckResult r;
    const SeriesControl ctl = SeriesControl::adaptive();
    for (const Case& c : cases()) {
        double prev = 0.0;
        for (double z : log_grid(1e-3 * scale_of(c), 20.0 * scale_of(c), 60)) {
            const double f = sinr_cdf(z, c.config, c.relay, c.dest, ctl);
            if (!(f >= 0.0 && f <= 1.0))
                fail(r, std::string(c.name) + fmt(": F(%g) = %g outside [0, 1]", z, f));
            if (f < prev - 1e-12)
                fail(r, std::string(c.name) + fmt(": F decreases at %g (%g < %g)", z, f, prev));
            prev = f;
        }
    }
    return r;
}

CheckResult check_pdf_derivative(double tol)
{
    CheckResult r;
    const SeriesControl ctl = SeriesControl::adaptive();
    for (const Case& c : cases()) {
        for (double z : log_grid(0.05 * scale_of(c), 5.0 * scale_of(c), 12)) {
            const double h = 1e-4 * z;
            const double fd = (sinr_cdf(z + h, c.config, c.relay, c.dest, ctl) -
                               sinr_cdf(z - h, c.config, c.relay, c.dest, ctl)) / (2.0 * h);
            const double pdf = sinr_pdf(z, c.config, c.relay, c.dest, ctl);
            if (std::abs(fd - pdf) > tol * std::max(pdf, 1e-6 / scale_of(c)))
                fail(r, std::string(c.name) + fmt(": z = %g, dF/dz = %.10g, pdf = %.10g", z, fd, pdf));
        }
    }
    return r;
}

CheckResult check_pdf_normalization(double tol)
{
    CheckResult r;
    const SeriesControl ctl = SeriesControl::adaptive();
    for (const Case& c : cases()) {
        const HopParams hp = derive_hop_params(c.config);
        // Beyond z_max even the interference-free link is in outage with
        // probability 1 - 1e-12, so the neglected tail is below that.
        const double z_max = 28.0 / (1.0 / hp.lambda1 + 1.0 / hp.lambda2);
        double err = 0.0;
        auto pdf = [&](double z) { return z <= 0.0 ? sinr_pdf(1e-300, c.config, c.relay, c.dest, ctl)
                                                   : sinr_pdf(z, c.config, c.relay, c.dest, ctl); };
        // In t = log z the density is smooth and the tail is short; unit
        // panels of a 31-point Kronrod rule cover it evenly. Below z_lo the
        // density is flat and a rectangle suffices.
        const double z_lo = 1e-9 * scale_of(c);
        double total = z_lo * pdf(0.5 * z_lo);
        auto g = [&](double t) {
            const double z = std::exp(t);
            return pdf(z) * z;
        };
        for (double t = std::log(z_lo); t < std::log(z_max); t += 1.0) {
            const double hi = std::min(t + 1.0, std::log(z_max));
            double e = 0.0;
            total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, t, hi, 2, 1e-10, &e);
            err += e;
        }
        if (std::abs(total - 1.0) > tol)
            fail(r, std::string(c.name) + fmt(": integral of pdf = %.12g (quadrature error %g)", total, err));
    }
    return r;
}

CheckResult check_swap_symmetry(double tol)
{
    CheckResult r;
    const SeriesControl ctl = SeriesControl::adaptive();
    NetworkConfig a;
    a.total_power = 400.0;
    a.power_share = 0.3;
    a.model = SystemModel::SM2;
    NetworkConfig b = a;
    b.power_share = 1.0 - a.power_share;
    const InterfererPopulation p{{1.0, 2.5}};
    const InterfererPopulation q{{0.8, 4.0, 4.0}};
    for (double z : log_grid(0.01, 30.0, 25)) {
        const double f1 = sinr_cdf(z, a, p, q, ctl);
        const double f2 = sinr_cdf(z, b, q, p, ctl);
        if (std::abs(f1 - f2) > tol * std::max(1e-3, f1))
            fail(r, fmt("z = %g: F = %.15g, swapped F = %.15g", z, f1, f2));
    }
    return r;
}

CheckResult check_charcoef_oracle(double tol, int max_l, int trials_per_l)
{
    CheckResult r;
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> mean(0.5, 10.0);
    std::uniform_int_distribution<int> coin(0, 3);
    for (int l = 1; l <= max_l; ++l) {
        for (int t = 0; t < trials_per_l; ++t) {
            std::vector<double> means;
            for (int i = 0; i < l; ++i) {
                // Repeat an earlier mean now and then to exercise multiplicities.
                if (i > 0 && coin(rng) == 0)
                    means.push_back(means[std::uniform_int_distribution<int>(0, i - 1)(rng)]);
                else
                    means.push_back(mean(rng));
            }
            const HypoexpSum h = HypoexpSum::from_means(means);
            const CharCoeffTable o = charcoef_oracle(h.spectrum);
            for (std::size_t i = 0; i < h.table.coeffs.size(); ++i)
                for (std::size_t j = 0; j < h.table.coeffs[i].size(); ++j) {
                    const double x = h.table.coeffs[i][j];
                    const double y = o.coeffs[i][j];
                    if (std::abs(x - y) > tol * std::max(1.0, std::abs(y)))
                        fail(r, fmt("L = %g: X(%g, j) = %.15g differs from collocation", l, static_cast<double>(i + 1), x));
                }
        }
    }
    return r;
}

CheckResult check_meijer_vs_contour(double tol, int points)
{
    CheckResult r;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ua(1.0, 12.0);
    std::uniform_real_distribution<double> uy(std::log(0.01), std::log(50.0));
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double a = ua(rng);
        const double y = std::exp(uy(rng));
        const double g1 = specfun::meijer_g_ln(a, y);
        const double c1 = mb_g_ln(a, y);
        const double g2 = specfun::meijer_g_frac(a, y);
        const double c2 = -mb_g_frac_family(a, y);
        const double e1 = std::abs(g1 - c1) / std::abs(c1);
        const double e2 = std::abs(g2 - c2) / std::abs(c2);
        worst = std::max({worst, e1, e2});
        if (e1 > tol)
            fail(r, fmt("ln family a = %g, y = %g: rel err %g", a, y, e1));
        if (e2 > tol)
            fail(r, fmt("frac family a = %g, y = %g: rel err %g", a, y, e2));
    }
    r.detail += fmt("worst relative error %.3g", worst);
    return r;
}

CheckResult check_gain_dominance(std::size_t samples)
{
    CheckResult r;
    for (const Case& c : cases()) {
        const SinrSampleSet hyp = sample_sinr(c.config, c.relay, c.dest, GainModel::Hypothetical, samples, 99);
        const SinrSampleSet csi = sample_sinr(c.config, c.relay, c.dest, GainModel::CsiAssisted, samples, 99);
        const std::vector<double> grid = log_grid(0.01 * scale_of(c), 10.0 * scale_of(c), 30);
        const EmpiricalCurve fh = empirical_cdf(hyp.samples, grid);
        const EmpiricalCurve fc = empirical_cdf(csi.samples, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (fh.values[i] > fc.values[i] + 3.0 * fc.stderr_[i])
                fail(r, std::string(c.name) + fmt(": F_hyp(%g) = %g > F_csi = %g", grid[i], fh.values[i], fc.values[i]));
    }
    return r;
}

}  // namespace oracle
