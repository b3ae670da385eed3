#include "series_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "compensated.hpp"
#include "relay_sinr/errors.hpp"
#include "relay_sinr/specfun.hpp"

namespace relay_sinr::detail {

namespace {

double log_binom(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

double ln_family(double shape, double beta)
{
    return specfun::gamma_expectation(shape, [beta](double x) { return std::log1p(beta * std::exp(x)); });
}

double frac_family(double shape, double beta)
{
    return specfun::gamma_expectation(shape, [beta](double x) {
        const double bt = beta * std::exp(x);
        return bt / (1.0 + bt);
    });
}

// log of the k-independent coefficient z^{2k+2} / ((lx ly)^{k+1} k! (k+1)!)
double log_series_coef(int k, double log_z, double log_lxly)
{
    return (2.0 * k + 2.0) * log_z - (k + 1.0) * log_lxly - std::lgamma(k + 1.0) - std::lgamma(k + 2.0);
}

// Tracks the k-series and applies the truncation policy.
class SeriesMonitor
{
  public:
    // abs_scale converts a bracket term into its contribution to the final
    // probability (or density), so that terms which are large in the scaled
    // frame but negligible in absolute terms do not block termination.
    SeriesMonitor(const SeriesControl& ctl, double base, double abs_scale = 1.0) : ctl_(ctl), abs_scale_(abs_scale)
    {
        sum_.add(base);
    }

    // Returns true once the adaptive stopping rule is met.
    bool push(int k, double log_env, double term)
    {
        if (!std::isfinite(term))
            throw SeriesDivergence("non-finite series term at k = " + std::to_string(k), term, k);
        sum_.add(term);
        last_ = term;
        const double scale = std::max(1.0, std::abs(sum_.value()));
        const double contribution = std::abs(term) * abs_scale_;
        if (k > ctl_.k_max / 2 && log_env > prev_env_ && std::abs(term) > 1e-14 * scale && contribution > 1e-16)
            throw SeriesDivergence("series terms still growing at k = " + std::to_string(k), term, k);
        prev_env_ = log_env;
        if (ctl_.mode == SeriesControl::Mode::Adaptive) {
            const bool small = std::abs(term) < ctl_.rel_tol * std::abs(sum_.value()) || contribution < 1e-18;
            quiet_ = small ? quiet_ + 1 : 0;
            return quiet_ >= 3;
        }
        return false;
    }

    double finish(int k_last) const
    {
        if (ctl_.mode == SeriesControl::Mode::Adaptive)
            throw SeriesDivergence("adaptive series did not settle by k = " + std::to_string(k_last), last_, k_last);
        if (std::abs(last_) > 1e-6 * std::max(1.0, std::abs(sum_.value())) && std::abs(last_) * abs_scale_ > 1e-12)
            throw SeriesDivergence("series truncated at k = " + std::to_string(k_last) + " while still significant",
                                   last_, k_last);
        return sum_.value();
    }

    double value() const { return sum_.value(); }

  private:
    const SeriesControl& ctl_;
    double abs_scale_;
    CompensatedSum sum_;
    double last_ = 0.0;
    double prev_env_ = -std::numeric_limits<double>::infinity();
    int quiet_ = 0;
};

}  // namespace

SideSeries::SideSeries(double shape, double mean, double pair, double z) : shape_(shape)
{
    if (!(shape > 0.0) || !(mean > 0.0) || !(pair > 0.0) || !(z > 0.0))
        throw DomainError("side series requires positive shape, mean, pair mean and abscissa");
    const double denom = pair + z * mean;
    beta_ = pair * mean / denom;
    log_beta_ = std::log(beta_);
    coupling_ = z * mean / denom;
    log_prefactor_ = -shape * std::log1p(z * mean / pair);
}

void SideSeries::extend(int n_max, bool with_frac)
{
    const double lg_shape = std::lgamma(shape_);
    for (int n = static_cast<int>(log_w_.size()); n <= n_max; ++n) {
        log_w_.push_back(std::lgamma(shape_ + n) - lg_shape + n * log_beta_);
        g_.push_back(ln_family(shape_ + n, beta_));
    }
    if (with_frac)
        for (int n = static_cast<int>(gf_.size()); n <= n_max; ++n)
            gf_.push_back(frac_family(shape_ + n, beta_));
}

const SideSeries::Moments& SideSeries::moments(int k, bool with_frac)
{
    if (with_frac && !frac_moments_) {
        by_k_.clear();
        frac_moments_ = true;
    }
    with_frac = frac_moments_;
    while (static_cast<int>(by_k_.size()) <= k) {
        const int kk = static_cast<int>(by_k_.size());
        const int top = kk + 1;
        extend(top, with_frac);
        double peak = -std::numeric_limits<double>::infinity();
        std::vector<double> lt(static_cast<std::size_t>(top + 1));
        for (int n = 0; n <= top; ++n) {
            lt[static_cast<std::size_t>(n)] = log_binom(top, n) + log_w_[static_cast<std::size_t>(n)];
            peak = std::max(peak, lt[static_cast<std::size_t>(n)]);
        }
        CompensatedSum s0, sg, sa, sga, sgf;
        for (int n = 0; n <= top; ++n) {
            const auto un = static_cast<std::size_t>(n);
            const double e = std::exp(lt[un] - peak);
            const double an = (shape_ + n) * coupling_;
            s0.add(e);
            sg.add(e * g_[un]);
            sa.add(e * an);
            sga.add(e * g_[un] * an);
            if (with_frac)
                sgf.add(e * gf_[un]);
        }
        const double w = s0.value();
        by_k_.push_back({peak + std::log(w), sg.value() / w, sa.value() / w, sga.value() / w,
                         with_frac ? sgf.value() / w : 0.0});
    }
    return by_k_[static_cast<std::size_t>(k)];
}

double cdf_bracket(double z, double lambda_x, double lambda_y, SideSeries* u, SideSeries* v,
                   const SeriesControl& ctl, double abs_scale)
{
    const double log_z = std::log(z);
    const double log_lxly = std::log(lambda_x) + std::log(lambda_y);
    const double ell = log_z - 0.5 * log_lxly;
    SeriesMonitor mon(ctl, 1.0, abs_scale);
    for (int k = 0; k <= ctl.k_max; ++k) {
        double log_env = log_series_coef(k, log_z, log_lxly);
        double br = 2.0 * (ell - specfun::psi_k(k));
        for (SideSeries* s : {u, v}) {
            if (!s)
                continue;
            const auto& m = s->moments(k, false);
            log_env += m.log_w;
            br += m.g;
        }
        if (mon.push(k, log_env, std::exp(log_env) * br))
            return mon.value();
    }
    return mon.finish(ctl.k_max);
}

double pdf_bracket(double z, double lambda_x, double lambda_y, SideSeries* u, SideSeries* v,
                   const SeriesControl& ctl, double abs_scale)
{
    const double log_z = std::log(z);
    const double log_lxly = std::log(lambda_x) + std::log(lambda_y);
    const double ell = log_z - 0.5 * log_lxly;
    double head = 1.0 / lambda_x + 1.0 / lambda_y;
    for (SideSeries* s : {u, v})
        if (s)
            head += s->shape() * s->coupling() / z;
    SeriesMonitor mon(ctl, head, abs_scale);
    const double drift = z * (lambda_x + lambda_y) / (lambda_x * lambda_y);
    for (int k = 0; k <= ctl.k_max; ++k) {
        double log_env = log_series_coef(k, log_z, log_lxly) - log_z;
        const double big_l = 2.0 * (ell - specfun::psi_k(k));
        const double k0 = 2.0 * k + 2.0 - drift;
        SideSeries::Moments mu{0.0, 0.0, 0.0, 0.0, 0.0};
        SideSeries::Moments mv{0.0, 0.0, 0.0, 0.0, 0.0};
        double cu = 0.0;
        double cv = 0.0;
        if (u) {
            mu = u->moments(k, true);
            cu = u->coupling();
        }
        if (v) {
            mv = v->moments(k, true);
            cv = v->coupling();
        }
        log_env += mu.log_w + mv.log_w;
        // E over the product measure of
        //   2 + (L + g_u + g_v)(K0 - a_u - a_v) - c_u gf_u - c_v gf_v
        const double inner = 2.0 + big_l * (k0 - mu.a - mv.a) + (mu.g * k0 - mu.ga - mu.g * mv.a) +
                             (mv.g * k0 - mv.ga - mv.g * mu.a) - cu * mu.gf - cv * mv.gf;
        if (mon.push(k, log_env, -std::exp(log_env) * inner))
            return mon.value();
    }
    return mon.finish(ctl.k_max);
}

Mixture mixture_of(const HypoexpSum& sum)
{
    Mixture out;
    for (std::size_t i = 0; i < sum.spectrum.distinct(); ++i)
        for (int j = 1; j <= sum.spectrum.multiplicities[i]; ++j)
            if (const double x = sum.table(i, j); x != 0.0)
                out.push_back({x, static_cast<double>(j), sum.spectrum.distinct_means[i]});
    return out;
}

namespace {

// log E[exp(-s U)] for U = 1 + (sum drawn from the mixture). The top shape
// per distinct mean recovers the product form, which has no cancellation.
double log_mgf(const Mixture& m, double s)
{
    std::vector<std::pair<double, double>> top;  // (mean, largest shape)
    for (const auto& c : m) {
        auto it = std::find_if(top.begin(), top.end(), [&](const auto& t) { return t.first == c.mean; });
        if (it == top.end())
            top.emplace_back(c.mean, c.shape);
        else
            it->second = std::max(it->second, c.shape);
    }
    double acc = -s;
    for (const auto& [mean, shape] : top)
        acc -= shape * std::log1p(s * mean);
    return acc;
}

template <class Bracket>
double mix(double z, double lambda_x, double lambda_y, const Mixture& u, const Mixture& v, Bracket&& bracket)
{
    std::vector<SideSeries> us;
    std::vector<SideSeries> vs;
    for (const auto& c : u)
        us.emplace_back(c.shape, c.mean, lambda_y, z);
    for (const auto& c : v)
        vs.emplace_back(c.shape, c.mean, lambda_x, z);
    const double base = -z * (1.0 / lambda_x + 1.0 / lambda_y);
    CompensatedSum acc;
    const std::size_t nu = std::max<std::size_t>(1, u.size());
    const std::size_t nv = std::max<std::size_t>(1, v.size());
    for (std::size_t a = 0; a < nu; ++a) {
        SideSeries* su = u.empty() ? nullptr : &us[a];
        const double cu = u.empty() ? 1.0 : u[a].coef;
        for (std::size_t b = 0; b < nv; ++b) {
            SideSeries* sv = v.empty() ? nullptr : &vs[b];
            const double cv = v.empty() ? 1.0 : v[b].coef;
            const double log_pre = base + (su ? su->log_prefactor() : 0.0) + (sv ? sv->log_prefactor() : 0.0);
            const double weight = cu * cv * std::exp(log_pre);
            acc.add(weight * bracket(su, sv, std::abs(weight)));
        }
    }
    return acc.value();
}

}  // namespace

double survival(double z, double lambda_x, double lambda_y, const Mixture& u, const Mixture& v,
                const SeriesControl& ctl)
{
    if (!(z >= 0.0))
        throw DomainError("SINR abscissa must be nonnegative");
    if (z == 0.0)
        return 1.0;
    if (u.empty() && v.empty())
        return 1.0 - cdf_no_interference(z, lambda_x, lambda_y);
    if (log_mgf(u, z / lambda_y) + log_mgf(v, z / lambda_x) < std::log(kTailCut))
        return 0.0;
    return mix(z, lambda_x, lambda_y, u, v,
               [&](SideSeries* su, SideSeries* sv, double scale) { return cdf_bracket(z, lambda_x, lambda_y, su, sv, ctl, scale); });
}

double density(double z, double lambda_x, double lambda_y, const Mixture& u, const Mixture& v,
               const SeriesControl& ctl)
{
    if (!(z > 0.0))
        throw DomainError("density requires a positive abscissa");
    if (u.empty() && v.empty())
        return pdf_no_interference(z, lambda_x, lambda_y);
    return mix(z, lambda_x, lambda_y, u, v,
               [&](SideSeries* su, SideSeries* sv, double scale) { return pdf_bracket(z, lambda_x, lambda_y, su, sv, ctl, scale); });
}

double survival_iid_direct(double gamma, double lambda1, double lambda2, double s1, double a1, double s2,
                           double a2, const SeriesControl& ctl)
{
    if (!(gamma >= 0.0))
        throw DomainError("SINR abscissa must be nonnegative");
    if (!(s1 > 0.0) || !(s2 > 0.0) || !(a1 > 0.0) || !(a2 > 0.0) || !(lambda1 > 0.0) || !(lambda2 > 0.0))
        throw DomainError("i.i.d. closed form requires positive shapes, scales and hop means");
    if (gamma == 0.0)
        return 1.0;

    const double beta1 = lambda1 * a1 / (lambda1 + gamma * a1);
    const double beta2 = lambda2 * a2 / (lambda2 + gamma * a2);
    const double log_pre = -gamma * (1.0 / lambda1 + 1.0 / lambda2) - s1 * std::log1p(gamma * a1 / lambda1) -
                           s2 * std::log1p(gamma * a2 / lambda2);
    if (log_pre < std::log(kTailCut))
        return 0.0;
    const double log_z = std::log(gamma);
    const double log_l12 = std::log(lambda1) + std::log(lambda2);
    const double ell = log_z - 0.5 * log_l12;

    // r indexes side 1, n indexes side 2.
    std::vector<double> lw1, lw2, g1, g2;
    auto grow = [&](int top) {
        for (int r = static_cast<int>(lw1.size()); r <= top; ++r) {
            lw1.push_back(std::lgamma(s1 + r) - std::lgamma(s1) + r * std::log(beta1));
            g1.push_back(ln_family(s1 + r, beta1));
            lw2.push_back(std::lgamma(s2 + r) - std::lgamma(s2) + r * std::log(beta2));
            g2.push_back(ln_family(s2 + r, beta2));
        }
    };

    SeriesMonitor mon(ctl, 1.0, std::exp(log_pre));
    for (int k = 0; k <= ctl.k_max; ++k) {
        grow(k + 1);
        const double ck = log_series_coef(k, log_z, log_l12);
        const double lk = 2.0 * (ell - specfun::psi_k(k));
        CompensatedSum term;
        double env = 0.0;
        for (int n = 0; n <= k + 1; ++n) {
            const auto un = static_cast<std::size_t>(n);
            const double ln_n = ck + log_binom(k + 1, n) + lw2[un];
            for (int r = 0; r <= k + 1; ++r) {
                const auto ur = static_cast<std::size_t>(r);
                const double w = std::exp(ln_n + log_binom(k + 1, r) + lw1[ur]);
                env += w;
                term.add(w * (lk + g2[un] + g1[ur]));
            }
        }
        if (mon.push(k, std::log(env), term.value()))
            return std::exp(log_pre) * mon.value();
    }
    return std::exp(log_pre) * mon.finish(ctl.k_max);
}

double cdf_from_survival(double sf)
{
    const double f = 1.0 - sf;
    if (!std::isfinite(f) || f < -1e-9 || f > 1.0 + 1e-9)
        throw SeriesDivergence("CDF value " + std::to_string(f) + " outside [0, 1]", f, -1);
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace relay_sinr::detail
