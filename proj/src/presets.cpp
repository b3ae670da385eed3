#include <cstdio>
#include <functional>

#include "relay_sinr/scenario.hpp"

namespace relay_sinr::cli {

namespace {

constexpr const char* kGridNote = "1 dB grid steps; figure grid densities are not published";

Scenario base_outage(double snr_lo, double snr_hi)
{
    Scenario s;
    s.model = SystemModel::SM2;
    s.metric = Metric::Outage;
    s.axis = Axis::TotalSnrDb;
    s.sweep = {snr_lo, snr_hi, 1.0};
    s.inr_db = {3.0};
    s.producers = {Producer::Analytic, Producer::MonteCarlo};
    s.mc_samples = 1000000;
    s.op_floor = 1e-5;
    // k = 100 stops short where the Bessel argument is large (deep outage).
    s.series = SeriesControl::adaptive(1e-12, 1000);
    s.grid_note = kGridNote;
    return s;
}

std::string fmt(const char* pattern, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

Preset fig_b()
{
    Preset p{"fig-b", "outage vs total SNR, sm1 and sm2, 4/8/16 interferers in total, INR 3 dB", {}};
    for (int total : {4, 8, 16}) {
        Scenario s = base_outage(0, 70);
        s.model = SystemModel::SM1;
        s.l1 = total;
        s.l2 = 0;
        s.name = "sm1_L" + std::to_string(total);
        p.series.push_back({s.name, s});
    }
    for (int total : {4, 8, 16}) {
        Scenario s = base_outage(0, 70);
        s.l1 = total / 2;
        s.l2 = total / 2;
        s.name = "sm2_L" + std::to_string(total / 2) + "+" + std::to_string(total / 2);
        p.series.push_back({s.name, s});
    }
    return p;
}

Preset fig_c()
{
    Preset p{"fig-c", "outage vs total SNR, sm2, 4+4 interferers, INR 3/6/9/12 dB", {}};
    for (double inr : {3.0, 6.0, 9.0, 12.0}) {
        Scenario s = base_outage(10, 80);
        s.l1 = s.l2 = 4;
        s.inr_db = {inr};
        s.name = fmt("inr_%gdB", inr);
        p.series.push_back({s.name, s});
    }
    return p;
}

Preset fig_d()
{
    Preset p{"fig-d", "outage vs total SNR, sm2, INR 3 dB, L+L interferers and a crowded destination", {}};
    for (int l : {4, 8, 12, 16}) {
        Scenario s = base_outage(10, 80);
        s.l1 = s.l2 = l;
        s.name = "L" + std::to_string(l) + "+" + std::to_string(l);
        p.series.push_back({s.name, s});
    }
    for (int l2 : {100, 1000, 10000}) {
        Scenario s = base_outage(30, 100);
        s.l1 = 4;
        s.l2 = l2;
        s.name = "L4+" + std::to_string(l2);
        p.series.push_back({s.name, s});
    }
    return p;
}

Preset fig_h()
{
    Preset p{"fig-h", "outage vs interferer count L = L1 = L2, INR 3 dB, total SNR 20..60 dB", {}};
    for (double snr : {20.0, 30.0, 40.0, 50.0, 60.0}) {
        Scenario s = base_outage(0, 0);
        s.axis = Axis::Interferers;
        s.sweep = {1, 48, 1};
        s.l2_tied = true;
        s.total_snr_db = snr;
        s.name = fmt("snr_%gdB", snr);
        s.grid_note = "unit steps in L";
        p.series.push_back({s.name, s});
    }
    return p;
}

Preset fig_i()
{
    Preset p{"fig-i", "outage vs per-interferer power, 4+4 interferers, with noise and interference limited", {}};
    for (double snr : {20.0, 30.0, 40.0}) {
        for (bool limited : {false, true}) {
            Scenario s = base_outage(0, 0);
            s.axis = Axis::InterfererPowerDb;
            s.sweep = {-30, 30, 1};
            s.l1 = s.l2 = 4;
            s.total_snr_db = snr;
            s.noise = limited ? 1e-12 : 1.0;
            s.op_floor.reset();
            s.name = fmt("snr_%gdB", snr) + (limited ? "_interference_limited" : "_noisy");
            p.series.push_back({s.name, s});
        }
    }
    return p;
}

Preset fig_e()
{
    Preset p{"fig-e", "SINR density, sm2, 4+4 interferers, total SNR 20/25 dB, INR 3/6/9 dB", {}};
    for (double snr : {20.0, 25.0}) {
        for (double inr : {3.0, 6.0, 9.0}) {
            Scenario s = base_outage(0, 0);
            s.metric = Metric::Pdf;
            s.axis = Axis::Sinr;
            s.sweep = {0.25, 15.0, 0.25};
            s.l1 = s.l2 = 4;
            s.total_snr_db = snr;
            s.inr_db = {inr};
            s.op_floor.reset();
            s.grid_note = "0.25 linear SINR steps; figure grid densities are not published";
            s.name = fmt("snr_%gdB", snr) + fmt("_inr_%gdB", inr);
            p.series.push_back({s.name, s});
        }
    }
    return p;
}

Preset fig_f()
{
    Preset p{"fig-f", "SINR CDF, sm2, 4+4 interferers, total SNR 20/30 dB, INR 3/6/9 dB", {}};
    for (double snr : {20.0, 30.0}) {
        for (double inr : {3.0, 6.0, 9.0}) {
            Scenario s = base_outage(0, 0);
            s.metric = Metric::Cdf;
            s.axis = Axis::SinrDb;
            s.sweep = {-10, 30, 1};
            s.l1 = s.l2 = 4;
            s.total_snr_db = snr;
            s.inr_db = {inr};
            s.op_floor.reset();
            s.name = fmt("snr_%gdB", snr) + fmt("_inr_%gdB", inr);
            p.series.push_back({s.name, s});
        }
    }
    return p;
}

Preset fig_g()
{
    Preset p{"fig-g", "outage vs total SNR, sm2, Nakagami-m interferers, INR 3 dB", {}};
    for (int l : {2, 4, 8}) {
        for (double m : {1.0, 2.0, 5.0}) {
            Scenario s = base_outage(10, 80);
            s.nakagami = true;
            s.m1 = s.m2 = m;
            s.l1 = s.l2 = l;
            s.name = "L" + std::to_string(l) + "+" + std::to_string(l) + fmt("_m%g", m);
            p.series.push_back({s.name, s});
        }
    }
    return p;
}

const std::vector<std::pair<std::string, std::function<Preset()>>>& registry()
{
    static const std::vector<std::pair<std::string, std::function<Preset()>>> r{
        {"fig-b", fig_b}, {"fig-c", fig_c}, {"fig-d", fig_d}, {"fig-h", fig_h},
        {"fig-i", fig_i}, {"fig-e", fig_e}, {"fig-f", fig_f}, {"fig-g", fig_g},
    };
    return r;
}

}  // namespace

std::vector<std::string> preset_names()
{
    std::vector<std::string> out;
    for (const auto& [name, make] : registry())
        out.push_back(name);
    return out;
}

Preset figure_preset(const std::string& name)
{
    for (const auto& [n, make] : registry())
        if (n == name)
            return make();
    std::string valid;
    for (const auto& n : preset_names())
        valid += (valid.empty() ? "" : ", ") + n;
    throw SchemaError("/", "unknown preset \"" + name + "\"; valid presets: " + valid);
}

}  // namespace relay_sinr::cli
