#pragma once

// Closed-form distributions of the end-to-end SINR.
//
//   W = X Y / (X + Y U)        interference at one node
//   Z = X Y / (X U + Y V)      interference at both nodes
//
// X ~ Exp(mean lambda_x), Y ~ Exp(mean lambda_y), U and V are one plus a
// hypoexponential sum of interferer INRs. Each CDF is one minus a finite
// mixture of terms times an infinite k-series coming from the small-argument
// expansion of x K1(x); SeriesControl decides where that series stops.

#include "relay_sinr/charcoef.hpp"
#include "relay_sinr/model.hpp"

namespace relay_sinr {

struct SeriesControl
{
    enum class Mode { FixedK, Adaptive };

    int k_max = 100;
    double rel_tol = 1e-12;
    Mode mode = Mode::FixedK;

    void validate() const;

    static SeriesControl fixed(int k) { return {k, 1e-12, Mode::FixedK}; }
    static SeriesControl adaptive(double tol = 1e-12, int cap = 1000) { return {cap, tol, Mode::Adaptive}; }
};

/// U pairs with lambda_x.
struct Sm1Params
{
    double lambda_x;
    double lambda_y;
    HypoexpSum interference;
};

/// U (relay side) pairs with lambda_y, V (destination side) with lambda_x.
struct Sm2Params
{
    double lambda_x;
    double lambda_y;
    HypoexpSum relay;
    HypoexpSum dest;
};

double cdf_sm1(double w, const Sm1Params& params, const SeriesControl& ctl = {});
double sf_sm1(double w, const Sm1Params& params, const SeriesControl& ctl = {});
double pdf_sm1(double w, const Sm1Params& params, const SeriesControl& ctl = {});

double cdf_sm2(double z, const Sm2Params& params, const SeriesControl& ctl = {});
double sf_sm2(double z, const Sm2Params& params, const SeriesControl& ctl = {});
double pdf_sm2(double z, const Sm2Params& params, const SeriesControl& ctl = {});

/// i.i.d. Rayleigh interferers, L at each node, equal hop means.
double cdf_sm2_iid_equal(double gamma, double lambda, double lambda_i, int count, const SeriesControl& ctl = {});

/// i.i.d. Nakagami-m interferers: count1 at the relay with mean INR inr1 and
/// shape m1, count2 at the destination likewise. Relay interference pairs
/// with the first hop.
struct NakagamiParams
{
    double lambda1;
    double lambda2;
    double inr1;
    double inr2;
    double m1;
    double m2;
    int count1;
    int count2;
};

double cdf_nakagami(double gamma, const NakagamiParams& params, const SeriesControl& ctl = {});

double cdf_no_interference(double w, double lambda_x, double lambda_y);
double pdf_no_interference(double w, double lambda_x, double lambda_y);

/// Distribution of the SINR for a physical configuration. SM1 places
/// interferers at the relay only; `dest` must then be empty. Nakagami
/// populations must be i.i.d. (one mean per node).
double sinr_cdf(double gamma, const NetworkConfig& config, const InterfererPopulation& relay,
                const InterfererPopulation& dest, const SeriesControl& ctl = {});
double sinr_pdf(double gamma, const NetworkConfig& config, const InterfererPopulation& relay,
                const InterfererPopulation& dest, const SeriesControl& ctl = {});

double outage_probability(const NetworkConfig& config, const InterfererPopulation& relay,
                          const InterfererPopulation& dest, const ThresholdSpec& spec,
                          const SeriesControl& ctl = {});

}  // namespace relay_sinr
