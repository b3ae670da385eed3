#pragma once

// Shared evaluator for the k-series in the SM1/SM2 closed forms.
//
// Every closed form in this library is a finite mixture over pairs of
// "sides". A side is the interference at one node restricted to a single
// Gamma(shape, mean) component of its hypoexponential law, together with the
// hop mean it pairs with. The (n, r) binomial double sums factor over the
// two sides, so each side only needs its own per-k moments.

#include <optional>
#include <vector>

#include "relay_sinr/analytic.hpp"

namespace relay_sinr::detail {

class SideSeries
{
  public:
    struct Moments
    {
        double log_w;  // log sum_n C(k+1, n) Gamma(shape+n)/Gamma(shape) beta^n
        double g;      // weighted mean of the normalized ln-family Meijer-G
        double a;      // weighted mean of (shape + n) * coupling
        double ga;     // weighted mean of g_n * a_n
        double gf;     // weighted mean of the normalized frac-family Meijer-G
    };

    SideSeries(double shape, double mean, double pair, double z);

    /// shape * ln(pair / (pair + z mean))
    double log_prefactor() const { return log_prefactor_; }
    /// z mean / (pair + z mean)
    double coupling() const { return coupling_; }
    double shape() const { return shape_; }

    const Moments& moments(int k, bool with_frac);

  private:
    void extend(int n_max, bool with_frac);

    double shape_;
    double beta_;
    double log_beta_;
    double coupling_;
    double log_prefactor_;
    std::vector<double> log_w_;
    std::vector<double> g_;
    std::vector<double> gf_;
    std::vector<Moments> by_k_;
    bool frac_moments_ = false;
};

/// 1 + sum_k T_k for one mixture component. Either side may be absent.
/// abs_scale is the factor multiplying the bracket in the final result.
double cdf_bracket(double z, double lambda_x, double lambda_y, SideSeries* u, SideSeries* v,
                   const SeriesControl& ctl, double abs_scale = 1.0);

/// The PDF bracket: A - sum_k D_k.
double pdf_bracket(double z, double lambda_x, double lambda_y, SideSeries* u, SideSeries* v,
                   const SeriesControl& ctl, double abs_scale = 1.0);

struct Component
{
    double coef;
    double shape;
    double mean;
};

/// Empty mixture: the node sees no interference.
using Mixture = std::vector<Component>;

Mixture mixture_of(const HypoexpSum& sum);

/// Survival values are reported as 0 once the bound
/// P(Y > zU) P(X > zV) drops below this; the k-series cannot resolve them.
inline constexpr double kTailCut = 1e-12;

/// P(XY / (XU + YV) > z) with U drawn from `u` (paired with lambda_y) and V
/// from `v` (paired with lambda_x).
double survival(double z, double lambda_x, double lambda_y, const Mixture& u, const Mixture& v,
                const SeriesControl& ctl);
double density(double z, double lambda_x, double lambda_y, const Mixture& u, const Mixture& v,
               const SeriesControl& ctl);

/// Direct transcription of the i.i.d. two-node closed form: a triple sum
/// over (k, n, r) with shapes s1, s2 and scales a1, a2. Side 1 pairs with
/// lambda1, side 2 with lambda2.
double survival_iid_direct(double gamma, double lambda1, double lambda2, double s1, double a1, double s2,
                           double a2, const SeriesControl& ctl);

/// Maps a survival value to a CDF, rejecting out-of-range results.
double cdf_from_survival(double sf);

}  // namespace relay_sinr::detail
