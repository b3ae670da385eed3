#include "relay_sinr/charcoef.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "relay_sinr/errors.hpp"

namespace relay_sinr {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

}  // namespace

int InterferenceSpectrum::total() const
{
    return std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
}

double CharCoeffTable::sum() const
{
    double s = 0.0;
    for (const auto& row : coeffs)
        for (double x : row)
            s += x;
    return s;
}

InterferenceSpectrum group_spectrum(std::span<const double> mean_inrs, double rel_tol)
{
    if (!(rel_tol >= 0.0 && rel_tol <= 1e-6))
        throw ConfigError("grouping tolerance must lie in [0, 1e-6]");
    std::vector<double> sorted(mean_inrs.begin(), mean_inrs.end());
    for (double v : sorted)
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError("mean INRs must be finite and positive");
    std::sort(sorted.begin(), sorted.end(), std::greater<>());

    InterferenceSpectrum out;
    std::size_t start = 0;
    while (start < sorted.size()) {
        std::size_t stop = start + 1;
        // Chain against the group head so the merged span stays within rel_tol.
        while (stop < sorted.size() && sorted[start] - sorted[stop] <= rel_tol * sorted[start])
            ++stop;
        double acc = 0.0;
        for (std::size_t k = start; k < stop; ++k)
            acc += sorted[k];
        out.distinct_means.push_back(acc / static_cast<double>(stop - start));
        out.multiplicities.push_back(static_cast<int>(stop - start));
        start = stop;
    }
    return out;
}

CharCoeffTable characteristic_coefficients(const InterferenceSpectrum& spectrum, double rel_tol)
{
    if (spectrum.empty())
        throw DomainError("characteristic coefficients need a nonempty spectrum");
    const std::size_t d = spectrum.distinct();
    if (spectrum.multiplicities.size() != d)
        throw ConfigError("spectrum means and multiplicities differ in length");
    for (std::size_t i = 0; i + 1 < d; ++i) {
        const double a = spectrum.distinct_means[i];
        const double b = spectrum.distinct_means[i + 1];
        if (!(a > b))
            throw ConfigError("spectrum means must be strictly decreasing");
        if (a - b <= rel_tol * a)
            throw IllConditioned("distinct means closer than the grouping tolerance; group the spectrum first");
    }

    CharCoeffTable table;
    table.coeffs.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        const Wide li = spectrum.distinct_means[i];
        const int ti = spectrum.multiplicities[i];
        // With e = 1 + li s the product is e^-ti * Phi(e), where
        //   Phi(e) = prod_{p != i} (1 - r_p + r_p e)^-t_p,  r_p = lp / li,
        // and X(i, j) is the Taylor coefficient c_{ti - j} of Phi at e = 0.
        std::vector<Wide> ratio;
        std::vector<int> mult;
        Wide c0 = 1;
        for (std::size_t p = 0; p < d; ++p) {
            if (p == i)
                continue;
            const Wide r = Wide(spectrum.distinct_means[p]) / li;
            ratio.push_back(r);
            mult.push_back(spectrum.multiplicities[p]);
            c0 /= boost::multiprecision::pow(1 - r, spectrum.multiplicities[p]);
        }
        // (log Phi)' = sum_m dlog[m] e^m with dlog[m] = sum_p t_p (-r_p / (1 - r_p))^{m+1}.
        std::vector<Wide> dlog(static_cast<std::size_t>(ti), Wide(0));
        for (std::size_t p = 0; p < ratio.size(); ++p) {
            const Wide q = -ratio[p] / (1 - ratio[p]);
            Wide pw = q;
            for (int m = 0; m < ti; ++m) {
                dlog[static_cast<std::size_t>(m)] += mult[p] * pw;
                pw *= q;
            }
        }
        std::vector<Wide> c(static_cast<std::size_t>(ti), Wide(0));
        c[0] = c0;
        for (int k = 0; k + 1 < ti && !ratio.empty(); ++k) {
            Wide acc = 0;
            for (int m = 0; m <= k; ++m)
                acc += dlog[static_cast<std::size_t>(m)] * c[static_cast<std::size_t>(k - m)];
            c[static_cast<std::size_t>(k + 1)] = acc / (k + 1);
        }
        auto& row = table.coeffs[i];
        row.resize(static_cast<std::size_t>(ti));
        for (int j = 1; j <= ti; ++j)
            row[static_cast<std::size_t>(j - 1)] = static_cast<double>(c[static_cast<std::size_t>(ti - j)]);
    }
    return table;
}

HypoexpSum HypoexpSum::from_means(std::span<const double> mean_inrs, double rel_tol)
{
    HypoexpSum out;
    out.spectrum = group_spectrum(mean_inrs, rel_tol);
    if (!out.spectrum.empty())
        out.table = characteristic_coefficients(out.spectrum, rel_tol);
    return out;
}

HypoexpSum HypoexpSum::iid(double mean, int count)
{
    if (count < 0)
        throw ConfigError("interferer count must be nonnegative");
    HypoexpSum out;
    if (count == 0)
        return out;
    if (!(mean > 0.0))
        throw DomainError("mean INR must be positive");
    out.spectrum.distinct_means = {mean};
    out.spectrum.multiplicities = {count};
    std::vector<double> row(static_cast<std::size_t>(count), 0.0);
    row.back() = 1.0;
    out.table.coeffs = {std::move(row)};
    return out;
}

double shifted_sum_pdf(double u, const InterferenceSpectrum& spectrum, const CharCoeffTable& table)
{
    if (!(u >= 1.0))
        throw DomainError("shifted sum density is supported on u >= 1");
    if (spectrum.empty())
        throw DomainError("empty spectrum: U is a point mass at 1 and has no pointwise density");
    const double s = u - 1.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < spectrum.distinct(); ++i) {
        const double m = spectrum.distinct_means[i];
        for (int j = 1; j <= spectrum.multiplicities[i]; ++j) {
            const double x = table(i, j);
            if (x == 0.0 || (j > 1 && s == 0.0))
                continue;
            double log_kernel = -s / m - std::lgamma(static_cast<double>(j)) - j * std::log(m);
            if (j > 1)
                log_kernel += (j - 1) * std::log(s);
            acc += x * std::exp(log_kernel);
        }
    }
    return acc;
}

double shifted_sum_pdf(double u, const HypoexpSum& sum) { return shifted_sum_pdf(u, sum.spectrum, sum.table); }

}  // namespace relay_sinr
