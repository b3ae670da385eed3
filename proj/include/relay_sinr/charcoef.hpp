#pragma once

// Characteristic coefficients of a diagonal matrix of mean INRs and the
// density of the shifted sum 1 + sum_l Exp(mean_l).
//
// For distinct means m_1 > ... > m_d with multiplicities t_1..t_d the
// coefficients X(i, j) are defined by the partial-fraction identity
//
//   prod_l (1 + mean_l s)^-1 = sum_i sum_{j=1..t_i} X(i, j) (1 + m_i s)^-j ,
//
// so the summed interference is a signed mixture of Gamma(j, m_i) laws.

#include <span>
#include <vector>

namespace relay_sinr {

inline constexpr double kDefaultGroupingTol = 1e-9;

struct InterferenceSpectrum
{
    std::vector<double> distinct_means;  // strictly decreasing
    std::vector<int> multiplicities;

    int total() const;
    bool empty() const { return distinct_means.empty(); }
    std::size_t distinct() const { return distinct_means.size(); }
};

/// coeffs[i][j - 1] holds X(i + 1, j).
struct CharCoeffTable
{
    std::vector<std::vector<double>> coeffs;

    double operator()(std::size_t i, int j) const { return coeffs[i][static_cast<std::size_t>(j - 1)]; }
    double sum() const;
};

/// A spectrum together with its coefficient table.
struct HypoexpSum
{
    InterferenceSpectrum spectrum;
    CharCoeffTable table;

    static HypoexpSum from_means(std::span<const double> mean_inrs, double rel_tol = kDefaultGroupingTol);
    static HypoexpSum iid(double mean, int count);

    bool empty() const { return spectrum.empty(); }
};

InterferenceSpectrum group_spectrum(std::span<const double> mean_inrs, double rel_tol = kDefaultGroupingTol);

/// Residue expansion of each pole cluster. The Taylor coefficients of the
/// cofactor are generated by a log-derivative recursion carried out in
/// 50-digit arithmetic, so repeated poles do not lose digits.
CharCoeffTable characteristic_coefficients(const InterferenceSpectrum& spectrum,
                                           double rel_tol = kDefaultGroupingTol);

/// Density of U = 1 + sum of the exponentials, u >= 1. Throws DomainError for
/// u < 1 and for the empty spectrum, whose law is a point mass at 1.
double shifted_sum_pdf(double u, const InterferenceSpectrum& spectrum, const CharCoeffTable& table);
double shifted_sum_pdf(double u, const HypoexpSum& sum);

}  // namespace relay_sinr
