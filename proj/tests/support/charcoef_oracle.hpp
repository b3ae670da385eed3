#pragma once

// Partial-fraction coefficients recovered by collocation: the identity
//   prod_l (1 + mean_l s)^-1 = sum_i sum_j X(i, j) (1 + m_i s)^-j
// is imposed at as many points s as there are unknowns and the dense linear
// system is solved in 100-digit arithmetic.

#include "relay_sinr/charcoef.hpp"

namespace oracle {

relay_sinr::CharCoeffTable charcoef_oracle(const relay_sinr::InterferenceSpectrum& spectrum);

}  // namespace oracle
