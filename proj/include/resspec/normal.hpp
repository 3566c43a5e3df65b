#pragma once

namespace resspec {

// P(Z >= z) for standard normal Z, via erfc (abs error < 1e-12).
double normal_upper_tail(double z);

// Upper alpha-quantile: z with P(Z >= z) = alpha, 0 < alpha < 1.
// Rational approximation (AS 241 style), |abs error| < 1e-9 refined by one
// Newton step to ~1e-15.
double normal_upper_quantile(double alpha);

}  // namespace resspec
