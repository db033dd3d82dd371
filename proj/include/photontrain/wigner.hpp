// Wigner 3j/6j symbols and Clebsch-Gordan coefficients over half-integer
// angular momenta. All quantum numbers are passed as doubled integers
// (two_j = 2j) so that half-integer arithmetic stays exact. Values are
// evaluated with the Racah sum formula in exact rational arithmetic and
// converted to double only at the end. Condon-Shortley phase convention.

#pragma once

namespace photontrain::wigner {

// Returns 0.0 when triangle or projection selection rules fail.
double three_j(int two_j1, int two_j2, int two_j3,
               int two_m1, int two_m2, int two_m3);

double six_j(int two_j1, int two_j2, int two_j3,
             int two_j4, int two_j5, int two_j6);

// <j1 m1; j2 m2 | J M>
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2,
                      int two_J, int two_M);

bool triangle_ok(int two_j1, int two_j2, int two_j3);

}  // namespace photontrain::wigner
