#pragma once

namespace necklace::mp {

// sum_{j=j0}^{j1-1} s_j (x^2 + sin^2(j pi / n))^{-k/2} with s_j = (-1)^j * sign_even,
// evaluated with MPFR at `bits` of precision and rounded to double.
double alternating_trig_sum(int k, int n, double x, int j0, int j1, int sign_even, long bits);

} // namespace necklace::mp
