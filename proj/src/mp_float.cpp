#include "necklace/mp_float.hpp"

#include <mpfr.h>

namespace necklace::mp {

namespace {

struct Mp {
    mpfr_t v;
    explicit Mp(long bits) { mpfr_init2(v, bits); }
    ~Mp() { mpfr_clear(v); }
    Mp(const Mp&) = delete;
    Mp& operator=(const Mp&) = delete;
};

} // namespace

double alternating_trig_sum(int k, int n, double x, int j0, int j1, int sign_even, long bits)
{
    Mp pi(bits), x2(bits), ang(bits), s(bits), t(bits), acc(bits);
    mpfr_const_pi(pi.v, MPFR_RNDN);
    mpfr_set_d(x2.v, x, MPFR_RNDN);
    mpfr_sqr(x2.v, x2.v, MPFR_RNDN);
    mpfr_set_zero(acc.v, 1);
    for (int j = j0; j < j1; ++j) {
        mpfr_mul_si(ang.v, pi.v, j, MPFR_RNDN);
        mpfr_div_si(ang.v, ang.v, n, MPFR_RNDN);
        mpfr_sin(s.v, ang.v, MPFR_RNDN);
        mpfr_sqr(s.v, s.v, MPFR_RNDN);
        mpfr_add(s.v, s.v, x2.v, MPFR_RNDN);
        // t = s^{-k/2}
        mpfr_rec_sqrt(t.v, s.v, MPFR_RNDN);
        if (k > 1)
            mpfr_pow_ui(t.v, t.v, static_cast<unsigned long>(k), MPFR_RNDN);
        const bool neg = ((j % 2 == 0) ? sign_even : -sign_even) < 0;
        if (neg)
            mpfr_sub(acc.v, acc.v, t.v, MPFR_RNDN);
        else
            mpfr_add(acc.v, acc.v, t.v, MPFR_RNDN);
    }
    return mpfr_get_d(acc.v, MPFR_RNDN);
}

} // namespace necklace::mp
