#pragma once
#include "necklace/estimate.hpp"

#include <string>

namespace necklace {

enum class SumVariant { odd, even, even_hat, alt, alt_hat };

SumVariant parse_variant(const std::string& s);
std::string to_string(SumVariant v);

struct SumSpec {
    SumVariant variant = SumVariant::odd;
    int k = 1;
    int n = 4;
    double x = 0;
};

// Throws DomainError for invalid specs (k not in {1,3,5}, n odd or < 4, x < 0,
// x = 0 with even/alt).
void validate(const SumSpec& s);

double sum_direct(const SumSpec& s);

// Convenience wrappers.
double s_odd(int k, int n, double x);
double s_even(int k, int n, double x);
double s_even_hat(int k, int n, double x);
double s_alt(int k, int n, double x);
double s_alt_hat(int k, int n, double x = 0);

// S_1(n, x) through the substituted contour integral.
double s1_contour(int n, double x);

// Leading large-nx asymptotic of S_k(n, x); warns when nx < 5.
Estimate s_asym(int k, int n, double x);

// Leading large-n asymptotic of the x = 0 cosecant sums.
double csc_asym(SumVariant v, int k, int n);

double csc_full_sum(int m);

struct RoughBound {
    double total = 0;  // S^o_k + S^e_k
    double scale = 0;  // n max(|log x|, 1) or n x^{1-k}
    double ratio = 0;
};
RoughBound rough_bound_check(int k, int n, double x);

// sum_{j=0}^{m-1} (h^2 + sin^2(j pi/m - theta/2))^{-1/2}
Estimate appendix_h_sum(int m, double theta, double h);

} // namespace necklace
