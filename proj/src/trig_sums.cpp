#include "necklace/trig_sums.hpp"
#include "necklace/errors.hpp"
#include "necklace/mp_float.hpp"
#include "necklace/special_functions.hpp"
#include "necklace/summation.hpp"

#include <cmath>
#include <string>

namespace necklace {

SumVariant parse_variant(const std::string& s)
{
    if (s == "odd") return SumVariant::odd;
    if (s == "even") return SumVariant::even;
    if (s == "even_hat") return SumVariant::even_hat;
    if (s == "alt") return SumVariant::alt;
    if (s == "alt_hat") return SumVariant::alt_hat;
    throw DomainError("unknown sum variant '" + s + "'");
}

std::string to_string(SumVariant v)
{
    switch (v) {
    case SumVariant::odd: return "odd";
    case SumVariant::even: return "even";
    case SumVariant::even_hat: return "even_hat";
    case SumVariant::alt: return "alt";
    case SumVariant::alt_hat: return "alt_hat";
    }
    return "?";
}

void validate(const SumSpec& s)
{
    if (s.k != 1 && s.k != 3 && s.k != 5)
        throw DomainError("trig sum: k must be 1, 3 or 5");
    if (s.n < 4 || s.n % 2 != 0)
        throw DomainError("trig sum: n must be even and >= 4");
    if (!(s.x >= 0) || !std::isfinite(s.x))
        throw DomainError("trig sum: x must be finite and >= 0");
    if (s.x == 0 && (s.variant == SumVariant::even || s.variant == SumVariant::alt))
        throw DomainError("trig sum: x = 0 makes the j = 0 term singular");
}

namespace {

double term(int k, int n, double x, int j)
{
    const double s = std::sin(j * M_PI / n);
    const double b = x * x + s * s;
    return k == 1 ? 1.0 / std::sqrt(b) : std::pow(b, -0.5 * k);
}

// j over {first, first+2, ...} < n/2 pairs; index into sin(index*pi/n).
double strided(int k, int n, double x, int first)
{
    KahanAccumulator acc;
    for (int i = first; i < n; i += 2)
        acc += term(k, n, x, i);
    return acc.result();
}

// Alternating sums cancel down to O(e^{-nx}) of their terms. Precision is doubled until two
// successive evaluations agree to well below double rounding.
double alternating(int k, int n, double x, int j0, int sign_even)
{
    long bits = 128 + static_cast<long>(1.5 * n * x);
    double prev = mp::alternating_trig_sum(k, n, x, j0, n, sign_even, bits);
    for (int it = 0; it < 8; ++it) {
        bits *= 2;
        const double cur = mp::alternating_trig_sum(k, n, x, j0, n, sign_even, bits);
        if (std::fabs(cur - prev) <= 1e-18 * std::fabs(cur))
            return cur;
        prev = cur;
    }
    return prev;
}

} // namespace

double sum_direct(const SumSpec& s)
{
    validate(s);
    switch (s.variant) {
    case SumVariant::odd: return strided(s.k, s.n, s.x, 1);
    case SumVariant::even: return strided(s.k, s.n, s.x, 0);
    case SumVariant::even_hat: return strided(s.k, s.n, s.x, 2);
    case SumVariant::alt: return alternating(s.k, s.n, s.x, 0, +1);
    case SumVariant::alt_hat: return alternating(s.k, s.n, s.x, 1, -1);
    }
    return 0;
}

double s_odd(int k, int n, double x) { return sum_direct({SumVariant::odd, k, n, x}); }
double s_even(int k, int n, double x) { return sum_direct({SumVariant::even, k, n, x}); }
double s_even_hat(int k, int n, double x) { return sum_direct({SumVariant::even_hat, k, n, x}); }
double s_alt(int k, int n, double x) { return sum_direct({SumVariant::alt, k, n, x}); }
double s_alt_hat(int k, int n, double x) { return sum_direct({SumVariant::alt_hat, k, n, x}); }

double s1_contour(int n, double x)
{
    if (!(x > 0))
        throw DomainError("s1_contour: x must be positive");
    if (n < 4 || n % 2 != 0)
        throw DomainError("s1_contour: n must be even and >= 4");
    const double a0 = std::asinh(x);
    // Cut where the csch factor has dropped by e^{-80} relative to u = 0.
    const double ucut = std::acosh(std::max(std::sinh(a0 + 80.0 / n) / x, 1.0 + 1e-15));
    auto f = [n, x](double u) {
        const double xc = x * std::cosh(u);
        const double y = n * std::asinh(xc);
        const double csch = y > 700 ? 2.0 * std::exp(-y) : 1.0 / std::sinh(y);
        return csch / std::sqrt(1.0 + xc * xc);
    };
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-300;
    cfg.rel_tol = 1e-13;
    cfg.max_subdivisions = 5000;
    return (2.0 * n / M_PI) * integrate(f, 0.0, ucut, cfg);
}

Estimate s_asym(int k, int n, double x)
{
    if (k != 1 && k != 3 && k != 5)
        throw DomainError("s_asym: k must be 1, 3 or 5");
    if (!(x > 0))
        throw DomainError("s_asym: x must be positive");
    const double t = n * x;
    const double c = std::sqrt(8.0 / M_PI) * std::exp(-t);
    Estimate e;
    switch (k) {
    case 1: e.value = c * n * std::pow(t, -0.5); break;
    case 3: e.value = c * std::pow(n, 3) * std::pow(t, -1.5); break;
    case 5: e.value = c * std::pow(n, 5) * std::pow(t, -2.5) / 3.0; break;
    }
    if (t < 5)
        e.warning = "s_asym: n*x = " + std::to_string(t) + " is below the asymptotic regime (5)";
    return e;
}

double csc_asym(SumVariant v, int k, int n)
{
    const double z3 = zeta_const(3), z5 = zeta_const(5);
    const double pi3 = M_PI * M_PI * M_PI, pi5 = pi3 * M_PI * M_PI;
    const double nd = n;
    if (v == SumVariant::odd && k == 3) return 7 * z3 * nd * nd * nd / (4 * pi3);
    if (v == SumVariant::odd && k == 5) return 93 * z5 * std::pow(nd, 5) / (48 * pi5);
    if (v == SumVariant::even_hat && k == 3) return z3 * nd * nd * nd / (4 * pi3);
    if (v == SumVariant::alt_hat && k == 1) return nd / M_PI * std::log(4.0);
    throw UnsupportedError("csc_asym: no leading term for (" + to_string(v) + ", " +
                           std::to_string(k) + ")");
}

double csc_full_sum(int m)
{
    if (m < 2)
        throw DomainError("csc_full_sum: m must be >= 2");
    KahanAccumulator acc;
    for (int j = 1; j < m; ++j)
        acc += 1.0 / std::sin(j * M_PI / m);
    return acc.result();
}

RoughBound rough_bound_check(int k, int n, double x)
{
    if (!(x > 0) || x > 1)
        throw DomainError("rough_bound_check: x must lie in (0, 1]");
    RoughBound r;
    r.total = s_odd(k, n, x) + s_even(k, n, x);
    r.scale = k == 1 ? n * std::max(std::fabs(std::log(x)), 1.0) : n * std::pow(x, 1.0 - k);
    r.ratio = r.total / r.scale;
    return r;
}

Estimate appendix_h_sum(int m, double theta, double h)
{
    if (m < 1 || !(h > 0))
        throw DomainError("appendix_h_sum: need m >= 1 and h > 0");
    KahanAccumulator acc;
    for (int j = 0; j < m; ++j) {
        const double s = std::sin(j * M_PI / m - 0.5 * theta);
        acc += 1.0 / std::sqrt(h * h + s * s);
    }
    Estimate e{acc.result(), std::nullopt};
    if (!(h > 1.0 / std::sqrt(double(m)) && h < 1.0 / 3.0) || !(theta > 0 && theta < M_PI / m))
        e.warning = "appendix_h_sum: (theta, h) outside 0 < theta < pi/m, m^{-1/2} < h < 1/3";
    return e;
}

} // namespace necklace
