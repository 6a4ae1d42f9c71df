#include "necklace/special_functions.hpp"
#include "necklace/errors.hpp"
#include "necklace/summation.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

namespace necklace {

namespace {

// Kronrod 15-point abscissae and weights, Gauss 7-point weights (QUADPACK qk15).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(const F& f, double a, double b)
{
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = fc * wgk[7];
    double resg = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const double f1 = f(c - dx), f2 = f(c + dx);
        resk += wgk[j] * (f1 + f2);
        if (j % 2 == 1)
            resg += wg[j / 2] * (f1 + f2);
    }
    const double err = std::fabs((resk - resg) * h);
    return {a, b, resk * h, err};
}

template <class F>
QuadratureResult adapt(const F& f, double a, double b, const QuadratureConfig& cfg)
{
    std::priority_queue<Segment> heap;
    Segment s0 = gk15(f, a, b);
    heap.push(s0);
    double total = s0.value, err = s0.error;
    int evals = 15;
    int nsub = 1;
    auto target = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total)); };
    while (err > target()) {
        if (nsub >= cfg.max_subdivisions)
            throw AccuracyError("integrate: no convergence within " +
                                    std::to_string(cfg.max_subdivisions) + " subdivisions",
                                total, err);
        Segment s = heap.top();
        heap.pop();
        const double mid = 0.5 * (s.a + s.b);
        if (!(mid > s.a && mid < s.b))
            throw AccuracyError("integrate: interval underflow", total, err);
        Segment l = gk15(f, s.a, mid), r = gk15(f, mid, s.b);
        evals += 30;
        ++nsub;
        heap.push(l);
        heap.push(r);
        // Re-sum from the heap contents to avoid drift from incremental updates.
        total += l.value + r.value - s.value;
        err += l.error + r.error - s.error;
        if (nsub % 64 == 0) {
            KahanAccumulator tv, te;
            auto copy = heap;
            while (!copy.empty()) {
                tv += copy.top().value;
                te += copy.top().error;
                copy.pop();
            }
            total = tv.result();
            err = te.result();
        }
    }
    KahanAccumulator tv, te;
    while (!heap.empty()) {
        tv += heap.top().value;
        te += heap.top().error;
        heap.pop();
    }
    return {tv.result(), te.result(), evals};
}

} // namespace

QuadratureResult integrate_report(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureConfig& cfg)
{
    if (!(cfg.abs_tol > 0) || !(cfg.rel_tol > 0) || cfg.max_subdivisions < 1)
        throw DomainError("integrate: tolerances must be positive");
    if (std::isinf(b)) {
        if (b < 0)
            throw DomainError("integrate: lower-infinite ranges unsupported");
        // t = a + s/(1-s)
        auto g = [&](double s) {
            const double om = 1.0 - s;
            const double v = f(a + s / om);
            return v == 0.0 ? 0.0 : v / (om * om);
        };
        return adapt(g, 0.0, 1.0, cfg);
    }
    if (!(b >= a))
        throw DomainError("integrate: b < a");
    if (a == b)
        return {0.0, 0.0, 0};
    return adapt(f, a, b, cfg);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& cfg)
{
    return integrate_report(f, a, b, cfg).value;
}

double elliptic_k_log_series(double sigma)
{
    const double kp2 = (1.0 - sigma) * (1.0 + sigma);
    const double L = std::log(4.0 / std::sqrt(kp2));
    KahanAccumulator acc;
    double c = 1.0; // binom(-1/2, l)^2
    double b = 0.0;
    double pw = 1.0;
    for (int l = 0; l < 200; ++l) {
        if (l > 0) {
            const double r = (2.0 * l - 1.0) / (2.0 * l);
            c *= r * r;
            b += 2.0 / (2.0 * l * (2.0 * l - 1.0));
            pw *= kp2;
        }
        const double term = c * (L - b) * pw;
        acc += term;
        if (l > 2 && std::fabs(term) < 1e-18 * std::fabs(acc.result()))
            break;
    }
    return acc.result();
}

double elliptic_k(double sigma, const QuadratureConfig& cfg)
{
    if (!(sigma >= 0.0) || sigma >= 1.0)
        throw DomainError("elliptic_k: modulus must lie in [0, 1)");
    if (sigma > 0.9)
        return elliptic_k_log_series(sigma);
    const double s2 = sigma * sigma;
    return integrate([s2](double phi) {
        const double sn = std::sin(phi);
        return 1.0 / std::sqrt(1.0 - s2 * sn * sn);
    }, 0.0, M_PI / 2, cfg);
}

namespace {

// sqrt(pi/2t) e^{-t} sum_k prod_{i<=k} (4nu^2 - (2i-1)^2) / (k! (8t)^k), stopped at the smallest term.
double bessel_k_asym(int nu, double t)
{
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double next = term * (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * t);
        if (std::fabs(next) >= std::fabs(term))
            break;
        term = next;
        sum += term;
        if (std::fabs(term) < 1e-18)
            break;
    }
    return std::sqrt(M_PI / (2 * t)) * std::exp(-t) * sum;
}

double k0_upper(double t, const QuadratureConfig& cfg)
{
    const double cut = 40.0 + std::fabs(std::log(cfg.rel_tol));
    return std::acosh(std::max(cut / t, 1.0 + 1e-12));
}

} // namespace

double bessel_k0(double t, const QuadratureConfig& cfg)
{
    if (!(t > 0))
        throw DomainError("bessel_k0: t must be positive");
    if (t > 30)
        return bessel_k_asym(0, t);
    QuadratureConfig c = cfg;
    c.abs_tol = 1e-300;
    return integrate([t](double u) { return std::exp(-t * std::cosh(u)); }, 0.0, k0_upper(t, cfg), c);
}

double bessel_k0_prime(double t, const QuadratureConfig& cfg)
{
    if (!(t > 0))
        throw DomainError("bessel_k0_prime: t must be positive");
    if (t > 30)
        return -bessel_k_asym(1, t);
    QuadratureConfig c = cfg;
    c.abs_tol = 1e-300;
    return -integrate([t](double u) {
        const double ch = std::cosh(u);
        return std::exp(-t * ch) * ch;
    }, 0.0, k0_upper(t, cfg), c);
}

double zeta_const(int s)
{
    switch (s) {
    case 3: return 1.2020569031595942853997381615114;
    case 5: return 1.0369277551433699263313654864570;
    default: throw UnsupportedError("zeta_const: only s = 3 and s = 5 are provided");
    }
}

double euler_gamma() { return 0.57721566490153286060651209008240; }

} // namespace necklace
