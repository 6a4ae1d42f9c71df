#include "necklace/acceptance.hpp"
#include "necklace/crown.hpp"
#include "necklace/energy.hpp"
#include "necklace/kernels.hpp"
#include "necklace/nodal.hpp"
#include "necklace/trig_sums.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

namespace necklace {

namespace {

using Clock = std::chrono::steady_clock;

double fit_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

CriterionResult c1_series_constants()
{
    CriterionResult r{1, "series constants", true, "", 0};
    const auto t0 = Clock::now();
    std::ostringstream os;
    const int n = 2048;
    const double q1 = s_odd(3, n, 0) / csc_asym(SumVariant::odd, 3, n);
    const double q2 = s_even_hat(3, n, 0) / csc_asym(SumVariant::even_hat, 3, n);
    const double q3 = s_odd(5, n, 0) / csc_asym(SumVariant::odd, 5, n);
    for (double q : {q1, q2, q3})
        r.pass = r.pass && q >= 0.999 && q <= 1.001;
    double worst = 0;
    for (int m = 256; m <= 4096; m *= 2)
        worst = std::max(worst, std::fabs(s_alt_hat(1, m) - csc_asym(SumVariant::alt_hat, 1, m)));
    r.pass = r.pass && worst <= 2.0;
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    r.pass = r.pass && r.seconds < 2.0;
    os << "ratios S3o=" << fmt("%.6f", q1) << " S3e^=" << fmt("%.6f", q2) << " S5o=" << fmt("%.6f", q3)
       << "; max|S1^-(n/pi)log4|=" << fmt("%.4f", worst) << "; t=" << fmt("%.3fs", r.seconds);
    r.detail = os.str();
    return r;
}

CriterionResult c2_contour()
{
    CriterionResult r{2, "contour identity", true, "", 0};
    const auto t0 = Clock::now();
    double worst = 0;
    for (int n : {10, 50, 200})
        for (double x : {0.05, 0.2, 1.0}) {
            const double dir = s_alt(1, n, x), con = s1_contour(n, x);
            worst = std::max(worst, std::fabs(con - dir) / std::fabs(dir));
        }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    r.pass = worst <= 1e-7 && r.seconds < 5.0;
    r.detail = "max rel err=" + fmt("%.3e", worst) + "; t=" + fmt("%.3fs", r.seconds);
    return r;
}

CriterionResult c3_asymptotics()
{
    CriterionResult r{3, "large-nx asymptotics", true, "", 0};
    const int n = 4000;
    std::ostringstream os;
    double worst_scaled = 0;
    for (int k : {1, 3, 5}) {
        std::vector<double> xs, errs;
        for (double nx : {15.0, 25.0, 40.0}) {
            const double x = nx / n;
            const double e = std::fabs(s_asym(k, n, x).value / s_alt(k, n, x) - 1.0);
            worst_scaled = std::max(worst_scaled, e * nx / 3.0);
            r.pass = r.pass && e <= 3.0 / nx;
            xs.push_back(nx);
            errs.push_back(e);
        }
        const double slope = fit_slope(xs, errs);
        r.pass = r.pass && slope >= -1.3 && slope <= -0.7;
        os << "k=" << k << " slope=" << fmt("%.3f", slope) << "; ";
    }
    os << "max err/(3/nx)=" << fmt("%.3f", worst_scaled);
    r.detail = os.str();
    return r;
}

CriterionResult c4_psi_d11(bool quick)
{
    CriterionResult r{4, "psi_d11 residual and pole", true, "", 0};
    const double h = 1e-3;
    std::mt19937_64 rng(4004);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    const Point3 e1{1, 0, 0};
    auto res = [](const Point3& z) {
        const double u = u_bubble(z), u2 = u * u;
        return fd_laplacian(psi_d11, z, 1e-3) + 5 * u2 * u2 * psi_d11(z);
    };
    int count = 0, bad = 0;
    double worst = 0;
    const int npts = quick ? 50 : 200;
    while (count < npts) {
        const Point3 z{U(rng), U(rng), U(rng)};
        if (norm(z) > 2.0 || norm(z - e1) <= 0.3 || norm(z + e1) <= 0.3)
            continue;
        ++count;
        const double v = std::fabs(res(z));
        worst = std::max(worst, v / (h * h));
        if (v > 100 * h * h)
            ++bad;
    }
    double pmin = 1e9, pmax = -1e9;
    for (const Point3 dir : {Point3{1, 0, 0}, Point3{-1, 0, 0}, Point3{0, 1, 0}, Point3{0, 0, 1},
                             Point3{1, 1, 1} / std::sqrt(3.0)}) {
        const Point3 z = e1 + dir * 1e-3;
        const double c = psi_d11(z) * norm(z - e1);
        pmin = std::min(pmin, c);
        pmax = std::max(pmax, c);
    }
    r.pass = bad == 0 && pmin >= -1.01 && pmax <= -0.99;
    r.detail = "max residual/h^2=" + fmt("%.2f", worst) + " (" + std::to_string(bad) + "/" +
               std::to_string(npts) + " above 100); pole coef in [" + fmt("%.5f", pmin) + ", " +
               fmt("%.5f", pmax) + "]";
    return r;
}

CriterionResult c5_kelvin(bool quick)
{
    CriterionResult r{5, "Kelvin invariance", true, "", 0};
    const CrownParams p = make_crown(64);
    std::mt19937_64 rng(5005);
    std::normal_distribution<double> N(0.0, 1.0);
    std::uniform_real_distribution<double> L(std::log(0.1), std::log(10.0));
    double worst_u = 0, worst_s = 0;
    const int npts = quick ? 200 : 1000;
    for (int i = 0; i < npts; ++i) {
        Point3 z{N(rng), N(rng), N(rng)};
        z = z * (std::exp(L(rng)) / norm(z));
        const Point3 kz = kelvin(z);
        const double r0 = norm(z);
        const double a = u_bubble(z), b = u_bubble(kz) / r0;
        const double c = u_star(z, p), d = u_star(kz, p) / r0;
        worst_u = std::max(worst_u, std::fabs(a - b) / std::max(1.0, std::fabs(a)));
        worst_s = std::max(worst_s, std::fabs(c - d) / std::max(1.0, std::fabs(c)));
    }
    r.pass = worst_u <= 1e-12 && worst_s <= 1e-12;
    r.detail = "max err U=" + fmt("%.2e", worst_u) + " U*=" + fmt("%.2e", worst_s) + " (m=64)";
    return r;
}

CriterionResult c6_kernels_bb(bool quick)
{
    CriterionResult r{6, "gamma/H0e at (b,b)", true, "", 0};
    const int K = 64;
    const SectorConfig s = make_sector(K);
    ReducedConfig rc;
    rc.K = K;
    const ConstraintBox box = constraint_box(rc);
    std::mt19937_64 rng(6006);
    std::uniform_real_distribution<double> D(box.d_lo, box.d_hi), A(-0.45 * s.theta0, 0.45 * s.theta0);
    double worst = 0;
    const int npts = quick ? 30 : 100;
    for (int i = 0; i < npts; ++i) {
        const double b = b_from_d(D(rng)), ab = A(rng);
        worst = std::max({worst, gamma_bb(b, ab, s).abs_err_dc, h0e_bb(b, ab, s).abs_err_dc});
    }
    const double b = b_from_d(0.5 * (box.d_lo + box.d_hi));
    std::vector<double> al, eg, eh;
    for (double f : {1e-3, 2e-3, 4e-3, 8e-3, 1.6e-2}) {
        const double ab = f * s.theta0;
        al.push_back(ab);
        const auto g = gamma_bb(b, ab, s), h = h0e_bb(b, ab, s);
        eg.push_back(std::fabs(g.closed_form - g.asymptotic));
        eh.push_back(std::fabs(h.closed_form - h.asymptotic));
    }
    const double sg = fit_slope(al, eg), sh = fit_slope(al, eh);
    r.pass = worst <= 1e-11 && sg >= 1.9 && sg <= 2.1 && sh >= 1.9 && sh <= 2.1;
    r.detail = "max |direct-closed|=" + fmt("%.2e", worst) + "; alpha_b exponent gamma=" + fmt("%.3f", sg) +
               " H0e=" + fmt("%.3f", sh);
    return r;
}

CriterionResult c7_kernel_derivs(bool quick)
{
    CriterionResult r{7, "kernel gradients/Hessians", true, "", 0};
    double wg = 0, wh = 0;
    int rich = 0;
    for (int K : {32, 64}) {
        KernelConfig cfg;
        cfg.sector = make_sector(K);
        ReducedConfig rc;
        rc.K = K;
        const ConstraintBox box = constraint_box(rc);
        std::mt19937_64 rng(7000 + K);
        std::uniform_real_distribution<double> D(box.d_lo, box.d_hi), U(-1, 1);
        const int npts = quick ? 4 : 12;
        for (int i = 0; i < npts; ++i) {
            PlacedBubble A;
            A.b_norm = b_from_d(D(rng));
            A.alpha_b = U(rng) * box.alpha_b_max;
            A.alpha_w = U(rng) * box.alpha_w_max;
            A.w_norm = 1.0;
            for (auto kind : {KernelKind::gamma, KernelKind::h0e}) {
                for (auto slot : {Slot::z, Slot::p}) {
                    const auto g = kernel_grad(kind, slot, A, cfg);
                    wg = std::max(wg, g.abs_err_dc);
                }
                const auto h = kernel_hess(kind, A, cfg);
                rich += h.richardson;
                wh = std::max(wh, h.abs_err_dc);
            }
        }
    }
    r.pass = wg <= 1e-4 && wh <= 1e-3;
    r.detail = "max grad err=" + fmt("%.2e", wg) + " max hess err=" + fmt("%.2e", wh) +
               " (Richardson used " + std::to_string(rich) + "x)";
    return r;
}

CriterionResult c8_t_a(bool quick)
{
    CriterionResult r{8, "T_A size and expansion", true, "", 0};
    const auto& mc = default_model_constants();
    const ProfileHandle q = u_star_profile(make_crown(mc.m));
    const int K = 64;
    const SectorConfig s = make_sector(K);
    const double eps = std::pow(double(K), -3.0);
    ReducedConfig rc;
    rc.K = K;
    const ConstraintBox box = constraint_box(rc);
    const double d = 0.5 * (box.d_lo + box.d_hi);
    const PlacedBubble A = place_bubble(q, mc.xi, eps, 0.0, b_from_d(d), 0.0, 0.0);
    std::mt19937_64 rng(8008);
    std::uniform_real_distribution<double> R(0, 1), T(-1, 1);
    double sup_t = 0, sup_e = 0;
    const int npts = quick ? 200 : 1000;
    for (int i = 0; i < npts; ++i) {
        // Uniform in the sector by rejection from the unit-ball slice.
        Point3 z;
        do {
            const double rr = std::cbrt(R(rng)), ang = T(rng) * s.theta0, u = T(rng);
            const double sn = std::sqrt(1 - u * u);
            z = {rr * sn * std::cos(ang), rr * sn * std::sin(ang), rr * u};
        } while (!in_sector(z, s));
        const auto t = t_a(z, A, s);
        sup_t = std::max(sup_t, std::fabs(t.direct));
        sup_e = std::max(sup_e, std::fabs(t.direct - t.asymptotic));
    }
    const double rt = sup_t / (std::pow(eps, 1.5) * K * K);
    const double re = sup_e / (std::pow(eps, 3.5) * std::pow(double(K), 4));
    r.pass = rt <= 50 && std::isfinite(re) && re <= 50;
    r.detail = "sup|T_A|/(eps^1.5 K^2)=" + fmt("%.3f", rt) + " sup|direct-exp|/(eps^3.5 K^4)=" + fmt("%.3f", re);
    return r;
}

CriterionResult c9_minimizer(bool quick)
{
    CriterionResult r{9, "reduced-energy minimizer", true, "", 0};
    const auto t0 = Clock::now();
    const auto& mc = default_model_constants();
    std::ostringstream os;
    std::vector<int> Ks = quick ? std::vector<int>{64} : std::vector<int>{64, 128, 256};
    for (int K : Ks) {
        ReducedConfig cfg;
        cfg.K = K;
        cfg.lambda = 1.0;
        cfg.delta = 0.1;
        cfg.gnorm = mc.gnorm;
        cfg.cstar = mc.cstar;
        const auto m = minimize_psi(cfg, PsiMode::leading);
        const bool ok_int = m.all_interior;
        const bool ok_eps = m.eps_ratio >= 0.9 && m.eps_ratio <= 1.1;
        const bool ok_d = std::fabs(m.d_deviation) <= 3;
        const bool ok_ang = m.a_rel <= 1e-2 && m.alpha_b_rel <= 1e-2 && m.alpha_w_rel <= 1e-2;
        bool ok_cmp = true;
        std::string failed;
        for (const auto& c : boundary_comparisons(cfg))
            if (!c.holds) {
                ok_cmp = false;
                failed += (failed.empty() ? "" : ",") + c.name;
            }
        std::string boundary_axes;
        for (int ax = 0; ax < 5; ++ax)
            if (!m.interior[ax])
                boundary_axes += std::string(boundary_axes.empty() ? "" : ",") + kAxisNames[ax];
        r.pass = r.pass && ok_int && ok_eps && ok_d && ok_ang && ok_cmp;
        os << "K=" << K << ": epsK^3=" << fmt("%.3f", m.eps_K3) << " eps/eps*=" << fmt("%.3f", m.eps_ratio)
           << " Kd-dev=" << fmt("%.3f", m.d_deviation) << " boundary[" << boundary_axes << "]"
           << " cmp-fail[" << failed << "]; ";
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    r.pass = r.pass && r.seconds < 60;
    os << "t=" << fmt("%.1fs", r.seconds);
    r.detail = os.str();
    return r;
}

CriterionResult c10_nodal(bool quick)
{
    CriterionResult r{10, "nodal mesh", true, "", 0};
    const CrownParams p = make_crown(16);
    const ProfileHandle q = u_star_profile(p);
    const NodalMesh m1 = nodal_mesh(q, Box{}, 96);
    double worst = 0;
    for (double v : m1.values)
        worst = std::max(worst, std::fabs(v));
    const bool nonempty = !m1.points.empty();
    const double g1 = nonempty ? gradient_min_on_nodal(m1) : 0.0;
    r.pass = nonempty && worst <= 1e-8 && g1 > 0;
    std::ostringstream os;
    os << "points=" << m1.points.size() << " max residual=" << fmt("%.2e", worst) << " min|grad|=" << fmt("%.9f", g1);
    if (!quick) {
        const NodalMesh m2 = nodal_mesh(q, Box{}, 192);
        const double g2 = gradient_min_on_nodal(m2);
        r.pass = r.pass && std::fabs(g2 - g1) <= 1e-6;
        os << " (res 192: " << fmt("%.9f", g2) << ", diff " << fmt("%.2e", std::fabs(g2 - g1)) << ")";
    }
    r.detail = os.str();
    return r;
}

} // namespace

std::vector<CriterionResult> run_acceptance(bool quick, std::ostream* progress)
{
    std::vector<std::function<CriterionResult()>> jobs = {
        [] { return c1_series_constants(); },
        [] { return c2_contour(); },
        [] { return c3_asymptotics(); },
        [quick] { return c4_psi_d11(quick); },
        [quick] { return c5_kelvin(quick); },
        [quick] { return c6_kernels_bb(quick); },
        [quick] { return c7_kernel_derivs(quick); },
        [quick] { return c8_t_a(quick); },
        [quick] { return c9_minimizer(quick); },
        [quick] { return c10_nodal(quick); },
    };
    std::vector<CriterionResult> out;
    for (auto& j : jobs) {
        const auto t0 = Clock::now();
        CriterionResult r;
        try {
            r = j();
        } catch (const std::exception& e) {
            r.id = int(out.size()) + 1;
            r.name = "criterion " + std::to_string(r.id);
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        if (r.seconds == 0)
            r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (progress)
            *progress << format_result_line(r) << std::endl;
        out.push_back(r);
    }
    return out;
}

std::string format_result_line(const CriterionResult& r)
{
    char head[96];
    std::snprintf(head, sizeof head, "[%s] C%-2d %-28s ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str());
    return head + r.detail;
}

} // namespace necklace
