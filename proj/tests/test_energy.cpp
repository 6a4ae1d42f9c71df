#include "necklace/energy.hpp"
#include "necklace/errors.hpp"
#include "necklace/nodal.hpp"
#include "necklace/trig_sums.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace necklace;

namespace {
ReducedConfig test_cfg(int K)
{
    ReducedConfig c;
    c.K = K;
    c.lambda = 1;
    c.delta = 0.1;
    c.gnorm = 0.22;
    c.cstar = 0.03;
    return c;
}

ReducedPoint mid_point(const ReducedConfig& cfg)
{
    const auto box = constraint_box(cfg);
    ReducedPoint A;
    A.eps = std::sqrt(box.eps_lo * box.eps_hi);
    A.d = 0.5 * (box.d_lo + box.d_hi);
    return A;
}
} // namespace

TEST_CASE("constraint box")
{
    const auto cfg = test_cfg(64);
    const auto b = constraint_box(cfg);
    const double K3 = 64.0 * 64 * 64;
    CHECK(b.eps_lo == doctest::Approx(0.1 / K3));
    CHECK(b.eps_hi == doctest::Approx(10 / K3));
    CHECK(b.d_lo < b.d_hi);
    CHECK(b.a_max(2.0) == doctest::Approx(2 * std::log(64.0) / 0.1));
    auto bad = cfg;
    bad.delta = 0;
    CHECK_THROWS_AS(constraint_box(bad), DomainError);
    const double bn = b_from_d(0.07);
    CHECK((1 - bn * bn) / (2 * bn) == doctest::Approx(0.07).epsilon(1e-14));
}

TEST_CASE("moment constants")
{
    const double K = 256, lk = std::log(K);
    CHECK(std::abs(c0(256, lk / K) * M_PI / (K * std::log(4.0)) - 1) <= 0.15);
    // at d = log K / K the exponential part of C2 is still about 4.5% of the cubic term
    const double lead = 3 * zeta_const(3) / (2 * std::pow(M_PI, 3)) * std::pow(K, 3);
    const double expo = std::sqrt(8 / M_PI) * std::pow(K, 3) / std::sqrt(lk) * std::exp(-lk);
    CHECK(std::abs(c2(256, lk / K) / (lead + expo) - 1) <= 0.05);
    CHECK(std::abs(c2(256, 2 * lk / K) / lead - 1) <= 0.05);
    const auto M = a_gamma_matrix(256);
    CHECK(std::abs(M[0][0] * 2 * std::pow(M_PI, 3) / (5 * zeta_const(3) * std::pow(K, 3)) - 1) <= 0.05);
    CHECK(std::abs(M[1][1] * 8 * std::pow(M_PI, 5) / (93 * zeta_const(5) * std::pow(K, 5)) - 1) <= 0.05);
    CHECK(M[0][1] == M[1][0]);
    for (int k : {128, 256, 512}) {
        const double lo = 0.5 * std::min(5 * zeta_const(3) / (2 * std::pow(M_PI, 3)),
                                         93 * zeta_const(5) / (8 * std::pow(M_PI, 5))) * std::pow(double(k), 3);
        CHECK(min_eigenvalue(a_gamma_rescaled(k)) >= lo);
    }
    const Mat2 I{{{2, 0}, {0, 3}}};
    CHECK(min_eigenvalue(I) == doctest::Approx(2));
}

TEST_CASE("reduced energy, leading model")
{
    const auto cfg = test_cfg(64);
    ReducedPoint A = mid_point(cfg);
    const double bn = b_from_d(A.d);
    const double want = std::pow(A.eps, 3) * cfg.gnorm * cfg.gnorm / (8 * bn * bn * bn) * c2(64, A.d) -
                        cfg.lambda * A.eps * A.eps * cfg.cstar;
    CHECK(std::abs(psi_leading(A, cfg) - want) <= 1e-10 * std::max(1.0, std::abs(want)));

    // eps* is a critical point
    const double es = eps_star(A.d, cfg);
    ReducedPoint P = A;
    auto f = [&](double e) {
        P.eps = e;
        return psi_leading(P, cfg);
    };
    const double h = 1e-6 * es;
    const double slope = (f(es + h) - f(es - h)) / (2 * h);
    const double scale = std::abs(f(es)) / es;
    CHECK(std::abs(slope) <= 1e-8 * scale);
    CHECK(es * 3 * cfg.gnorm * cfg.gnorm * c2(64, A.d) / (16 * bn * bn * bn * cfg.lambda * cfg.cstar) ==
          doctest::Approx(1).epsilon(1e-12));

    // a = 0 removes the C0 term
    ReducedConfig other = cfg;
    other.gnorm *= 2;
    A.a = 0;
    const double v0 = psi_leading(A, cfg);
    CHECK(psi_leading(A, other) - v0 == doctest::Approx(3 * (want + cfg.lambda * A.eps * A.eps * cfg.cstar)));

    // evenness under joint sign flip of the angles
    const auto box = constraint_box(cfg);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int i = 0; i < 30; ++i) {
        ReducedPoint B = A;
        B.a = 0.5 * U(rng) * box.a_max(B.eps);
        B.alpha_b = U(rng) * box.alpha_b_max;
        B.alpha_w = U(rng) * box.alpha_w_max;
        ReducedPoint C = B;
        C.alpha_b = -B.alpha_b;
        C.alpha_w = -B.alpha_w;
        CHECK(psi_leading(B, cfg) == psi_leading(C, cfg));
        const double pf = psi_full(B, cfg);
        CHECK(std::abs(psi_full(C, cfg) - pf) <= 1e-12 * std::max(1.0, std::abs(pf)));
    }

    // quadratic in (alpha_w, K alpha_b)
    std::vector<double> ts, ds;
    for (double t : {0.05, 0.1, 0.2, 0.4}) {
        ReducedPoint B = A;
        B.alpha_w = t * box.alpha_w_max;
        B.alpha_b = 0.7 * t * box.alpha_b_max;
        ts.push_back(t);
        ds.push_back(std::abs(psi_leading(B, cfg) - psi_leading(A, cfg)));
    }
    const double ex = std::log(ds.back() / ds.front()) / std::log(ts.back() / ts.front());
    CHECK(ex == doctest::Approx(2).epsilon(0.05));
}

TEST_CASE("full versus leading model")
{
    for (int K : {64, 128}) {
        const auto cfg = test_cfg(K);
        const auto box = constraint_box(cfg);
        std::mt19937_64 rng(K);
        std::uniform_real_distribution<double> U(0, 1), S(-1, 1);
        double C = 0;
        for (int i = 0; i < 50; ++i) {
            ReducedPoint A;
            A.eps = box.eps_lo * std::pow(box.eps_hi / box.eps_lo, U(rng));
            A.d = box.d_lo + (box.d_hi - box.d_lo) * U(rng);
            A.a = S(rng) * box.a_max(A.eps);
            A.alpha_b = S(rng) * box.alpha_b_max;
            A.alpha_w = S(rng) * box.alpha_w_max;
            const double lk = std::log(double(K));
            C = std::max(C, std::abs(psi_full(A, cfg) - psi_leading(A, cfg)) / (std::pow(A.eps, 3) * K * lk * lk));
        }
        MESSAGE("K=" << K << " full-vs-leading constant " << C);
        CHECK(C <= 100);
    }
    CHECK(parse_mode("full") == PsiMode::full);
    CHECK(to_string(PsiMode::leading) == "leading");
    CHECK_THROWS_AS(parse_mode("x"), DomainError);
}

TEST_CASE("minimizer is deterministic")
{
    const auto cfg = test_cfg(64);
    const auto a = minimize_psi(cfg, PsiMode::leading, 9);
    const auto b = minimize_psi(cfg, PsiMode::leading, 9);
    CHECK(a.argmin.eps == b.argmin.eps);
    CHECK(a.argmin.d == b.argmin.d);
    CHECK(a.argmin.a == b.argmin.a);
    CHECK(a.argmin.alpha_b == b.argmin.alpha_b);
    CHECK(a.argmin.alpha_w == b.argmin.alpha_w);
    CHECK(a.value == b.value);
    // nothing on the grid beats the refined point
    const auto box = constraint_box(cfg);
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j) {
            ReducedPoint P;
            P.eps = box.eps_lo * std::pow(box.eps_hi / box.eps_lo, i / 8.0);
            P.d = box.d_lo + (box.d_hi - box.d_lo) * j / 8.0;
            CHECK(psi_leading(P, cfg) >= a.value - 1e-12 * std::abs(a.value));
        }
}

TEST_CASE("reduced functional")
{
    const auto cfg = test_cfg(64);
    const double q6 = q6_integral(talenti_profile());
    CHECK(q6 == doctest::Approx(3 * std::sqrt(3.0) * M_PI * M_PI / 4).epsilon(1e-9));
    ReducedPoint A = mid_point(cfg), B = A;
    B.alpha_w = 1e-3;
    B.eps *= 1.3;
    for (auto mode : {PsiMode::leading, PsiMode::full}) {
        const double dj = j_reduced(q6, A, cfg, mode) - j_reduced(q6, B, cfg, mode);
        const double dp = psi(A, cfg, mode) - psi(B, cfg, mode);
        CHECK(dj == doctest::Approx(2 * M_PI * dp).epsilon(1e-9));
    }
}

TEST_CASE("boundary comparisons that hold")
{
    for (int K : {128, 256}) {
        const auto cfg = test_cfg(K);
        for (const auto& c : boundary_comparisons(cfg)) {
            if (c.name == "d_upper")
                continue;
            INFO(c.name);
            CHECK(c.holds);
        }
    }
}

// Upper d comparison fails with the computed model constants; see the acceptance
// table (criterion 9).
TEST_CASE("upper d comparison" * doctest::may_fail())
{
    for (int K : {128, 256})
        for (const auto& c : boundary_comparisons(test_cfg(K)))
            if (c.name == "d_upper")
                CHECK(c.holds);
}

TEST_CASE("C_* on the m=16 nodal point")
{
    const auto p = make_crown(16);
    const auto q = u_star_profile(p);
    const auto root = radial_nodal_root(p, q, 1, p.xi[0], 1e-14, 1.0);
    const auto r = c_star_report(q, root.point, 1e-6);
    CHECK(r.total > 0);
    CHECK(r.tail <= 1e-8 * r.total);
    const double finer = c_star(q, root.point, 5e-7);
    CHECK(std::abs(finer - r.total) <= 1e-6 * r.total);
    CHECK_THROWS_AS(c_star(q, p.xi[0] * 0.5, 1e-8), PreconditionError);
}
