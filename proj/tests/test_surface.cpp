#include <cmath>
#include <initializer_list>
#include <random>

#include "doctest.h"
#include "geoflow/errors.hpp"
#include "geoflow/surface.hpp"

using namespace geoflow;

namespace {

ChartCurve wiggly_sphere_curve(int n) {
    ChartCurve c;
    c.closed = true;
    c.spacing = 2.0 * M_PI / n;
    c.th_drift = {0.0, 1.0, 0.0, 0.0};
    c.r_per.resize(n);
    c.th_per.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = c.spacing * i;
        c.r_per[i] = M_PI / 2.0 + 0.3 * std::sin(x);
        c.th_per[i] = 0.2 * std::cos(x);
    }
    return c;
}

} // namespace

TEST_CASE("embed: canonical points") {
    const auto sph = SurfaceOfRevolution::sphere();
    const Vec3 p = sph.embed(M_PI / 2.0, 0.0);
    CHECK(norm(p - Vec3{1, 0, 0}) < 1e-15);

    const auto cyl = SurfaceOfRevolution::cylinder(1.0);
    const Vec3 q = cyl.embed(2.0, M_PI);
    CHECK(norm(q - Vec3{-1, 0, 2}) < 1e-12);
}

TEST_CASE("embed basis: |e_theta| = f, |e_r| = 1") {
    const auto sph = SurfaceOfRevolution::sphere();
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ur(0.2, M_PI - 0.2), ut(0.0, 2.0 * M_PI);
    for (int i = 0; i < 20; ++i) {
        const double r = ur(rng), th = ut(rng);
        CHECK(std::abs(norm(sph.basis_etheta(r, th)) - sph.f(r)) < 1e-12);
        CHECK(std::abs(norm(sph.basis_er(r, th)) - 1.0) < 1e-12);
    }
}

TEST_CASE("embed rejects out-of-domain points") {
    const auto sph = SurfaceOfRevolution::sphere();
    CHECK_THROWS_AS(sph.embed(-0.5, 0.0), Error);
    CHECK_THROWS_AS(sph.embed(M_PI + 0.1, 0.0), Error);
}

TEST_CASE("gauss curvature: sphere, cylinder, catenoid band") {
    const auto sph = SurfaceOfRevolution::sphere();
    for (double r : {0.3, 1.0, 2.5}) CHECK(sph.gauss_curvature(r) == doctest::Approx(1.0));

    const auto cyl = SurfaceOfRevolution::cylinder(2.0);
    CHECK(cyl.gauss_curvature(0.7) == doctest::Approx(0.0));

    // Catenoid-type band f = cosh r (profile used intrinsically; the axial
    // height is irrelevant to G).
    const double band = std::asinh(1.0) - 1e-6;
    const SurfaceOfRevolution cat(
        "catenoid", [](double r) { return std::cosh(r); }, [](double r) { return std::sinh(r); },
        [](double r) { return std::cosh(r); }, [](double) { return 0.0; },
        [](double r) { return std::sqrt(std::max(0.0, 1.0 - std::sinh(r) * std::sinh(r))); },
        -band, band);
    // With arclength profile parameter, -f_rr/f = -cosh/cosh = -1 on the
    // whole band (constant-curvature band, not the usual catenoid chart).
    CHECK(cat.gauss_curvature(0.0) == doctest::Approx(-1.0));
    CHECK(cat.gauss_curvature(0.5) == doctest::Approx(-1.0));
}

TEST_CASE("profile arclength constraint is enforced") {
    CHECK_THROWS_AS(SurfaceOfRevolution("bad", [](double) { return 1.0; },
                                        [](double) { return 0.5; }, [](double) { return 0.0; },
                                        [](double r) { return r; }, [](double) { return 1.0; },
                                        -1.0, 1.0),
                    Error);
}

TEST_CASE("complex structure: rotation by +90 degrees, J^2 = -1") {
    const auto sph = SurfaceOfRevolution::sphere();
    const auto j1 = complex_structure_frame({1.0, 0.0});
    CHECK(j1[0] == doctest::Approx(0.0));
    CHECK(j1[1] == doctest::Approx(1.0));

    const auto v = complex_structure_frame(complex_structure_frame({0.3, -0.7}));
    CHECK(v[0] == doctest::Approx(-0.3));
    CHECK(v[1] == doctest::Approx(0.7));

    const double r = 1.1;
    const Chart2 xi{0.4, -0.2};
    const Chart2 jj = sph.complex_structure(r, sph.complex_structure(r, xi));
    CHECK(jj.r == doctest::Approx(-xi.r).epsilon(1e-14));
    CHECK(jj.th == doctest::Approx(-xi.th).epsilon(1e-14));
}

TEST_CASE("J is metric compatible") {
    const auto bump = SurfaceOfRevolution::gaussian_bump(0.3, 1.0);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double r = 2.0 * u(rng);
        const Chart2 xi{u(rng), u(rng)}, eta{u(rng), u(rng)};
        const Chart2 jxi = bump.complex_structure(r, xi);
        const Chart2 jeta = bump.complex_structure(r, eta);
        CHECK(std::abs(bump.metric_dot(r, jxi, jeta) - bump.metric_dot(r, xi, eta)) < 1e-12);
        CHECK(std::abs(bump.metric_norm(r, jxi) - bump.metric_norm(r, xi)) < 1e-12);
    }
}

TEST_CASE("chart J vs ambient cross product on the builtin sphere") {
    // With the pinned profile (f = sin r, g = -cos r) the chart orientation's
    // normal points inward, so J_chart = -(u x .) on tangent vectors.
    const auto sph = SurfaceOfRevolution::sphere();
    const double r = M_PI / 3.0, th = M_PI / 4.0;
    const Vec3 u = sph.embed(r, th);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        const Chart2 xi{dist(rng), dist(rng)};
        const Vec3 pushed = sph.push_chart(r, th, xi);
        const Vec3 jpushed = sph.push_chart(r, th, sph.complex_structure(r, xi));
        CHECK(norm(jpushed + cross(u, pushed)) < 1e-10);
    }
}

TEST_CASE("killing vectors") {
    const auto cyl = SurfaceOfRevolution::cylinder(1.0);
    const auto v1 = killing_vector(cyl, {1.0, 0.0}, 0.0, 0.0);
    CHECK(norm(v1.ambient - Vec3{0, 1, 0}) < 1e-14);

    const auto sph = SurfaceOfRevolution::sphere();
    const auto v2 = killing_vector(sph, {2.0, 0.0}, M_PI / 2.0, 1.3);
    CHECK(norm(v2.ambient) == doctest::Approx(2.0));

    const auto v3 = killing_vector(cyl, {0.0, 3.0}, 0.7, 0.3);
    CHECK(norm(v3.ambient - Vec3{0, 0, 3}) < 1e-14);

    CHECK_THROWS_AS(killing_vector(sph, {0.0, 1.0}, 1.0, 0.0), Error);
}

TEST_CASE("killing property via finite differences of the metric") {
    // sym(nabla V) = 0 for V = omega d/dtheta, assembled from metric values
    // only: nabla_r V_th + nabla_th V_r = d/dr(omega f^2) - 2 Gamma^th_{r th} V_th.
    const auto bump = SurfaceOfRevolution::gaussian_bump(0.3, 1.0);
    const double omega = 0.8, eps = 1e-5;
    std::mt19937 rng(22);
    std::uniform_real_distribution<double> ur(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
        const double r = ur(rng);
        auto metric_tt = [&](double rr) { return bump.f(rr) * bump.f(rr); };
        const double dmetric = (metric_tt(r + eps) - metric_tt(r - eps)) / (2.0 * eps);
        const double gamma_rth = 0.5 * dmetric / metric_tt(r);
        const double v_th = omega * metric_tt(r);
        const double sym_rth = omega * dmetric - 2.0 * gamma_rth * v_th;
        CHECK(std::abs(sym_rth) < 1e-8);
    }
}

TEST_CASE("gauss curvature agrees with metric finite differences") {
    // G = -(sqrt(g_tt))'' / sqrt(g_tt) from metric values alone.
    const auto sph = SurfaceOfRevolution::sphere();
    const auto bump = SurfaceOfRevolution::gaussian_bump(0.3, 1.0);
    std::mt19937 rng(31);
    const double eps = 1e-4;
    for (int i = 0; i < 20; ++i) {
        std::uniform_real_distribution<double> ur(0.4, M_PI - 0.4);
        const double r = ur(rng);
        auto sf = [&](double rr) { return sph.f(rr); };
        const double g_fd = -(sf(r + eps) - 2.0 * sf(r) + sf(r - eps)) / (eps * eps) / sf(r);
        CHECK(std::abs(g_fd - sph.gauss_curvature(r)) < 1e-4);
    }
    for (int i = 0; i < 20; ++i) {
        std::uniform_real_distribution<double> ur(-2.0, 2.0);
        const double r = ur(rng);
        auto sf = [&](double rr) { return bump.f(rr); };
        const double g_fd = -(sf(r + eps) - 2.0 * sf(r) + sf(r - eps)) / (eps * eps) / sf(r);
        CHECK(std::abs(g_fd - bump.gauss_curvature(r)) < 1e-4);
    }
}

TEST_CASE("covariant acceleration: meridian, cylinder parallel, sphere parallel") {
    const auto bump = SurfaceOfRevolution::gaussian_bump(0.3, 1.0);
    ChartCurve meridian;
    meridian.closed = false;
    meridian.spacing = 0.01;
    const int n = 128;
    for (int i = 0; i < n; ++i) {
        meridian.r_per.push_back(-0.6 + meridian.spacing * i);
        meridian.th_per.push_back(0.4);
    }
    for (const auto& acc : covariant_accel(bump, meridian)) {
        CHECK(std::abs(acc.r) < 1e-10);
        CHECK(std::abs(acc.th) < 1e-10);
    }

    const auto cyl = SurfaceOfRevolution::cylinder(1.0);
    ChartCurve par;
    par.closed = true;
    par.spacing = 2.0 * M_PI / 64;
    par.r_per.assign(64, 0.0);
    par.th_per.assign(64, 0.0);
    par.th_drift = {0.0, 1.0, 0.0, 0.0};
    for (const auto& acc : covariant_accel(cyl, par)) {
        CHECK(std::abs(acc.r) < 1e-12);
        CHECK(std::abs(acc.th) < 1e-12);
    }

    const auto sph = SurfaceOfRevolution::sphere();
    ChartCurve spar = par;
    spar.r_per.assign(64, M_PI / 3.0);
    const auto acc = covariant_accel(sph, spar);
    const double expected = -std::sin(M_PI / 3.0) * std::cos(M_PI / 3.0);
    for (const auto& a : acc) {
        CHECK(a.r == doctest::Approx(expected).epsilon(1e-10));
        CHECK(std::abs(a.th) < 1e-12);
    }
}

TEST_CASE("geodesic curvature: meridian zero, sphere parallel cot, cylinder zero") {
    const auto sph = SurfaceOfRevolution::sphere();
    ChartCurve meridian;
    meridian.closed = false;
    meridian.spacing = 0.01;
    for (int i = 0; i < 128; ++i) {
        meridian.r_per.push_back(0.6 + 0.01 * i);
        meridian.th_per.push_back(1.0);
    }
    for (double kg : geodesic_curvature(sph, meridian)) CHECK(std::abs(kg) < 1e-6);

    ChartCurve par;
    par.closed = true;
    par.spacing = 2.0 * M_PI / 64;
    par.r_per.assign(64, M_PI / 3.0);
    par.th_per.assign(64, 0.0);
    par.th_drift = {0.0, 1.0, 0.0, 0.0};
    for (double kg : geodesic_curvature(sph, par))
        CHECK(kg == doctest::Approx(1.0 / std::tan(M_PI / 3.0)).epsilon(1e-10));

    const auto cyl = SurfaceOfRevolution::cylinder(1.0);
    ChartCurve cpar = par;
    cpar.r_per.assign(64, 0.0);
    for (double kg : geodesic_curvature(cyl, cpar)) CHECK(std::abs(kg) < 1e-12);
}

TEST_CASE("magnetic right-hand side") {
    const auto cyl = SurfaceOfRevolution::cylinder(1.0);
    const Chart2 vel{0.6, 0.8}; // metric norm 1 on the unit cylinder
    const auto zero = magnetic_rhs(cyl, {[](double, double) { return 0.0; }}, 0.0, 0.0, vel);
    CHECK(std::abs(zero.r) + std::abs(zero.th) == 0.0);

    const double b = 0.7;
    const auto f = magnetic_rhs(cyl, {[b](double, double) { return b; }}, 0.0, 0.0, vel);
    CHECK(cyl.metric_norm(0.0, f) == doctest::Approx(std::abs(b)).epsilon(1e-12));
    CHECK(std::abs(cyl.metric_dot(0.0, f, vel)) < 1e-14);

    const auto sph = SurfaceOfRevolution::sphere();
    const Chart2 eq_vel{0.0, 1.0}; // unit at the equator
    const auto fs =
        magnetic_rhs(sph, {[](double, double) { return 1.0; }}, M_PI / 2.0, 0.3, eq_vel);
    CHECK(sph.metric_norm(M_PI / 2.0, fs) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("chart curve validation") {
    const auto sph = SurfaceOfRevolution::sphere();
    ChartCurve bad = wiggly_sphere_curve(32);
    bad.r_drift = {0.0, 0.1, 0.0, 0.0};
    CHECK_THROWS_AS(bad.validate(sph), Error);

    ChartCurve out = wiggly_sphere_curve(32);
    for (auto& r : out.r_per) r += 2.0; // leaves (0, pi)
    CHECK_THROWS_AS(out.validate(sph), Error);
}

TEST_CASE("second covariant derivative matches nested first derivatives") {
    // Independent route: apply the first-covariant formula to the sampled
    // field nabla_x u_x itself (periodic array FD); valid because this curve
    // has no polynomial drift beyond theta winding.
    const auto sph = SurfaceOfRevolution::sphere();
    const int n = 512;
    const auto c = wiggly_sphere_curve(n);
    const auto acc = covariant_accel(sph, c);
    const auto cov2 = second_covariant(sph, c);

    std::vector<double> pr(n), qt(n);
    for (int i = 0; i < n; ++i) {
        pr[i] = acc[i].r;
        qt[i] = acc[i].th;
    }
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = c.r(i);
        const double fr = sph.f(r), fp = sph.f_r(r);
        const double r1 = c.dr(i, 1), t1 = c.dtheta(i, 1);
        const double pr1 = fd_scalar(pr, i, 1, c.spacing, true);
        const double qt1 = fd_scalar(qt, i, 1, c.spacing, true);
        const Chart2 alt{pr1 - fr * fp * t1 * acc[i].th,
                         qt1 + (fp / fr) * (r1 * acc[i].th + t1 * acc[i].r)};
        worst = std::max({worst, std::abs(alt.r - cov2[i].r), std::abs(alt.th - cov2[i].th)});
    }
    CHECK(worst < 1e-3); // both are O(h^2) routes to the same field
}

TEST_CASE("custom table surface interpolates a sampled profile") {
    std::vector<std::array<double, 6>> rows;
    const int m = 200;
    for (int i = 0; i <= m; ++i) {
        const double r = 0.3 + (M_PI - 0.6) * i / m;
        rows.push_back({r, std::sin(r), std::cos(r), -std::sin(r), -std::cos(r), std::sin(r)});
    }
    const auto surf = SurfaceOfRevolution::from_table(rows, "sphere_table");
    for (double r : {0.7, 1.3, 2.2}) {
        CHECK(surf.f(r) == doctest::Approx(std::sin(r)).epsilon(1e-8));
        CHECK(surf.gauss_curvature(r) == doctest::Approx(1.0).epsilon(1e-6));
    }
    const Vec3 p = surf.embed(M_PI / 2.0, 0.25);
    CHECK(norm(p - Vec3{std::cos(0.25), std::sin(0.25), 0.0}) < 1e-8);
}

TEST_CASE("closed chart curves must wind by whole turns") {
    const auto sph = SurfaceOfRevolution::sphere();
    ChartCurve c = wiggly_sphere_curve(32);
    c.th_drift[1] = 1.5; // winds by 3*pi: not closed
    CHECK_THROWS_AS(c.validate(sph), Error);
    c.th_drift[1] = 2.0;
    CHECK_NOTHROW(c.validate(sph));
}
