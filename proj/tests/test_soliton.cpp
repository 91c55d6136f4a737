#include <cmath>
#include <initializer_list>
#include <random>

#include "doctest.h"
#include "geoflow/elliptic.hpp"
#include "geoflow/errors.hpp"
#include "geoflow/io.hpp"
#include "geoflow/soliton.hpp"

using namespace geoflow;

namespace {

DiscreteCurve monodromy_helix(double a, double b, int n) {
    const double cc = std::sqrt(a * a + b * b);
    DiscreteCurve c;
    c.closed = true;
    c.param_kind = ParamKind::Arclength;
    c.spacing = 2.0 * M_PI * cc / n;
    for (int i = 0; i < n; ++i) {
        const double s = c.spacing * i;
        c.points.push_back({a * std::cos(s / cc), a * std::sin(s / cc), b * s / cc});
    }
    c.monodromy.rot = Mat3::identity();
    c.monodromy.shift = {0.0, 0.0, 2.0 * M_PI * b};
    return c;
}

// Custom profile family with f(1) = 1, f_r(1) = 1, f_rr(1) = 0: the seeded
// parallel at r0 = 1 is a fully consistent KdV soliton with C = f^2 f_r = 1.
SurfaceOfRevolution seeded_parallel_surface() {
    const double a = 0.1;
    auto f = [a](double r) { return 1.0 + (r - 1.0) - a * std::pow(r - 1.0, 3); };
    auto f_r = [a](double r) { return 1.0 - 3.0 * a * (r - 1.0) * (r - 1.0); };
    auto f_rr = [a](double r) { return -6.0 * a * (r - 1.0); };
    auto g_r = [f_r](double r) {
        const double fr = f_r(r);
        return std::sqrt(std::max(0.0, 1.0 - fr * fr));
    };
    return SurfaceOfRevolution("seeded", f, f_r, f_rr, [](double) { return 0.0; }, g_r, 0.2,
                               1.8);
}

} // namespace

TEST_CASE("elastic parameter relations") {
    const auto e0 = ElasticParams::from_kpw(1.0, 0.0, 1.0);
    CHECK(e0.lambda == doctest::Approx(1.0).epsilon(1e-14)); // lambda = k0^2
    CHECK(e0.c == 0.0);
    CHECK(e0.relation_defect() < 1e-10);

    const auto e1 = ElasticParams::from_kpw(1.3, 0.4, 0.8);
    CHECK(e1.relation_defect() < 1e-10);

    CHECK_THROWS_AS(ElasticParams::from_kpw(1.0, 0.9, 0.5), Error); // p > w
    CHECK_THROWS_AS(ElasticParams::from_kpw(-1.0, 0.1, 0.5), Error);
}

TEST_CASE("elastic profile: p = 0 gives constant curvature") {
    const auto params = ElasticParams::from_kpw(0.8, 0.0, 1.0);
    const auto pr = elastic_profile(params, 5.0, 64);
    for (int i = 0; i < pr.size(); ++i) {
        CHECK(pr.k[i] == doctest::Approx(0.8).epsilon(1e-14));
        CHECK(pr.tau[i] == 0.0);
    }
}

TEST_CASE("elastic closed form satisfies the curvature ODE (analytic derivatives)") {
    for (double p : {0.2, 0.5, 0.8}) {
        for (double w : {0.5, 0.8, 1.0}) {
            if (p > w) continue;
            const auto prm = ElasticParams::from_kpw(1.0, p, w);
            const double alpha = prm.k0 / (2.0 * prm.w);
            const double beta = (prm.p * prm.p) / (prm.w * prm.w);
            const double period = prm.curvature_period();
            const int n = 2048;
            double worst = 0.0;
            for (int i = 0; i < n; ++i) {
                const double s = period * i / n;
                const auto j = jacobi_elliptic(alpha * s, prm.p);
                const double S = j.sn, C = j.cn, D = j.dn;
                const double k2 = prm.k0 * prm.k0 * (C * C + (1.0 - beta) * S * S);
                const double k = std::sqrt(std::max(0.0, k2));
                if (k < 1e-6 * prm.k0) continue;
                const double k2p = -2.0 * prm.k0 * prm.k0 * beta * alpha * S * C * D;
                const double k2pp = -2.0 * prm.k0 * prm.k0 * beta * alpha * alpha *
                                    (C * C * D * D - S * S * D * D - prm.p * prm.p * S * S * C * C);
                const double kp = k2p / (2.0 * k);
                const double kpp = (k2pp - 2.0 * kp * kp) / (2.0 * k);
                const double e12 = k * k * k * kpp + 0.5 * std::pow(k, 6) -
                                   0.5 * prm.lambda * std::pow(k, 4) - prm.c * prm.c;
                worst = std::max(worst, std::abs(e12));
            }
            CAPTURE(p);
            CAPTURE(w);
            CHECK(worst < 1e-8);
        }
    }
}

TEST_CASE("elastic profile satisfies the intrinsic elastica system by finite differences") {
    const auto prm = ElasticParams::from_kpw(1.0, 0.5, 0.8);
    const auto pr = elastic_profile(prm, prm.curvature_period(), 4096);
    const auto rep = intrinsic_soliton_residual(pr, {IntrinsicKind::Elastica, 0, 0, prm.lambda, 0, 0});
    CHECK(rep.sup_residual < 1e-4);

    // First integral k^2 tau = c along the profile.
    for (int i = 0; i < pr.size(); ++i)
        if (!pr.degenerate_mask[i])
            CHECK(std::abs(pr.k[i] * pr.k[i] * pr.tau[i] - prm.c) < 1e-12);
}

TEST_CASE("LIE-kind and elastica-kind residuals coincide at c = 0") {
    const auto prm = ElasticParams::from_kpw(1.1, 0.45, 0.85);
    const auto pr = elastic_profile(prm, prm.curvature_period(), 1024);
    IntrinsicKind elast{IntrinsicKind::Elastica, 0, 0, prm.lambda, 0, 0};
    IntrinsicKind lie{IntrinsicKind::Lie, 0.0, -0.5 * prm.lambda, 0, 0, 0};
    const auto r1 = intrinsic_soliton_residual(pr, elast);
    const auto r2 = intrinsic_soliton_residual(pr, lie);
    for (int i = 0; i < pr.size(); ++i)
        CHECK(std::abs(r1.per_sample[i] - r2.per_sample[i]) < 1e-12);
}

TEST_CASE("constant profiles solve the KMG and KdV intrinsic systems") {
    const double k0 = 0.9, tau0 = 0.4, omega = 0.6;
    IntrinsicProfile pr;
    pr.closed = true;
    pr.spacing = 0.1;
    pr.k.assign(64, k0);
    pr.tau.assign(64, tau0);
    pr.degenerate_mask.assign(64, false);

    const double a_kmg = -0.5 * k0 * k0 + tau0 * tau0 - omega * tau0;
    const auto r1 =
        intrinsic_soliton_residual(pr, {IntrinsicKind::Kmg, 0, 0, 0, omega, a_kmg});
    CHECK(r1.sup_residual < 1e-12);

    const double c = 0.3;
    const double a1 = -std::pow(tau0, 3) + 1.5 * k0 * k0 * tau0 + c * tau0;
    const auto r2 = intrinsic_soliton_residual(pr, {IntrinsicKind::Kdv, c, a1, 0, 0, 0});
    CHECK(r2.sup_residual < 1e-12);
}

TEST_CASE("extrinsic LIE soliton residual: line, circle, helix") {
    DiscreteCurve line;
    line.closed = false;
    line.param_kind = ParamKind::Arclength;
    line.spacing = 0.05;
    for (int i = 0; i < 64; ++i) line.points.push_back({0.05 * i, 0.0, 0.0});
    const auto r0 = lie_soliton_residual(line, {{0, 0, 0}, {0, 0, 0}}, 0.0);
    CHECK(r0.sup_residual < 1e-12);

    const int n = 4096;
    DiscreteCurve circle;
    circle.closed = true;
    circle.param_kind = ParamKind::Arclength;
    circle.spacing = 2.0 * M_PI / n;
    for (int i = 0; i < n; ++i) {
        const double s = circle.spacing * i;
        circle.points.push_back({std::cos(s), std::sin(s), 0.0});
    }
    const auto r1 = lie_soliton_residual(circle, {{0, 0, 0}, {0, 0, 1}}, 0.0);
    CHECK(r1.sup_residual < 1e-6);

    // Helix a = b = 1 with translation magnitude fixed at 0.5: the 2x2 linear
    // system for (omega, c) gives omega = (1 - sqrt(2))/2, c = (sqrt(2)-1)/2.
    const auto helix = monodromy_helix(1.0, 1.0, 2048);
    const double omega = 0.5 * (1.0 - std::sqrt(2.0));
    const double c = 0.5 * (std::sqrt(2.0) - 1.0);
    const auto r2 = lie_soliton_residual(helix, {{0, 0, omega}, {0, 0, 0.5}}, c);
    CHECK(r2.sup_residual < 1e-5);
}

TEST_CASE("lie residual is invariant under conjugated isometries") {
    const auto helix = monodromy_helix(1.0, 0.7, 512);
    const AmbientKilling v{{0, 0, 0.3}, {0.1, -0.2, 0.4}};
    const auto base = lie_soliton_residual(helix, v, 0.05);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    const Mat3 rot = Mat3::rotation({u(rng), u(rng), u(rng)});
    const Vec3 d{u(rng), u(rng), u(rng)};
    DiscreteCurve moved = helix;
    for (auto& p : moved.points) p = rot.apply(p) + d;
    moved.monodromy.rot = Mat3::mul(rot, Mat3::mul(helix.monodromy.rot, rot.transposed()));
    moved.monodromy.shift =
        rot.apply(helix.monodromy.shift) + d - moved.monodromy.rot.apply(d);
    const Vec3 om2 = rot.apply(v.rotation);
    const AmbientKilling v2{om2, rot.apply(v.translation) - cross(om2, d)};
    const auto conj = lie_soliton_residual(moved, v2, 0.05);
    for (int i = 0; i < helix.size(); ++i)
        CHECK(std::abs(base.per_sample[i] - conj.per_sample[i]) < 2e-11);
}

TEST_CASE("ambient Killing fit recovers the helix soliton data") {
    const auto helix = monodromy_helix(1.0, 1.0, 1024);
    const auto fit = fit_ambient_killing(helix, true);
    CHECK(fit.rms < 1e-4);
    const auto rep = lie_soliton_residual(helix, fit.killing, fit.c);
    CHECK(rep.sup_residual < 1e-4);
}

TEST_CASE("elastic curve is a verified LIE soliton with c = 0") {
    const auto prm = ElasticParams::from_kpw(1.0, 0.3, 0.9);
    const auto pr = elastic_profile(prm, prm.curvature_period(), 1024);
    const auto curve =
        reconstruct_from_intrinsics(pr, {0, 0, 0}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    const auto fit = fit_ambient_killing(curve, true);
    CHECK(std::abs(fit.c) < 1e-4); // Section-2.2 equivalence: slip speed vanishes
    const auto rep = lie_soliton_residual(curve, fit.killing, fit.c);
    CHECK(rep.sup_residual < 1e-4);
}

TEST_CASE("magnetic geodesics on the cylinder") {
    const auto cyl = SurfaceOfRevolution::cylinder(1.0);

    // Zero field, start along a parallel: stays a parallel.
    const auto par = magnetic_geodesic_integrate(cyl, {[](double, double) { return 0.0; }}, 0.0,
                                                 0.0, {0.0, 1.0}, 10.0, 2048);
    for (int i = 0; i < par.size(); ++i) CHECK(std::abs(par.r(i)) < 1e-12);

    // Constant field b: prescribed geodesic curvature b.
    const double b = 0.7;
    const auto circ = magnetic_geodesic_integrate(cyl, {[b](double, double) { return b; }}, 0.0,
                                                  0.0, {0.0, 1.0}, 2.0 * M_PI, 4096);
    const auto kg = geodesic_curvature(cyl, circ);
    for (int i = 2; i < circ.size() - 2; ++i)
        CHECK(kg[i] == doctest::Approx(b).epsilon(2e-6));
}

TEST_CASE("speed and quasislope stay constant along the cylinder KMG") {
    const auto cyl = SurfaceOfRevolution::cylinder(1.0);
    const double phi = 0.5, omega = 0.8;
    // Killing-induced prescribed curvature k = c - q vanishes along the
    // helix soliton when c matches the initial quasislope.
    const Chart2 v0{std::sin(phi), std::cos(phi)};
    const auto kmg = magnetic_geodesic_integrate(cyl, {[](double, double) { return 0.0; }}, 0.0,
                                                 0.0, v0, 100.0, 200000);
    const KillingFieldSpec spec{omega, 0.0};
    double speed_dev = 0.0, slope_dev = 0.0;
    const double q0 = omega * std::cos(phi); // <V, t> at the start
    for (int i = 1; i < kmg.size() - 1; ++i) {
        const Chart2 vel{kmg.dr(i, 1), kmg.dtheta(i, 1)};
        const double r = kmg.r(i);
        speed_dev = std::max(speed_dev, std::abs(cyl.metric_norm(r, vel) - 1.0));
        const auto kv = killing_vector(cyl, spec, r, kmg.theta(i));
        slope_dev = std::max(slope_dev, std::abs(cyl.metric_dot(r, kv.chart, vel) - q0));
    }
    CHECK(speed_dev < 1e-9);
    CHECK(slope_dev < 1e-8);
}

TEST_CASE("section 5.1 loop: magnetic geodesic solves the reduced equation") {
    const auto sph = SurfaceOfRevolution::sphere();
    const double r0 = M_PI / 3.0, omega = 0.4;
    const double kg = 1.0 / std::tan(r0);
    const double c = kg + omega * sph.f(r0);
    MagneticFieldSpec field{[&sph, c, omega](double r, double) { return c - omega * sph.f(r); }};
    const double f0 = sph.f(r0);
    const auto chart = magnetic_geodesic_integrate(sph, field, r0, 0.0, {0.0, 1.0 / f0},
                                                   2.0 * M_PI * f0, 4096);
    // The run stays on the parallel and solves the Schrodinger reduction.
    for (int i = 0; i < chart.size(); ++i) CHECK(std::abs(chart.r(i) - r0) < 1e-9);
    const auto rep = schrodinger_reduced_residual(sph, chart, {omega, 0.0}, c);
    CHECK(rep.sup_residual < 1e-5);
}

TEST_CASE("schrodinger reduced residual: geodesics and parallels") {
    const auto sph = SurfaceOfRevolution::sphere();
    // Meridian geodesic, V = 0, c = 0.
    ChartCurve meridian;
    meridian.closed = false;
    meridian.spacing = 0.005;
    for (int i = 0; i < 256; ++i) {
        meridian.r_per.push_back(0.8 + meridian.spacing * i);
        meridian.th_per.push_back(0.3);
    }
    CHECK(schrodinger_reduced_residual(sph, meridian, {0, 0}, 0.0).sup_residual < 1e-6);

    // Constant-geodesic-curvature parallel with V = 0 needs c = k_g.
    const double r0 = M_PI / 3.0;
    const auto par = make_parallel_arclength(sph, r0, 512);
    const double kg = 1.0 / std::tan(r0);
    CHECK(schrodinger_reduced_residual(sph, par, {0, 0}, kg).sup_residual < 1e-5);

    // Rotational Killing field: c = k_g + <V, T>.
    const double omega = 0.7;
    const double c = kg + omega * sph.f(r0);
    const auto rep = schrodinger_reduced_residual(sph, par, {omega, 0.0}, c);
    CHECK(rep.sup_residual < 1e-5);
    // V is tangent along a parallel: its normal component is zero.
    CHECK(rep.extras.at("v_normal_sup") < 1e-12);
}

TEST_CASE("cylinder KdV solitons verify and carry the ambient-reading rotation label") {
    const auto s1 = cylinder_kdv_soliton(1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 512);
    CHECK(s1.verified);
    CHECK(s1.verify_residual < 1e-6);
    CHECK(s1.killing.omega == 0.0);
    CHECK(s1.killing.sigma == 0.0);
    CHECK(s1.family.at("ambient_omega") == doctest::Approx(1.0));

    const auto s2 = cylinder_kdv_soliton(2.0, 3.0, 6.0, 0.0, 0.0, 0.0, 512);
    CHECK(s2.verified);
    CHECK(s2.verify_residual < 1e-6);
    CHECK(s2.killing.sigma == doctest::Approx(6.0));
    CHECK(s2.family.at("ambient_omega") == doctest::Approx(54.0));
}

TEST_CASE("cylinder meridian with omega = c = 0 has zero KdV residual") {
    const auto cyl = SurfaceOfRevolution::cylinder(1.0);
    ChartCurve meridian;
    meridian.closed = false;
    meridian.spacing = 0.01;
    for (int i = 0; i < 64; ++i) {
        meridian.r_per.push_back(meridian.spacing * i);
        meridian.th_per.push_back(1.2);
    }
    CHECK(kdv_reduced_residual(cyl, meridian, {0, 0}, 0.0).sup_residual < 1e-8);
}

TEST_CASE("great circle KdV soliton has c = -1/2") {
    const auto spec = great_circle_kdv_soliton(256);
    CHECK(spec.verified);
    CHECK(spec.c == doctest::Approx(-0.5));
    CHECK(spec.verify_residual < 1e-10);
}

TEST_CASE("parallel soliton root finding") {
    // Fully consistent seeded family: root at r0 = 1 with C = f^2 f_r = 1.
    const auto surf = seeded_parallel_surface();
    const double root = parallel_soliton_find(surf, 2.0, 1.0, 1.0);
    CHECK(root == doctest::Approx(1.0).epsilon(1e-10));
    const auto par = make_parallel(surf, root, 256, 1);
    CHECK(kdv_reduced_residual(surf, par, {1.0, 0.0}, 2.0).sup_residual < 1e-8);

    // C = 0, omega = 0 on the sphere: algebraic rearrangement of the root.
    const auto sph = SurfaceOfRevolution::sphere();
    const double c = -3.0 / 8.0;
    const auto roots = parallel_soliton_roots(sph, c, 0.0, 0.0);
    bool found = false;
    for (double r : roots) {
        if (std::abs(r - M_PI / 3.0) < 1e-9) found = true;
        CHECK(std::abs(0.5 * sph.f_rr(r) * sph.f(r) - c) < 1e-9);
    }
    CHECK(found);

    // Sign-definite scalar: no root.
    CHECK_THROWS_AS(parallel_soliton_find(sph, -10.0, 0.0, 1.0), Error);
}

TEST_CASE("evolve_soliton: identity, rotation, screw motion") {
    auto spec = cylinder_kdv_soliton(1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 64);
    // sigma = omega = c = 0: the helix is a stationary soliton.
    const auto same = std::get<ChartCurve>(evolve_soliton(spec, 3.7));
    const auto& gen = std::get<ChartCurve>(spec.generator);
    for (int i = 0; i < gen.size(); ++i) {
        CHECK(same.r(i) == doctest::Approx(gen.r(i)));
        CHECK(same.theta(i) == doctest::Approx(gen.theta(i)));
    }

    // Forced rotation by pi about the axis.
    spec.killing.omega = 1.0;
    const auto rot = std::get<ChartCurve>(evolve_soliton(spec, M_PI));
    for (int i = 0; i < gen.size(); ++i)
        CHECK(rot.theta(i) - gen.theta(i) == doctest::Approx(M_PI));

    // Ambient screw motion of a curve generator.
    SolitonSpec lie;
    lie.flow = FlowKind::Lie;
    lie.generator = monodromy_helix(1.0, 1.0, 64);
    lie.ambient = AmbientKilling{{0, 0, 0.4}, {0, 0, 0.25}};
    const auto moved = std::get<DiscreteCurve>(evolve_soliton(lie, 1.3));
    const auto& hel = std::get<DiscreteCurve>(lie.generator);
    const Mat3 expect_rot = Mat3::rotation_z(0.4 * 1.3);
    for (int i = 0; i < hel.size(); ++i) {
        const Vec3 expect = expect_rot.apply(hel.points[i]) + Vec3{0, 0, 0.25 * 1.3};
        CHECK(norm(moved.points[i] - expect) < 1e-12);
    }
}

TEST_CASE("soliton verification loop: numerical flow matches the closed form") {
    // Cylinder family: the flow is exactly stationary for sigma = 0 and
    // exactly translating for sigma != 0.
    const auto spec = cylinder_kdv_soliton(2.0, 3.0, 6.0, 0.0, 0.0, 0.0, 64);
    FlowState st;
    st.kind = FlowKind::Kdv;
    st.payload = std::get<ChartCurve>(spec.generator);
    st.surface = spec.surface;
    const double h = std::get<ChartCurve>(spec.generator).spacing;
    StepControl ctl{0.2 * h * h * h, 2e-3, 1 << 30, true};
    run_flow(st, ctl);
    const auto& evolved = std::get<ChartCurve>(st.payload);
    const auto closed = std::get<ChartCurve>(evolve_soliton(spec, st.time));
    double worst = 0.0;
    for (int i = 0; i < evolved.size(); ++i) {
        worst = std::max(worst, std::abs(evolved.r(i) - closed.r(i)));
        worst = std::max(worst, std::abs(evolved.theta(i) - closed.theta(i)));
    }
    CHECK(worst < 1e-10);

    // Consistent parallel soliton: discrete rotation rate matches omega - c.
    const auto surf = seeded_parallel_surface();
    SolitonSpec pspec;
    pspec.flow = FlowKind::Kdv;
    pspec.surface = std::make_shared<SurfaceOfRevolution>(surf);
    pspec.c = 2.0;
    pspec.killing = {1.0, 0.0};
    pspec.generator = make_parallel(surf, 1.0, 64, 1);
    FlowState pst;
    pst.kind = FlowKind::Kdv;
    pst.payload = std::get<ChartCurve>(pspec.generator);
    pst.surface = pspec.surface;
    const double hp = std::get<ChartCurve>(pspec.generator).spacing;
    StepControl pctl{0.2 * hp * hp * hp, 1e-3, 1 << 30, true};
    run_flow(pst, pctl);
    const auto closed_p = std::get<ChartCurve>(evolve_soliton(pspec, pst.time));
    const auto& evolved_p = std::get<ChartCurve>(pst.payload);
    double worst_p = 0.0;
    for (int i = 0; i < evolved_p.size(); ++i) {
        worst_p = std::max(worst_p, std::abs(evolved_p.r(i) - closed_p.r(i)));
        worst_p = std::max(worst_p, std::abs(evolved_p.theta(i) - closed_p.theta(i)));
    }
    CHECK(worst_p < 1e-9);
}

TEST_CASE("soliton spec round-trips through JSON") {
    const auto spec = cylinder_kdv_soliton(2.0, 3.0, 6.0, 0.1, 0.2, 0.3, 32);
    const json j = soliton_spec_to_json(spec);
    const auto back = soliton_spec_from_json(j);
    CHECK(back.flow == FlowKind::Kdv);
    CHECK(back.killing.sigma == doctest::Approx(6.0));
    CHECK(back.family.at("ambient_omega") == doctest::Approx(54.0));
    const auto& g1 = std::get<ChartCurve>(spec.generator);
    const auto& g2 = std::get<ChartCurve>(back.generator);
    for (int i = 0; i < g1.size(); ++i) {
        CHECK(g1.r(i) == doctest::Approx(g2.r(i)).epsilon(1e-15));
        CHECK(g1.theta(i) == doctest::Approx(g2.theta(i)).epsilon(1e-15));
    }
}
