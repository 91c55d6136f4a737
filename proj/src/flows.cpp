#include "geoflow/flows.hpp"

#include <cmath>

#include "geoflow/errors.hpp"

namespace geoflow {

double SphereMap::max_norm_defect() const {
    double worst = 0.0;
    for (const Vec3& v : u) worst = std::max(worst, std::abs(norm(v) - 1.0));
    return worst;
}

void SphereMap::renormalize() {
    for (Vec3& v : u) v = normalized(v);
}

const char* flow_name(FlowKind k) {
    switch (k) {
        case FlowKind::Lie: return "lie";
        case FlowKind::AxialLie: return "axial";
        case FlowKind::Schrodinger: return "schrodinger";
        case FlowKind::Kdv: return "kdv";
    }
    return "?";
}

double FlowState::grid_spacing() const {
    if (std::holds_alternative<DiscreteCurve>(payload))
        return std::get<DiscreteCurve>(payload).spacing;
    if (std::holds_alternative<SphereMap>(payload)) return std::get<SphereMap>(payload).spacing;
    return std::get<ChartCurve>(payload).spacing;
}

double max_stable_dt(FlowKind kind, double h) {
    switch (kind) {
        case FlowKind::Lie:
        case FlowKind::Schrodinger:
            return 0.2 * h * h;
        case FlowKind::AxialLie:
        case FlowKind::Kdv:
            return 0.2 * h * h * h;
    }
    return 0.0;
}

namespace {

using Field = std::vector<Vec3>;

void check_finite(const Field& f) {
    for (const Vec3& v : f)
        if (!finite(v)) fail(ErrorCode::BlowUp, "non-finite state");
}

// RK4 on an array-of-points state with a pluggable right-hand side.
template <typename Rhs>
void rk4_points(Field& pts, double dt, const Rhs& rhs) {
    const int n = static_cast<int>(pts.size());
    Field k1 = rhs(pts), tmp(n);
    for (int i = 0; i < n; ++i) tmp[i] = pts[i] + k1[i] * (0.5 * dt);
    Field k2 = rhs(tmp);
    for (int i = 0; i < n; ++i) tmp[i] = pts[i] + k2[i] * (0.5 * dt);
    Field k3 = rhs(tmp);
    for (int i = 0; i < n; ++i) tmp[i] = pts[i] + k3[i] * dt;
    Field k4 = rhs(tmp);
    for (int i = 0; i < n; ++i)
        pts[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0);
    check_finite(pts);
}

Field axial_rhs(const DiscreteCurve& shape, const Field& pts, double alpha, double beta) {
    DiscreteCurve work = shape;
    work.points = pts;
    const int n = work.size();
    Field out(n);
    for (int i = 0; i < n; ++i) {
        const Vec3 g1 = work.d1(i);
        const Vec3 g2 = work.d2(i);
        if (norm2(g2) > 1e12) fail(ErrorCode::BlowUp, "curvature exceeded 1e6");
        Vec3 r = cross(g1, g2) * alpha;
        if (beta != 0.0) {
            const Vec3 g3 = work.d3(i);
            r += (g3 + cross(g2, cross(g1, g2)) * 1.5) * beta;
        }
        out[i] = r;
    }
    return out;
}

} // namespace

void step_axial_lie(DiscreteCurve& curve, double dt, double alpha, double beta) {
    rk4_points(curve.points, dt,
               [&](const Field& pts) { return axial_rhs(curve, pts, alpha, beta); });
}

void step_lie(DiscreteCurve& curve, double dt) { step_axial_lie(curve, dt, 1.0, 0.0); }

void step_schrodinger_map(SphereMap& map, double dt, bool project) {
    SphereMap work = map;
    rk4_points(map.u, dt, [&](const Field& pts) {
        work.u = pts;
        const int n = work.size();
        Field out(n);
        for (int i = 0; i < n; ++i) out[i] = cross(work.at(i), work.d2(i));
        return out;
    });
    if (project) map.renormalize();
}

void step_kdv_map(SphereMap& map, double dt, bool project) {
    SphereMap work = map;
    rk4_points(map.u, dt, [&](const Field& pts) {
        work.u = pts;
        const int n = work.size();
        const double h = work.spacing;
        // First covariant derivative of u_x: project u_xx on the tangent plane.
        Field a(n);
        for (int i = 0; i < n; ++i) {
            const Vec3 ui = work.at(i);
            const Vec3 uxx = work.d2(i);
            a[i] = uxx - ui * dot(uxx, ui);
        }
        Field out(n);
        for (int i = 0; i < n; ++i) {
            const Vec3 ui = work.at(i);
            const Vec3 da = (a[(i + 1) % n] - a[(i - 1 + n) % n]) / (2.0 * h);
            const Vec3 cov2 = da - ui * dot(da, ui);
            const Vec3 ux = work.d1(i);
            out[i] = cov2 + ux * (0.5 * norm2(ux)); // G = 1 on the unit sphere
        }
        return out;
    });
    if (project) map.renormalize();
}

void step_kdv_map(ChartCurve& curve, const SurfaceOfRevolution& surf, double dt) {
    const int n = curve.size();
    ChartCurve work = curve;

    struct Pair2 {
        std::vector<double> r, t;
    };
    auto rhs = [&](const std::vector<double>& rp, const std::vector<double>& tp) {
        work.r_per = rp;
        work.th_per = tp;
        const auto cov2 = second_covariant(surf, work);
        Pair2 out;
        out.r.resize(n);
        out.t.resize(n);
        for (int i = 0; i < n; ++i) {
            const double r = work.r(i);
            const double fr = surf.f(r);
            const double G = surf.gauss_curvature(r);
            const double r1 = work.dr(i, 1), t1 = work.dtheta(i, 1);
            const double v2 = r1 * r1 + fr * fr * t1 * t1;
            out.r[i] = cov2[i].r + 0.5 * G * v2 * r1;
            out.t[i] = cov2[i].th + 0.5 * G * v2 * t1;
            if (!std::isfinite(out.r[i]) || !std::isfinite(out.t[i]))
                fail(ErrorCode::BlowUp, "non-finite chart flow");
        }
        return out;
    };

    const auto& r0 = curve.r_per;
    const auto& t0 = curve.th_per;
    auto ax = [n](const std::vector<double>& y, const std::vector<double>& d, double a) {
        std::vector<double> out(n);
        for (int i = 0; i < n; ++i) out[i] = y[i] + a * d[i];
        return out;
    };
    const Pair2 k1 = rhs(r0, t0);
    const Pair2 k2 = rhs(ax(r0, k1.r, 0.5 * dt), ax(t0, k1.t, 0.5 * dt));
    const Pair2 k3 = rhs(ax(r0, k2.r, 0.5 * dt), ax(t0, k2.t, 0.5 * dt));
    const Pair2 k4 = rhs(ax(r0, k3.r, dt), ax(t0, k3.t, dt));
    for (int i = 0; i < n; ++i) {
        curve.r_per[i] += dt / 6.0 * (k1.r[i] + 2.0 * k2.r[i] + 2.0 * k3.r[i] + k4.r[i]);
        curve.th_per[i] += dt / 6.0 * (k1.t[i] + 2.0 * k2.t[i] + 2.0 * k3.t[i] + k4.t[i]);
    }
    curve.validate(surf);
}

void step(FlowState& state, double dt, bool project) {
    switch (state.kind) {
        case FlowKind::Lie:
            step_lie(std::get<DiscreteCurve>(state.payload), dt);
            break;
        case FlowKind::AxialLie:
            step_axial_lie(std::get<DiscreteCurve>(state.payload), dt, state.alpha, state.beta);
            break;
        case FlowKind::Schrodinger:
            step_schrodinger_map(std::get<SphereMap>(state.payload), dt, project);
            break;
        case FlowKind::Kdv:
            if (std::holds_alternative<SphereMap>(state.payload))
                step_kdv_map(std::get<SphereMap>(state.payload), dt, project);
            else
                step_kdv_map(std::get<ChartCurve>(state.payload), *state.surface, dt);
            break;
    }
    state.time += dt;
}

void run_flow(FlowState& state, const StepControl& control,
              const std::function<void(const FlowState&)>& on_frame) {
    if (control.dt <= 0.0 || control.t_end <= 0.0 || control.save_every <= 0)
        fail(ErrorCode::InvalidSpec, "step control needs positive dt, t_end, save_every");
    const double h = state.grid_spacing();
    if (control.dt > max_stable_dt(state.kind, h) * (1.0 + 1e-12))
        fail(ErrorCode::InvalidSpec, "dt exceeds the stability bound for this flow");

    if (std::holds_alternative<DiscreteCurve>(state.payload)) {
        const auto& c = std::get<DiscreteCurve>(state.payload);
        c.validate();
        if (!c.closed) fail(ErrorCode::InvalidSpec, "flows require closed curves");
        if (c.param_kind != ParamKind::Arclength)
            fail(ErrorCode::NotArclength, "curve flows require arclength parametrization");
    }

    const long nsteps = std::lround(control.t_end / control.dt);
    if (on_frame) on_frame(state);
    for (long s = 1; s <= nsteps; ++s) {
        step(state, control.dt, control.project);
        if (on_frame && (s % control.save_every == 0 || s == nsteps)) on_frame(state);
    }
}

double energy_e1(const SphereMap& map) {
    double sum = 0.0;
    for (int i = 0; i < map.size(); ++i) sum += norm2(map.d1(i));
    return 0.5 * sum * map.spacing;
}

double energy_e2(const SphereMap& map) {
    double sum = 0.0;
    for (int i = 0; i < map.size(); ++i) {
        const Vec3 ui = map.at(i);
        const Vec3 uxx = map.d2(i);
        const Vec3 cov = uxx - ui * dot(uxx, ui);
        sum += dot(cov, cross(ui, map.d1(i)));
    }
    return 0.5 * sum * map.spacing;
}

double energy_e1(const ChartCurve& c, const SurfaceOfRevolution& surf) {
    const auto v = speeds(surf, c);
    double sum = 0.0;
    const int n = c.size();
    for (int i = 0; i < n; ++i) {
        const double w = (!c.closed && (i == 0 || i == n - 1)) ? 0.5 : 1.0;
        sum += w * v[i] * v[i];
    }
    return 0.5 * sum * c.spacing;
}

double energy_e2(const ChartCurve& c, const SurfaceOfRevolution& surf) {
    const auto acc = covariant_accel(surf, c);
    double sum = 0.0;
    const int n = c.size();
    for (int i = 0; i < n; ++i) {
        const double r = c.r(i);
        const Chart2 ux{c.dr(i, 1), c.dtheta(i, 1)};
        const Chart2 jux = surf.complex_structure(r, ux);
        const double w = (!c.closed && (i == 0 || i == n - 1)) ? 0.5 : 1.0;
        sum += w * surf.metric_dot(r, acc[i], jux);
    }
    return 0.5 * sum * c.spacing;
}

double energy_e1(const FlowState& state) {
    if (std::holds_alternative<SphereMap>(state.payload))
        return energy_e1(std::get<SphereMap>(state.payload));
    if (std::holds_alternative<ChartCurve>(state.payload))
        return energy_e1(std::get<ChartCurve>(state.payload), *state.surface);
    // Curve payload: energies of the tangent indicatrix.
    const auto analysis = frenet_analyze(std::get<DiscreteCurve>(state.payload));
    return 0.5 * bending_energy(analysis.profile);
}

double energy_e2(const FlowState& state) {
    if (std::holds_alternative<SphereMap>(state.payload))
        return energy_e2(std::get<SphereMap>(state.payload));
    if (std::holds_alternative<ChartCurve>(state.payload))
        return energy_e2(std::get<ChartCurve>(state.payload), *state.surface);
    const auto analysis = frenet_analyze(std::get<DiscreteCurve>(state.payload));
    const auto& pr = analysis.profile;
    double sum = 0.0;
    const int n = pr.size();
    for (int i = 0; i < n; ++i) {
        const double w = (!pr.closed && (i == 0 || i == n - 1)) ? 0.5 : 1.0;
        sum += w * pr.k[i] * pr.k[i] * pr.tau[i];
    }
    return 0.5 * sum * pr.spacing;
}

} // namespace geoflow
