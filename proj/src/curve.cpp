#include "geoflow/curve.hpp"

#include <algorithm>
#include <cmath>

#include "geoflow/errors.hpp"
#include "geoflow/spline.hpp"

namespace geoflow {

bool Monodromy::is_identity() const {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (std::abs(rot(i, j) - (i == j ? 1.0 : 0.0)) > 1e-14) return false;
    return norm(shift) <= 1e-14;
}

Vec3 DiscreteCurve::pt(int i) const {
    const int n = size();
    if (!closed) return points[i];
    int wraps = 0;
    while (i >= n) { i -= n; ++wraps; }
    while (i < 0) { i += n; --wraps; }
    Vec3 p = points[i];
    for (; wraps > 0; --wraps) p = monodromy.forward(p);
    for (; wraps < 0; ++wraps) p = monodromy.backward(p);
    return p;
}

Vec3 DiscreteCurve::d1(int i) const {
    const int n = size();
    const double h = spacing;
    if (closed || (i > 0 && i < n - 1)) return (pt(i + 1) - pt(i - 1)) / (2.0 * h);
    if (i == 0) return (pt(0) * -3.0 + pt(1) * 4.0 - pt(2)) / (2.0 * h);
    return (pt(n - 1) * 3.0 - pt(n - 2) * 4.0 + pt(n - 3)) / (2.0 * h);
}

Vec3 DiscreteCurve::d2(int i) const {
    const int n = size();
    const double h2 = spacing * spacing;
    if (closed || (i > 0 && i < n - 1)) return (pt(i + 1) - pt(i) * 2.0 + pt(i - 1)) / h2;
    if (i == 0) return (pt(0) * 2.0 - pt(1) * 5.0 + pt(2) * 4.0 - pt(3)) / h2;
    return (pt(n - 1) * 2.0 - pt(n - 2) * 5.0 + pt(n - 3) * 4.0 - pt(n - 4)) / h2;
}

Vec3 DiscreteCurve::d3(int i) const {
    const int n = size();
    const double h3 = spacing * spacing * spacing;
    if (closed || (i > 1 && i < n - 2))
        return (pt(i + 2) - pt(i + 1) * 2.0 + pt(i - 1) * 2.0 - pt(i - 2)) / (2.0 * h3);
    if (i == 0)
        return (pt(0) * -2.5 + pt(1) * 9.0 - pt(2) * 12.0 + pt(3) * 7.0 - pt(4) * 1.5) / h3;
    if (i == 1)
        return (pt(0) * -1.5 + pt(1) * 5.0 - pt(2) * 6.0 + pt(3) * 3.0 - pt(4) * 0.5) / h3;
    if (i == n - 2)
        return (pt(n - 5) * 0.5 - pt(n - 4) * 3.0 + pt(n - 3) * 6.0 - pt(n - 2) * 5.0 + pt(n - 1) * 1.5) / h3;
    return (pt(n - 5) * 1.5 - pt(n - 4) * 7.0 + pt(n - 3) * 12.0 - pt(n - 2) * 9.0 + pt(n - 1) * 2.5) / h3;
}

double DiscreteCurve::chord_length() const {
    const int n = size();
    double len = 0.0;
    const int last = closed ? n : n - 1;
    for (int i = 0; i < last; ++i) len += norm(pt(i + 1) - pt(i));
    return len;
}

double DiscreteCurve::arclength_defect() const {
    const int n = size();
    double worst = 0.0;
    const int last = closed ? n : n - 1;
    for (int i = 0; i < last; ++i)
        worst = std::max(worst, std::abs(norm(pt(i + 1) - pt(i)) - spacing) / spacing);
    return worst;
}

void DiscreteCurve::validate() const {
    if (size() < 4) fail(ErrorCode::TooFewPoints, "curve needs at least 4 samples");
    if (spacing <= 0.0) fail(ErrorCode::InvalidParams, "spacing must be positive");
    if (param_kind == ParamKind::Arclength && arclength_defect() > 0.01)
        fail(ErrorCode::NotArclength, "chord lengths deviate from spacing by more than 1%");
}

double degeneracy_threshold(const std::vector<double>& k) {
    double kmax = 0.0;
    for (double v : k) kmax = std::max(kmax, v);
    return std::max(1e-8 * kmax, 1e-12);
}

namespace {

// Arclength table of a spline triple via composite Simpson on each knot gap.
struct SplineCurve {
    CubicSpline x, y, z;

    Vec3 eval(double t) const { return {x.eval(t), y.eval(t), z.eval(t)}; }
    double speed(double t) const {
        const Vec3 d{x.deriv(t), y.deriv(t), z.deriv(t)};
        return norm(d);
    }
};

} // namespace

DiscreteCurve resample_arclength(const DiscreteCurve& curve, int n) {
    const int m = curve.size();
    if (m < 4) fail(ErrorCode::TooFewPoints, "resample needs at least 4 input points");
    if (n < 4) fail(ErrorCode::TooFewPoints, "resample target must have at least 4 points");
    if (curve.chord_length() < 1e-12) fail(ErrorCode::DegenerateCurve, "zero-length curve");

    const bool twisted = curve.closed && !curve.monodromy.is_identity();

    // Chord-length parameter over the working point set. Twisted-closed
    // curves are handled as open splines padded by wrapped samples.
    std::vector<Vec3> pts;
    int pad = 0;
    if (twisted) {
        pad = 3;
        for (int i = -pad; i < m + pad; ++i) pts.push_back(curve.pt(i));
    } else {
        pts.assign(curve.points.begin(), curve.points.end());
    }
    const int np = static_cast<int>(pts.size());

    std::vector<double> t(np, 0.0);
    for (int i = 1; i < np; ++i) t[i] = t[i - 1] + norm(pts[i] - pts[i - 1]);

    SplineCurve sc;
    if (curve.closed && !twisted) {
        std::vector<double> knots = t;
        knots.push_back(t.back() + norm(curve.pt(m) - pts[m - 1]));
        std::vector<double> xs(np), ys(np), zs(np);
        for (int i = 0; i < np; ++i) { xs[i] = pts[i].x; ys[i] = pts[i].y; zs[i] = pts[i].z; }
        sc.x = CubicSpline::periodic(knots, xs);
        sc.y = CubicSpline::periodic(knots, ys);
        sc.z = CubicSpline::periodic(knots, zs);
        t = knots;
    } else {
        std::vector<double> xs(np), ys(np), zs(np);
        for (int i = 0; i < np; ++i) { xs[i] = pts[i].x; ys[i] = pts[i].y; zs[i] = pts[i].z; }
        sc.x = CubicSpline::natural(t, xs);
        sc.y = CubicSpline::natural(t, ys);
        sc.z = CubicSpline::natural(t, zs);
    }

    // Fundamental domain in the parameter.
    const int i0 = twisted ? pad : 0;
    const int i1 = twisted ? pad + m : (curve.closed ? np : np - 1);
    const double ta = t[i0];
    const double tb = t[i1];

    // Cumulative arclength on a fine grid (Simpson per slice).
    const int slices = 24 * (i1 - i0);
    std::vector<double> tg(slices + 1), sg(slices + 1, 0.0);
    for (int i = 0; i <= slices; ++i) tg[i] = ta + (tb - ta) * i / slices;
    for (int i = 0; i < slices; ++i) {
        const double a = tg[i], b = tg[i + 1], mid = 0.5 * (a + b);
        sg[i + 1] = sg[i] + (b - a) / 6.0 * (sc.speed(a) + 4.0 * sc.speed(mid) + sc.speed(b));
    }
    const double total = sg[slices];
    if (total < 1e-12) fail(ErrorCode::DegenerateCurve, "zero arclength");

    const double ds = curve.closed ? total / n : total / (n - 1);

    DiscreteCurve out;
    out.spacing = ds;
    out.closed = curve.closed;
    out.param_kind = ParamKind::Arclength;
    out.monodromy = curve.monodromy;
    out.points.resize(n);
    int seg = 0;
    for (int j = 0; j < n; ++j) {
        const double target = std::min(j * ds, total);
        while (seg < slices - 1 && sg[seg + 1] < target) ++seg;
        const double w = (target - sg[seg]) / std::max(sg[seg + 1] - sg[seg], 1e-300);
        double tj = tg[seg] + w * (tg[seg + 1] - tg[seg]);
        // One Newton step sharpens the inverse.
        const double sp = sc.speed(tj);
        if (sp > 1e-12) {
            const double sj = sg[seg] + (tj - tg[seg]) * 0.5 * (sc.speed(tg[seg]) + sp);
            tj -= (sj - target) / sp;
            tj = std::clamp(tj, tg[seg], tg[seg + 1]);
        }
        out.points[j] = sc.eval(tj);
    }
    return out;
}

FrenetAnalysis frenet_analyze(const DiscreteCurve& curve) {
    curve.validate();
    if (curve.param_kind != ParamKind::Arclength)
        fail(ErrorCode::NotArclength, "frenet_analyze requires arclength parametrization");

    const int n = curve.size();
    FrenetAnalysis out;
    out.profile.spacing = curve.spacing;
    out.profile.closed = curve.closed;
    out.profile.k.resize(n);
    out.profile.tau.resize(n);
    out.profile.degenerate_mask.assign(n, false);
    out.frames.t.resize(n);
    out.frames.n.resize(n);
    out.frames.b.resize(n);
    out.frames.valid.assign(n, true);

    std::vector<Vec3> g1(n), g2(n), g3(n);
    for (int i = 0; i < n; ++i) {
        g1[i] = curve.d1(i);
        g2[i] = curve.d2(i);
        g3[i] = curve.d3(i);
        out.profile.k[i] = norm(g2[i]);
    }
    const double kmin = degeneracy_threshold(out.profile.k);

    bool any_valid = false;
    Vec3 last_n{0, 0, 1};
    for (int i = 0; i < n; ++i) {
        const Vec3 t = normalized(g1[i]);
        out.frames.t[i] = t;
        if (out.profile.k[i] < kmin) {
            out.profile.degenerate_mask[i] = true;
            out.frames.valid[i] = false;
            // Keep the frame usable: reuse the previous normal projected
            // orthogonal to t.
            Vec3 nn = last_n - t * dot(last_n, t);
            if (norm(nn) < 1e-12) nn = std::abs(t.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
            nn = normalized(nn - t * dot(nn, t));
            out.frames.n[i] = nn;
            out.frames.b[i] = cross(t, nn);
            out.profile.tau[i] = 0.0;
            continue;
        }
        any_valid = true;
        const Vec3 nn = g2[i] / out.profile.k[i];
        out.frames.n[i] = nn;
        out.frames.b[i] = cross(t, nn);
        last_n = nn;
        const Vec3 c12 = cross(g1[i], g2[i]);
        const double c2 = norm2(c12);
        out.profile.tau[i] = c2 > 0.0 ? dot(c12, g3[i]) / c2 : 0.0;
    }
    if (!any_valid) fail(ErrorCode::AllDegenerate, "curvature below threshold everywhere");
    return out;
}

DiscreteCurve reconstruct_from_intrinsics(const IntrinsicProfile& profile,
                                          const Vec3& origin,
                                          const FrenetFrame& frame0) {
    return reconstruct_with_frames(profile, origin, frame0).curve;
}

ReconstructionResult reconstruct_with_frames(const IntrinsicProfile& profile,
                                             const Vec3& origin, const FrenetFrame& frame0) {
    const int n = profile.size();
    if (n < 4) fail(ErrorCode::TooFewPoints, "profile needs at least 4 samples");
    const double h = profile.spacing;

    const double o1 = std::abs(dot(frame0.t, frame0.n));
    const double o2 = std::abs(dot(frame0.t, frame0.b));
    const double o3 = std::abs(dot(frame0.n, frame0.b));
    const double u1 = std::abs(norm(frame0.t) - 1.0);
    const double u2 = std::abs(norm(frame0.n) - 1.0);
    const double u3 = std::abs(norm(frame0.b) - 1.0);
    if (std::max({o1, o2, o3, u1, u2, u3}) > 1e-8)
        fail(ErrorCode::BadFrame, "frame0 is not orthonormal");
    if (dot(cross(frame0.t, frame0.n), frame0.b) < 0.0)
        fail(ErrorCode::BadFrame, "frame0 is not right-handed");

    struct State {
        Vec3 g, t, n, b;
    };
    auto rhs = [](const State& y, double k, double tau) {
        State d;
        d.g = y.t;
        d.t = y.n * k;
        d.n = y.t * (-k) + y.b * tau;
        d.b = y.n * (-tau);
        return d;
    };
    auto axpy = [](const State& y, const State& d, double a) {
        return State{y.g + d.g * a, y.t + d.t * a, y.n + d.n * a, y.b + d.b * a};
    };

    auto kt = [&](int i) -> std::pair<double, double> {
        const int j = profile.closed ? (i % n + n) % n : std::min(i, n - 1);
        return {profile.k[j], profile.tau[j]};
    };

    const int steps = profile.closed ? n : n - 1;
    State y{origin, frame0.t, frame0.n, frame0.b};

    ReconstructionResult result;
    DiscreteCurve& out = result.curve;
    out.spacing = h;
    out.closed = profile.closed;
    out.param_kind = ParamKind::Arclength;
    out.points.resize(n);
    out.points[0] = origin;
    result.frames.t.resize(n);
    result.frames.n.resize(n);
    result.frames.b.resize(n);
    result.frames.valid.assign(n, true);
    result.frames.t[0] = frame0.t;
    result.frames.n[0] = frame0.n;
    result.frames.b[0] = frame0.b;

    FrenetFrame last = frame0;
    for (int i = 0; i < steps; ++i) {
        const auto [k0, tau0] = kt(i);
        const auto [k1, tau1] = kt(i + 1);
        const double km = 0.5 * (k0 + k1), tm = 0.5 * (tau0 + tau1);

        const State k1s = rhs(y, k0, tau0);
        const State k2s = rhs(axpy(y, k1s, 0.5 * h), km, tm);
        const State k3s = rhs(axpy(y, k2s, 0.5 * h), km, tm);
        const State k4s = rhs(axpy(y, k3s, h), k1, tau1);
        y.g += (k1s.g + k2s.g * 2.0 + k3s.g * 2.0 + k4s.g) * (h / 6.0);
        y.t += (k1s.t + k2s.t * 2.0 + k3s.t * 2.0 + k4s.t) * (h / 6.0);
        y.n += (k1s.n + k2s.n * 2.0 + k3s.n * 2.0 + k4s.n) * (h / 6.0);
        y.b += (k1s.b + k2s.b * 2.0 + k3s.b * 2.0 + k4s.b) * (h / 6.0);

        // Gram-Schmidt the frame after every step.
        y.t = normalized(y.t);
        y.n = normalized(y.n - y.t * dot(y.n, y.t));
        y.b = cross(y.t, y.n);

        if (i + 1 < n) out.points[i + 1] = y.g;
        if (i + 1 < n) {
            result.frames.t[i + 1] = y.t;
            result.frames.n[i + 1] = y.n;
            result.frames.b[i + 1] = y.b;
        }
        last = {y.t, y.n, y.b};
    }

    if (profile.closed) {
        const Mat3 f0 = Mat3::from_columns(frame0.t, frame0.n, frame0.b);
        const Mat3 fl = Mat3::from_columns(last.t, last.n, last.b);
        Monodromy mon;
        mon.rot = Mat3::mul(fl, f0.transposed());
        mon.shift = y.g - mon.rot.apply(origin);
        out.monodromy = mon;
    }
    return result;
}

double bending_energy(const IntrinsicProfile& profile) {
    const int n = profile.size();
    const double h = profile.spacing;
    double sum = 0.0;
    if (profile.closed) {
        for (int i = 0; i < n; ++i) sum += profile.k[i] * profile.k[i];
        return sum * h;
    }
    for (int i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        sum += w * profile.k[i] * profile.k[i];
    }
    return sum * h;
}

DiscreteCurve tangent_map(const DiscreteCurve& curve) {
    curve.validate();
    if (curve.param_kind != ParamKind::Arclength)
        fail(ErrorCode::NotArclength, "tangent_map requires arclength parametrization");
    const int n = curve.size();
    DiscreteCurve out;
    out.spacing = curve.spacing;
    out.closed = curve.closed;
    out.param_kind = ParamKind::General;
    out.points.resize(n);
    for (int i = 0; i < n; ++i) out.points[i] = normalized(curve.d1(i));
    if (curve.closed) {
        out.monodromy.rot = curve.monodromy.rot;
        out.monodromy.shift = Vec3{0, 0, 0};
    }
    return out;
}

} // namespace geoflow
