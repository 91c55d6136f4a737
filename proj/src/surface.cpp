#include "geoflow/surface.hpp"

#include <cmath>
#include <memory>

#include "geoflow/errors.hpp"
#include "geoflow/spline.hpp"

namespace geoflow {

SurfaceOfRevolution::SurfaceOfRevolution(std::string name, Fn f, Fn f_r, Fn f_rr, Fn g,
                                         Fn g_r, double r_lo, double r_hi, bool cylinder)
    : name_(std::move(name)),
      f_(std::move(f)),
      f_r_(std::move(f_r)),
      f_rr_(std::move(f_rr)),
      g_(std::move(g)),
      g_r_(std::move(g_r)),
      r_lo_(r_lo),
      r_hi_(r_hi),
      cylinder_(cylinder) {
    check_profile();
}

void SurfaceOfRevolution::check_profile() const {
    const double lo = std::max(r_lo_, -1e6), hi = std::min(r_hi_, 1e6);
    for (int i = 0; i < 100; ++i) {
        const double r = lo + (hi - lo) * (i + 0.5) / 100.0;
        const double fr = f_r_(r), gr = g_r_(r);
        if (std::abs(fr * fr + gr * gr - 1.0) > 1e-10)
            fail(ErrorCode::InvalidParams, "profile violates f_r^2 + g_r^2 = 1 at r = " + std::to_string(r));
        if (f_(r) <= 0.0)
            fail(ErrorCode::InvalidParams, "profile has f <= 0 inside the domain");
    }
}

SurfaceOfRevolution SurfaceOfRevolution::sphere() {
    return SurfaceOfRevolution(
        "sphere", [](double r) { return std::sin(r); }, [](double r) { return std::cos(r); },
        [](double r) { return -std::sin(r); }, [](double r) { return -std::cos(r); },
        [](double r) { return std::sin(r); }, 0.0, M_PI);
}

SurfaceOfRevolution SurfaceOfRevolution::cylinder(double r0) {
    if (r0 <= 0.0) fail(ErrorCode::InvalidParams, "cylinder radius must be positive");
    return SurfaceOfRevolution(
        "cylinder", [r0](double) { return r0; }, [](double) { return 0.0; },
        [](double) { return 0.0; }, [](double r) { return r; }, [](double) { return 1.0; },
        -1e18, 1e18, true);
}

SurfaceOfRevolution SurfaceOfRevolution::gaussian_bump(double amplitude, double width) {
    const double s2 = width * width;
    auto f = [amplitude, s2](double r) { return 1.0 + amplitude * std::exp(-0.5 * r * r / s2); };
    auto f_r = [amplitude, s2](double r) {
        return -amplitude * (r / s2) * std::exp(-0.5 * r * r / s2);
    };
    auto f_rr = [amplitude, s2](double r) {
        return amplitude * std::exp(-0.5 * r * r / s2) * (r * r - s2) / (s2 * s2);
    };
    // Peak slope of f is at r = width; keep it safely below 1.
    if (std::abs(amplitude) / width * std::exp(-0.5) >= 0.9)
        fail(ErrorCode::InvalidParams, "bump too steep for an arclength profile");
    auto g_r = [f_r](double r) {
        const double fr = f_r(r);
        return std::sqrt(std::max(0.0, 1.0 - fr * fr));
    };
    const double lo = -6.0 * width, hi = 6.0 * width;
    // g by cumulative Simpson on a fine cached grid.
    const int m = 4096;
    auto table = std::make_shared<std::vector<double>>(m + 1, 0.0);
    const double hstep = (hi - lo) / m;
    for (int i = 0; i < m; ++i) {
        const double a = lo + i * hstep, b = a + hstep;
        (*table)[i + 1] = (*table)[i] + hstep / 6.0 * (g_r(a) + 4.0 * g_r(0.5 * (a + b)) + g_r(b));
    }
    auto g = [table, lo, hstep, m](double r) {
        double u = (r - lo) / hstep;
        int i = std::clamp(static_cast<int>(u), 0, m - 1);
        const double w = u - i;
        return (*table)[i] * (1.0 - w) + (*table)[i + 1] * w;
    };
    return SurfaceOfRevolution("bump", f, f_r, f_rr, g, g_r, lo, hi, false);
}

SurfaceOfRevolution SurfaceOfRevolution::from_table(
    const std::vector<std::array<double, 6>>& rows, std::string name) {
    if (rows.size() < 4) fail(ErrorCode::TooFewPoints, "profile table needs at least 4 rows");
    std::vector<double> r(rows.size());
    std::array<std::vector<double>, 5> cols;
    for (auto& c : cols) c.resize(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        r[i] = rows[i][0];
        if (i > 0 && r[i] <= r[i - 1])
            fail(ErrorCode::InvalidParams, "profile table r column must increase");
        for (int j = 0; j < 5; ++j) cols[j][i] = rows[i][j + 1];
    }
    auto sp = std::make_shared<std::array<CubicSpline, 5>>();
    for (int j = 0; j < 5; ++j) (*sp)[j] = CubicSpline::natural(r, cols[j]);
    auto get = [sp](int j) {
        return [sp, j](double rr) { return (*sp)[j].eval(rr); };
    };
    return SurfaceOfRevolution(std::move(name), get(0), get(1), get(2), get(3), get(4),
                               r.front(), r.back(), false);
}

void SurfaceOfRevolution::require_inside(double r) const {
    if (!contains(r))
        fail(ErrorCode::OutOfDomain,
             name_ + ": r = " + std::to_string(r) + " outside (" + std::to_string(r_lo_) +
                 ", " + std::to_string(r_hi_) + ")");
}

Vec3 SurfaceOfRevolution::embed(double r, double theta) const {
    require_inside(r);
    const double fr = f(r);
    return {fr * std::cos(theta), fr * std::sin(theta), g(r)};
}

Vec3 SurfaceOfRevolution::basis_er(double r, double theta) const {
    const double fr = f_r(r), gr = g_r(r);
    return {fr * std::cos(theta), fr * std::sin(theta), gr};
}

Vec3 SurfaceOfRevolution::basis_etheta(double r, double theta) const {
    const double fr = f(r);
    return {-fr * std::sin(theta), fr * std::cos(theta), 0.0};
}

Vec3 SurfaceOfRevolution::push_chart(double r, double theta, const Chart2& xi) const {
    return basis_er(r, theta) * xi.r + basis_etheta(r, theta) * xi.th;
}

double SurfaceOfRevolution::gauss_curvature(double r) const {
    require_inside(r);
    return -f_rr(r) / f(r);
}

double SurfaceOfRevolution::metric_norm(double r, const Chart2& a) const {
    return std::sqrt(metric_dot(r, a, a));
}

KillingVector killing_vector(const SurfaceOfRevolution& surf, const KillingFieldSpec& spec,
                             double r, double theta) {
    if (spec.sigma != 0.0 && !surf.is_cylinder())
        fail(ErrorCode::InvalidSpec, "axial translation is a Killing field only on cylinders");
    KillingVector kv;
    const double fr = surf.f(r);
    kv.ambient = Vec3{-std::sin(theta), std::cos(theta), 0.0} * (spec.omega * fr) +
                 Vec3{0.0, 0.0, spec.sigma};
    kv.chart = Chart2{spec.sigma, spec.omega}; // e_r = z-hat on cylinders
    return kv;
}

double ChartCurve::r(int i) const {
    const double x = x_of(i);
    return r_per[i] + r_drift[0] + x * (r_drift[1] + x * (r_drift[2] + x * r_drift[3]));
}

double ChartCurve::theta(int i) const {
    const double x = x_of(i);
    return th_per[i] + th_drift[0] + x * (th_drift[1] + x * (th_drift[2] + x * th_drift[3]));
}

bool ChartCurve::has_r_drift() const {
    return r_drift[1] != 0.0 || r_drift[2] != 0.0 || r_drift[3] != 0.0;
}

namespace {

double polyder(const std::array<double, 4>& c, double x, int order) {
    switch (order) {
        case 0: return c[0] + x * (c[1] + x * (c[2] + x * c[3]));
        case 1: return c[1] + x * (2.0 * c[2] + 3.0 * x * c[3]);
        case 2: return 2.0 * c[2] + 6.0 * x * c[3];
        case 3: return 6.0 * c[3];
        default: return 0.0;
    }
}

} // namespace

double fd_scalar(const std::vector<double>& v, int i, int order, double h, bool periodic) {
    const int n = static_cast<int>(v.size());
    auto at = [&](int j) {
        if (periodic) return v[(j % n + n) % n];
        return v[j];
    };
    const double h2 = h * h, h3 = h2 * h;
    if (order == 1) {
        if (periodic || (i > 0 && i < n - 1)) return (at(i + 1) - at(i - 1)) / (2.0 * h);
        if (i == 0) return (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
        return (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    }
    if (order == 2) {
        if (periodic || (i > 0 && i < n - 1)) return (at(i + 1) - 2.0 * at(i) + at(i - 1)) / h2;
        if (i == 0) return (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
        return (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
    }
    if (order == 3) {
        if (periodic || (i > 1 && i < n - 2))
            return (at(i + 2) - 2.0 * at(i + 1) + 2.0 * at(i - 1) - at(i - 2)) / (2.0 * h3);
        if (i == 0)
            return (-2.5 * v[0] + 9.0 * v[1] - 12.0 * v[2] + 7.0 * v[3] - 1.5 * v[4]) / h3;
        if (i == 1)
            return (-1.5 * v[0] + 5.0 * v[1] - 6.0 * v[2] + 3.0 * v[3] - 0.5 * v[4]) / h3;
        if (i == n - 2)
            return (0.5 * v[n - 5] - 3.0 * v[n - 4] + 6.0 * v[n - 3] - 5.0 * v[n - 2] + 1.5 * v[n - 1]) / h3;
        return (1.5 * v[n - 5] - 7.0 * v[n - 4] + 12.0 * v[n - 3] - 9.0 * v[n - 2] + 2.5 * v[n - 1]) / h3;
    }
    fail(ErrorCode::InvalidParams, "fd_scalar supports orders 1..3");
}

double ChartCurve::dr(int i, int order) const {
    return fd_scalar(r_per, i, order, spacing, closed) + polyder(r_drift, x_of(i), order);
}

double ChartCurve::dtheta(int i, int order) const {
    return fd_scalar(th_per, i, order, spacing, closed) + polyder(th_drift, x_of(i), order);
}

void ChartCurve::validate(const SurfaceOfRevolution& surf) const {
    if (size() < 4) fail(ErrorCode::TooFewPoints, "chart curve needs at least 4 samples");
    if (th_per.size() != r_per.size())
        fail(ErrorCode::InvalidParams, "chart component lengths differ");
    if (spacing <= 0.0) fail(ErrorCode::InvalidParams, "spacing must be positive");
    if (has_r_drift() && !surf.is_cylinder())
        fail(ErrorCode::InvalidSpec, "axial drift in r is only admissible on cylinders");
    if (closed) {
        if (th_drift[2] != 0.0 || th_drift[3] != 0.0)
            fail(ErrorCode::InvalidSpec, "closed chart curves need linear theta drift");
        const double winding = th_drift[1] * period() / (2.0 * M_PI);
        if (std::abs(winding - std::round(winding)) > 1e-9)
            fail(ErrorCode::InvalidSpec, "closed chart curve must wind by a multiple of 2*pi");
    }
    for (int i = 0; i < size(); ++i)
        if (!surf.contains(r(i))) fail(ErrorCode::OutOfDomain, "chart curve leaves r domain");
}

ChartDerivatives chart_derivatives(const ChartCurve& c) {
    const int n = c.size();
    ChartDerivatives d;
    d.r1.resize(n); d.r2.resize(n); d.r3.resize(n);
    d.t1.resize(n); d.t2.resize(n); d.t3.resize(n);
    for (int i = 0; i < n; ++i) {
        d.r1[i] = c.dr(i, 1);
        d.r2[i] = c.dr(i, 2);
        d.r3[i] = c.dr(i, 3);
        d.t1[i] = c.dtheta(i, 1);
        d.t2[i] = c.dtheta(i, 2);
        d.t3[i] = c.dtheta(i, 3);
    }
    return d;
}

std::vector<Chart2> covariant_accel(const SurfaceOfRevolution& surf, const ChartCurve& c) {
    c.validate(surf);
    const int n = c.size();
    std::vector<Chart2> out(n);
    for (int i = 0; i < n; ++i) {
        const double r = c.r(i);
        const double fr = surf.f(r), fpr = surf.f_r(r);
        const double r1 = c.dr(i, 1), r2 = c.dr(i, 2);
        const double t1 = c.dtheta(i, 1), t2 = c.dtheta(i, 2);
        out[i].r = r2 - fr * fpr * t1 * t1;
        out[i].th = t2 + 2.0 * (fpr / fr) * r1 * t1;
    }
    return out;
}

std::vector<Chart2> second_covariant(const SurfaceOfRevolution& surf, const ChartCurve& c) {
    c.validate(surf);
    const int n = c.size();
    std::vector<Chart2> out(n);
    for (int i = 0; i < n; ++i) {
        const double r = c.r(i);
        const double fr = surf.f(r), fp = surf.f_r(r), fpp = surf.f_rr(r);
        const double r1 = c.dr(i, 1), r2 = c.dr(i, 2), r3 = c.dr(i, 3);
        const double t1 = c.dtheta(i, 1), t2 = c.dtheta(i, 2), t3 = c.dtheta(i, 3);

        const double P = r2 - fr * fp * t1 * t1;
        const double Q = t2 + 2.0 * (fp / fr) * r1 * t1;
        const double Pp = r3 - (fp * fp + fr * fpp) * r1 * t1 * t1 - 2.0 * fr * fp * t1 * t2;
        const double Qp = t3 + 2.0 * (fpp / fr - fp * fp / (fr * fr)) * r1 * r1 * t1 +
                          2.0 * (fp / fr) * (r2 * t1 + r1 * t2);

        out[i].r = Pp - fr * fp * t1 * Q;
        out[i].th = Qp + (fp / fr) * (r1 * Q + t1 * P);
    }
    return out;
}

std::vector<double> speeds(const SurfaceOfRevolution& surf, const ChartCurve& c) {
    const int n = c.size();
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        const double fr = surf.f(c.r(i));
        const double r1 = c.dr(i, 1), t1 = c.dtheta(i, 1);
        v[i] = std::sqrt(r1 * r1 + fr * fr * t1 * t1);
    }
    return v;
}

std::vector<double> geodesic_curvature(const SurfaceOfRevolution& surf, const ChartCurve& c) {
    const auto acc = covariant_accel(surf, c);
    const int n = c.size();
    std::vector<double> kg(n);
    for (int i = 0; i < n; ++i) {
        const double r = c.r(i);
        const Chart2 ux{c.dr(i, 1), c.dtheta(i, 1)};
        const double v = surf.metric_norm(r, ux);
        if (v <= 1e-10) fail(ErrorCode::DegenerateSpeed, "geodesic curvature at zero speed");
        const Chart2 jux = surf.complex_structure(r, ux);
        kg[i] = surf.metric_dot(r, acc[i], jux) / (v * v * v);
    }
    return kg;
}

Chart2 magnetic_rhs(const SurfaceOfRevolution& surf, const MagneticFieldSpec& field,
                    double r, double theta, const Chart2& velocity) {
    const double k = field.k_fn(r, theta);
    return surf.complex_structure(r, velocity) * k;
}

} // namespace geoflow
