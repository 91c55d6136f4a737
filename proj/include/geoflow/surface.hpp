#ifndef GEOFLOW_SURFACE_HPP
#define GEOFLOW_SURFACE_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "geoflow/vec3.hpp"

namespace geoflow {

// Chart tangent vector in (d/dr, d/dtheta) components.
struct Chart2 {
    double r = 0.0, th = 0.0;

    Chart2 operator+(const Chart2& o) const { return {r + o.r, th + o.th}; }
    Chart2 operator-(const Chart2& o) const { return {r - o.r, th - o.th}; }
    Chart2 operator*(double a) const { return {a * r, a * th}; }
};

// Surface of revolution Sigma(r, theta) = (f(r) cos th, f(r) sin th, g(r))
// with f_r^2 + g_r^2 = 1 (r is arclength along the profile). Profiles carry
// analytic derivatives; metric ds^2 = dr^2 + f^2 dth^2.
class SurfaceOfRevolution {
public:
    using Fn = std::function<double(double)>;

    SurfaceOfRevolution(std::string name, Fn f, Fn f_r, Fn f_rr, Fn g, Fn g_r,
                        double r_lo, double r_hi, bool cylinder = false);

    static SurfaceOfRevolution sphere();           // f = sin r, g = -cos r on (0, pi)
    static SurfaceOfRevolution cylinder(double r0); // f = r0, g = r
    static SurfaceOfRevolution gaussian_bump(double amplitude, double width);
    // Columns r,f,f_r,f_rr,g,g_r with cubic interpolation between rows.
    static SurfaceOfRevolution from_table(const std::vector<std::array<double, 6>>& rows,
                                          std::string name = "custom");

    const std::string& name() const { return name_; }
    double r_lo() const { return r_lo_; }
    double r_hi() const { return r_hi_; }
    bool is_cylinder() const { return cylinder_; }

    bool contains(double r) const { return r > r_lo_ && r < r_hi_; }
    void require_inside(double r) const;

    double f(double r) const { return f_(r); }
    double f_r(double r) const { return f_r_(r); }
    double f_rr(double r) const { return f_rr_(r); }
    double g(double r) const { return g_(r); }
    double g_r(double r) const { return g_r_(r); }

    Vec3 embed(double r, double theta) const;
    Vec3 basis_er(double r, double theta) const;     // unit
    Vec3 basis_etheta(double r, double theta) const; // length f(r)
    Vec3 push_chart(double r, double theta, const Chart2& xi) const;

    double gauss_curvature(double r) const;

    double metric_dot(double r, const Chart2& a, const Chart2& b) const {
        const double fr = f(r);
        return a.r * b.r + fr * fr * a.th * b.th;
    }
    double metric_norm(double r, const Chart2& a) const;

    // +90 degree rotation: J e_r = e_theta/f, J (e_theta/f) = -e_r.
    Chart2 complex_structure(double r, const Chart2& xi) const {
        const double fr = f(r);
        return {-fr * xi.th, xi.r / fr};
    }

private:
    void check_profile() const;

    std::string name_;
    Fn f_, f_r_, f_rr_, g_, g_r_;
    double r_lo_, r_hi_;
    bool cylinder_;
};

// J in the orthonormal frame {e_r, e_theta/f}: plain +90 degree rotation.
inline std::array<double, 2> complex_structure_frame(const std::array<double, 2>& xi) {
    return {-xi[1], xi[0]};
}

struct KillingFieldSpec {
    double omega = 0.0; // angular rate about the axis
    double sigma = 0.0; // axial translation rate; cylinders only
};

struct MagneticFieldSpec {
    std::function<double(double r, double theta)> k_fn;
};

struct KillingVector {
    Vec3 ambient;
    Chart2 chart;
};

KillingVector killing_vector(const SurfaceOfRevolution& surf, const KillingFieldSpec& spec,
                             double r, double theta);

// Sampled curve in the (r, theta) chart. Closed curves may carry polynomial
// "drift" parts: theta winds linearly, and on cylinders the axial chart
// coordinate may drift as a cubic. Sample i sits at x = i * spacing and
// r(x) = r_per[i] + polyval(r_drift, x), likewise theta.
struct ChartCurve {
    std::vector<double> r_per, th_per;
    std::array<double, 4> r_drift{0, 0, 0, 0};
    std::array<double, 4> th_drift{0, 0, 0, 0};
    double spacing = 0.0;
    bool closed = false;

    int size() const { return static_cast<int>(r_per.size()); }
    double x_of(int i) const { return spacing * i; }
    double period() const { return spacing * size(); }

    double r(int i) const;
    double theta(int i) const;
    double dr(int i, int order) const;
    double dtheta(int i, int order) const;

    bool has_r_drift() const;
    void validate(const SurfaceOfRevolution& surf) const;
};

// Drift-aware scalar finite differences, order 1..3, second-order accurate.
// Periodic arrays wrap; open arrays use one-sided stencils at the ends.
double fd_scalar(const std::vector<double>& v, int i, int order, double h, bool periodic);

struct ChartDerivatives {
    std::vector<double> r1, r2, r3, t1, t2, t3; // d^m r / dx^m etc.
};
ChartDerivatives chart_derivatives(const ChartCurve& c);

// Pointwise covariant acceleration (nabla_x u_x) in chart components.
std::vector<Chart2> covariant_accel(const SurfaceOfRevolution& surf, const ChartCurve& c);

// Pointwise second covariant derivative nabla_x^2 u_x in chart components,
// assembled from analytic expansions (no nested differencing).
std::vector<Chart2> second_covariant(const SurfaceOfRevolution& surf, const ChartCurve& c);

std::vector<double> speeds(const SurfaceOfRevolution& surf, const ChartCurve& c);

std::vector<double> geodesic_curvature(const SurfaceOfRevolution& surf, const ChartCurve& c);

Chart2 magnetic_rhs(const SurfaceOfRevolution& surf, const MagneticFieldSpec& field,
                    double r, double theta, const Chart2& velocity);

} // namespace geoflow

#endif
