#ifndef GEOFLOW_SOLITON_HPP
#define GEOFLOW_SOLITON_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geoflow/curve.hpp"
#include "geoflow/elliptic.hpp"
#include "geoflow/flows.hpp"
#include "geoflow/surface.hpp"

namespace geoflow {

// Ambient Killing field V(x) = rotation x x + translation.
struct AmbientKilling {
    Vec3 rotation;
    Vec3 translation;

    Vec3 at(const Vec3& x) const { return cross(rotation, x) + translation; }
};

// Generator data of u(t,x) = phi_t o v o psi_t(x) with psi_t(x) = x - c t.
struct SolitonSpec {
    FlowKind flow = FlowKind::Kdv;
    double c = 0.0;
    KillingFieldSpec killing;               // surface-target groups
    std::optional<AmbientKilling> ambient;  // R^3-target groups (LIE)
    std::shared_ptr<const SurfaceOfRevolution> surface;
    std::variant<ChartCurve, DiscreteCurve> generator;
    std::string family_name;
    std::map<std::string, double> family;
    bool verified = false;
    double verify_residual = 0.0;
};

struct ResidualReport {
    double sup_residual = 0.0;
    double l2_residual = 0.0;
    std::vector<double> per_sample;
    std::string equation_id;
    std::map<std::string, double> extras;
};

struct ElasticParams {
    double k0 = 1.0;
    double p = 0.0;
    double w = 1.0;
    double lambda = 0.0;
    double c = 0.0;

    // lambda and c follow from (k0, p, w):
    //   2 lambda w^2 = k0^2 (3 w^2 - p^2 - 1)
    //   4 c^2 w^4    = k0^6 (1 - w^2)(w^2 - p^2), non-negative root.
    static ElasticParams from_kpw(double k0, double p, double w);
    double relation_defect() const;
    // Period of k(s)^2.
    double curvature_period() const;
};

IntrinsicProfile elastic_profile(const ElasticParams& params, double length, int n);

// Closed-form evaluation of the soliton at time t (no PDE solve).
std::variant<ChartCurve, DiscreteCurve> evolve_soliton(const SolitonSpec& spec, double t);

ResidualReport schrodinger_reduced_residual(const SurfaceOfRevolution& surf,
                                            const ChartCurve& v,
                                            const KillingFieldSpec& killing, double c);

ResidualReport kdv_reduced_residual(const SurfaceOfRevolution& surf, const ChartCurve& v,
                                    const KillingFieldSpec& killing, double c);

ResidualReport lie_soliton_residual(const DiscreteCurve& gamma0, const AmbientKilling& killing,
                                    double c);

struct AmbientKillingFit {
    AmbientKilling killing;
    double c = 0.0;
    double rms = 0.0;
};
// Least-squares (rotation, translation, c) solving g' x g'' = V(g) - c g'.
AmbientKillingFit fit_ambient_killing(const DiscreteCurve& gamma0, bool fit_c = true);

ChartCurve magnetic_geodesic_integrate(const SurfaceOfRevolution& surf,
                                       const MagneticFieldSpec& field, double r0, double theta0,
                                       const Chart2& velocity, double length, int n);

SolitonSpec cylinder_kdv_soliton(double radius, double k, double sigma, double c1, double c2,
                                 double c3, int n);

// Equatorial traveling wave on the unit sphere, c = -1/2.
SolitonSpec great_circle_kdv_soliton(int n);

std::vector<double> parallel_soliton_roots(const SurfaceOfRevolution& surf, double c,
                                           double omega, double C);
double parallel_soliton_find(const SurfaceOfRevolution& surf, double c, double omega, double C);

// Parallel r = r0 traversed winding times; 1-equivariant for winding = 1.
ChartCurve make_parallel(const SurfaceOfRevolution& surf, double r0, int n, int winding = 1);

// The same parallel with unit-speed parametrization (theta = x / f(r0)).
ChartCurve make_parallel_arclength(const SurfaceOfRevolution& surf, double r0, int n);

struct IntrinsicKind {
    enum Which { Lie, Kdv, Elastica, Kmg } which = Elastica;
    double c = 0.0;      // Lie, Kdv
    double a1 = 0.0;     // Lie, Kdv
    double lambda = 0.0; // Elastica
    double omega = 0.0;  // Kmg
    double a = 0.0;      // Kmg
};

ResidualReport intrinsic_soliton_residual(const IntrinsicProfile& profile,
                                          const IntrinsicKind& kind);

} // namespace geoflow

#endif
