#ifndef GEOFLOW_HASIMOTO_HPP
#define GEOFLOW_HASIMOTO_HPP

#include <complex>
#include <vector>

#include "geoflow/curve.hpp"

namespace geoflow {

// Hasimoto field Phi = k exp(i int_0^s tau). For closed profiles the phase
// need not return: Phi picks the unit factor exp(i*holonomy) per period and
// stencils wrap with that twist.
struct ComplexProfile {
    std::vector<std::complex<double>> phi;
    double spacing = 0.0;
    bool closed = false;
    double holonomy = 0.0;

    int size() const { return static_cast<int>(phi.size()); }
    std::complex<double> at(int i) const;
};

ComplexProfile hasimoto_transform(const IntrinsicProfile& profile);

struct ResidualNorms {
    double sup = 0.0;
    double l2 = 0.0;
};

// Sup (and L2) of -i Phi_t - Phi_ss - (|Phi|^2 + A)/2 * Phi over interior
// grid points, centered differences in s and t. Frames share one grid and
// are uniformly spaced in time.
ResidualNorms nls_residual(const std::vector<ComplexProfile>& frames, double frame_dt,
                           const std::vector<double>& a_of_t);

// Sup (and L2) of Phi_t - Phi_sss - 3/2 |Phi|^2 Phi_s.
ResidualNorms mkdv_residual(const std::vector<ComplexProfile>& frames, double frame_dt);

struct GaugeFit {
    std::vector<double> a_of_t;
    double residual_norm = 0.0;
};

// Per-frame least-squares gauge A(t) minimizing the L2 NLS residual
// (the residual is linear in A, so the minimizer is closed-form).
GaugeFit fit_gauge(const std::vector<ComplexProfile>& frames, double frame_dt);

} // namespace geoflow

#endif
