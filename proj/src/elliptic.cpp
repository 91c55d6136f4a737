#include "geoflow/elliptic.hpp"

#include <cmath>
#include <limits>

#include "geoflow/errors.hpp"

namespace geoflow {

namespace {
constexpr int kMaxAgm = 24;
}

// Descending Gauss transformation on function values (the classical sncndn
// scheme). Modulus convention: p is the modulus, parameter m = p^2, so
// sn(u,0) = sin u and sn(u,1) = tanh u.
JacobiTriple jacobi_elliptic(double u, double p) {
    if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::InvalidParams, "modulus must lie in [0,1]");
    double emc = (1.0 - p) * (1.0 + p); // complementary parameter 1 - p^2

    if (emc == 0.0) {
        const double sech = 1.0 / std::cosh(u);
        return {std::tanh(u), sech, sech};
    }

    double em[kMaxAgm], en[kMaxAgm];
    double a = 1.0, dn = 1.0, c = 0.0;
    int l = 0;
    for (int i = 0; i < kMaxAgm; ++i) {
        l = i;
        em[i] = a;
        emc = std::sqrt(emc);
        en[i] = emc;
        c = 0.5 * (a + emc);
        if (std::abs(a - emc) <= 1e-9 * a) break;
        emc *= a;
        a = c;
    }
    u *= c;
    double sn = std::sin(u);
    double cn = std::cos(u);
    if (sn != 0.0) {
        a = cn / sn;
        c *= a;
        for (int i = l; i >= 0; --i) {
            const double b = em[i];
            a *= c;
            c *= dn;
            dn = (en[i] + a) / (b + a);
            a = c / b;
        }
        a = 1.0 / std::sqrt(c * c + 1.0);
        sn = (sn >= 0.0) ? a : -a;
        cn = c * sn;
    }
    return {sn, cn, dn};
}

double jacobi_sn(double u, double p) { return jacobi_elliptic(u, p).sn; }
double jacobi_cn(double u, double p) { return jacobi_elliptic(u, p).cn; }
double jacobi_dn(double u, double p) { return jacobi_elliptic(u, p).dn; }

double elliptic_k(double p) {
    if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::InvalidParams, "modulus must lie in [0,1]");
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    double a = 1.0, b = std::sqrt((1.0 - p) * (1.0 + p));
    for (int i = 0; i < kMaxAgm && std::abs(a - b) > 1e-17 * a; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return M_PI / (2.0 * a);
}

} // namespace geoflow
