#ifndef GEOFLOW_ELLIPTIC_HPP
#define GEOFLOW_ELLIPTIC_HPP

namespace geoflow {

struct JacobiTriple {
    double sn, cn, dn;
};

// Jacobi elliptic functions with modulus p in [0, 1] (sn(u,1) = tanh u).
// Descending Landen transformation driven by the arithmetic-geometric mean.
JacobiTriple jacobi_elliptic(double u, double p);

double jacobi_sn(double u, double p);
double jacobi_cn(double u, double p);
double jacobi_dn(double u, double p);

// Quarter period K(p); sn(. , p) has period 4K. K(1) is +inf.
double elliptic_k(double p);

} // namespace geoflow

#endif
