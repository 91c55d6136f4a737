#ifndef GEOFLOW_CURVE_HPP
#define GEOFLOW_CURVE_HPP

#include <vector>

#include "geoflow/vec3.hpp"

namespace geoflow {

// Rigid motion applied when a sampled curve wraps past its last sample:
// gamma(s + L) = rot * gamma(s) + shift. Identity for ordinary closed curves.
// Non-identity closures make helices and other intrinsically periodic but
// non-closing curves usable with periodic stencils.
struct Monodromy {
    Mat3 rot;
    Vec3 shift;

    bool is_identity() const;
    Vec3 forward(const Vec3& p) const { return rot.apply(p) + shift; }
    Vec3 backward(const Vec3& p) const { return rot.apply_transposed(p - shift); }
    Vec3 rotate(const Vec3& v) const { return rot.apply(v); }
    Vec3 unrotate(const Vec3& v) const { return rot.apply_transposed(v); }
};

enum class ParamKind { Arclength, General };

struct DiscreteCurve {
    std::vector<Vec3> points;
    double spacing = 0.0;
    bool closed = false;
    ParamKind param_kind = ParamKind::General;
    Monodromy monodromy; // only meaningful when closed

    int size() const { return static_cast<int>(points.size()); }
    // Sample access with periodic/monodromy wrap for closed curves. Index may
    // run past the ends by up to two full periods.
    Vec3 pt(int i) const;

    Vec3 d1(int i) const; // first derivative, O(h^2)
    Vec3 d2(int i) const;
    Vec3 d3(int i) const;

    double chord_length() const;
    // Max relative deviation of successive chords from `spacing`.
    double arclength_defect() const;
    void validate() const;
};

struct FrenetFrameField {
    std::vector<Vec3> t, n, b;
    std::vector<bool> valid; // false where curvature is below the threshold
};

struct IntrinsicProfile {
    std::vector<double> k;
    std::vector<double> tau;
    double spacing = 0.0;
    bool closed = false;
    std::vector<bool> degenerate_mask;

    int size() const { return static_cast<int>(k.size()); }
    double length() const { return spacing * (closed ? size() : size() - 1); }
};

struct FrenetAnalysis {
    FrenetFrameField frames;
    IntrinsicProfile profile;
};

// Curvature threshold below which the Frenet normal is undefined.
double degeneracy_threshold(const std::vector<double>& k);

DiscreteCurve resample_arclength(const DiscreteCurve& curve, int n);

FrenetAnalysis frenet_analyze(const DiscreteCurve& curve);

struct FrenetFrame {
    Vec3 t, n, b;
};

DiscreteCurve reconstruct_from_intrinsics(const IntrinsicProfile& profile,
                                          const Vec3& origin,
                                          const FrenetFrame& frame0);

struct ReconstructionResult {
    DiscreteCurve curve;
    FrenetFrameField frames; // transported frames, one per sample
};

// Same integration, also returning the transported frame at every sample
// (the re-orthonormalization contract is checked against these).
ReconstructionResult reconstruct_with_frames(const IntrinsicProfile& profile,
                                             const Vec3& origin, const FrenetFrame& frame0);

double bending_energy(const IntrinsicProfile& profile);

// Tangent indicatrix u = gamma' of an arclength curve; samples lie on S^2.
DiscreteCurve tangent_map(const DiscreteCurve& curve);

} // namespace geoflow

#endif
