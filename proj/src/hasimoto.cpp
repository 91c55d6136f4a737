#include "geoflow/hasimoto.hpp"

#include <cmath>

#include "geoflow/errors.hpp"

namespace geoflow {

using cplx = std::complex<double>;

std::complex<double> ComplexProfile::at(int i) const {
    const int n = size();
    if (!closed) return phi[i];
    int wraps = 0;
    while (i >= n) { i -= n; ++wraps; }
    while (i < 0) { i += n; --wraps; }
    if (wraps == 0) return phi[i];
    return phi[i] * std::polar(1.0, holonomy * wraps);
}

ComplexProfile hasimoto_transform(const IntrinsicProfile& profile) {
    const int n = profile.size();
    ComplexProfile out;
    out.spacing = profile.spacing;
    out.closed = profile.closed;
    out.phi.resize(n);
    double phase = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i > 0)
            phase += 0.5 * profile.spacing * (profile.tau[i - 1] + profile.tau[i]);
        out.phi[i] = std::polar(profile.k[i], phase);
    }
    if (profile.closed)
        out.holonomy = phase + 0.5 * profile.spacing * (profile.tau[n - 1] + profile.tau[0]);
    return out;
}

namespace {

void check_frames(const std::vector<ComplexProfile>& frames) {
    if (frames.size() < 3) fail(ErrorCode::TooFewFrames, "need at least 3 frames");
    const int n = frames.front().size();
    for (const auto& f : frames)
        if (f.size() != n) fail(ErrorCode::InvalidParams, "frames use different grids");
}

struct SampleRange {
    int lo, hi; // half-open
};

SampleRange interior(const ComplexProfile& f, int radius) {
    if (f.closed) return {0, f.size()};
    return {radius, f.size() - radius};
}

} // namespace

ResidualNorms nls_residual(const std::vector<ComplexProfile>& frames, double frame_dt,
                           const std::vector<double>& a_of_t) {
    check_frames(frames);
    if (a_of_t.size() != frames.size())
        fail(ErrorCode::InvalidParams, "one gauge value per frame required");
    const int m = static_cast<int>(frames.size());
    const cplx iu(0.0, 1.0);
    ResidualNorms out;
    double sum2 = 0.0;
    long count = 0;
    for (int j = 1; j + 1 < m; ++j) {
        const auto& f = frames[j];
        const double h2 = f.spacing * f.spacing;
        const auto range = interior(f, 1);
        for (int i = range.lo; i < range.hi; ++i) {
            const cplx phi = f.phi[i];
            const cplx phi_t = (frames[j + 1].phi[i] - frames[j - 1].phi[i]) / (2.0 * frame_dt);
            const cplx phi_ss = (f.at(i + 1) - 2.0 * phi + f.at(i - 1)) / h2;
            const cplx res = -iu * phi_t - phi_ss - 0.5 * (std::norm(phi) + a_of_t[j]) * phi;
            const double a = std::abs(res);
            out.sup = std::max(out.sup, a);
            sum2 += a * a;
            ++count;
        }
    }
    out.l2 = count ? std::sqrt(sum2 / count) : 0.0;
    return out;
}

ResidualNorms mkdv_residual(const std::vector<ComplexProfile>& frames, double frame_dt) {
    check_frames(frames);
    const int m = static_cast<int>(frames.size());
    ResidualNorms out;
    double sum2 = 0.0;
    long count = 0;
    for (int j = 1; j + 1 < m; ++j) {
        const auto& f = frames[j];
        const double h = f.spacing, h3 = h * h * h;
        const auto range = interior(f, 2);
        for (int i = range.lo; i < range.hi; ++i) {
            const cplx phi = f.phi[i];
            const cplx phi_t = (frames[j + 1].phi[i] - frames[j - 1].phi[i]) / (2.0 * frame_dt);
            const cplx phi_s = (f.at(i + 1) - f.at(i - 1)) / (2.0 * h);
            const cplx phi_sss =
                (f.at(i + 2) - 2.0 * f.at(i + 1) + 2.0 * f.at(i - 1) - f.at(i - 2)) / (2.0 * h3);
            const cplx res = phi_t - phi_sss - 1.5 * std::norm(phi) * phi_s;
            const double a = std::abs(res);
            out.sup = std::max(out.sup, a);
            sum2 += a * a;
            ++count;
        }
    }
    out.l2 = count ? std::sqrt(sum2 / count) : 0.0;
    return out;
}

GaugeFit fit_gauge(const std::vector<ComplexProfile>& frames, double frame_dt) {
    check_frames(frames);
    const int m = static_cast<int>(frames.size());
    const cplx iu(0.0, 1.0);
    GaugeFit fit;
    fit.a_of_t.resize(m);

    double total2 = 0.0;
    long total_count = 0;
    for (int j = 0; j < m; ++j) {
        const auto& f = frames[j];
        const double h2 = f.spacing * f.spacing;
        const auto range = interior(f, 1);
        double num = 0.0, den = 0.0;
        std::vector<cplx> base(f.size(), 0.0);
        for (int i = range.lo; i < range.hi; ++i) {
            cplx phi_t;
            if (j == 0)
                phi_t = (-3.0 * frames[0].phi[i] + 4.0 * frames[1].phi[i] - frames[2].phi[i]) /
                        (2.0 * frame_dt);
            else if (j == m - 1)
                phi_t = (3.0 * frames[m - 1].phi[i] - 4.0 * frames[m - 2].phi[i] +
                         frames[m - 3].phi[i]) /
                        (2.0 * frame_dt);
            else
                phi_t = (frames[j + 1].phi[i] - frames[j - 1].phi[i]) / (2.0 * frame_dt);
            const cplx phi = f.phi[i];
            const cplx phi_ss = (f.at(i + 1) - 2.0 * phi + f.at(i - 1)) / h2;
            // Residual = r0 - (A/2) phi; least squares in A.
            const cplx r0 = -iu * phi_t - phi_ss - 0.5 * std::norm(phi) * phi;
            base[i] = r0;
            num += std::real(std::conj(phi) * r0);
            den += std::norm(phi);
        }
        fit.a_of_t[j] = den > 0.0 ? 2.0 * num / den : 0.0;
        for (int i = range.lo; i < range.hi; ++i) {
            const cplx res = base[i] - 0.5 * fit.a_of_t[j] * f.phi[i];
            total2 += std::norm(res);
            ++total_count;
        }
    }
    fit.residual_norm = total_count ? std::sqrt(total2 / total_count) : 0.0;
    return fit;
}

} // namespace geoflow
