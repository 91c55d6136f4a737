#include "geoflow/spline.hpp"

#include <algorithm>
#include <cmath>

#include "geoflow/errors.hpp"

namespace geoflow {

namespace {

// Tridiagonal solve, destroys inputs. a = sub, b = diag, c = super.
void solve_tridiag(std::vector<double>& a, std::vector<double>& b,
                   std::vector<double>& c, std::vector<double>& d) {
    const int n = static_cast<int>(b.size());
    for (int i = 1; i < n; ++i) {
        const double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        d[i] -= w * d[i - 1];
    }
    d[n - 1] /= b[n - 1];
    for (int i = n - 2; i >= 0; --i) d[i] = (d[i] - c[i] * d[i + 1]) / b[i];
}

// Cyclic tridiagonal via Sherman-Morrison. diag b, off-diagonals a (sub) and
// c (super), with corner couplings alpha = A[0][n-1], beta = A[n-1][0].
std::vector<double> solve_cyclic(std::vector<double> a, std::vector<double> b,
                                 std::vector<double> c, std::vector<double> d,
                                 double alpha, double beta) {
    const int n = static_cast<int>(b.size());
    const double gamma = -b[0];
    b[0] -= gamma;
    b[n - 1] -= alpha * beta / gamma;

    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = alpha;

    auto bb = b;
    auto aa = a;
    auto cc = c;
    solve_tridiag(aa, bb, cc, d);
    bb = b; aa = a; cc = c;
    solve_tridiag(aa, bb, cc, u);

    const double fact = (d[0] + beta * d[n - 1] / gamma) /
                        (1.0 + u[0] + beta * u[n - 1] / gamma);
    for (int i = 0; i < n; ++i) d[i] -= fact * u[i];
    return d;
}

} // namespace

CubicSpline CubicSpline::natural(std::vector<double> t, std::vector<double> y) {
    const int n = static_cast<int>(t.size());
    if (n < 3 || y.size() != t.size())
        fail(ErrorCode::TooFewPoints, "natural spline needs >= 3 points");
    CubicSpline s;
    s.periodic_ = false;
    s.t_ = std::move(t);
    s.y_ = std::move(y);
    s.m_.assign(n, 0.0);
    if (n == 3 || n > 3) {
        const int m = n - 2;
        std::vector<double> sub(m, 0.0), diag(m, 0.0), sup(m, 0.0), rhs(m, 0.0);
        for (int i = 1; i <= n - 2; ++i) {
            const double h0 = s.t_[i] - s.t_[i - 1];
            const double h1 = s.t_[i + 1] - s.t_[i];
            sub[i - 1] = h0;
            diag[i - 1] = 2.0 * (h0 + h1);
            sup[i - 1] = h1;
            rhs[i - 1] = 6.0 * ((s.y_[i + 1] - s.y_[i]) / h1 - (s.y_[i] - s.y_[i - 1]) / h0);
        }
        solve_tridiag(sub, diag, sup, rhs);
        for (int i = 1; i <= n - 2; ++i) s.m_[i] = rhs[i - 1];
    }
    return s;
}

CubicSpline CubicSpline::periodic(std::vector<double> t, std::vector<double> y) {
    const int n = static_cast<int>(y.size());
    if (n < 3 || t.size() != y.size() + 1)
        fail(ErrorCode::TooFewPoints, "periodic spline needs >= 3 points and n+1 knots");
    CubicSpline s;
    s.periodic_ = true;
    s.t_ = std::move(t);
    s.y_ = std::move(y);

    auto yv = [&](int i) { return s.y_[(i % n + n) % n]; };
    auto h = [&](int i) { return s.t_[i + 1] - s.t_[i]; };

    std::vector<double> sub(n), diag(n), sup(n), rhs(n);
    for (int i = 0; i < n; ++i) {
        const double hm = h((i - 1 + n) % n);
        const double hi = h(i);
        sub[i] = hm;
        diag[i] = 2.0 * (hm + hi);
        sup[i] = hi;
        rhs[i] = 6.0 * ((yv(i + 1) - yv(i)) / hi - (yv(i) - yv(i - 1)) / hm);
    }
    const double alpha = sub[0];      // coupling m[0] <- m[n-1]
    const double beta = sup[n - 1];   // coupling m[n-1] <- m[0]
    s.m_ = solve_cyclic(sub, diag, sup, rhs, alpha, beta);
    return s;
}

int CubicSpline::find_interval(double t) const {
    const int nknots = static_cast<int>(t_.size());
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    int i = static_cast<int>(it - t_.begin()) - 1;
    i = std::clamp(i, 0, nknots - 2);
    return i;
}

double CubicSpline::eval(double t) const {
    if (periodic_) {
        const double t0 = t_.front(), period = t_.back() - t_.front();
        t = t - std::floor((t - t0) / period) * period;
    }
    const int i = find_interval(t);
    const int n = static_cast<int>(y_.size());
    const double hi = t_[i + 1] - t_[i];
    const double a = (t_[i + 1] - t) / hi;
    const double b = (t - t_[i]) / hi;
    const double yi = y_[i];
    const double y1 = periodic_ ? y_[(i + 1) % n] : y_[i + 1];
    const double mi = m_[i];
    const double m1 = periodic_ ? m_[(i + 1) % n] : m_[i + 1];
    return a * yi + b * y1 + ((a * a * a - a) * mi + (b * b * b - b) * m1) * hi * hi / 6.0;
}

double CubicSpline::deriv(double t) const {
    if (periodic_) {
        const double t0 = t_.front(), period = t_.back() - t_.front();
        t = t - std::floor((t - t0) / period) * period;
    }
    const int i = find_interval(t);
    const int n = static_cast<int>(y_.size());
    const double hi = t_[i + 1] - t_[i];
    const double a = (t_[i + 1] - t) / hi;
    const double b = (t - t_[i]) / hi;
    const double yi = y_[i];
    const double y1 = periodic_ ? y_[(i + 1) % n] : y_[i + 1];
    const double mi = m_[i];
    const double m1 = periodic_ ? m_[(i + 1) % n] : m_[i + 1];
    return (y1 - yi) / hi + ((3.0 * b * b - 1.0) * m1 - (3.0 * a * a - 1.0) * mi) * hi / 6.0;
}

} // namespace geoflow
