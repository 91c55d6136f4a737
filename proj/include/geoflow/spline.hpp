#ifndef GEOFLOW_SPLINE_HPP
#define GEOFLOW_SPLINE_HPP

#include <vector>

namespace geoflow {

// Scalar cubic spline on a strictly increasing knot vector.
// Natural boundary conditions for open data, periodic closure for closed data
// (the last knot is the period end; y wraps to y[0] there).
class CubicSpline {
public:
    CubicSpline() = default;

    static CubicSpline natural(std::vector<double> t, std::vector<double> y);
    // t has n+1 entries (t[n] = period end), y has n entries; y(t[n]) == y[0].
    static CubicSpline periodic(std::vector<double> t, std::vector<double> y);

    double eval(double t) const;
    double deriv(double t) const;

    double t_min() const { return t_.front(); }
    double t_max() const { return t_.back(); }

private:
    int find_interval(double t) const;

    std::vector<double> t_;   // knots (n or n+1 entries)
    std::vector<double> y_;   // values per interval start
    std::vector<double> m_;   // second derivatives at knots
    bool periodic_ = false;
};

} // namespace geoflow

#endif
