#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "curveframe/fields.hpp"

namespace curveframe {

/// Second-order finite differences on a uniform grid: central at interior
/// nodes, one-sided three-point stencils at the endpoints.
template <typename T>
std::vector<T> differentiate_samples(const std::vector<T>& f, double h) {
    const std::size_t n = f.size();
    std::vector<T> d(n);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    }
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return d;
}

inline VectorField differentiate(const VectorField& field) {
    return VectorField(field.grid, differentiate_samples(field.values, field.grid.spacing()));
}

/// Cumulative trapezoidal integral anchored at `initial` on node 0.
template <typename T>
std::vector<T> cumulative_trapezoid(const std::vector<T>& f, double h, const T& initial) {
    std::vector<T> out(f.size());
    out[0] = initial;
    for (std::size_t i = 1; i < f.size(); ++i) {
        out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    }
    return out;
}

inline VectorField cumulative_integral(const VectorField& field, const Vec3& initial) {
    return VectorField(field.grid,
                       cumulative_trapezoid(field.values, field.grid.spacing(), initial));
}

/// Chord-length arc parametrization of a polyline: resamples to n_out nodes
/// uniform in cumulative chord length, with linear interpolation between the
/// input samples.
inline SampledCurve resample_arclength(const std::vector<Vec3>& points, std::size_t n_out) {
    if (points.size() < 3) {
        throw TooFewPoints("resample_arclength needs at least 3 input points");
    }
    if (n_out < 3) {
        throw TooFewPoints("resample_arclength needs n_out >= 3");
    }
    std::vector<double> chord(points.size(), 0.0);
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double seg = (points[i] - points[i - 1]).norm();
        if (seg == 0.0) {
            throw ZeroLengthSegment("consecutive input points " + std::to_string(i - 1) +
                                    " and " + std::to_string(i) + " coincide");
        }
        chord[i] = chord[i - 1] + seg;
    }
    const double total = chord.back();
    Grid grid(total, n_out);

    std::vector<Vec3> out(n_out);
    out[0] = points.front();
    out[n_out - 1] = points.back();
    std::size_t seg = 0;
    for (std::size_t i = 1; i + 1 < n_out; ++i) {
        const double target = grid.node(i);
        while (chord[seg + 1] < target) ++seg;
        const double w = (target - chord[seg]) / (chord[seg + 1] - chord[seg]);
        out[i] = (1.0 - w) * points[seg] + w * points[seg + 1];
    }
    return SampledCurve(grid, std::move(out));
}

inline SampledCurve resample_arclength(const SampledCurve& curve, std::size_t n_out) {
    return resample_arclength(curve.points, n_out);
}

/// Finite-difference tangent of an arc-length curve. Throws NotUnitSpeed if
/// the curve is not (close to) unit speed.
inline UnitTangentField tangent_field(const SampledCurve& curve, double tol = kUnitSpeedTol) {
    return UnitTangentField(differentiate(VectorField(curve.grid, curve.points)), tol);
}

/// Largest deviation of the finite-difference tangent norm from 1.
inline double max_unit_speed_deviation(const SampledCurve& curve) {
    const VectorField t = differentiate(VectorField(curve.grid, curve.points));
    double dev = 0.0;
    for (const Vec3& v : t.values) dev = std::max(dev, std::abs(v.norm() - 1.0));
    return dev;
}

}  // namespace curveframe
