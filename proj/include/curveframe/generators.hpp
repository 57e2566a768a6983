#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "curveframe/calculus.hpp"
#include "curveframe/fields.hpp"

namespace curveframe {

/// Straight segment of the given length along e1, unit speed by construction.
inline SampledCurve make_line(double length, std::size_t n) {
    Grid grid(length, n);
    std::vector<Vec3> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = Vec3(grid.node(i), 0.0, 0.0);
    return SampledCurve(grid, std::move(pts));
}

/// Full circle of the given radius in the xy-plane, arc-length parametrized.
inline SampledCurve make_circle(double radius, std::size_t n) {
    Grid grid(2.0 * std::numbers::pi * radius, n);
    std::vector<Vec3> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = grid.node(i) / radius;
        pts[i] = Vec3(radius * std::cos(phi), radius * std::sin(phi), 0.0);
    }
    return SampledCurve(grid, std::move(pts));
}

/// Circular helix x(s) = (a cos(s/c), a sin(s/c), b s/c) with c = sqrt(a^2+b^2),
/// arc-length parametrized in closed form. `pitch` is the height gained per
/// turn, so b = pitch / (2 pi).
inline SampledCurve make_helix(double radius, double pitch, double turns, std::size_t n) {
    const double b = pitch / (2.0 * std::numbers::pi);
    const double c = std::hypot(radius, b);
    Grid grid(2.0 * std::numbers::pi * c * turns, n);
    std::vector<Vec3> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = grid.node(i) / c;
        pts[i] = Vec3(radius * std::cos(phi), radius * std::sin(phi), b * phi);
    }
    return SampledCurve(grid, std::move(pts));
}

/// Same helix in the (a, b) parametrization used by the analytic Frenet
/// formulas kappa = a/c^2, |tau| = b/c^2.
inline SampledCurve make_helix_ab(double a, double b, double turns, std::size_t n) {
    return make_helix(a, 2.0 * std::numbers::pi * b, turns, n);
}

/// Trefoil knot (sin t + 2 sin 2t, cos t - 2 cos 2t, -sin 3t), resampled to
/// arc length from a dense parametric polyline.
inline SampledCurve make_trefoil(double scale, std::size_t n, std::size_t n_dense = 0) {
    if (n_dense == 0) n_dense = std::max<std::size_t>(16 * n, 65536);
    std::vector<Vec3> dense(n_dense);
    for (std::size_t i = 0; i < n_dense; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) /
                         static_cast<double>(n_dense - 1);
        dense[i] = scale * Vec3(std::sin(t) + 2.0 * std::sin(2.0 * t),
                                std::cos(t) - 2.0 * std::cos(2.0 * t), -std::sin(3.0 * t));
    }
    return resample_arclength(dense, n);
}

}  // namespace curveframe
