#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "curveframe/calculus.hpp"
#include "curveframe/fields.hpp"

namespace curveframe {

/// Flexural densities u1, u2 and optional twist density u3 on a grid.
/// u3 absent means u3 = 0, i.e. the frame generated is an RPAF.
struct DensityField {
    Grid grid;
    std::vector<double> u1, u2;
    std::optional<std::vector<double>> u3;

    DensityField(Grid g, std::vector<double> a, std::vector<double> b,
                 std::optional<std::vector<double>> c = std::nullopt)
        : grid(g), u1(std::move(a)), u2(std::move(b)), u3(std::move(c)) {
        if (u1.size() != grid.size() || u2.size() != grid.size() ||
            (u3 && u3->size() != grid.size())) {
            throw Error("DensityField size mismatch");
        }
    }

    double twist(std::size_t i) const { return u3 ? (*u3)[i] : 0.0; }
};

/// Orthonormal moving frame {t, d1, d2} along a curve.
struct FrameField {
    Grid grid;
    std::vector<Vec3> t, d1, d2;

    std::size_t size() const { return grid.size(); }

    /// Max deviation of the per-node Gram matrix from the identity.
    double max_gram_deviation() const {
        double dev = 0.0;
        for (std::size_t i = 0; i < size(); ++i) {
            Mat3 m;
            m.col(0) = t[i];
            m.col(1) = d1[i];
            m.col(2) = d2[i];
            dev = std::max(dev, (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff());
        }
        return dev;
    }
};

/// Rodrigues rotation exp([w]_x) for the skew matrix of w.
inline Mat3 rotation_exp(const Vec3& w) {
    const double angle = w.norm();
    if (angle < 1e-12) {
        Mat3 k;
        k << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
        return Mat3::Identity() + k + 0.5 * k * k;
    }
    const Vec3 axis = w / angle;
    Mat3 k;
    k << 0, -axis.z(), axis.y(), axis.z(), 0, -axis.x(), -axis.y(), axis.x(), 0;
    return Mat3::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * k * k;
}

/// Propagates the frame system t' = u2 d1 - u1 d2, d1' = -u2 t + u3 d2,
/// d2' = u1 t - u3 d1 from the initial triad. Each step applies the exact
/// rotation exponential of the midpoint generator, so every node stays
/// orthonormal to roundoff.
inline FrameField propagate_frame(const DensityField& densities, const Vec3& t0, const Vec3& d1_0,
                                  const Vec3& d2_0) {
    require_orthonormal_triad(t0, d1_0, d2_0);
    const std::size_t n = densities.grid.size();
    const double h = densities.grid.spacing();

    FrameField out{densities.grid, {}, {}, {}};
    out.t.resize(n);
    out.d1.resize(n);
    out.d2.resize(n);

    Mat3 frame;
    frame.col(0) = t0;
    frame.col(1) = d1_0;
    frame.col(2) = d2_0;
    out.t[0] = t0;
    out.d1[0] = d1_0;
    out.d2[0] = d2_0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        // Body-frame generator: R' = R [w]_x with w = (u3, u1, u2).
        const Vec3 w(0.5 * (densities.twist(i) + densities.twist(i + 1)),
                     0.5 * (densities.u1[i] + densities.u1[i + 1]),
                     0.5 * (densities.u2[i] + densities.u2[i + 1]));
        frame = frame * rotation_exp(h * w);
        out.t[i + 1] = frame.col(0);
        out.d1[i + 1] = frame.col(1);
        out.d2[i + 1] = frame.col(2);
    }
    return out;
}

/// Integrates the tangent of a frame field into a curve anchored at x0.
inline SampledCurve reconstruct_curve(const FrameField& frame, const Vec3& x0) {
    return SampledCurve(frame.grid,
                        cumulative_trapezoid(frame.t, frame.grid.spacing(), x0));
}

/// Recovers flexural densities and the RPAF from a unit tangent field by
/// forward-marching the Volterra equations
///   u1(s) = -d2^0.t'(s) - int_0^s u1 t.t'(s) dr
///   u2(s) =  d1^0.t'(s) - int_0^s u2 t.t'(s) dr
/// via the running normals D1(s) = d1^0 - int u2 t dr, D2(s) = d2^0 + int u1 t dr,
/// which turn the separable kernel into u1 = -D2.t', u2 = D1.t'. The implicit
/// trapezoid self-term at each node is closed algebraically.
inline std::pair<DensityField, FrameField> solve_volterra_densities(const UnitTangentField& t_field,
                                                                    const Vec3& d1_0,
                                                                    const Vec3& d2_0) {
    const std::vector<Vec3>& t = t_field.values();
    require_orthonormal_triad(t[0], d1_0, d2_0);
    const Grid grid = t_field.grid();
    const std::size_t n = grid.size();
    const double h = grid.spacing();
    const auto tprime = differentiate_samples(t, h);

    std::vector<double> u1(n), u2(n);
    std::vector<Vec3> d1(n), d2(n);
    d1[0] = d1_0;
    d2[0] = d2_0;
    u1[0] = -d2_0.dot(tprime[0]);
    u2[0] = d1_0.dot(tprime[0]);
    for (std::size_t i = 1; i < n; ++i) {
        // Integral up to node i minus the (h/2) u_i t_i self-term.
        const Vec3 a1 = d2[i - 1] + 0.5 * h * u1[i - 1] * t[i - 1];
        const Vec3 a2 = d1[i - 1] - 0.5 * h * u2[i - 1] * t[i - 1];
        // u_i (1 + (h/2) t_i.t'_i) = +-a.t'_i; t.t' is O(h^2) so the
        // denominator never vanishes.
        const double denom = 1.0 + 0.5 * h * t[i].dot(tprime[i]);
        u1[i] = -a1.dot(tprime[i]) / denom;
        u2[i] = a2.dot(tprime[i]) / denom;
        d1[i] = a2 - 0.5 * h * u2[i] * t[i];
        d2[i] = a1 + 0.5 * h * u1[i] * t[i];
    }
    return {DensityField(grid, std::move(u1), std::move(u2)),
            FrameField{grid, t, std::move(d1), std::move(d2)}};
}

}  // namespace curveframe
