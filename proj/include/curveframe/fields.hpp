#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "curveframe/errors.hpp"
#include "curveframe/grid.hpp"

namespace curveframe {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Per-node 3-vector samples on a uniform grid.
struct VectorField {
    Grid grid;
    std::vector<Vec3> values;

    VectorField(Grid g, std::vector<Vec3> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.size()) {
            throw Error("VectorField size mismatch: " + std::to_string(values.size()) +
                        " values on a " + std::to_string(grid.size()) + "-node grid");
        }
    }

    std::size_t size() const { return grid.size(); }
};

/// Arc-length sampled space curve: uniform grid plus position samples.
struct SampledCurve {
    Grid grid;
    std::vector<Vec3> points;

    SampledCurve(Grid g, std::vector<Vec3> p) : grid(g), points(std::move(p)) {
        if (points.size() != grid.size()) {
            throw Error("SampledCurve size mismatch");
        }
    }
};

// Unit-speed tolerance accepted by tangent consumers. The deviation of a
// finite-difference tangent from unit norm scales like (kappa*h)^2, so this
// admits curvatures up to ~10/L at n ~ 4096.
inline constexpr double kUnitSpeedTol = 1e-4;

/// Unit tangent field t(s). Construction rejects inputs whose norms deviate
/// from 1 beyond `tol`, then renormalizes so downstream code sees |t| = 1
/// to machine precision.
class UnitTangentField {
public:
    explicit UnitTangentField(VectorField raw, double tol = kUnitSpeedTol)
        : field_(std::move(raw)) {
        for (std::size_t i = 0; i < field_.size(); ++i) {
            const double norm = field_.values[i].norm();
            if (std::abs(norm - 1.0) > tol) {
                throw NotUnitSpeed("tangent norm " + std::to_string(norm) + " at node " +
                                   std::to_string(i) + " deviates from 1 beyond " +
                                   std::to_string(tol));
            }
            field_.values[i] /= norm;
        }
    }

    const Grid& grid() const { return field_.grid; }
    const std::vector<Vec3>& values() const { return field_.values; }
    const VectorField& field() const { return field_; }
    std::size_t size() const { return field_.size(); }

private:
    VectorField field_;
};

inline void require_orthonormal_triad(const Vec3& a, const Vec3& b, const Vec3& c,
                                      double tol = 1e-10) {
    Mat3 m;
    m.col(0) = a;
    m.col(1) = b;
    m.col(2) = c;
    const double gram_dev = (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
    if (gram_dev > tol) {
        throw NotOrthonormal("triad Gram deviation " + std::to_string(gram_dev) +
                             " exceeds " + std::to_string(tol));
    }
    if (m.determinant() < 0.0) {
        throw NotOrthonormal("triad is left-handed");
    }
}

}  // namespace curveframe
