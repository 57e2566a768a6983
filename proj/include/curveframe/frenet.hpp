#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "curveframe/calculus.hpp"
#include "curveframe/fields.hpp"

namespace curveframe {

inline constexpr double kSentinel = std::numeric_limits<double>::quiet_NaN();

/// Torsion sign convention. Sec2 takes tau = b'.n (so b' = tau n); Sec4 is
/// the opposite sign (b' = -tau n). The two appear in different parts of the
/// literature and are not consistent with each other.
enum class TorsionConvention { Sec2, Sec4 };

inline double default_eps_kappa(double length) { return 1e-6 / length; }

/// Maximal runs of consecutive true entries in a mask.
inline std::vector<std::pair<std::size_t, std::size_t>> mask_runs(const std::vector<bool>& mask) {
    std::vector<std::pair<std::size_t, std::size_t>> runs;  // [first, last]
    std::size_t i = 0;
    while (i < mask.size()) {
        if (!mask[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < mask.size() && mask[j + 1]) ++j;
        runs.emplace_back(i, j);
        i = j + 1;
    }
    return runs;
}

/// Differentiates samples independently on each masked run; nodes outside
/// runs (and runs too short for a stencil) get NaN sentinels.
template <typename T>
std::vector<T> differentiate_runs(const std::vector<T>& f, double h,
                                  const std::vector<bool>& mask, const T& sentinel) {
    std::vector<T> d(f.size(), sentinel);
    for (const auto& [a, b] : mask_runs(mask)) {
        const std::size_t len = b - a + 1;
        if (len >= 3) {
            d[a] = (-3.0 * f[a] + 4.0 * f[a + 1] - f[a + 2]) / (2.0 * h);
            for (std::size_t i = a + 1; i < b; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
            d[b] = (3.0 * f[b] - 4.0 * f[b - 1] + f[b - 2]) / (2.0 * h);
        } else if (len == 2) {
            d[a] = d[b] = (f[b] - f[a]) / h;
        }
    }
    return d;
}

/// Serret-Frenet frame and invariants of a sampled curve. n and b carry NaN
/// sentinels where the curvature is below the regularity threshold.
struct FrenetField {
    Grid grid;
    std::vector<Vec3> t, n, b;
    std::vector<double> kappa, tau;
    std::vector<bool> regular_mask;
};

inline std::vector<double> frenet_torsion(const FrenetField& frenet,
                                          TorsionConvention convention = TorsionConvention::Sec2) {
    const Vec3 nan3 = Vec3::Constant(kSentinel);
    const auto bprime = differentiate_runs(frenet.b, frenet.grid.spacing(), frenet.regular_mask, nan3);
    std::vector<double> tau(frenet.grid.size(), kSentinel);
    const double sign = (convention == TorsionConvention::Sec2) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (frenet.regular_mask[i] && bprime[i].allFinite()) {
            tau[i] = sign * bprime[i].dot(frenet.n[i]);
        }
    }
    return tau;
}

inline FrenetField frenet_frame(const SampledCurve& curve, double eps_kappa = -1.0,
                                TorsionConvention convention = TorsionConvention::Sec2,
                                double unit_speed_tol = kUnitSpeedTol) {
    if (eps_kappa < 0.0) eps_kappa = default_eps_kappa(curve.grid.length());
    const UnitTangentField t = tangent_field(curve, unit_speed_tol);
    const VectorField tprime = differentiate(t.field());

    const std::size_t n_nodes = curve.grid.size();
    FrenetField out{curve.grid, t.values(), {}, {}, {}, {}, {}};
    out.n.assign(n_nodes, Vec3::Constant(kSentinel));
    out.b.assign(n_nodes, Vec3::Constant(kSentinel));
    out.kappa.resize(n_nodes);
    out.regular_mask.resize(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        const double k = tprime.values[i].norm();
        out.kappa[i] = k;
        out.regular_mask[i] = (k >= eps_kappa);
        if (out.regular_mask[i]) {
            out.n[i] = tprime.values[i] / k;
            out.b[i] = out.t[i].cross(out.n[i]);
        }
    }
    out.tau = frenet_torsion(out, convention);
    return out;
}

/// Weak curvature and torsion of an arbitrary orthonormal moving frame
/// {t, e2, e3}: kappa_w = t'.e2, tau_w = e2'.e3. Defined at every node.
struct WeakInvariants {
    std::vector<double> kappa_w, tau_w;
};

inline WeakInvariants weak_invariants(const Grid& grid, const std::vector<Vec3>& t,
                                      const std::vector<Vec3>& e2, const std::vector<Vec3>& e3) {
    const double h = grid.spacing();
    const auto tprime = differentiate_samples(t, h);
    const auto e2prime = differentiate_samples(e2, h);
    WeakInvariants w;
    w.kappa_w.resize(grid.size());
    w.tau_w.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        w.kappa_w[i] = tprime[i].dot(e2[i]);
        w.tau_w[i] = e2prime[i].dot(e3[i]);
    }
    return w;
}

}  // namespace curveframe
