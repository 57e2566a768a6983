#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "curveframe/fields.hpp"
#include "curveframe/frenet.hpp"
#include "curveframe/rpaf.hpp"

namespace curveframe {

/// Complex flexural density u = u2 + i u1.
struct ComplexDensityField {
    Grid grid;
    std::vector<double> re, im;  // re = u2, im = u1
};

inline ComplexDensityField complex_density(const DensityField& d) {
    if (d.u3) {
        for (std::size_t i = 0; i < d.grid.size(); ++i) {
            if (std::abs((*d.u3)[i]) > 1e-12) {
                throw NonzeroTwist("complex_density requires u3 = 0 (RPAF); |u3| = " +
                                   std::to_string(std::abs((*d.u3)[i])) + " at node " +
                                   std::to_string(i));
            }
        }
    }
    return ComplexDensityField{d.grid, d.u2, d.u1};
}

/// Folds an angle into [-pi, pi).
inline double fold_angle(double x) {
    const double two_pi = 2.0 * std::numbers::pi;
    double r = x - two_pi * std::floor((x + std::numbers::pi) / two_pi);
    if (r >= std::numbers::pi) r -= two_pi;  // guard against roundoff at the seam
    return r;
}

/// Unwraps principal arguments in place along a run: adds 2*pi multiples so
/// consecutive jumps stay within (-pi, pi].
inline std::vector<double> unwrap_phase(const std::vector<double>& raw) {
    std::vector<double> out(raw.size());
    if (raw.empty()) return out;
    out[0] = raw[0];
    for (std::size_t i = 1; i < raw.size(); ++i) {
        out[i] = out[i - 1] + fold_angle(raw[i] - out[i - 1]);
    }
    return out;
}

/// Curvature, unwrapped phase and torsion extracted from a complex density.
/// theta and tau carry NaN sentinels outside the valid runs.
struct InvariantField {
    Grid grid;
    std::vector<double> kappa, theta, tau;
    std::vector<bool> valid_mask;
};

inline InvariantField extract_invariants(const ComplexDensityField& u, double eps_kappa = -1.0) {
    if (eps_kappa < 0.0) eps_kappa = default_eps_kappa(u.grid.length());
    const std::size_t n = u.grid.size();
    InvariantField out{u.grid, {}, {}, {}, {}};
    out.kappa.resize(n);
    out.theta.assign(n, kSentinel);
    out.valid_mask.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.kappa[i] = std::hypot(u.re[i], u.im[i]);
        out.valid_mask[i] = (out.kappa[i] >= eps_kappa);
    }
    for (const auto& [a, b] : mask_runs(out.valid_mask)) {
        std::vector<double> raw(b - a + 1);
        for (std::size_t i = a; i <= b; ++i) {
            // Principal argument in [-pi, pi); atan2 returns (-pi, pi].
            double arg = std::atan2(u.im[i], u.re[i]);
            if (arg >= std::numbers::pi) arg = -std::numbers::pi;
            raw[i - a] = arg;
        }
        const auto unwrapped = unwrap_phase(raw);
        for (std::size_t i = a; i <= b; ++i) out.theta[i] = unwrapped[i - a];
    }
    out.tau = differentiate_runs(out.theta, u.grid.spacing(), out.valid_mask, kSentinel);
    return out;
}

/// Mean/stdev of a set of angles, folded against the first sample so that
/// values straddling the [-pi, pi) seam are not split.
struct AngleStats {
    double mean = 0.0;
    double stdev = 0.0;
    std::size_t count = 0;
};

inline AngleStats angle_stats(const std::vector<double>& raw) {
    AngleStats st;
    st.count = raw.size();
    if (raw.empty()) return st;
    const double ref = fold_angle(raw[0]);
    double sum = 0.0, sum2 = 0.0;
    for (double r : raw) {
        const double dev = fold_angle(r - ref);
        sum += dev;
        sum2 += dev * dev;
    }
    const double m = sum / static_cast<double>(raw.size());
    st.mean = fold_angle(ref + m);
    st.stdev = std::sqrt(std::max(0.0, sum2 / static_cast<double>(raw.size()) - m * m));
    return st;
}

/// Summary of a rotation-invariance check between two density solutions.
struct InvarianceReport {
    double max_abs_modulus_gap = 0.0;
    double phase_shift_mean = 0.0;
    double phase_shift_stdev = 0.0;
    std::size_t nodes_compared = 0;
};

/// Rodrigues rotation of v by `angle` about unit axis.
inline Vec3 rotate_about(const Vec3& axis, double angle, const Vec3& v) {
    return std::cos(angle) * v + std::sin(angle) * axis.cross(v) +
           (1.0 - std::cos(angle)) * axis.dot(v) * axis;
}

/// Solves the Volterra densities for an initial normal pair and for the same
/// pair rotated by alpha about t(0), then compares moduli and phases of the
/// two complex densities over jointly valid nodes.
inline InvarianceReport verify_rotation_invariance(const UnitTangentField& t_field,
                                                   const Vec3& d1_0, const Vec3& d2_0,
                                                   double alpha, double eps_kappa = -1.0) {
    if (eps_kappa < 0.0) eps_kappa = default_eps_kappa(t_field.grid().length());
    const Vec3 t0 = t_field.values()[0];
    const auto [dens, frame] = solve_volterra_densities(t_field, d1_0, d2_0);
    const auto [dens_r, frame_r] = solve_volterra_densities(
        t_field, rotate_about(t0, alpha, d1_0), rotate_about(t0, alpha, d2_0));

    const auto u = complex_density(dens);
    const auto v = complex_density(dens_r);
    InvarianceReport rep;
    std::vector<double> diffs;
    for (std::size_t i = 0; i < t_field.size(); ++i) {
        const double mu = std::hypot(u.re[i], u.im[i]);
        const double mv = std::hypot(v.re[i], v.im[i]);
        if (mu < eps_kappa || mv < eps_kappa) continue;
        rep.max_abs_modulus_gap = std::max(rep.max_abs_modulus_gap, std::abs(mu - mv));
        diffs.push_back(std::atan2(v.im[i], v.re[i]) - std::atan2(u.im[i], u.re[i]));
    }
    const AngleStats st = angle_stats(diffs);
    rep.phase_shift_mean = st.mean;
    rep.phase_shift_stdev = st.stdev;
    rep.nodes_compared = st.count;
    return rep;
}

/// Per-node rotation angle carrying frame f's normal pair onto frame g's d1,
/// measured in coordinates of (f.d1, f.d2) so that near-orthonormality of the
/// pair does not bias the angle.
inline std::vector<double> relative_frame_angles(const FrameField& f, const FrameField& g) {
    std::vector<double> angles(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double g11 = f.d1[i].dot(f.d1[i]);
        const double g12 = f.d1[i].dot(f.d2[i]);
        const double g22 = f.d2[i].dot(f.d2[i]);
        const double r1 = g.d1[i].dot(f.d1[i]);
        const double r2 = g.d1[i].dot(f.d2[i]);
        const double det = g11 * g22 - g12 * g12;
        const double a = (g22 * r1 - g12 * r2) / det;
        const double b = (g11 * r2 - g12 * r1) / det;
        angles[i] = std::atan2(b, a);
    }
    return angles;
}

/// The deterministic initial-normal rule: projects the first standard basis
/// vector e with |e.t0| < 0.9 onto the plane normal to t0.
inline std::pair<Vec3, Vec3> auto_normal_pair(const Vec3& t0) {
    Vec3 e = Vec3::UnitX();
    if (std::abs(e.dot(t0)) >= 0.9) e = Vec3::UnitY();
    if (std::abs(e.dot(t0)) >= 0.9) e = Vec3::UnitZ();
    const Vec3 d1 = (e - e.dot(t0) * t0).normalized();
    return {d1, t0.cross(d1)};
}

/// Agreement report between the Frenet invariants and the RPAF invariants of
/// the same curve, plus residuals of reconstructing n and b from the RPAF
/// normals through the phase angle.
struct FrenetRpafReport {
    double max_kappa_gap = 0.0;
    double max_torsion_gap = 0.0;  // max | |theta'| - |tau_frenet| |
    double max_normal_residual = 0.0;
    double max_binormal_residual = 0.0;
    int torsion_sign = 0;  // empirical sign of theta' vs tau_frenet
    std::size_t nodes_compared = 0;
};

inline FrenetRpafReport compare_frenet_rpaf(const SampledCurve& curve, double eps_kappa = -1.0,
                                            double unit_speed_tol = kUnitSpeedTol) {
    if (eps_kappa < 0.0) eps_kappa = default_eps_kappa(curve.grid.length());
    const FrenetField fr = frenet_frame(curve, eps_kappa, TorsionConvention::Sec2, unit_speed_tol);
    bool any_regular = false;
    for (bool m : fr.regular_mask) any_regular |= m;
    if (!any_regular) throw NoRegularNodes("curvature below threshold at every node");

    const UnitTangentField t = tangent_field(curve, unit_speed_tol);
    const auto [d1_0, d2_0] = auto_normal_pair(t.values()[0]);
    const auto [dens, frame] = solve_volterra_densities(t, d1_0, d2_0);
    const InvariantField inv = extract_invariants(complex_density(dens), eps_kappa);

    // Joint-interior nodes: valid in both pipelines, with valid neighbors,
    // so one-sided stencils at run boundaries are excluded.
    const std::size_t n = curve.grid.size();
    std::vector<bool> joint(n);
    for (std::size_t i = 0; i < n; ++i) joint[i] = fr.regular_mask[i] && inv.valid_mask[i];

    FrenetRpafReport rep;
    double sign_acc = 0.0;
    // The first and last few grid nodes mix one-sided stencils across two
    // levels of differentiation and are not second-order consistent; they are
    // excluded from the maxima along with run-boundary nodes.
    for (std::size_t i = 4; i + 4 < n; ++i) {
        if (!(joint[i - 1] && joint[i] && joint[i + 1])) continue;
        ++rep.nodes_compared;
        rep.max_kappa_gap = std::max(rep.max_kappa_gap, std::abs(fr.kappa[i] - inv.kappa[i]));
        if (std::isfinite(inv.tau[i]) && std::isfinite(fr.tau[i])) {
            rep.max_torsion_gap = std::max(
                rep.max_torsion_gap, std::abs(std::abs(inv.tau[i]) - std::abs(fr.tau[i])));
            sign_acc += inv.tau[i] * fr.tau[i];
        }
        const double c = std::cos(inv.theta[i]);
        const double s = std::sin(inv.theta[i]);
        const Vec3 n_rec = c * frame.d1[i] - s * frame.d2[i];
        const Vec3 b_rec = s * frame.d1[i] + c * frame.d2[i];
        rep.max_normal_residual = std::max(rep.max_normal_residual, (n_rec - fr.n[i]).norm());
        rep.max_binormal_residual = std::max(rep.max_binormal_residual, (b_rec - fr.b[i]).norm());
    }
    if (rep.nodes_compared == 0) throw NoRegularNodes("no jointly regular interior nodes");
    rep.torsion_sign = (sign_acc > 0.0) ? 1 : (sign_acc < 0.0 ? -1 : 0);
    return rep;
}

/// Trapezoidal quadrature of f(kappa_w, tau_w) along a frame, with the weak
/// invariants taken from finite differences of the frame itself.
inline double framed_energy(const FrameField& frame,
                            const std::function<double(double, double)>& f) {
    const WeakInvariants w = weak_invariants(frame.grid, frame.t, frame.d1, frame.d2);
    const double h = frame.grid.spacing();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < frame.size(); ++i) {
        acc += 0.5 * h * (f(w.kappa_w[i], w.tau_w[i]) + f(w.kappa_w[i + 1], w.tau_w[i + 1]));
    }
    return acc;
}

}  // namespace curveframe
