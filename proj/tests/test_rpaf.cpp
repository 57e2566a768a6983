#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "curveframe/generators.hpp"
#include "curveframe/invariants.hpp"
#include "curveframe/rpaf.hpp"
#include "oracles.hpp"

using namespace curveframe;
using oracles::pi;

namespace {

DensityField constant_densities(const Grid& grid, double u1, double u2) {
    return DensityField(grid, std::vector<double>(grid.size(), u1),
                        std::vector<double>(grid.size(), u2));
}

// Smooth random densities from a fixed seed: a short sum of sinusoids.
DensityField random_smooth_densities(const Grid& grid, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
    std::vector<double> u1(grid.size(), 0.0), u2(grid.size(), 0.0), u3(grid.size(), 0.0);
    for (int k = 1; k <= 5; ++k) {
        const double a1 = amp(rng), p1 = phase(rng);
        const double a2 = amp(rng), p2 = phase(rng);
        const double a3 = amp(rng), p3 = phase(rng);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double s = grid.node(i);
            u1[i] += a1 * std::sin(k * s + p1);
            u2[i] += a2 * std::sin(k * s + p2);
            u3[i] += a3 * std::sin(k * s + p3);
        }
    }
    return DensityField(grid, std::move(u1), std::move(u2), std::move(u3));
}

UnitTangentField circle_tangent(std::size_t n) {
    Grid grid(2.0 * pi, n);
    std::vector<Vec3> t(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = grid.node(i);
        t[i] = Vec3(std::cos(s), std::sin(s), 0.0);
    }
    return UnitTangentField(VectorField(grid, std::move(t)));
}

}  // namespace

TEST_CASE("propagate_frame: zero densities give a constant frame") {
    Grid grid(1.0, 33);
    const FrameField f =
        propagate_frame(constant_densities(grid, 0.0, 0.0), Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ());
    for (std::size_t i = 0; i < 33; ++i) {
        CHECK((f.t[i] - Vec3::UnitX()).norm() == 0.0);
        CHECK((f.d1[i] - Vec3::UnitY()).norm() == 0.0);
        CHECK((f.d2[i] - Vec3::UnitZ()).norm() == 0.0);
    }
}

TEST_CASE("propagate_frame: constant u2 matches the closed-form rotation") {
    Grid grid(2.0 * pi, 4096);
    const FrameField f =
        propagate_frame(constant_densities(grid, 0.0, 1.0), Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ());
    double err = 0.0;
    for (std::size_t i = 0; i < 4096; ++i) {
        const double s = grid.node(i);
        err = std::max(err, (f.t[i] - Vec3(std::cos(s), std::sin(s), 0.0)).norm());
        err = std::max(err, (f.d1[i] - Vec3(-std::sin(s), std::cos(s), 0.0)).norm());
        err = std::max(err, (f.d2[i] - Vec3(0.0, 0.0, 1.0)).norm());
    }
    CHECK(err < 1e-8);
}

TEST_CASE("propagate_frame: pure twist spins the normals about a fixed tangent") {
    Grid grid(2.0 * pi, 4096);
    const double u3 = 0.75;
    DensityField d(grid, std::vector<double>(grid.size(), 0.0),
                   std::vector<double>(grid.size(), 0.0),
                   std::vector<double>(grid.size(), u3));
    const FrameField f = propagate_frame(d, Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ());
    double err = 0.0;
    for (std::size_t i = 0; i < 4096; ++i) {
        const double s = grid.node(i);
        err = std::max(err, (f.t[i] - Vec3::UnitX()).norm());
        err = std::max(err, std::abs(f.d1[i].dot(Vec3::UnitY()) - std::cos(u3 * s)));
    }
    CHECK(err < 1e-8);
}

TEST_CASE("propagate_frame: orthonormal to roundoff at n = 1e5") {
    Grid grid(2.0 * pi, 100000);
    const FrameField f = propagate_frame(random_smooth_densities(grid, 12345), Vec3::UnitX(),
                                         Vec3::UnitY(), Vec3::UnitZ());
    CHECK(f.max_gram_deviation() < 1e-12);
}

TEST_CASE("propagate_frame: rejects a non-orthonormal initial triad") {
    Grid grid(1.0, 16);
    CHECK_THROWS_AS(propagate_frame(constant_densities(grid, 0.0, 1.0), Vec3::UnitX(),
                                    Vec3(0.0, 1.0, 0.1), Vec3::UnitZ()),
                    NotOrthonormal);
    // Left-handed triads are rejected too.
    CHECK_THROWS_AS(propagate_frame(constant_densities(grid, 0.0, 1.0), Vec3::UnitX(),
                                    Vec3::UnitZ(), Vec3::UnitY()),
                    NotOrthonormal);
}

TEST_CASE("reconstruct_curve: constant tangent gives a straight segment") {
    Grid grid(3.0, 31);
    const FrameField f =
        propagate_frame(constant_densities(grid, 0.0, 0.0), Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ());
    const SampledCurve c = reconstruct_curve(f, Vec3::Zero());
    for (std::size_t i = 0; i < 31; ++i) {
        CHECK((c.points[i] - Vec3(grid.node(i), 0.0, 0.0)).norm() < 1e-14);
    }
}

TEST_CASE("reconstruct_curve: constant u2 closes the unit circle") {
    Grid grid(2.0 * pi, 4096);
    const FrameField f =
        propagate_frame(constant_densities(grid, 0.0, 1.0), Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ());
    const SampledCurve c = reconstruct_curve(f, Vec3::Zero());
    CHECK((c.points.back() - c.points.front()).norm() < 1e-6);
    CHECK(max_unit_speed_deviation(c) < 1e-6);
}

TEST_CASE("reconstruct_curve: helix densities reproduce the analytic helix") {
    // Oracle: the RPAF of the helix has theta(s) = -tau s starting from the
    // Frenet normals, so u1 = -kappa sin(tau s), u2 = kappa cos(tau s).
    const oracles::Helix oracle{1.0, 1.0};
    const double k = oracle.kappa();
    const double tau = oracle.abs_tau();
    Grid grid(oracle.turn_length(), 4096);
    std::vector<double> u1(grid.size()), u2(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double s = grid.node(i);
        u1[i] = -k * std::sin(tau * s);
        u2[i] = k * std::cos(tau * s);
    }
    const Vec3 t0(oracle.tx(0), oracle.ty(0), oracle.tz(0));
    const Vec3 n0(-1.0, 0.0, 0.0);
    const Vec3 b0 = t0.cross(n0);
    const FrameField f = propagate_frame(DensityField(grid, u1, u2), t0, n0, b0);
    const SampledCurve c = reconstruct_curve(f, Vec3(oracle.x(0), oracle.y(0), oracle.z(0)));
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double s = grid.node(i);
        err = std::max(err, (c.points[i] - Vec3(oracle.x(s), oracle.y(s), oracle.z(s))).norm());
    }
    CHECK(err < 1e-4);
}

TEST_CASE("solve_volterra_densities: constant tangent gives zero densities") {
    Grid grid(1.0, 64);
    UnitTangentField t(VectorField(grid, std::vector<Vec3>(64, Vec3::UnitX())));
    const auto [dens, frame] = solve_volterra_densities(t, Vec3::UnitY(), Vec3::UnitZ());
    for (std::size_t i = 0; i < 64; ++i) {
        CHECK(dens.u1[i] == 0.0);
        CHECK(dens.u2[i] == 0.0);
        CHECK((frame.d1[i] - Vec3::UnitY()).norm() == 0.0);
        CHECK((frame.d2[i] - Vec3::UnitZ()).norm() == 0.0);
    }
}

TEST_CASE("solve_volterra_densities: circle tangent fixed point") {
    // Hand-verified solution of the integral equations for
    // t = (cos s, sin s, 0): u1 = 0, u2 = 1, d1 = (-sin s, cos s, 0),
    // d2 = (0, 0, 1); substitution into both equations checks out.
    // The quadrature error drifts like s^2 h^2; at n = 4096 the measured
    // maximum is 1.2e-5, shrinking fourfold under grid doubling.
    auto max_err = [](std::size_t n) {
        const UnitTangentField t = circle_tangent(n);
        const auto [dens, frame] =
            solve_volterra_densities(t, Vec3(0.0, 1.0, 0.0), Vec3(0.0, 0.0, 1.0));
        double err = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double s = t.grid().node(i);
            err = std::max(err, std::abs(dens.u1[i]));
            err = std::max(err, std::abs(dens.u2[i] - 1.0));
            err = std::max(err, (frame.d1[i] - Vec3(-std::sin(s), std::cos(s), 0.0)).norm());
            err = std::max(err, (frame.d2[i] - Vec3(0.0, 0.0, 1.0)).norm());
        }
        return err;
    };
    const double e1 = max_err(4096);
    CHECK(e1 < 2e-5);
    const double ratio = e1 / max_err(8192);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("solve_volterra_densities: rejects a bad initial pair") {
    const UnitTangentField t = circle_tangent(64);
    CHECK_THROWS_AS(solve_volterra_densities(t, Vec3(0.0, 1.0, 0.0), Vec3(0.0, 0.1, 1.0)),
                    NotOrthonormal);
}

namespace {

double round_trip_error(std::size_t n) {
    Grid grid(2.0 * pi, n);
    const DensityField dens = constant_densities(grid, 0.3, 0.8);
    const FrameField f = propagate_frame(dens, Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ());
    UnitTangentField t(VectorField(grid, f.t));
    const auto [back, frame] = solve_volterra_densities(t, Vec3::UnitY(), Vec3::UnitZ());
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        err = std::max(err, std::abs(back.u1[i] - 0.3));
        err = std::max(err, std::abs(back.u2[i] - 0.8));
    }
    return err;
}

}  // namespace

TEST_CASE("round trip: ODE propagation then Volterra recovery") {
    CHECK(round_trip_error(4096) < 1e-4);
    const double ratio = round_trip_error(4096) / round_trip_error(8192);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("RPAF totality: two solutions differ by a constant rotation") {
    const SampledCurve helix = make_helix_ab(1.0, 1.0, 1.0, 4096);
    const UnitTangentField t = tangent_field(helix);
    const auto [d1_0, d2_0] = auto_normal_pair(t.values()[0]);
    const double alpha = 0.9;
    const auto [densA, frameA] = solve_volterra_densities(t, d1_0, d2_0);
    const auto [densB, frameB] = solve_volterra_densities(
        t, rotate_about(t.values()[0], alpha, d1_0), rotate_about(t.values()[0], alpha, d2_0));
    const AngleStats st = angle_stats(relative_frame_angles(frameA, frameB));
    CHECK(st.stdev < 1e-8);
    CHECK(std::abs(st.mean - alpha) < 1e-8);
}

TEST_CASE("solve_volterra_densities: frame is orthonormal at quadrature order") {
    const SampledCurve helix = make_helix_ab(1.0, 1.0, 1.0, 4096);
    const auto [dens, frame] =
        solve_volterra_densities(tangent_field(helix), auto_normal_pair(tangent_field(helix).values()[0]).first,
                                 auto_normal_pair(tangent_field(helix).values()[0]).second);
    CHECK(frame.max_gram_deviation() < 1e-4);
}
