// Command-line front end: generate analytic test curves, frame curves with
// Frenet or RPAF, extract invariants, run the invariance verification suite,
// and evaluate frame energies.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "curveframe/curveframe.hpp"

using namespace curveframe;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;

std::string fmt9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

struct GenerateOptions {
    std::string kind;
    double length = 1.0;
    double radius = 1.0;
    double pitch = 1.0;
    double turns = 1.0;
    double scale = 1.0;
    std::size_t n = 1024;
    std::string out;
};

SampledCurve generate_curve(const GenerateOptions& o) {
    if (o.kind == "line") return make_line(o.length, o.n);
    if (o.kind == "circle") return make_circle(o.radius, o.n);
    if (o.kind == "helix") return make_helix(o.radius, o.pitch, o.turns, o.n);
    if (o.kind == "trefoil") return make_trefoil(o.scale, o.n);
    throw Error("unknown curve kind '" + o.kind + "'");
}

struct CommonOptions {
    std::size_t resample = 0;
    double eps_kappa = -1.0;
    double tol = kUnitSpeedTol;
    std::string convention = "sec2";
};

SampledCurve load_curve(const std::string& path, const CommonOptions& c) {
    SampledCurve curve = read_curve_csv(path);
    if (c.resample > 0) curve = resample_arclength(curve, c.resample);
    return curve;
}

TorsionConvention convention_of(const std::string& name) {
    return name == "sec4" ? TorsionConvention::Sec4 : TorsionConvention::Sec2;
}

std::optional<Vec3> parse_vec3(const std::string& text) {
    if (text.empty()) return std::nullopt;
    Vec3 v;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf", &v.x(), &v.y(), &v.z()) != 3) {
        throw Error("expected 'x,y,z' but got '" + text + "'");
    }
    return v;
}

int cmd_frame(const std::string& curve_path, const std::string& method, const std::string& d1_text,
              const std::string& out, const std::string& densities_out, const CommonOptions& c) {
    const SampledCurve curve = load_curve(curve_path, c);
    if (method == "frenet") {
        const FrenetField f = frenet_frame(curve, c.eps_kappa, convention_of(c.convention), c.tol);
        write_frenet_csv(out, f);
        std::cout << "wrote Frenet frame to " << out << "\n";
        return kExitOk;
    }
    const UnitTangentField t = tangent_field(curve, c.tol);
    Vec3 d1_0, d2_0;
    if (const auto given = parse_vec3(d1_text)) {
        d1_0 = *given;
        d2_0 = t.values()[0].cross(d1_0);
        require_orthonormal_triad(t.values()[0], d1_0, d2_0);
    } else {
        std::tie(d1_0, d2_0) = auto_normal_pair(t.values()[0]);
    }
    const auto [dens, frame] = solve_volterra_densities(t, d1_0, d2_0);
    write_frame_csv(out, frame);
    std::cout << "wrote RPAF to " << out << "\n";
    if (!densities_out.empty()) {
        write_density_csv(densities_out, dens);
        std::cout << "wrote densities to " << densities_out << "\n";
    }
    return kExitOk;
}

int cmd_invariants(const std::string& input_path, const std::string& out,
                   const std::string& report_path, const CommonOptions& c) {
    const CsvTable table = read_csv(input_path);
    json report;
    InvariantField inv = [&] {
        if (table.column("u1") >= 0 && table.column("u2") >= 0) {
            report["input"] = "densities";
            return extract_invariants(complex_density(read_density_csv(input_path)), c.eps_kappa);
        }
        report["input"] = "curve";
        const SampledCurve curve = load_curve(input_path, c);
        const UnitTangentField t = tangent_field(curve, c.tol);
        const auto [d1_0, d2_0] = auto_normal_pair(t.values()[0]);
        const auto [dens, frame] = solve_volterra_densities(t, d1_0, d2_0);
        try {
            const FrenetRpafReport cmp = compare_frenet_rpaf(curve, c.eps_kappa, c.tol);
            report["frenet_rpaf"] = {{"max_kappa_gap", cmp.max_kappa_gap},
                                     {"max_torsion_gap", cmp.max_torsion_gap},
                                     {"max_normal_residual", cmp.max_normal_residual},
                                     {"max_binormal_residual", cmp.max_binormal_residual},
                                     {"torsion_sign", cmp.torsion_sign},
                                     {"nodes_compared", cmp.nodes_compared}};
        } catch (const NoRegularNodes& e) {
            report["warning"] = std::string("no regular nodes: ") + e.what();
            std::cerr << "warning: " << e.what() << "; invariants are fully masked\n";
        }
        return extract_invariants(complex_density(dens), c.eps_kappa);
    }();

    std::size_t valid = 0;
    for (bool m : inv.valid_mask) valid += m ? 1 : 0;
    report["nodes"] = inv.grid.size();
    report["valid_nodes"] = valid;
    write_invariants_csv(out, inv);
    std::cout << "wrote invariants to " << out << " (" << valid << " valid nodes)\n";
    if (!report_path.empty()) {
        std::ofstream r = open_output(report_path);
        r << report.dump(2) << "\n";
    }
    return kExitOk;
}

struct VerifyTolerances {
    double modulus = 1e-10;
    double phase_stdev = 1e-8;
    double phase_mean = 1e-8;
    double angle_stdev = 1e-8;
    double gram = 1e-12;
    double round_trip = 1e-3;
};

int cmd_verify(const std::string& curve_path, double alpha, unsigned seed,
               const VerifyTolerances& tol, const std::string& out, const CommonOptions& c) {
    json report;
    report["curve"] = curve_path;
    report["alpha"] = alpha;
    bool all_pass = true;
    auto check = [&](const std::string& name, double value, double bound) {
        const bool pass = value <= bound;
        all_pass &= pass;
        report["checks"][name] = {{"value", value}, {"tolerance", bound}, {"pass", pass}};
        if (!pass) std::cerr << "FAILED " << name << ": " << fmt9(value) << " > " << fmt9(bound) << "\n";
    };

    try {
        const SampledCurve curve = load_curve(curve_path, c);
        const UnitTangentField t = tangent_field(curve, c.tol);
        const auto [d1_0, d2_0] = auto_normal_pair(t.values()[0]);

        // Rotation invariance of |u| and theta.
        const InvarianceReport inv = verify_rotation_invariance(t, d1_0, d2_0, alpha, c.eps_kappa);
        report["nodes_compared"] = inv.nodes_compared;
        check("modulus_gap", inv.max_abs_modulus_gap, tol.modulus);
        if (inv.nodes_compared >= 2) {
            check("phase_shift_stdev", inv.phase_shift_stdev, tol.phase_stdev);
            check("phase_shift_mean_error", std::abs(fold_angle(inv.phase_shift_mean - alpha)),
                  tol.phase_mean);
            report["phase_shift_mean"] = inv.phase_shift_mean;
        }

        // Totality of RPAFs: the two frames differ by a constant rotation.
        const auto [dens, frame] = solve_volterra_densities(t, d1_0, d2_0);
        const auto [dens_r, frame_r] = solve_volterra_densities(
            t, rotate_about(t.values()[0], alpha, d1_0), rotate_about(t.values()[0], alpha, d2_0));
        const AngleStats st = angle_stats(relative_frame_angles(frame, frame_r));
        check("rpaf_angle_stdev", st.stdev, tol.angle_stdev);
        check("rpaf_angle_mean_error", std::abs(fold_angle(st.mean - alpha)), tol.angle_stdev);

        // Orthonormality of the rotation-exponential propagator, both on the
        // recovered densities and on seeded random smooth ones.
        const FrameField prop = propagate_frame(dens, t.values()[0], d1_0, d2_0);
        check("propagated_gram_deviation", prop.max_gram_deviation(), tol.gram);
        {
            std::mt19937 rng(seed);
            std::uniform_real_distribution<double> amp(-1.0, 1.0);
            std::vector<double> u1(curve.grid.size(), 0.0), u2(curve.grid.size(), 0.0);
            for (int k = 1; k <= 4; ++k) {
                const double a1 = amp(rng), a2 = amp(rng);
                for (std::size_t i = 0; i < curve.grid.size(); ++i) {
                    const double s = curve.grid.node(i);
                    u1[i] += a1 * std::sin(k * s);
                    u2[i] += a2 * std::cos(k * s);
                }
            }
            const FrameField rnd = propagate_frame(DensityField(curve.grid, u1, u2), Vec3::UnitX(),
                                                   Vec3::UnitY(), Vec3::UnitZ());
            check("random_densities_gram_deviation", rnd.max_gram_deviation(), tol.gram);
        }

        // Round trip: propagate the recovered densities and solve again.
        const UnitTangentField t2(VectorField(curve.grid, prop.t), c.tol);
        const auto [dens2, frame2] = solve_volterra_densities(t2, d1_0, d2_0);
        double rt = 0.0;
        for (std::size_t i = 0; i < curve.grid.size(); ++i) {
            rt = std::max(rt, std::abs(dens2.u1[i] - dens.u1[i]));
            rt = std::max(rt, std::abs(dens2.u2[i] - dens.u2[i]));
        }
        check("round_trip_density_gap", rt, tol.round_trip);
    } catch (const NotUnitSpeed& e) {
        all_pass = false;
        report["checks"]["unit_speed"] = {{"pass", false}, {"error", e.what()}};
        std::cerr << "FAILED unit_speed: " << e.what() << "\n";
    }

    report["pass"] = all_pass;
    const std::string text = report.dump(2);
    std::cout << text << "\n";
    if (!out.empty()) {
        std::ofstream o = open_output(out);
        o << text << "\n";
    }
    return all_pass ? kExitOk : kExitVerifyFailed;
}

int cmd_energy(const std::string& curve_path, const std::string& expr_text,
               const CommonOptions& c) {
    const SampledCurve curve = load_curve(curve_path, c);
    const FrenetField f = frenet_frame(curve, c.eps_kappa, convention_of(c.convention), c.tol);
    for (bool m : f.regular_mask) {
        if (!m) throw NoRegularNodes("energy needs a Frenet frame at every node");
    }
    EnergyExpression expr(expr_text);
    const FrameField frame{f.grid, f.t, f.n, f.b};
    const double e = framed_energy(frame, [&](double k, double t) { return expr(k, t); });
    std::cout << fmt9(e) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frame sampled space curves (Serret-Frenet and Bishop RPAF), recover flexural "
                 "densities, and extract curvature/torsion invariants"};
    app.require_subcommand(1);

    GenerateOptions gen;
    CommonOptions common;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--resample", common.resample, "resample the input curve to N arc-length nodes");
        cmd->add_option("--eps-kappa", common.eps_kappa, "curvature regularity threshold (default 1e-6/L)");
        cmd->add_option("--tol", common.tol, "unit-speed tolerance");
        cmd->add_option("--convention", common.convention, "torsion sign convention")
            ->check(CLI::IsMember({"sec2", "sec4"}));
    };

    auto* cgen = app.add_subcommand("generate", "write an analytic test curve as CSV");
    cgen->add_option("kind", gen.kind, "line | circle | helix | trefoil")->required();
    cgen->add_option("--length", gen.length, "line length");
    cgen->add_option("--radius", gen.radius, "circle/helix radius");
    cgen->add_option("--pitch", gen.pitch, "helix height per turn");
    cgen->add_option("--turns", gen.turns, "helix turns");
    cgen->add_option("--scale", gen.scale, "trefoil scale");
    cgen->add_option("--n", gen.n, "number of samples")->required();
    cgen->add_option("--out", gen.out, "output CSV path")->required();

    std::string curve_path, method = "frenet", d1_text, out_path, densities_out, report_path;
    std::string expr_text;
    double alpha = 1.0471975511965976;  // pi/3
    unsigned seed = 0;
    VerifyTolerances vtol;

    auto* cframe = app.add_subcommand("frame", "compute a Frenet frame or an RPAF");
    cframe->add_option("curve", curve_path, "input curve CSV")->required();
    cframe->add_option("--method", method, "frenet | rpaf")->check(CLI::IsMember({"frenet", "rpaf"}));
    cframe->add_option("--d1", d1_text, "initial normal 'x,y,z' (rpaf); omit for --auto rule");
    cframe->add_option("--out", out_path, "output frame CSV")->required();
    cframe->add_option("--densities-out", densities_out, "density CSV output (rpaf)");
    add_common(cframe);

    auto* cinv = app.add_subcommand("invariants", "extract kappa/theta/tau from a curve or density CSV");
    cinv->add_option("input", curve_path, "curve CSV (s,x,y,z) or density CSV (s,u1,u2)")->required();
    cinv->add_option("--out", out_path, "invariants CSV output")->required();
    cinv->add_option("--report", report_path, "JSON report output");
    add_common(cinv);

    auto* cver = app.add_subcommand("verify", "run the invariance verification suite");
    cver->add_option("curve", curve_path, "input curve CSV")->required();
    cver->add_option("--alpha", alpha, "rotation angle for the invariance checks (radians)");
    cver->add_option("--seed", seed, "seed for the random-density orthonormality check");
    cver->add_option("--out", out_path, "JSON report output");
    cver->add_option("--tol-modulus", vtol.modulus, "modulus-gap tolerance");
    cver->add_option("--tol-phase-stdev", vtol.phase_stdev, "phase-shift stdev tolerance");
    cver->add_option("--tol-phase-mean", vtol.phase_mean, "phase-shift mean tolerance");
    cver->add_option("--tol-gram", vtol.gram, "Gram-deviation tolerance");
    cver->add_option("--tol-round-trip", vtol.round_trip, "round-trip density tolerance");
    add_common(cver);

    auto* cene = app.add_subcommand("energy", "trapezoidal energy of f(kappa, tau) on the Frenet frame");
    cene->add_option("curve", curve_path, "input curve CSV")->required();
    cene->add_option("--f", expr_text, "polynomial in kappa and tau, e.g. 'kappa^2 + tau^2'")->required();
    add_common(cene);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cgen->parsed()) {
            write_curve_csv(gen.out, generate_curve(gen));
            std::cout << "wrote " << gen.kind << " curve to " << gen.out << "\n";
            return kExitOk;
        }
        if (cframe->parsed()) {
            return cmd_frame(curve_path, method, d1_text, out_path, densities_out, common);
        }
        if (cinv->parsed()) {
            return cmd_invariants(curve_path, out_path, report_path, common);
        }
        if (cver->parsed()) {
            return cmd_verify(curve_path, alpha, seed, vtol, out_path, common);
        }
        if (cene->parsed()) {
            return cmd_energy(curve_path, expr_text, common);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
