#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "curveframe/calculus.hpp"
#include "curveframe/fields.hpp"
#include "curveframe/frenet.hpp"
#include "curveframe/invariants.hpp"
#include "curveframe/rpaf.hpp"

namespace curveframe {

/// Full-precision numeric formatting for CSV columns; NaN sentinels are
/// written as 0 (masked rows are identified by their mask column instead).
inline std::string csv_number(double v) {
    if (!std::isfinite(v)) return "0";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return in;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
        cells.push_back(cell);
    }
    return cells;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return static_cast<int>(i);
        }
        return -1;
    }
};

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in = open_input(path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw IoError("'" + path + "' is empty");
    table.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != table.header.size()) {
            throw IoError("'" + path + "': row has " + std::to_string(cells.size()) +
                          " cells, header has " + std::to_string(table.header.size()));
        }
        std::vector<double> row(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            try {
                row[i] = std::stod(cells[i]);
            } catch (const std::exception&) {
                throw IoError("'" + path + "': cannot parse '" + cells[i] + "' as a number");
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

inline void write_curve_csv(const std::string& path, const SampledCurve& curve) {
    std::ofstream out = open_output(path);
    out << "s,x,y,z\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        const Vec3& p = curve.points[i];
        out << csv_number(curve.grid.node(i)) << ',' << csv_number(p.x()) << ','
            << csv_number(p.y()) << ',' << csv_number(p.z()) << '\n';
    }
}

/// Reads a curve CSV with header `s,x,y,z` or `x,y,z`. A uniform s column is
/// used as the arc-length grid directly; a missing or non-uniform s falls
/// back to chord-length resampling (to `n_out`, or the input sample count).
inline SampledCurve read_curve_csv(const std::string& path, std::size_t n_out = 0) {
    const CsvTable table = read_csv(path);
    const int cx = table.column("x"), cy = table.column("y"), cz = table.column("z");
    if (cx < 0 || cy < 0 || cz < 0) {
        throw IoError("'" + path + "': curve CSV needs columns x,y,z");
    }
    if (table.rows.size() < 3) throw TooFewPoints("'" + path + "': need at least 3 samples");
    std::vector<Vec3> pts(table.rows.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        pts[i] = Vec3(table.rows[i][cx], table.rows[i][cy], table.rows[i][cz]);
    }
    const int cs = table.column("s");
    if (cs >= 0 && n_out == 0) {
        const double L = table.rows.back()[cs];
        if (L > 0.0 && table.rows.front()[cs] == 0.0) {
            const double h = L / static_cast<double>(pts.size() - 1);
            bool uniform = true;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (std::abs(table.rows[i][cs] - static_cast<double>(i) * h) > 1e-9 * L) {
                    uniform = false;
                    break;
                }
            }
            if (uniform) {
                Grid grid(L, pts.size());
                return SampledCurve(grid, std::move(pts));
            }
        }
    }
    return resample_arclength(pts, n_out == 0 ? pts.size() : n_out);
}

inline void write_frenet_csv(const std::string& path, const FrenetField& f) {
    std::ofstream out = open_output(path);
    out << "s,tx,ty,tz,nx,ny,nz,bx,by,bz,kappa,tau,regular\n";
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        out << csv_number(f.grid.node(i));
        for (const Vec3* v : {&f.t[i], &f.n[i], &f.b[i]}) {
            out << ',' << csv_number(v->x()) << ',' << csv_number(v->y()) << ','
                << csv_number(v->z());
        }
        out << ',' << csv_number(f.kappa[i]) << ',' << csv_number(f.tau[i]) << ','
            << (f.regular_mask[i] ? '1' : '0') << '\n';
    }
}

inline void write_frame_csv(const std::string& path, const FrameField& f) {
    std::ofstream out = open_output(path);
    out << "s,tx,ty,tz,d1x,d1y,d1z,d2x,d2y,d2z\n";
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        out << csv_number(f.grid.node(i));
        for (const Vec3* v : {&f.t[i], &f.d1[i], &f.d2[i]}) {
            out << ',' << csv_number(v->x()) << ',' << csv_number(v->y()) << ','
                << csv_number(v->z());
        }
        out << '\n';
    }
}

inline void write_density_csv(const std::string& path, const DensityField& d) {
    std::ofstream out = open_output(path);
    out << (d.u3 ? "s,u1,u2,u3\n" : "s,u1,u2\n");
    for (std::size_t i = 0; i < d.grid.size(); ++i) {
        out << csv_number(d.grid.node(i)) << ',' << csv_number(d.u1[i]) << ','
            << csv_number(d.u2[i]);
        if (d.u3) out << ',' << csv_number((*d.u3)[i]);
        out << '\n';
    }
}

inline DensityField read_density_csv(const std::string& path) {
    const CsvTable table = read_csv(path);
    const int cs = table.column("s"), c1 = table.column("u1"), c2 = table.column("u2");
    const int c3 = table.column("u3");
    if (cs < 0 || c1 < 0 || c2 < 0) {
        throw IoError("'" + path + "': density CSV needs columns s,u1,u2");
    }
    if (table.rows.size() < 3) throw TooFewPoints("'" + path + "': need at least 3 samples");
    const std::size_t n = table.rows.size();
    Grid grid(table.rows.back()[cs], n);
    std::vector<double> u1(n), u2(n), u3(n);
    for (std::size_t i = 0; i < n; ++i) {
        u1[i] = table.rows[i][c1];
        u2[i] = table.rows[i][c2];
        if (c3 >= 0) u3[i] = table.rows[i][c3];
    }
    if (c3 >= 0) return DensityField(grid, std::move(u1), std::move(u2), std::move(u3));
    return DensityField(grid, std::move(u1), std::move(u2));
}

inline void write_invariants_csv(const std::string& path, const InvariantField& inv) {
    std::ofstream out = open_output(path);
    out << "s,kappa,theta,tau,valid\n";
    for (std::size_t i = 0; i < inv.grid.size(); ++i) {
        out << csv_number(inv.grid.node(i)) << ',' << csv_number(inv.kappa[i]) << ','
            << csv_number(inv.theta[i]) << ',' << csv_number(inv.tau[i]) << ','
            << (inv.valid_mask[i] ? '1' : '0') << '\n';
    }
}

}  // namespace curveframe
