#include "osc/mechsys.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace osc {

namespace {

const char* coord_name(Coords c, int i) {
    static const char* phase[] = {"t", "u1", "u2"};
    static const char* pde[] = {"t", "x", "u"};
    return c == Coords::PhaseSpace ? phase[i] : pde[i];
}

Expr total_derivative(const FirstOrderSystem& sys, const Expr& f) {
    return differentiate(f, "t") + sys.rhs_u1 * differentiate(f, "u1") +
           sys.rhs_u2 * differentiate(f, "u2");
}

}  // namespace

GeneratorField field_add(const GeneratorField& a, const GeneratorField& b) {
    if (a.coords != b.coords) throw StructureError("field_add: mixed coordinate signatures");
    return {a.coords, a.c_t + b.c_t, a.c_1 + b.c_1, a.c_2 + b.c_2, a.tag + "+" + b.tag};
}

GeneratorField field_scale(const Expr& c, const GeneratorField& g) {
    return {g.coords, c * g.c_t, c * g.c_1, c * g.c_2, g.tag};
}

FirstOrderSystem sho_system(double k) {
    if (!(k > 0)) throw Error("sho_system: k must be positive");
    Expr kk = sym("k"), u1 = sym("u1"), u2 = sym("u2");
    return {k, u2, -(kk * kk * u1)};
}

std::vector<GeneratorField> sho_symmetry_catalog(CatalogForm form) {
    Expr k = sym("k"), t = sym("t"), u1 = sym("u1"), u2 = sym("u2");
    Expr c = cos(k * t), s = sin(k * t);
    Expr c2 = cos(2.0 * k * t), s2 = sin(2.0 * k * t);

    std::vector<GeneratorField> cat;
    auto add = [&](Expr ct, Expr c1, Expr cc2, std::string tag) {
        cat.push_back({Coords::PhaseSpace, std::move(ct), std::move(c1), std::move(cc2),
                       std::move(tag)});
    };
    add(num(0), c, -(k * s), "G1");
    add(num(0), s, k * c, "G2");
    add(num(0), u1, u2, "G3");
    add(num(1), num(0), num(0), "G4");
    add(c2, -(k * u1 * s2), -(2.0 * k * k * u1 * c2 - k * u2 * s2), "G5");
    add(s2, k * u1 * c2, -(2.0 * k * k * u1 * s2 + k * u2 * c2), "G6");
    if (form == CatalogForm::AsPrinted) {
        // Eq. 410.3 verbatim; the u1*u2 term of G7 and the u1^2 term of G8
        // carry cos kt where the prolongation gives sin kt
        add(u1 * c, -(k * u1 * u1 * s), -(k * k * u1 * u1 * c + k * u1 * u2 * c + u2 * u2 * c),
            "G7");
        add(u1 * s, k * u1 * u1 * c, -(k * k * u1 * u1 * c - k * u1 * u2 * c + u2 * u2 * s),
            "G8");
    } else {
        add(u1 * c, -(k * u1 * u1 * s), -(k * k * u1 * u1 * c + k * u1 * u2 * s + u2 * u2 * c),
            "G7");
        add(u1 * s, k * u1 * u1 * c, -(k * k * u1 * u1 * s - k * u1 * u2 * c + u2 * u2 * s),
            "G8");
    }
    return cat;
}

Trajectory integrate(const FirstOrderSystem& sys, double u1_0, double u2_0, double t_begin,
                     double t_end, double dt) {
    if (!(dt > 0)) throw Error("integrate: dt must be positive");
    if (t_end - t_begin < dt) throw Error("integrate: span shorter than one step");

    Bindings b{{"k", sys.k}};
    auto rhs = [&](double t, double y1, double y2, double& d1, double& d2) {
        b["t"] = t;
        b["u1"] = y1;
        b["u2"] = y2;
        d1 = evaluate(sys.rhs_u1, b).real();
        d2 = evaluate(sys.rhs_u2, b).real();
    };

    // keep the grid uniform and land exactly on t_end: round the step count
    // and stretch dt accordingly (the stored dt is the step actually taken)
    int steps = std::max(1, static_cast<int>(std::llround((t_end - t_begin) / dt)));
    dt = (t_end - t_begin) / steps;
    int n = steps + 1;
    Trajectory traj;
    traj.t0 = t_begin;
    traj.dt = dt;
    traj.n = n;
    traj.k = sys.k;
    traj.u1.reserve(n);
    traj.u2.reserve(n);

    double y1 = u1_0, y2 = u2_0;
    traj.u1.push_back(y1);
    traj.u2.push_back(y2);
    for (int i = 1; i < n; ++i) {
        double t = t_begin + (i - 1) * dt;
        double a1, a2, b1, b2, c1, c2, d1, d2;
        rhs(t, y1, y2, a1, a2);
        rhs(t + dt / 2, y1 + dt / 2 * a1, y2 + dt / 2 * a2, b1, b2);
        rhs(t + dt / 2, y1 + dt / 2 * b1, y2 + dt / 2 * b2, c1, c2);
        rhs(t + dt, y1 + dt * c1, y2 + dt * c2, d1, d2);
        y1 += dt / 6 * (a1 + 2 * b1 + 2 * c1 + d1);
        y2 += dt / 6 * (a2 + 2 * b2 + 2 * c2 + d2);
        if (!std::isfinite(y1) || !std::isfinite(y2))
            throw Error("integrate: divergence, last good t = " + std::to_string(t));
        traj.u1.push_back(y1);
        traj.u2.push_back(y2);
    }
    return traj;
}

GeneratorField symmetry_commutator(const GeneratorField& a, const GeneratorField& b) {
    if (a.coords != b.coords)
        throw StructureError("symmetry_commutator: mixed coordinate signatures");
    auto act = [&](const GeneratorField& g, const Expr& f) {
        return g.c_t * differentiate(f, coord_name(g.coords, 0)) +
               g.c_1 * differentiate(f, coord_name(g.coords, 1)) +
               g.c_2 * differentiate(f, coord_name(g.coords, 2));
    };
    GeneratorField out;
    out.coords = a.coords;
    out.c_t = act(a, b.c_t) - act(b, a.c_t);
    out.c_1 = act(a, b.c_1) - act(b, a.c_1);
    out.c_2 = act(a, b.c_2) - act(b, a.c_2);
    out.tag = "[" + a.tag + "," + b.tag + "]";
    return out;
}

SymmetryDefect symmetry_defect(const FirstOrderSystem& sys, const GeneratorField& g) {
    if (g.coords != Coords::PhaseSpace)
        throw StructureError("symmetry_defect: phase-space signature required");
    auto X_of = [&](const Expr& f) {
        return g.c_t * differentiate(f, "t") + g.c_1 * differentiate(f, "u1") +
               g.c_2 * differentiate(f, "u2");
    };
    Expr dtau = total_derivative(sys, g.c_t);
    SymmetryDefect d;
    d.defect_u1 = total_derivative(sys, g.c_1) - sys.rhs_u1 * dtau - X_of(sys.rhs_u1);
    d.defect_u2 = total_derivative(sys, g.c_2) - sys.rhs_u2 * dtau - X_of(sys.rhs_u2);
    d.prolongation_gap = g.c_2 - (total_derivative(sys, g.c_1) - sym("u2") * dtau);
    return d;
}

double max_defect_on_trajectory(const SymmetryDefect& d, const Trajectory& traj) {
    Bindings b{{"k", traj.k}};
    double mx = 0;
    for (int i = 0; i < traj.n; ++i) {
        b["t"] = traj.time_at(i);
        b["u1"] = traj.u1[i];
        b["u2"] = traj.u2[i];
        mx = std::max(mx, std::abs(evaluate(d.defect_u1, b)));
        mx = std::max(mx, std::abs(evaluate(d.defect_u2, b)));
    }
    return mx;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
    out << "t,u1,u2\n";
    char buf[96];
    for (int i = 0; i < traj.n; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", traj.time_at(i), traj.u1[i],
                      traj.u2[i]);
        out << buf;
    }
}

}  // namespace osc
