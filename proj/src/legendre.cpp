#include "osc/legendre.hpp"

#include <cmath>

namespace osc {

namespace {

Expr t_() { return sym("t"); }
Expr u1_() { return sym("u1"); }
Expr u2_() { return sym("u2"); }
Expr p_() { return sym("p"); }
Expr k_() { return sym("k"); }

}  // namespace

Expr canonical_momentum(const VariationalPair& L) {
    if (L.kind != VariationalKind::Lagrangian)
        throw StructureError("canonical_momentum: Lagrangian required");
    return differentiate(L.value, "u2");
}

HamiltonianResult catalog_hamiltonian(LagrangianTag tag, double k, const Expr& f1, const Expr& f2,
                                      const SampleSpec& spec) {
    if (!(k > 0)) throw Error("catalog_hamiltonian: k must be positive");
    Expr residual = lagrangian_constraint(tag, f1, f2);
    if (!is_zero_sampled(residual, spec.with_pinned("k", k)))
        throw ConstraintError(std::string("H") + (lagrangian_tag_name(tag) + 1), residual);

    Expr t = t_(), u1 = u1_(), u2 = u2_(), p = p_(), k_sym = k_();
    Expr c = cos(k_sym * t), s = sin(k_sym * t);
    Expr P = p - f1;

    HamiltonianResult out;
    out.H.kind = VariationalKind::Hamiltonian;
    out.H.tag = std::string("H") + (lagrangian_tag_name(tag) + 1);  // "H12"...
    out.H.f1 = f1;
    out.H.f2 = f2;
    out.H.constraint = residual;
    out.H.source_multiplier = multiplier_tag_name(
        tag == LagrangianTag::L12   ? MultiplierTag::JLM12
        : tag == LagrangianTag::L13 ? MultiplierTag::JLM13
        : tag == LagrangianTag::L23 ? MultiplierTag::JLM23
                                    : MultiplierTag::JLM34);

    switch (tag) {
        case LagrangianTag::L12:
            out.H.value = 0.5 * pow(p, 2) - p * f1 + 0.5 * pow(f1, 2) - f2;
            out.map = {u2 + f1, P, "all of phase space"};
            break;
        case LagrangianTag::L13: {
            Expr A = k_sym * u1 * s + u2 * c;
            out.H.value = exp(c * P) * pow(c, -2) - k_sym * u1 * s * pow(c, -1) * P - f2;
            out.map = {pow(c, -1) * log(A) + f1,
                       -(k_sym * u1 * s * pow(c, -1)) + exp(c * P) * pow(c, -1),
                       "cos kt != 0 and k u1 sin kt + u2 cos kt > 0"};
            break;
        }
        case LagrangianTag::L23: {
            Expr B = -(k_sym * u1 * c) + u2 * s;
            out.H.value = exp(s * P) * pow(s, -2) + k_sym * u1 * c * pow(s, -1) * P - f2;
            out.map = {pow(s, -1) * log(B) + f1,
                       k_sym * u1 * c * pow(s, -1) + exp(s * P) * pow(s, -1),
                       "sin kt != 0 and u2 sin kt - k u1 cos kt > 0"};
            break;
        }
        case LagrangianTag::L34:
            out.H.value = 0.5 * log(pow(tan(k_sym * u1 * P), 2) + 1.0) - f2;
            out.map = {pow(k_sym * u1, -1) * arctan(u2 / (k_sym * u1)) + f1,
                       k_sym * u1 * tan(k_sym * u1 * P),
                       "u1 > 0 and |k u1 (p - f1)| < pi/2 (principal branch)"};
            break;
    }
    return out;
}

double hamilton_equations_residual(const HamiltonianResult& h, const Trajectory& traj) {
    if (traj.n < 3) throw Error("hamilton_equations_residual: trajectory too short");
    Expr dHdp = differentiate(h.H.value, "p");
    Expr dHdu1 = differentiate(h.H.value, "u1");

    Bindings b{{"k", traj.k}};
    std::vector<Complex> pvals(traj.n);
    for (int i = 0; i < traj.n; ++i) {
        b["t"] = traj.time_at(i);
        b["u1"] = traj.u1[i];
        b["u2"] = traj.u2[i];
        try {
            pvals[i] = evaluate(h.map.p_of_u2, b);
        } catch (const PoleError& p) {
            throw PoleError(std::string(p.what()) + " at trajectory node " + std::to_string(i));
        }
    }
    // fourth-order five-point stencil; the sec/csc-type momenta need the
    // extra accuracy near the ends of their trigonometric domains
    auto d5 = [&](auto&& f, int i) {
        return (-f(i + 2) + 8.0 * f(i + 1) - 8.0 * f(i - 1) + f(i - 2)) / (12.0 * traj.dt);
    };
    double mx = 0;
    for (int i = 2; i + 2 < traj.n; ++i) {
        double u1dot = d5([&](int j) { return traj.u1[j]; }, i);
        Complex pdot = d5([&](int j) { return pvals[j]; }, i);
        b["t"] = traj.time_at(i);
        b["u1"] = traj.u1[i];
        b["p"] = pvals[i];
        b.erase("u2");
        Complex r1, r2;
        try {
            r1 = Complex(u1dot, 0) - evaluate(dHdp, b);
            r2 = pdot + evaluate(dHdu1, b);
        } catch (const PoleError& p) {
            throw PoleError(std::string(p.what()) + " at trajectory node " + std::to_string(i));
        }
        mx = std::max(mx, std::max(std::abs(r1), std::abs(r2)));
    }
    return mx;
}

double hamiltonian_drift(const HamiltonianResult& h, const Trajectory& traj) {
    Bindings b{{"k", traj.k}};
    double h0 = 0, drift = 0;
    for (int i = 0; i < traj.n; ++i) {
        b["t"] = traj.time_at(i);
        b["u1"] = traj.u1[i];
        b["u2"] = traj.u2[i];
        Complex p = evaluate(h.map.p_of_u2, b);
        b["p"] = p;
        double val = evaluate(h.H.value, b).real();
        if (i == 0) {
            h0 = val;
            continue;
        }
        drift = std::max(drift, std::abs(val - h0) / (std::abs(h0) > 1e-30 ? std::abs(h0) : 1.0));
    }
    return drift;
}

GoldsteinReport goldstein_transform_check(const SampleSpec& spec) {
    Expr q = sym("q"), p = sym("p");
    Expr standard = 0.5 * (pow(p, 2) + pow(q, 2));
    // canonical transformation q~ = -1/q, p~ = p q^2 applied to the standard form
    Expr transformed = substitute(substitute(standard, "q", -pow(sym("qq"), -1)), "p",
                                  sym("pp") * pow(sym("qq"), 2));
    transformed = substitute(substitute(transformed, "qq", q), "pp", p);
    Expr goldstein = 0.5 * (pow(q, -2) + pow(p, 2) * pow(q, 4));

    GoldsteinReport rep;
    rep.identity_ok = equiv(transformed, goldstein, spec);
    Expr mirrored = substitute(substitute(goldstein, "q", -sym("qq")), "p", -sym("pp"));
    mirrored = substitute(substitute(mirrored, "qq", q), "pp", p);
    rep.parity_ok = equiv(goldstein, mirrored, spec);
    rep.spot_value = evaluate(goldstein, {{"q", 2.0}, {"p", 0.3}}).real();
    return rep;
}

}  // namespace osc
