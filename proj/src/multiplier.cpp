#include "osc/multiplier.hpp"

#include <cmath>

namespace osc {

const char* multiplier_tag_name(MultiplierTag t) {
    switch (t) {
        case MultiplierTag::JLM12: return "JLM12";
        case MultiplierTag::JLM13: return "JLM13";
        case MultiplierTag::JLM23: return "JLM23";
        case MultiplierTag::JLM34: return "JLM34";
    }
    return "?";
}

std::optional<MultiplierTag> multiplier_tag_from(const std::string& name) {
    for (MultiplierTag t : {MultiplierTag::JLM12, MultiplierTag::JLM13, MultiplierTag::JLM23,
                            MultiplierTag::JLM34})
        if (name == multiplier_tag_name(t)) return t;
    return std::nullopt;
}

const char* pair_status_name(PairStatus s) {
    switch (s) {
        case PairStatus::Zero: return "zero";
        case PairStatus::Basic: return "basic";
        case PairStatus::Combination: return "combination";
        case PairStatus::Invalid: return "invalid";
    }
    return "?";
}

Expr determinant(const FirstOrderSystem& sys, const GeneratorField& a, const GeneratorField& b) {
    if (a.coords != Coords::PhaseSpace || b.coords != Coords::PhaseSpace)
        throw StructureError("determinant: phase-space signature required");
    const Expr r0[3] = {num(1), sys.rhs_u1, sys.rhs_u2};
    const Expr r1[3] = {a.c_t, a.c_1, a.c_2};
    const Expr r2[3] = {b.c_t, b.c_1, b.c_2};
    auto minor = [&](int c1, int c2) { return r1[c1] * r2[c2] - r1[c2] * r2[c1]; };
    return r0[0] * minor(1, 2) - r0[1] * minor(0, 2) + r0[2] * minor(0, 1);
}

std::optional<Multiplier> multiplier_from_pair(const FirstOrderSystem& sys,
                                               const GeneratorField& a, const GeneratorField& b,
                                               const SampleSpec& spec) {
    Expr det = determinant(sys, a, b);
    if (is_zero_sampled(det, spec.with_tol(1e-10)))
        return std::nullopt;
    return Multiplier{pow(det, -1), "pair(" + a.tag + "," + b.tag + ")"};
}

namespace {

Expr total_derivative(const FirstOrderSystem& sys, const Expr& f) {
    return differentiate(f, "t") + sys.rhs_u1 * differentiate(f, "u1") +
           sys.rhs_u2 * differentiate(f, "u2");
}

}  // namespace

PairClassification enumerate_pairs(const FirstOrderSystem& sys,
                                   const std::vector<GeneratorField>& catalog,
                                   const SampleSpec& spec) {
    if (catalog.size() != 8) throw Error("enumerate_pairs: catalog must have 8 generators");

    const Expr basics[3] = {catalog_multiplier(MultiplierTag::JLM12, sys.k).value,
                            catalog_multiplier(MultiplierTag::JLM13, sys.k).value,
                            catalog_multiplier(MultiplierTag::JLM23, sys.k).value};
    const char* names[3] = {"JLM12", "JLM13", "JLM23"};

    PairClassification out;
    std::set<std::string> seen_basics;
    bool all_fi = true;
    for (int i = 0; i < 8; ++i) {
        for (int j = i + 1; j < 8; ++j) {
            PairEntry e;
            e.i = i + 1;
            e.j = j + 1;
            e.det = determinant(sys, catalog[i], catalog[j]);
            if (is_zero_sampled(e.det, spec.with_tol(1e-10))) {
                e.status = PairStatus::Zero;
                ++out.zero_count;
                out.entries.push_back(std::move(e));
                continue;
            }
            ++out.nonzero_count;
            // a genuine multiplier reciprocal is a first integral of the flow
            Expr dflow = total_derivative(sys, e.det);
            e.first_integral = is_zero_sampled(dflow, spec.with_tol(1e-8));
            if (!e.first_integral) {
                e.status = PairStatus::Invalid;
                all_fi = false;
                out.entries.push_back(std::move(e));
                continue;
            }
            Expr m = pow(e.det, -1);
            e.status = PairStatus::Combination;
            for (int bidx = 0; bidx < 3; ++bidx) {
                auto c = equiv_up_to_constant(m, basics[bidx], spec);
                if (c) {
                    e.status = PairStatus::Basic;
                    e.matched_basic = names[bidx];
                    e.constant = *c;
                    seen_basics.insert(names[bidx]);
                    break;
                }
            }
            out.entries.push_back(std::move(e));
        }
    }
    out.distinct_basic = static_cast<int>(seen_basics.size());
    out.all_nonzero_first_integrals = all_fi;
    return out;
}

Multiplier catalog_multiplier(MultiplierTag tag, double k) {
    if (!(k > 0)) throw Error("catalog_multiplier: k must be positive");
    Expr kk = sym("k"), t = sym("t"), u1 = sym("u1"), u2 = sym("u2");
    Expr A = kk * u1 * sin(kk * t) + u2 * cos(kk * t);
    Expr B = -(kk * u1 * cos(kk * t)) + u2 * sin(kk * t);
    Multiplier m;
    switch (tag) {
        case MultiplierTag::JLM12: m = {kk, "JLM12"}; break;
        case MultiplierTag::JLM13: m = {pow(A, -1), "JLM13"}; break;
        case MultiplierTag::JLM23: m = {pow(B, -1), "JLM23"}; break;
        case MultiplierTag::JLM34: m = {pow(u2 * u2 + kk * kk * u1 * u1, -1), "JLM34"}; break;
    }
    if (is_zero_sampled(m.value, SampleSpec{}.with_pinned("k", k).with_tol(1e-12)))
        throw Error("catalog_multiplier: value vanished under sampling");
    return m;
}

Expr multiplier_pde_residual(const FirstOrderSystem& sys, const Expr& m) {
    return differentiate(m, "t") + differentiate(m * sys.rhs_u1, "u1") +
           differentiate(m * sys.rhs_u2, "u2");
}

ConstancyReport ratio_first_integral_check(const Multiplier& m1, const Multiplier& m2,
                                           const Trajectory& traj) {
    Expr ratio = m1.value / m2.value;
    Bindings b{{"k", traj.k}};
    std::vector<double> vals;
    vals.reserve(traj.n);
    for (int i = 0; i < traj.n; ++i) {
        b["t"] = traj.time_at(i);
        b["u1"] = traj.u1[i];
        b["u2"] = traj.u2[i];
        try {
            vals.push_back(evaluate(ratio, b).real());
        } catch (const PoleError& p) {
            throw PoleError(std::string(p.what()) + " at trajectory node " + std::to_string(i));
        }
    }
    ConstancyReport rep;
    rep.nodes = traj.n;
    double acc = 0;
    for (double v : vals) acc += v;
    rep.mean = acc / vals.size();
    double scale = std::abs(rep.mean) > 1e-30 ? std::abs(rep.mean) : 1.0;
    for (double v : vals)
        rep.max_rel_spread = std::max(rep.max_rel_spread, std::abs(v - rep.mean) / scale);
    return rep;
}

}  // namespace osc
