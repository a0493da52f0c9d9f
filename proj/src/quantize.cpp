#include "osc/quantize.hpp"

namespace osc {

namespace {
Expr x_() { return sym("x"); }
}

ClassicalHamiltonianForm sho_hamiltonian_form() {
    return {pow(x_(), 2), num(1), num(0), "sho"};
}

ClassicalHamiltonianForm goldstein_hamiltonian_form() {
    return {pow(x_(), -2), pow(x_(), 4), num(0), "goldstein"};
}

ClassicalHamiltonianForm gauge_hamiltonian_form(const Expr& f1, const Expr& f2) {
    return {pow(f1, 2) - 2.0 * f2, num(1), f1, "gauge"};
}

const char* scheme_name(OrderingScheme s) {
    switch (s) {
        case OrderingScheme::TwoTermSymmetric: return "two-term-symmetric";
        case OrderingScheme::Weyl: return "weyl";
        case OrderingScheme::SplitSymmetric: return "split-symmetric";
    }
    return "?";
}

std::optional<OrderingScheme> scheme_from(const std::string& name) {
    for (OrderingScheme s : {OrderingScheme::TwoTermSymmetric, OrderingScheme::Weyl,
                             OrderingScheme::SplitSymmetric})
        if (name == scheme_name(s)) return s;
    return std::nullopt;
}

EvolutionOperator quantize(const ClassicalHamiltonianForm& h, OrderingScheme scheme,
                           const SampleSpec& spec) {
    if (is_zero_sampled(h.B, spec)) throw Error("quantize: B is identically zero");

    Expr Bx = differentiate(h.B, "x");
    Expr c_kin;
    switch (scheme) {
        case OrderingScheme::TwoTermSymmetric:
            // (p^2 B + B p^2)/2 = -B dxx - B' dx - (1/2) B''
            c_kin = -0.5 * differentiate(Bx, "x");
            break;
        case OrderingScheme::Weyl:
            // (p^2 B + 2 p B p + B p^2)/4 = -B dxx - B' dx - (1/4) B''
            c_kin = -0.25 * differentiate(Bx, "x");
            break;
        case OrderingScheme::SplitSymmetric: {
            // sqrt(B) p^2 sqrt(B) = -B dxx - B' dx - sqrt(B) (sqrt B)''
            bool positive = true;
            try {
                positive = !is_zero_sampled(h.B, spec) &&
                           equiv(h.B, pow(pow(h.B, Rational(1, 2)), 2), spec);
            } catch (const InconclusiveError&) {
                positive = false;
            }
            if (!positive)
                throw Error("quantize: split-symmetric needs B > 0 on the sampled domain");
            Expr r = pow(h.B, Rational(1, 2));
            c_kin = -(r * differentiate(differentiate(r, "x"), "x"));
            break;
        }
    }

    EvolutionOperator op;
    op.scheme = scheme_name(scheme);
    op.source = h.tag;
    op.a = -h.B;
    op.b = -Bx;
    op.c = c_kin + h.A;
    if (!is_zero_sampled(h.linear, spec.with_tol(1e-14))) {
        // -p f1 symmetrized as -(p f1 + f1 p)/2, identical in all three schemes
        Expr i = imag_unit();
        op.b = op.b + 2.0 * i * h.linear;
        op.c = op.c + i * differentiate(h.linear, "x");
    }
    return op;
}

EvolutionOperator general_gauge_operator(const Expr& f1, const Expr& f2) {
    for (const auto& s : free_symbols(f1))
        if (s != "t" && s != "x" && s != "k")
            throw StructureError("general_gauge_operator: f1 must depend on (t, x) only");
    for (const auto& s : free_symbols(f2))
        if (s != "t" && s != "x" && s != "k")
            throw StructureError("general_gauge_operator: f2 must depend on (t, x) only");
    Expr i = imag_unit();
    EvolutionOperator op;
    op.scheme = "symmetrized";
    op.source = "gauge";
    op.a = num(-1);
    op.b = 2.0 * i * f1;
    op.c = pow(f1, 2) - 2.0 * f2 + i * differentiate(f1, "x");
    return op;
}

Expr apply_operator(const EvolutionOperator& op, const Expr& u) {
    Expr ux = differentiate(u, "x");
    return 2.0 * imag_unit() * differentiate(u, "t") - op.a * differentiate(ux, "x") -
           op.b * ux - op.c * u;
}

}  // namespace osc
