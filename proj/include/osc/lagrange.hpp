#pragma once

// Lagrangian construction from multipliers with gauge functions, the four
// catalog Lagrangians, Euler-Lagrange residual verification and Noether
// point-symmetry checking with gauge-term recovery.

#include <array>
#include <optional>

#include "osc/multiplier.hpp"

namespace osc {

enum class VariationalKind { Lagrangian, Hamiltonian };

enum class LagrangianTag { L12, L13, L23, L34 };
const char* lagrangian_tag_name(LagrangianTag t);
std::optional<LagrangianTag> lagrangian_tag_from(const std::string& name);

struct VariationalPair {
    VariationalKind kind = VariationalKind::Lagrangian;
    Expr value;       // Lagrangian in (t, u1, u2, k); Hamiltonian in (t, u1, p, k)
    Expr f1, f2;      // gauge functions of (t, u1)
    Expr constraint;  // residual expression that must vanish for (f1, f2)
    std::string tag;
    // multiplier bookkeeping: d^2 value/du2^2 = normalization * source multiplier
    std::string source_multiplier;
    Complex normalization{1.0, 0.0};
};

struct ConstraintError : Error {
    ConstraintError(const std::string& tag, Expr residual_expr)
        : Error("gauge constraint violated for " + tag), residual(std::move(residual_expr)) {}
    Expr residual;
};

// constraint residual for the tag's printed constraint
Expr lagrangian_constraint(LagrangianTag tag, const Expr& f1, const Expr& f2);

// simplest gauge satisfying each printed constraint
std::pair<Expr, Expr> default_gauge(LagrangianTag tag);

VariationalPair catalog_lagrangian(LagrangianTag tag, double k, const Expr& f1, const Expr& f2,
                                   const SampleSpec& spec);

// m must match one of the four catalog multipliers up to a constant; the
// closed-form double antiderivative comes from the built-in table
VariationalPair lagrangian_from_multiplier(const Multiplier& m, const Expr& f1, const Expr& f2,
                                           double k, const SampleSpec& spec);

// Dt(dL/du2) - dL/du1 with the flow substituted (u1' = u2, u2' = -k^2 u1)
Expr euler_lagrange_expr(const VariationalPair& L);
double euler_lagrange_residual(const VariationalPair& L,
                               const std::vector<std::array<double, 3>>& points_t_u1_u2,
                               double k);

// deterministic safe sample points for each tag's singular set
std::vector<std::array<double, 3>> safe_points(LagrangianTag tag, int count, std::uint64_t seed);

struct NoetherEntry {
    std::string generator;
    bool is_noether = false;
    std::optional<Expr> gauge_term;  // F(t,u1) with defect = dF/dt when Noether
    Expr defect;                     // X^(1)L + L dxi/dt
    Expr euler_defect;               // Euler operator applied to the defect
};

// g must be a point generator: c_t and c_1 free of u2 (c_2 is ignored; the
// first prolongation is computed internally)
NoetherEntry noether_check(const VariationalPair& L, const GeneratorField& g,
                           const SampleSpec& spec);

}  // namespace osc
