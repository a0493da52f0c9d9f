#pragma once

// The classical simple harmonic oscillator as a first-order system, its
// eight-symmetry catalog, a fixed-step RK4 trajectory oracle and Lie-bracket
// machinery.  All expressions carry the frequency as the symbol "k"; numeric
// checks pin it to the system value.

#include <iosfwd>
#include <vector>

#include "osc/equiv.hpp"
#include "osc/expr.hpp"

namespace osc {

enum class Coords { PhaseSpace, Pde };
// PhaseSpace coefficients act on (t, u1, u2); Pde coefficients act on (t, x, u).

struct GeneratorField {
    Coords coords = Coords::PhaseSpace;
    Expr c_t;  // coefficient of d/dt
    Expr c_1;  // coefficient of d/du1 (phase space) or d/dx (PDE)
    Expr c_2;  // coefficient of d/du2 (phase space) or d/du (PDE, may contain u)
    std::string tag;
};

GeneratorField field_add(const GeneratorField& a, const GeneratorField& b);
GeneratorField field_scale(const Expr& c, const GeneratorField& g);

struct FirstOrderSystem {
    double k = 1.0;
    Expr rhs_u1;  // u1' in symbols (t, u1, u2, k)
    Expr rhs_u2;  // u2'
};

FirstOrderSystem sho_system(double k);

// Eq-410.3 catalog.  AsPrinted carries the paper's third components verbatim;
// ProlongationConsistent replaces them with the first prolongation of the
// point part, which is what a genuine point symmetry of the system requires.
// The two differ only for G7 and G8 (cos/sin transcription slips, surfaced by
// symmetry_defect and documented in the README).
enum class CatalogForm { AsPrinted, ProlongationConsistent };
std::vector<GeneratorField> sho_symmetry_catalog(CatalogForm form = CatalogForm::AsPrinted);

struct Trajectory {
    double t0 = 0;
    double dt = 0;
    int n = 0;  // number of nodes (>= 2)
    double k = 1;
    std::vector<double> u1, u2;
    std::string method = "rk4";

    double time_at(int i) const { return t0 + dt * i; }
};

Trajectory integrate(const FirstOrderSystem& sys, double u1_0, double u2_0, double t_begin,
                     double t_end, double dt);

// coefficient-wise Lie bracket [a,b]^i = a(b^i) - b(a^i); signatures must match
GeneratorField symmetry_commutator(const GeneratorField& a, const GeneratorField& b);

// Linearized symmetry condition for the first-order system plus a
// first-prolongation consistency gap for the printed third component.
struct SymmetryDefect {
    Expr defect_u1;         // Dt(phi1) - F1 Dt(tau) - X(F1)
    Expr defect_u2;         // Dt(phi2) - F2 Dt(tau) - X(F2)
    Expr prolongation_gap;  // phi2 - (Dt(phi1) - u2 Dt(tau))
};
SymmetryDefect symmetry_defect(const FirstOrderSystem& sys, const GeneratorField& g);

// max |defect| over trajectory nodes (both components)
double max_defect_on_trajectory(const SymmetryDefect& d, const Trajectory& traj);

// columns t,u1,u2 with 17 significant digits
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

}  // namespace osc
