#pragma once

// Canonical momentum, momentum inversion, Hamiltonian construction for the
// four catalog Lagrangians, and Hamilton's-equations verification against
// integrated trajectories.

#include "osc/lagrange.hpp"

namespace osc {

struct MomentumMap {
    Expr p_of_u2;  // in (t, u1, u2, k)
    Expr u2_of_p;  // in (t, u1, p, k)
    std::string domain_note;
};

// dL/du2, canonical
Expr canonical_momentum(const VariationalPair& L);

struct HamiltonianResult {
    VariationalPair H;  // kind == Hamiltonian, value in (t, u1, p, k)
    MomentumMap map;
};

// verbatim closed forms; the same tag enum indexes L and H catalogs
HamiltonianResult catalog_hamiltonian(LagrangianTag tag, double k, const Expr& f1, const Expr& f2,
                                      const SampleSpec& spec);

// max over interior nodes of |u1' - dH/dp| and |p' + dH/du1| with the time
// derivatives taken by central finite differences on the trajectory grid
double hamilton_equations_residual(const HamiltonianResult& h, const Trajectory& traj);

// relative drift of H along a trajectory (meaningful for the conserved H12)
double hamiltonian_drift(const HamiltonianResult& h, const Trajectory& traj);

struct GoldsteinReport {
    bool identity_ok = false;   // transformed standard Hamiltonian equals Eq. 2.1 form
    bool parity_ok = false;     // both sides invariant under (q,p) -> (-q,-p)
    double spot_value = 0;      // value at q=2, p=0.3 (expected 0.845)
};
GoldsteinReport goldstein_transform_check(const SampleSpec& spec);

}  // namespace osc
