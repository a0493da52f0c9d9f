#pragma once

// Jacobi Last Multiplier engine: 3x3 determinant construction from symmetry
// pairs, the 28-pair enumeration with classification against the basic
// multiplier set, the verbatim multiplier catalog and first-integral checks.

#include <optional>

#include "osc/mechsys.hpp"

namespace osc {

enum class MultiplierTag { JLM12, JLM13, JLM23, JLM34 };
const char* multiplier_tag_name(MultiplierTag t);
std::optional<MultiplierTag> multiplier_tag_from(const std::string& name);

struct Multiplier {
    Expr value;              // Expr in (t, u1, u2, k)
    std::string provenance;  // catalog tag or "pair(i,j)"
};

// det of rows (vector field, a, b); row order fixed
Expr determinant(const FirstOrderSystem& sys, const GeneratorField& a, const GeneratorField& b);

// empty = zero determinant (sampling test); otherwise M = det^-1
std::optional<Multiplier> multiplier_from_pair(const FirstOrderSystem& sys,
                                               const GeneratorField& a, const GeneratorField& b,
                                               const SampleSpec& spec);

enum class PairStatus { Zero, Basic, Combination, Invalid };
const char* pair_status_name(PairStatus s);

struct PairEntry {
    int i = 0, j = 0;  // 1-based catalog indices
    Expr det;
    PairStatus status = PairStatus::Zero;
    std::string matched_basic;  // set when status == Basic
    Complex constant{};         // multiplier = constant * matched basic (k pinned)
    bool first_integral = false;
};

struct PairClassification {
    std::vector<PairEntry> entries;  // exactly 28
    int zero_count = 0;
    int nonzero_count = 0;
    int distinct_basic = 0;
    bool all_nonzero_first_integrals = false;
};

PairClassification enumerate_pairs(const FirstOrderSystem& sys,
                                   const std::vector<GeneratorField>& catalog,
                                   const SampleSpec& spec);

// verbatim Eq. 410.5 expressions (frequency as symbol "k"); k validates the
// not-identically-zero invariant by sampling at that value
Multiplier catalog_multiplier(MultiplierTag tag, double k);

// Eq. 31.0 instantiated on the SHO: dM/dt + d(M u2)/du1 + d(-M k^2 u1)/du2
Expr multiplier_pde_residual(const FirstOrderSystem& sys, const Expr& m);

struct ConstancyReport {
    double mean = 0;
    double max_rel_spread = 0;
    int nodes = 0;
};

// m1/m2 along the trajectory; PoleError (with node index) on singular nodes
ConstancyReport ratio_first_integral_check(const Multiplier& m1, const Multiplier& m2,
                                           const Trajectory& traj);

}  // namespace osc
