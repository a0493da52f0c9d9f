#include <doctest.h>

#include <cmath>

#include "osc/legendre.hpp"

using namespace osc;

namespace {

// boxes keeping each tag's momentum map on its declared domain (k near 1)
SampleSpec domain_spec(LagrangianTag tag, double k = 1.0) {
    SampleSpec s = SampleSpec{}.with_pinned("k", k).with_tol(1e-9);
    switch (tag) {
        case LagrangianTag::L12:
            return s;
        case LagrangianTag::L13:
            return s.with_box("t", 0.1, 1.2).with_box("p", 0.1, 1.2);
        case LagrangianTag::L23:
            // u2 sin kt - k u1 cos kt > 0
            return s.with_box("t", 1.0, 1.5).with_box("u1", 0.3, 0.6).with_box("u2", 1.2, 2.0)
                .with_box("p", 0.3, 1.2);
        case LagrangianTag::L34:
            // |k u1 p| < pi/2
            return s.with_box("u1", 0.4, 1.4).with_box("p", 0.1, 0.8).with_box("u2", 0.3, 1.0);
    }
    return s;
}

HamiltonianResult make(LagrangianTag tag, double k = 1.0) {
    auto [f1, f2] = default_gauge(tag);
    return catalog_hamiltonian(tag, k, f1, f2, domain_spec(tag, k));
}

VariationalPair makeL(LagrangianTag tag, double k = 1.0) {
    auto [f1, f2] = default_gauge(tag);
    return catalog_lagrangian(tag, k, f1, f2, SampleSpec{}.with_pinned("k", k));
}

const std::array<LagrangianTag, 4> kTags{LagrangianTag::L12, LagrangianTag::L13,
                                         LagrangianTag::L23, LagrangianTag::L34};

}  // namespace

TEST_CASE("canonical momenta") {
    Expr t = sym("t"), u1 = sym("u1"), u2 = sym("u2"), k = sym("k");

    auto L12 = makeL(LagrangianTag::L12);
    CHECK(equiv(canonical_momentum(L12), u2, domain_spec(LagrangianTag::L12)));

    auto L34 = makeL(LagrangianTag::L34);
    CHECK(equiv(canonical_momentum(L34), arctan(u2 / (k * u1)) / (k * u1),
                domain_spec(LagrangianTag::L34)));

    auto L13 = makeL(LagrangianTag::L13);
    Expr A = k * u1 * sin(k * t) + u2 * cos(k * t);
    CHECK(equiv(canonical_momentum(L13), log(A) / cos(k * t), domain_spec(LagrangianTag::L13)));
}

TEST_CASE("catalog Hamiltonian closed forms") {
    Expr t = sym("t"), u1 = sym("u1"), p = sym("p"), k = sym("k");

    auto h12 = make(LagrangianTag::L12);
    CHECK(equiv(h12.H.value, 0.5 * pow(p, 2) + 0.5 * k * k * pow(u1, 2),
                domain_spec(LagrangianTag::L12)));
    CHECK(identical(h12.map.u2_of_p, p));

    auto h34 = make(LagrangianTag::L34);
    CHECK(equiv(h34.H.value, 0.5 * log(pow(tan(k * u1 * p), 2) + 1.0) + log(u1),
                domain_spec(LagrangianTag::L34)));

    // H23 with f1 = f2 = 0
    auto h23 = catalog_hamiltonian(LagrangianTag::L23, 1.0, num(0), num(0),
                                   domain_spec(LagrangianTag::L23));
    Expr s = sin(k * t);
    CHECK(equiv(h23.H.value, exp(s * p) * pow(s, -2) + k * u1 * cos(k * t) * pow(s, -1) * p,
                domain_spec(LagrangianTag::L23)));

    // constraint violations are rejected
    CHECK_THROWS_AS(catalog_hamiltonian(LagrangianTag::L12, 1.0, num(0), num(0),
                                        domain_spec(LagrangianTag::L12)),
                    ConstraintError);
}

TEST_CASE("momentum round trips on declared domains") {
    for (auto tag : kTags) {
        auto h = make(tag);
        auto spec = domain_spec(tag);
        CAPTURE(h.H.tag);
        // p(u2(p)) = p
        Expr back_p = substitute(h.map.p_of_u2, "u2", h.map.u2_of_p);
        CHECK(equiv(back_p, sym("p"), spec));
        // u2(p(u2)) = u2
        Expr back_u2 = substitute(h.map.u2_of_p, "p", h.map.p_of_u2);
        CHECK(equiv(back_u2, sym("u2"), spec));
    }
}

TEST_CASE("Legendre identity H + L = p u2 on declared domains") {
    for (auto tag : kTags) {
        auto h = make(tag);
        auto L = makeL(tag);
        auto spec = domain_spec(tag);
        CAPTURE(h.H.tag);
        Expr L_at_p = substitute(L.value, "u2", h.map.u2_of_p);
        Expr identity = sym("p") * h.map.u2_of_p - L_at_p - h.H.value;
        CHECK(is_zero_sampled(identity, spec));
    }
}

TEST_CASE("Hamilton's equations hold along trajectories") {
    auto sys = sho_system(1.0);

    auto h12 = make(LagrangianTag::L12);
    auto traj = integrate(sys, 1.0, 0.0, 0.0, 10.0, 1e-3);
    CHECK(hamilton_equations_residual(h12, traj) < 1e-6);

    // H34 on a segment with u1 in [0.5, 2]
    auto h34 = make(LagrangianTag::L34);
    auto traj34 = integrate(sys, 1.5, 0.3, 0.0, 0.8, 1e-3);
    for (double v : traj34.u1) CHECK(v > 0.5);
    CHECK(hamilton_equations_residual(h34, traj34) < 1e-5);

    // H13 with cos kt bounded away from zero; A > 0 is a first integral
    auto h13 = make(LagrangianTag::L13);
    auto traj13 = integrate(sys, 1.0, 0.5, 0.1, 1.4, 1e-3);
    CHECK(hamilton_equations_residual(h13, traj13) < 1e-5);

    // H23 on a segment where B > 0
    auto h23 = catalog_hamiltonian(LagrangianTag::L23, 1.0, num(0), num(0),
                                   domain_spec(LagrangianTag::L23));
    auto traj23 = integrate(sys, 1.0, 3.0, 0.4, 1.3, 1e-3);
    CHECK(hamilton_equations_residual(h23, traj23) < 1e-5);
}

TEST_CASE("H12 is conserved; time-dependent tags are not checked for conservation") {
    auto sys = sho_system(1.0);
    auto h12 = make(LagrangianTag::L12);
    auto traj = integrate(sys, 1.0, 0.0, 0.0, 10.0, 1e-3);
    CHECK(hamiltonian_drift(h12, traj) < 1e-8);
}

TEST_CASE("Goldstein canonical transform") {
    auto rep = goldstein_transform_check(SampleSpec{});
    CHECK(rep.identity_ok);
    CHECK(rep.parity_ok);
    CHECK(rep.spot_value == doctest::Approx(0.845).epsilon(1e-12));
}
