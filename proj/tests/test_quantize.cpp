#include <doctest.h>

#include <cmath>
#include <random>

#include "osc/quantize.hpp"

using namespace osc;

namespace {

const SampleSpec kSpec = SampleSpec{}.with_tol(1e-12);

// independent grid oracle: the ordering applied to a concrete test function
// through high-order finite differences, no symbolic differentiation involved
double d2_fd(const std::function<double(double)>& f, double x, double h = 1e-3) {
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) /
           (12 * h * h);
}

double ordering_oracle(OrderingScheme scheme, const std::function<double(double)>& B,
                       const std::function<double(double)>& u, double x) {
    // value of ordering(p^2 B) u at x; p^2 g = -g''
    switch (scheme) {
        case OrderingScheme::TwoTermSymmetric: {
            auto Bu = [&](double y) { return B(y) * u(y); };
            return 0.5 * (-d2_fd(Bu, x) - B(x) * d2_fd(u, x));
        }
        case OrderingScheme::Weyl: {
            auto Bu = [&](double y) { return B(y) * u(y); };
            // p B p u = -(B u')'
            auto Bup = [&](double y) {
                double h = 1e-4;
                return B(y) * (u(y + h) - u(y - h)) / (2 * h);
            };
            auto dBup = [&](double y) {
                double h = 1e-3;
                return (-Bup(y + 2 * h) + 8 * Bup(y + h) - 8 * Bup(y - h) + Bup(y - 2 * h)) /
                       (12 * h);
            };
            return 0.25 * (-d2_fd(Bu, x) - 2 * dBup(x) - B(x) * d2_fd(u, x));
        }
        case OrderingScheme::SplitSymmetric: {
            auto ru = [&](double y) { return std::sqrt(B(y)) * u(y); };
            return -std::sqrt(B(x)) * d2_fd(ru, x);
        }
    }
    return 0;
}

}  // namespace

TEST_CASE("standard oscillator quantizes identically in every scheme") {
    auto h = sho_hamiltonian_form();
    Expr x = sym("x");
    for (auto scheme : {OrderingScheme::TwoTermSymmetric, OrderingScheme::Weyl,
                        OrderingScheme::SplitSymmetric}) {
        auto op = quantize(h, scheme, kSpec);
        CHECK(identical(op.a, num(-1)));
        CHECK(identical(op.b, num(0)));
        CHECK(identical(op.c, pow(x, 2)));
    }
}

TEST_CASE("schemes coincide whenever B is constant") {
    // H = p^2/2 + V with V = x^2 + 1/x^2
    ClassicalHamiltonianForm h{pow(sym("x"), 2) + pow(sym("x"), -2), num(1), num(0), "custom"};
    auto a = quantize(h, OrderingScheme::TwoTermSymmetric, kSpec);
    auto b = quantize(h, OrderingScheme::Weyl, kSpec);
    auto c = quantize(h, OrderingScheme::SplitSymmetric, kSpec);
    CHECK(identical(a.c, b.c));
    CHECK(identical(b.c, c.c));
    CHECK(identical(a.b, c.b));
}

TEST_CASE("Goldstein Hamiltonian: the three printed coefficient triples") {
    auto h = goldstein_hamiltonian_form();
    Expr x = sym("x");
    struct Row {
        OrderingScheme scheme;
        double x2_coeff;
    };
    for (auto [scheme, coeff] : {Row{OrderingScheme::TwoTermSymmetric, -6.0},
                                 Row{OrderingScheme::Weyl, -3.0},
                                 Row{OrderingScheme::SplitSymmetric, -2.0}}) {
        auto op = quantize(h, scheme, kSpec);
        CAPTURE(scheme_name(scheme));
        CHECK(equiv(op.a, -pow(x, 4), kSpec));
        CHECK(equiv(op.b, -4.0 * pow(x, 3), kSpec));
        CHECK(equiv(op.c, pow(x, -2) + coeff * pow(x, 2), kSpec));
    }
}

TEST_CASE("ordering expansions agree with the grid oracle") {
    auto B = [](double y) { return y * y * y * y; };
    auto u = [](double y) { return std::exp(-(y - 0.9) * (y - 0.9)); };
    auto h = goldstein_hamiltonian_form();
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> xs(0.5, 1.6);
    for (auto scheme : {OrderingScheme::TwoTermSymmetric, OrderingScheme::Weyl,
                        OrderingScheme::SplitSymmetric}) {
        auto op = quantize(h, scheme, kSpec);
        // kinetic part of the operator: a u'' + b u' + (c - A) u
        Expr kin_c = op.c - pow(sym("x"), -2);
        for (int trial = 0; trial < 10; ++trial) {
            double x = xs(rng);
            double expect = ordering_oracle(scheme, B, u, x);
            double h1 = 1e-4;
            double up = (u(x + h1) - u(x - h1)) / (2 * h1);
            Bindings at{{"x", x}};
            double got = (evaluate(op.a, at) * d2_fd(u, x) + evaluate(op.b, at) * up +
                          evaluate(kin_c, at) * u(x))
                             .real();
            CAPTURE(scheme_name(scheme));
            CHECK(std::abs(got - expect) < 1e-5 * (1 + std::abs(expect)));
        }
    }
}

TEST_CASE("split-symmetric rejects sign-indefinite B") {
    ClassicalHamiltonianForm h{num(0), 1.0 - sym("x"), num(0), "indefinite"};
    CHECK_THROWS_AS(quantize(h, OrderingScheme::SplitSymmetric, kSpec), Error);
    // but the other orderings accept it
    CHECK_NOTHROW(quantize(h, OrderingScheme::Weyl, kSpec));
}

TEST_CASE("general gauge operator") {
    Expr x = sym("x"), t = sym("t"), k = sym("k"), i = imag_unit();
    auto spec = SampleSpec{}.with_pinned("k", 1.0).with_tol(1e-12);

    // f1 = 0, f2 = -k^2x^2/2: the standard oscillator, matching quantize()
    auto op = general_gauge_operator(num(0), -0.5 * k * k * pow(x, 2));
    CHECK(identical(op.a, num(-1)));
    CHECK(identical(op.b, num(0)));
    CHECK(equiv(op.c, k * k * pow(x, 2), spec));
    auto sho = quantize(sho_hamiltonian_form(), OrderingScheme::Weyl, kSpec);
    CHECK(equiv(op.c, sho.c, SampleSpec{}.with_pinned("k", 1.0)));

    // free particle
    auto free_op = general_gauge_operator(num(0), num(0));
    CHECK(identical(free_op.b, num(0)));
    CHECK(identical(free_op.c, num(0)));

    // gauge g = t x: f1 = x-derivative, f2 = t-derivative minus the potential
    Expr g = t * x;
    auto gauged = general_gauge_operator(differentiate(g, "x"),
                                         differentiate(g, "t") - 0.5 * k * k * pow(x, 2));
    CHECK(equiv(gauged.b, 2.0 * i * t, spec));
    CHECK(equiv(gauged.c, pow(t, 2) - 2.0 * x + k * k * pow(x, 2), spec));

    CHECK_THROWS_AS(general_gauge_operator(sym("u1"), num(0)), StructureError);
}

TEST_CASE("apply_operator residuals") {
    Expr x = sym("x"), t = sym("t"), i = imag_unit();
    auto sho = quantize(sho_hamiltonian_form(), OrderingScheme::Weyl, kSpec);

    Expr u0 = exp(-0.5 * i * t - 0.5 * pow(x, 2));
    CHECK(is_zero_sampled(apply_operator(sho, u0), SampleSpec{}.with_tol(1e-10)));

    // Eq. 2.6 ground state on x in [0.2, 5]
    auto split = quantize(goldstein_hamiltonian_form(), OrderingScheme::SplitSymmetric, kSpec);
    Expr g26 = pow(x, -1) * exp(-0.5 * i * t - 0.5 * pow(x, -2));
    CHECK(is_zero_sampled(apply_operator(split, g26),
                          SampleSpec{}.with_box("x", 0.2, 5.0).with_tol(1e-10)));

    // x is not a solution
    CHECK_FALSE(is_zero_sampled(apply_operator(sho, x), SampleSpec{}.with_tol(1e-6)));
}

TEST_CASE("apply_operator is linear") {
    Expr x = sym("x"), t = sym("t"), i = imag_unit();
    auto sho = quantize(sho_hamiltonian_form(), OrderingScheme::Weyl, kSpec);
    Expr u = exp(-0.5 * i * t - 0.5 * pow(x, 2));
    Expr v = x * exp(-1.5 * i * t - 0.5 * pow(x, 2));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> cs(-2.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        double alpha = cs(rng), beta = cs(rng);
        Expr lhs = apply_operator(sho, alpha * u + beta * v);
        Expr rhs = alpha * apply_operator(sho, u) + beta * apply_operator(sho, v);
        CHECK(equiv(lhs, rhs, SampleSpec{}.with_tol(1e-10)));
    }
}
