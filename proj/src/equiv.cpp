#include "osc/equiv.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace osc {

namespace {

std::vector<std::string> sampled_symbols(const Expr& a, const Expr& b, const SampleSpec& spec) {
    std::set<std::string> syms = free_symbols(a);
    for (const auto& s : free_symbols(b)) syms.insert(s);
    std::vector<std::string> out;
    for (const auto& s : syms)
        if (!spec.pinned.count(s)) out.push_back(s);
    return out;  // std::set is sorted: deterministic draw order
}

Bindings draw(const std::vector<std::string>& syms, const SampleSpec& spec, std::mt19937_64& rng) {
    Bindings b = spec.pinned;
    for (const auto& s : syms) {
        SampleBox box = spec.default_box;
        auto it = spec.boxes.find(s);
        if (it != spec.boxes.end()) box = it->second;
        std::uniform_real_distribution<double> dist(box.lo, box.hi);
        b[s] = Complex(dist(rng), 0.0);
    }
    return b;
}

void check_spec(const SampleSpec& spec) {
    if (spec.samples < 8) throw Error("SampleSpec: samples must be >= 8");
    if (spec.tol <= 0) throw Error("SampleSpec: tol must be positive");
}

}  // namespace

bool equiv(const Expr& a, const Expr& b, const SampleSpec& spec) {
    check_spec(spec);
    auto syms = sampled_symbols(a, b, spec);
    std::mt19937_64 rng(spec.seed);
    int valid = 0;
    for (int i = 0; i < spec.samples; ++i) {
        Bindings bnd = draw(syms, spec, rng);
        Complex va, vb;
        try {
            va = evaluate(a, bnd);
            vb = evaluate(b, bnd);
        } catch (const PoleError&) {
            continue;
        }
        ++valid;
        if (std::abs(va - vb) > spec.tol * (1.0 + std::abs(va))) return false;
    }
    if (valid == 0) throw InconclusiveError("equiv: all sample points hit poles");
    return true;
}

std::optional<Complex> equiv_up_to_constant(const Expr& a, const Expr& b, const SampleSpec& spec) {
    check_spec(spec);
    auto syms = sampled_symbols(a, b, spec);
    std::mt19937_64 rng(spec.seed);
    int valid = 0;
    bool have_c0 = false;
    Complex c0(0, 0), acc(0, 0);
    for (int i = 0; i < spec.samples; ++i) {
        Bindings bnd = draw(syms, spec, rng);
        Complex va, vb;
        try {
            va = evaluate(a, bnd);
            vb = evaluate(b, bnd);
        } catch (const PoleError&) {
            continue;
        }
        if (std::abs(vb) < 1e-200) continue;  // b must be nonzero at sampled points
        ++valid;
        Complex r = va / vb;
        if (!have_c0) {
            c0 = r;
            have_c0 = true;
        } else if (std::abs(r - c0) > spec.tol * (1.0 + std::abs(c0))) {
            return std::nullopt;
        }
        acc += r;
    }
    if (valid == 0) throw InconclusiveError("equiv_up_to_constant: no valid sample points");
    return acc / static_cast<double>(valid);
}

bool is_zero_sampled(const Expr& a, const SampleSpec& spec) {
    check_spec(spec);
    auto syms = sampled_symbols(a, a, spec);
    std::mt19937_64 rng(spec.seed);
    int valid = 0;
    for (int i = 0; i < spec.samples; ++i) {
        Bindings bnd = draw(syms, spec, rng);
        Complex v;
        try {
            v = evaluate(a, bnd);
        } catch (const PoleError&) {
            continue;
        }
        ++valid;
        if (std::abs(v) > spec.tol) return false;
    }
    if (valid == 0) throw InconclusiveError("is_zero_sampled: all sample points hit poles");
    return true;
}

double max_abs_sampled(const Expr& a, const SampleSpec& spec) {
    check_spec(spec);
    auto syms = sampled_symbols(a, a, spec);
    std::mt19937_64 rng(spec.seed);
    int valid = 0;
    double mx = 0;
    for (int i = 0; i < spec.samples; ++i) {
        Bindings bnd = draw(syms, spec, rng);
        try {
            mx = std::max(mx, std::abs(evaluate(a, bnd)));
        } catch (const PoleError&) {
            continue;
        }
        ++valid;
    }
    if (valid == 0) throw InconclusiveError("max_abs_sampled: all sample points hit poles");
    return mx;
}

}  // namespace osc
