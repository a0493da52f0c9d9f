#pragma once

// Randomized-numeric expression equivalence over declared sampling boxes.
// Equality of symbolic results is decided by seeded sampling, not by a
// complete normal form; singular sets are avoided by the caller's boxes
// and by skipping pole-hitting samples.

#include <optional>
#include <utility>

#include "osc/expr.hpp"

namespace osc {

struct SampleBox {
    double lo = 0.3;
    double hi = 2.0;
};

struct SampleSpec {
    int samples = 32;
    double tol = 1e-9;
    std::uint64_t seed = 0x5eed0501u;
    SampleBox default_box{};
    std::map<std::string, SampleBox> boxes;   // per-symbol overrides
    Bindings pinned;                          // symbols held at fixed values (e.g. k)

    SampleSpec with_tol(double t) const {
        SampleSpec s = *this;
        s.tol = t;
        return s;
    }
    SampleSpec with_box(const std::string& name, double lo, double hi) const {
        SampleSpec s = *this;
        s.boxes[name] = {lo, hi};
        return s;
    }
    SampleSpec with_pinned(const std::string& name, Complex v) const {
        SampleSpec s = *this;
        s.pinned[name] = v;
        return s;
    }
    SampleSpec with_samples(int n) const {
        SampleSpec s = *this;
        s.samples = n;
        return s;
    }
    SampleSpec with_seed(std::uint64_t sd) const {
        SampleSpec s = *this;
        s.seed = sd;
        return s;
    }
};

// a == b at all sampled points: |a-b| <= tol*(1+|a|)
bool equiv(const Expr& a, const Expr& b, const SampleSpec& spec = {});

// constant c with a = c*b across samples, or empty
std::optional<Complex> equiv_up_to_constant(const Expr& a, const Expr& b,
                                            const SampleSpec& spec = {});

// |a| <= tol at all sampled points
bool is_zero_sampled(const Expr& a, const SampleSpec& spec = {});

// max |a| over samples (poles skipped; inconclusive if all poles)
double max_abs_sampled(const Expr& a, const SampleSpec& spec = {});

}  // namespace osc
