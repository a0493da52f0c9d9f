#include "osc/expr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace osc {

namespace {
constexpr double kPoleAbs = 1e-280;    // |z| below this counts as a zero denominator
constexpr double kTrigPole = 1e-12;    // |cos z| (etc.) below this counts as a pole
constexpr std::size_t kExpandCap = 4096;
}  // namespace

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(long long n, long long d) {
    if (d == 0) throw Error("rational exponent with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const {
    return Rational(num * o.num, den * o.den);
}

// ---------------------------------------------------------------------------
// nodes

struct Node {
    NodeKind kind;
    Complex value{};
    std::string name;
    Builtin fn{Builtin::Exp};
    Rational exponent{};
    std::vector<Expr> kids;
};

const char* builtin_name(Builtin f) {
    switch (f) {
        case Builtin::Exp: return "exp";
        case Builtin::Sin: return "sin";
        case Builtin::Cos: return "cos";
        case Builtin::Tan: return "tan";
        case Builtin::Cot: return "cot";
        case Builtin::Sec: return "sec";
        case Builtin::Csc: return "csc";
        case Builtin::Log: return "log";
        case Builtin::Arctan: return "arctan";
    }
    return "?";
}

namespace {

Complex clean(Complex v) {
    return Complex(v.real() + 0.0, v.imag() + 0.0);  // flush -0
}

NodePtr make_constant(Complex v) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw PoleError("non-finite constant");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Constant;
    n->value = clean(v);
    return n;
}

const Expr& zero_expr() {
    static const Expr z{make_constant(Complex(0, 0))};
    return z;
}
const Expr& one_expr() {
    static const Expr o{make_constant(Complex(1, 0))};
    return o;
}

Expr raw_symbol(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Symbol;
    n->name = std::move(name);
    return Expr(n);
}
Expr raw_apply(Builtin f, Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Apply;
    n->fn = f;
    n->kids.push_back(std::move(arg));
    return Expr(n);
}
Expr raw_power(Expr base, Rational r) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Power;
    n->exponent = r;
    n->kids.push_back(std::move(base));
    return Expr(n);
}
Expr raw_nary(NodeKind k, std::vector<Expr> kids) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->kids = std::move(kids);
    return Expr(n);
}

int cmp_complex(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real() ? -1 : 1;
    if (a.imag() != b.imag()) return a.imag() < b.imag() ? -1 : 1;
    return 0;
}

int kind_rank(NodeKind k) {
    switch (k) {
        case NodeKind::Constant: return 0;
        case NodeKind::Symbol: return 1;
        case NodeKind::Apply: return 2;
        case NodeKind::Power: return 3;
        case NodeKind::Product: return 4;
        case NodeKind::Sum: return 5;
    }
    return 6;
}

}  // namespace

Expr::Expr() : node_(zero_expr().node_) {}

NodeKind Expr::kind() const { return node_->kind; }
Complex Expr::constant_value() const { return node_->value; }
const std::string& Expr::symbol_name() const { return node_->name; }
Builtin Expr::builtin() const { return node_->fn; }
const Expr& Expr::argument() const { return node_->kids[0]; }
const Expr& Expr::base() const { return node_->kids[0]; }
const Rational& Expr::exponent() const { return node_->exponent; }
const std::vector<Expr>& Expr::children() const { return node_->kids; }

bool Expr::is_constant(Complex v) const {
    return node_->kind == NodeKind::Constant && node_->value == v;
}

int compare(const Expr& a, const Expr& b) {
    if (a.node_.get() == b.node_.get()) return 0;
    int ra = kind_rank(a.kind()), rb = kind_rank(b.kind());
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (a.kind()) {
        case NodeKind::Constant:
            return cmp_complex(a.constant_value(), b.constant_value());
        case NodeKind::Symbol:
            return a.symbol_name().compare(b.symbol_name()) < 0   ? -1
                   : a.symbol_name().compare(b.symbol_name()) > 0 ? 1
                                                                  : 0;
        case NodeKind::Apply: {
            if (a.builtin() != b.builtin())
                return static_cast<int>(a.builtin()) < static_cast<int>(b.builtin()) ? -1 : 1;
            return compare(a.argument(), b.argument());
        }
        case NodeKind::Power: {
            int c = compare(a.base(), b.base());
            if (c != 0) return c;
            double ea = a.exponent().value(), eb = b.exponent().value();
            if (ea != eb) return ea < eb ? -1 : 1;
            return 0;
        }
        case NodeKind::Product:
        case NodeKind::Sum: {
            const auto& ka = a.children();
            const auto& kb = b.children();
            std::size_t n = std::min(ka.size(), kb.size());
            for (std::size_t i = 0; i < n; ++i) {
                int c = compare(ka[i], kb[i]);
                if (c != 0) return c;
            }
            if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
            return 0;
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// numeric primitives

namespace {

Complex ipow(Complex base, long long n) {
    if (n < 0) {
        if (std::abs(base) < kPoleAbs) throw PoleError("zero base with negative exponent");
        return Complex(1, 0) / ipow(base, -n);
    }
    Complex acc(1, 0), b = base;
    while (n > 0) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

Complex pow_num(Complex base, const Rational& r) {
    if (r.is_integer()) return ipow(base, r.num);
    if (std::abs(base) < kPoleAbs) {
        if (r.value() < 0) throw PoleError("zero base with negative exponent");
        return Complex(0, 0);
    }
    return std::exp(Complex(r.value(), 0) * std::log(base));
}

Complex apply_builtin(Builtin f, Complex z) {
    switch (f) {
        case Builtin::Exp: return std::exp(z);
        case Builtin::Sin: return std::sin(z);
        case Builtin::Cos: return std::cos(z);
        case Builtin::Tan: {
            Complex c = std::cos(z);
            if (std::abs(c) < kTrigPole) throw PoleError("tan pole");
            return std::sin(z) / c;
        }
        case Builtin::Cot: {
            Complex s = std::sin(z);
            if (std::abs(s) < kTrigPole) throw PoleError("cot pole");
            return std::cos(z) / s;
        }
        case Builtin::Sec: {
            Complex c = std::cos(z);
            if (std::abs(c) < kTrigPole) throw PoleError("sec pole");
            return Complex(1, 0) / c;
        }
        case Builtin::Csc: {
            Complex s = std::sin(z);
            if (std::abs(s) < kTrigPole) throw PoleError("csc pole");
            return Complex(1, 0) / s;
        }
        case Builtin::Log:
            if (std::abs(z) < kPoleAbs) throw PoleError("log of zero");
            return std::log(z);
        case Builtin::Arctan:
            if (std::abs(z - Complex(0, 1)) < kTrigPole || std::abs(z + Complex(0, 1)) < kTrigPole)
                throw PoleError("arctan pole at +-i");
            return std::atan(z);
    }
    throw Error("unknown builtin");
}

}  // namespace

// ---------------------------------------------------------------------------
// canonicalizing constructors

Expr num(double re, double im) { return Expr(make_constant(Complex(re, im))); }
Expr num(Complex v) { return Expr(make_constant(v)); }
Expr imag_unit() { return num(0.0, 1.0); }
Expr sym(const std::string& name) {
    if (name.empty()) throw StructureError("empty symbol name");
    return raw_symbol(name);
}

namespace {

struct ExprLess {
    bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

// split canonical non-constant term into (coefficient, core)
std::pair<Complex, Expr> split_coeff(const Expr& t) {
    if (t.kind() == NodeKind::Product && t.children().front().kind() == NodeKind::Constant) {
        const auto& kids = t.children();
        Complex c = kids.front().constant_value();
        if (kids.size() == 2) return {c, kids[1]};
        std::vector<Expr> rest(kids.begin() + 1, kids.end());
        return {c, raw_nary(NodeKind::Product, std::move(rest))};
    }
    return {Complex(1, 0), t};
}

Expr rebuild_term(Complex coeff, const Expr& core) {
    if (coeff == Complex(1, 0)) return core;
    std::vector<Expr> kids;
    kids.push_back(Expr(make_constant(coeff)));
    if (core.kind() == NodeKind::Product)
        for (const auto& kk : core.children()) kids.push_back(kk);
    else
        kids.push_back(core);
    return raw_nary(NodeKind::Product, std::move(kids));
}

}  // namespace

Expr sum(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    flat.reserve(terms.size());
    for (auto& t : terms) {
        if (t.kind() == NodeKind::Sum)
            for (const auto& k : t.children()) flat.push_back(k);
        else
            flat.push_back(std::move(t));
    }
    Complex const_acc(0, 0);
    std::map<Expr, Complex, ExprLess> collected;
    for (const auto& t : flat) {
        if (t.kind() == NodeKind::Constant) {
            const_acc += t.constant_value();
            continue;
        }
        auto [c, core] = split_coeff(t);
        collected[core] += c;
    }
    std::vector<Expr> out;
    for (const auto& [core, c] : collected) {
        if (c == Complex(0, 0)) continue;
        out.push_back(rebuild_term(c, core));
    }
    if (const_acc != Complex(0, 0)) out.insert(out.begin(), Expr(make_constant(const_acc)));
    if (out.empty()) return zero_expr();
    if (out.size() == 1) return out.front();
    // constant (if any) is already first; keep remaining sorted by compare
    std::sort(out.begin() + (out.front().kind() == NodeKind::Constant ? 1 : 0), out.end(),
              ExprLess{});
    return raw_nary(NodeKind::Sum, std::move(out));
}

Expr prod(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    flat.reserve(factors.size());
    for (auto& f : factors) {
        if (f.kind() == NodeKind::Product)
            for (const auto& k : f.children()) flat.push_back(k);
        else
            flat.push_back(std::move(f));
    }
    Complex coeff(1, 0);
    std::vector<Expr> rest;
    bool has_sum = false;
    for (const auto& f : flat) {
        if (f.kind() == NodeKind::Constant) {
            coeff *= f.constant_value();
            continue;
        }
        if (f.kind() == NodeKind::Sum) has_sum = true;
        rest.push_back(f);
    }
    if (coeff == Complex(0, 0)) return zero_expr();

    if (has_sum) {
        // distribute products over sums
        std::vector<std::vector<Expr>> lists{{Expr(make_constant(coeff))}};
        for (const auto& f : rest) {
            if (f.kind() == NodeKind::Sum) {
                std::vector<std::vector<Expr>> next;
                next.reserve(lists.size() * f.children().size());
                for (const auto& l : lists)
                    for (const auto& term : f.children()) {
                        if (next.size() >= kExpandCap) throw Error("product expansion too large");
                        auto copy = l;
                        copy.push_back(term);
                        next.push_back(std::move(copy));
                    }
                lists = std::move(next);
            } else {
                for (auto& l : lists) l.push_back(f);
            }
        }
        std::vector<Expr> expanded;
        expanded.reserve(lists.size());
        for (auto& l : lists) expanded.push_back(prod(std::move(l)));
        return sum(std::move(expanded));
    }

    // merge exp factors: exp(a)*exp(b) -> exp(a+b)
    std::vector<Expr> exp_args;
    std::vector<Expr> others;
    for (const auto& f : rest) {
        if (f.kind() == NodeKind::Apply && f.builtin() == Builtin::Exp)
            exp_args.push_back(f.argument());
        else
            others.push_back(f);
    }
    if (exp_args.size() > 1) {
        Expr merged = apply(Builtin::Exp, sum(std::move(exp_args)));
        if (merged.kind() == NodeKind::Constant)
            coeff *= merged.constant_value();
        else
            others.push_back(merged);
    } else if (exp_args.size() == 1) {
        others.push_back(raw_apply(Builtin::Exp, exp_args.front()));
    }

    // collect base -> exponent
    std::map<Expr, Rational, ExprLess> bases;
    for (const auto& f : others) {
        if (f.kind() == NodeKind::Power) {
            auto it = bases.find(f.base());
            if (it == bases.end())
                bases.emplace(f.base(), f.exponent());
            else
                it->second = it->second + f.exponent();
        } else {
            auto it = bases.find(f);
            if (it == bases.end())
                bases.emplace(f, Rational(1));
            else
                it->second = it->second + Rational(1);
        }
    }
    std::vector<Expr> out;
    for (const auto& [b, r] : bases) {
        if (r == Rational(0)) continue;
        if (r == Rational(1)) {
            out.push_back(b);
            continue;
        }
        Expr p = pow(b, r);
        if (p.kind() == NodeKind::Constant)
            coeff *= p.constant_value();
        else
            out.push_back(p);
    }
    if (out.empty()) return Expr(make_constant(coeff));
    std::sort(out.begin(), out.end(), ExprLess{});
    if (coeff == Complex(1, 0)) {
        if (out.size() == 1) return out.front();
        return raw_nary(NodeKind::Product, std::move(out));
    }
    out.insert(out.begin(), Expr(make_constant(coeff)));
    return raw_nary(NodeKind::Product, std::move(out));
}

Expr pow(Expr base, Rational r) {
    if (r == Rational(0)) return one_expr();
    if (r == Rational(1)) return base;
    switch (base.kind()) {
        case NodeKind::Constant:
            return Expr(make_constant(pow_num(base.constant_value(), r)));
        case NodeKind::Power:
            if (r.is_integer()) return pow(base.base(), base.exponent() * r);
            break;
        case NodeKind::Apply:
            if (base.builtin() == Builtin::Exp && r.is_integer())
                return apply(Builtin::Exp, prod({num(static_cast<double>(r.num)), base.argument()}));
            break;
        case NodeKind::Product:
            if (r.is_integer()) {
                std::vector<Expr> kids;
                for (const auto& f : base.children()) kids.push_back(pow(f, r));
                return prod(std::move(kids));
            }
            break;
        case NodeKind::Sum:
            if (r.is_integer() && r.num >= 2 && r.num <= 8) {
                Expr acc = base;
                for (long long i = 1; i < r.num; ++i) acc = prod({acc, base});
                return acc;
            }
            break;
        default:
            break;
    }
    return raw_power(std::move(base), r);
}

Expr pow(Expr base, long long n) { return pow(std::move(base), Rational(n)); }

Expr apply(Builtin f, Expr arg) {
    if (arg.kind() == NodeKind::Constant)
        return Expr(make_constant(apply_builtin(f, arg.constant_value())));
    return raw_apply(f, std::move(arg));
}

Expr exp(Expr a) { return apply(Builtin::Exp, std::move(a)); }
Expr sin(Expr a) { return apply(Builtin::Sin, std::move(a)); }
Expr cos(Expr a) { return apply(Builtin::Cos, std::move(a)); }
Expr tan(Expr a) { return apply(Builtin::Tan, std::move(a)); }
Expr cot(Expr a) { return apply(Builtin::Cot, std::move(a)); }
Expr sec(Expr a) { return apply(Builtin::Sec, std::move(a)); }
Expr csc(Expr a) { return apply(Builtin::Csc, std::move(a)); }
Expr log(Expr a) { return apply(Builtin::Log, std::move(a)); }
Expr arctan(Expr a) { return apply(Builtin::Arctan, std::move(a)); }
Expr sqrt(Expr a) { return pow(std::move(a), Rational(1, 2)); }

Expr operator+(Expr a, Expr b) { return sum({std::move(a), std::move(b)}); }
Expr operator-(Expr a, Expr b) { return sum({std::move(a), prod({num(-1), std::move(b)})}); }
Expr operator*(Expr a, Expr b) { return prod({std::move(a), std::move(b)}); }
Expr operator/(Expr a, Expr b) { return prod({std::move(a), pow(std::move(b), Rational(-1))}); }
Expr operator-(Expr a) { return prod({num(-1), std::move(a)}); }
Expr operator+(double a, Expr b) { return num(a) + std::move(b); }
Expr operator+(Expr a, double b) { return std::move(a) + num(b); }
Expr operator-(double a, Expr b) { return num(a) - std::move(b); }
Expr operator-(Expr a, double b) { return std::move(a) - num(b); }
Expr operator*(double a, Expr b) { return num(a) * std::move(b); }
Expr operator*(Expr a, double b) { return std::move(a) * num(b); }
Expr operator/(double a, Expr b) { return num(a) / std::move(b); }
Expr operator/(Expr a, double b) { return std::move(a) / num(b); }

// ---------------------------------------------------------------------------
// differentiation

Expr differentiate(const Expr& e, const std::string& var) {
    switch (e.kind()) {
        case NodeKind::Constant:
            return Expr();
        case NodeKind::Symbol:
            return e.symbol_name() == var ? num(1) : Expr();
        case NodeKind::Sum: {
            std::vector<Expr> kids;
            for (const auto& k : e.children()) kids.push_back(differentiate(k, var));
            return sum(std::move(kids));
        }
        case NodeKind::Product: {
            std::vector<Expr> terms;
            const auto& kids = e.children();
            for (std::size_t i = 0; i < kids.size(); ++i) {
                std::vector<Expr> f;
                for (std::size_t j = 0; j < kids.size(); ++j)
                    f.push_back(i == j ? differentiate(kids[j], var) : kids[j]);
                terms.push_back(prod(std::move(f)));
            }
            return sum(std::move(terms));
        }
        case NodeKind::Power: {
            const Rational& r = e.exponent();
            Expr db = differentiate(e.base(), var);
            Expr coeff = num(r.value());
            return prod({std::move(coeff), pow(e.base(), r + Rational(-1)), std::move(db)});
        }
        case NodeKind::Apply: {
            const Expr& a = e.argument();
            Expr da = differentiate(a, var);
            Expr outer;
            switch (e.builtin()) {
                case Builtin::Exp: outer = e; break;
                case Builtin::Sin: outer = cos(a); break;
                case Builtin::Cos: outer = -sin(a); break;
                case Builtin::Tan: outer = pow(sec(a), 2); break;
                case Builtin::Cot: outer = -pow(csc(a), 2); break;
                case Builtin::Sec: outer = sec(a) * tan(a); break;
                case Builtin::Csc: outer = -(csc(a) * cot(a)); break;
                case Builtin::Log: outer = pow(a, -1); break;
                case Builtin::Arctan: outer = pow(num(1) + pow(a, 2), -1); break;
            }
            return prod({std::move(outer), std::move(da)});
        }
    }
    throw StructureError("differentiate: unsupported node kind");
}

// ---------------------------------------------------------------------------
// evaluation

Complex evaluate(const Expr& e, const Bindings& b) {
    switch (e.kind()) {
        case NodeKind::Constant:
            return e.constant_value();
        case NodeKind::Symbol: {
            auto it = b.find(e.symbol_name());
            if (it == b.end()) throw UnboundSymbolError(e.symbol_name());
            return it->second;
        }
        case NodeKind::Sum: {
            Complex acc(0, 0);
            for (const auto& k : e.children()) acc += evaluate(k, b);
            return acc;
        }
        case NodeKind::Product: {
            Complex acc(1, 0);
            for (const auto& k : e.children()) acc *= evaluate(k, b);
            return acc;
        }
        case NodeKind::Power:
            return pow_num(evaluate(e.base(), b), e.exponent());
        case NodeKind::Apply:
            return apply_builtin(e.builtin(), evaluate(e.argument(), b));
    }
    throw StructureError("evaluate: unsupported node kind");
}

// ---------------------------------------------------------------------------
// substitution and friends

Expr substitute(const Expr& e, const std::string& var, const Expr& replacement) {
    switch (e.kind()) {
        case NodeKind::Constant:
            return e;
        case NodeKind::Symbol:
            return e.symbol_name() == var ? replacement : e;
        case NodeKind::Apply:
            return apply(e.builtin(), substitute(e.argument(), var, replacement));
        case NodeKind::Power:
            return pow(substitute(e.base(), var, replacement), e.exponent());
        case NodeKind::Sum: {
            std::vector<Expr> kids;
            for (const auto& k : e.children()) kids.push_back(substitute(k, var, replacement));
            return sum(std::move(kids));
        }
        case NodeKind::Product: {
            std::vector<Expr> kids;
            for (const auto& k : e.children()) kids.push_back(substitute(k, var, replacement));
            return prod(std::move(kids));
        }
    }
    throw StructureError("substitute: unsupported node kind");
}

namespace {
void collect_symbols(const Expr& e, std::set<std::string>& out) {
    switch (e.kind()) {
        case NodeKind::Constant: return;
        case NodeKind::Symbol: out.insert(e.symbol_name()); return;
        default:
            for (const auto& k : e.children()) collect_symbols(k, out);
    }
}
}  // namespace

std::set<std::string> free_symbols(const Expr& e) {
    std::set<std::string> out;
    collect_symbols(e, out);
    return out;
}

Expr canon(const Expr& e) {
    switch (e.kind()) {
        case NodeKind::Constant:
        case NodeKind::Symbol:
            return e;
        case NodeKind::Apply:
            return apply(e.builtin(), canon(e.argument()));
        case NodeKind::Power:
            return pow(canon(e.base()), e.exponent());
        case NodeKind::Sum: {
            std::vector<Expr> kids;
            for (const auto& k : e.children()) kids.push_back(canon(k));
            return sum(std::move(kids));
        }
        case NodeKind::Product: {
            std::vector<Expr> kids;
            for (const auto& k : e.children()) kids.push_back(canon(k));
            return prod(std::move(kids));
        }
    }
    throw StructureError("canon: unsupported node kind");
}

// ---------------------------------------------------------------------------
// monomial antiderivative table

namespace {

// term = c * var^r with c free of var; returns (c, r) or nullopt
std::optional<std::pair<Expr, Rational>> as_monomial(const Expr& term, const std::string& var) {
    std::vector<Expr> factors;
    if (term.kind() == NodeKind::Product)
        factors = term.children();
    else
        factors.push_back(term);
    std::vector<Expr> coeff;
    std::optional<Rational> r;
    for (const auto& f : factors) {
        bool depends = free_symbols(f).count(var) > 0;
        if (!depends) {
            coeff.push_back(f);
            continue;
        }
        if (f.kind() == NodeKind::Symbol) {
            if (r) return std::nullopt;
            r = Rational(1);
        } else if (f.kind() == NodeKind::Power && f.base().kind() == NodeKind::Symbol &&
                   f.base().symbol_name() == var) {
            if (r) return std::nullopt;
            r = f.exponent();
        } else {
            return std::nullopt;
        }
    }
    return std::make_pair(coeff.empty() ? num(1) : prod(std::move(coeff)),
                          r.value_or(Rational(0)));
}

}  // namespace

std::optional<Expr> antiderivative(const Expr& e, const std::string& var) {
    std::vector<Expr> terms;
    if (e.kind() == NodeKind::Sum)
        terms = e.children();
    else
        terms.push_back(e);
    std::vector<Expr> out;
    for (const auto& t : terms) {
        auto m = as_monomial(t, var);
        if (!m) return std::nullopt;
        auto [c, r] = *m;
        if (r == Rational(-1)) {
            out.push_back(c * log(sym(var)));
        } else {
            Rational r1 = r + Rational(1);
            out.push_back(prod({num(1.0 / r1.value()), c, pow(sym(var), r1)}));
        }
    }
    return sum(std::move(out));
}

}  // namespace osc
