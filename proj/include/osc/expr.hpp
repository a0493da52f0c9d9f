#pragma once

// Minimal immutable symbolic expression kernel over the fixed basis
// {exp, sin, cos, tan, cot, sec, csc, log, arctan} with complex constants,
// integer/rational powers and canonicalizing constructors.

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace osc {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// errors

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};
struct PoleError : Error {
    explicit PoleError(const std::string& msg) : Error(msg) {}
};
struct UnboundSymbolError : Error {
    explicit UnboundSymbolError(const std::string& name)
        : Error("unbound symbol: " + name), symbol(name) {}
    std::string symbol;
};
struct InconclusiveError : Error {
    explicit InconclusiveError(const std::string& msg) : Error(msg) {}
};
struct StructureError : Error {
    explicit StructureError(const std::string& msg) : Error(msg) {}
};

// ---------------------------------------------------------------------------
// rational exponents (normalized, den > 0)

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d);

    bool is_integer() const { return den == 1; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    Rational operator+(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator-() const { return Rational(-num, den); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

// ---------------------------------------------------------------------------
// expression nodes

enum class NodeKind : std::uint8_t { Constant, Symbol, Apply, Power, Product, Sum };

enum class Builtin : std::uint8_t { Exp, Sin, Cos, Tan, Cot, Sec, Csc, Log, Arctan };

const char* builtin_name(Builtin f);

class Expr;
struct Node;
using NodePtr = std::shared_ptr<const Node>;

class Expr {
  public:
    Expr();  // the constant 0

    NodeKind kind() const;
    // Constant
    Complex constant_value() const;
    // Symbol
    const std::string& symbol_name() const;
    // Apply
    Builtin builtin() const;
    const Expr& argument() const;
    // Power
    const Expr& base() const;
    const Rational& exponent() const;
    // Sum / Product
    const std::vector<Expr>& children() const;

    bool is_constant(Complex v) const;
    bool is_zero_constant() const { return is_constant(Complex(0, 0)); }

    friend int compare(const Expr& a, const Expr& b);
    friend bool identical(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

    // internal
    explicit Expr(NodePtr n) : node_(std::move(n)) {}
    const Node& node() const { return *node_; }

  private:
    NodePtr node_;
};

// ---------------------------------------------------------------------------
// canonicalizing constructors

Expr num(double re, double im = 0.0);
Expr num(Complex v);
Expr imag_unit();
Expr sym(const std::string& name);
Expr sum(std::vector<Expr> terms);
Expr prod(std::vector<Expr> factors);
Expr pow(Expr base, Rational exponent);
Expr pow(Expr base, long long exponent);
Expr apply(Builtin f, Expr arg);

Expr exp(Expr a);
Expr sin(Expr a);
Expr cos(Expr a);
Expr tan(Expr a);
Expr cot(Expr a);
Expr sec(Expr a);
Expr csc(Expr a);
Expr log(Expr a);
Expr arctan(Expr a);
Expr sqrt(Expr a);

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);
Expr operator+(double a, Expr b);
Expr operator+(Expr a, double b);
Expr operator-(double a, Expr b);
Expr operator-(Expr a, double b);
Expr operator*(double a, Expr b);
Expr operator*(Expr a, double b);
Expr operator/(double a, Expr b);
Expr operator/(Expr a, double b);

// ---------------------------------------------------------------------------
// core operations

using Bindings = std::map<std::string, Complex>;

Expr differentiate(const Expr& e, const std::string& var);
Complex evaluate(const Expr& e, const Bindings& b);
Expr substitute(const Expr& e, const std::string& var, const Expr& replacement);
std::set<std::string> free_symbols(const Expr& e);

// re-canonicalize bottom-up (identity on canonical trees; used by tests)
Expr canon(const Expr& e);

// Closed-form antiderivative in `var` for sums of monomials c * var^r
// (power rule; r == -1 gives log).  Empty when a term is outside the table.
std::optional<Expr> antiderivative(const Expr& e, const std::string& var);

// ---------------------------------------------------------------------------
// plain-text serialization (fully parenthesized prefix form; see README)

std::string to_text(const Expr& e);
Expr parse_expr(const std::string& text);

}  // namespace osc
