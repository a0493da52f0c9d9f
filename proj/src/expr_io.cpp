#include "osc/expr.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

namespace osc {

// Prefix serialization, grammar (see README):
//   expr   := number | "(c" number number ")" | symbol
//           | "(+" expr expr+ ")" | "(*" expr expr+ ")"
//           | "(^" expr rat ")" | "(" fname expr ")"
//   rat    := int | int "/" int
//   fname  := exp|sin|cos|tan|cot|sec|csc|log|arctan

namespace {

std::string fmt_double(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write(const Expr& e, std::string& out) {
    switch (e.kind()) {
        case NodeKind::Constant: {
            Complex v = e.constant_value();
            if (v.imag() == 0.0) {
                out += fmt_double(v.real());
            } else {
                out += "(c ";
                out += fmt_double(v.real());
                out += ' ';
                out += fmt_double(v.imag());
                out += ')';
            }
            return;
        }
        case NodeKind::Symbol:
            out += e.symbol_name();
            return;
        case NodeKind::Apply:
            out += '(';
            out += builtin_name(e.builtin());
            out += ' ';
            write(e.argument(), out);
            out += ')';
            return;
        case NodeKind::Power: {
            out += "(^ ";
            write(e.base(), out);
            out += ' ';
            out += std::to_string(e.exponent().num);
            if (!e.exponent().is_integer()) {
                out += '/';
                out += std::to_string(e.exponent().den);
            }
            out += ')';
            return;
        }
        case NodeKind::Sum:
        case NodeKind::Product: {
            out += e.kind() == NodeKind::Sum ? "(+" : "(*";
            for (const auto& k : e.children()) {
                out += ' ';
                write(k, out);
            }
            out += ')';
            return;
        }
    }
}

struct Lexer {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\n' || s[pos] == '\t')) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return s[pos];
    }
    std::string next_token() {
        skip_ws();
        if (pos >= s.size()) throw StructureError("parse: unexpected end of input");
        char c = s[pos];
        if (c == '(' || c == ')') {
            ++pos;
            return std::string(1, c);
        }
        std::size_t start = pos;
        while (pos < s.size() && s[pos] != ' ' && s[pos] != '(' && s[pos] != ')' &&
               s[pos] != '\n' && s[pos] != '\t')
            ++pos;
        return std::string(s.substr(start, pos - start));
    }
};

bool looks_numeric(const std::string& t) {
    char c = t[0];
    return (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '+';
}

double parse_double(const std::string& t) {
    double v = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw StructureError("parse: bad number '" + t + "'");
    return v;
}

Rational parse_rational(const std::string& t) {
    auto slash = t.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(t));
    return Rational(std::stoll(t.substr(0, slash)), std::stoll(t.substr(slash + 1)));
}

std::optional<Builtin> builtin_from_name(const std::string& n) {
    for (Builtin f : {Builtin::Exp, Builtin::Sin, Builtin::Cos, Builtin::Tan, Builtin::Cot,
                      Builtin::Sec, Builtin::Csc, Builtin::Log, Builtin::Arctan})
        if (n == builtin_name(f)) return f;
    return std::nullopt;
}

Expr parse_one(Lexer& lx) {
    std::string t = lx.next_token();
    if (t == ")") throw StructureError("parse: unexpected ')'");
    if (t != "(") {
        if (looks_numeric(t)) return num(parse_double(t));
        return sym(t);
    }
    std::string head = lx.next_token();
    if (head == "c") {
        double re = parse_double(lx.next_token());
        double im = parse_double(lx.next_token());
        if (lx.next_token() != ")") throw StructureError("parse: expected ')' after constant");
        return num(re, im);
    }
    if (head == "^") {
        Expr base = parse_one(lx);
        Rational r = parse_rational(lx.next_token());
        if (lx.next_token() != ")") throw StructureError("parse: expected ')' after power");
        return pow(std::move(base), r);
    }
    if (head == "+" || head == "*") {
        std::vector<Expr> kids;
        while (lx.peek() != ')') kids.push_back(parse_one(lx));
        lx.next_token();  // ')'
        if (kids.empty()) throw StructureError("parse: empty n-ary node");
        return head == "+" ? sum(std::move(kids)) : prod(std::move(kids));
    }
    if (auto f = builtin_from_name(head)) {
        Expr arg = parse_one(lx);
        if (lx.next_token() != ")") throw StructureError("parse: expected ')' after " + head);
        return apply(*f, std::move(arg));
    }
    throw StructureError("parse: unknown head '" + head + "'");
}

}  // namespace

std::string to_text(const Expr& e) {
    std::string out;
    write(e, out);
    return out;
}

Expr parse_expr(const std::string& text) {
    Lexer lx{text};
    Expr e = parse_one(lx);
    if (!lx.eof()) throw StructureError("parse: trailing input");
    return e;
}

}  // namespace osc
