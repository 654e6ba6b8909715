#include "fermat/parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

namespace fermat {

namespace {

// ---- expression lexer/parser -----------------------------------------------

struct Token {
    enum Kind { Number, Ident, Symbol, End } kind = End;
    double number = 0.0;
    std::string ident;
    char symbol = 0;
    std::size_t column = 0;
};

class Lexer {
public:
    Lexer(std::string_view text, std::size_t line) : text_(text), line_(line) { advance(); }

    const Token& peek() const { return current_; }

    Token next() {
        Token t = current_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& message, std::size_t column) const {
        throw ParseError(message, line_, column);
    }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
    Token current_;

    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        current_ = Token{};
        current_.column = pos_ + 1;
        if (pos_ >= text_.size()) {
            current_.kind = Token::End;
            return;
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            const char* begin = text_.data() + pos_;
            char* end = nullptr;
            current_.kind = Token::Number;
            current_.number = std::strtod(begin, &end);
            pos_ += static_cast<std::size_t>(end - begin);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            current_.kind = Token::Ident;
            current_.ident = std::string(text_.substr(start, pos_ - start));
            return;
        }
        if (std::string_view("+-*/^(),").find(c) != std::string_view::npos) {
            current_.kind = Token::Symbol;
            current_.symbol = c;
            ++pos_;
            return;
        }
        fail(std::string("unexpected character '") + c + "'", pos_ + 1);
    }
};

class ExprParser {
public:
    ExprParser(std::string_view text, std::size_t dim, std::size_t line)
        : lex_(text, line), dim_(dim) {}

    ExpSum parse() {
        ExpSum value = expr();
        if (lex_.peek().kind != Token::End)
            lex_.fail("trailing input after expression", lex_.peek().column);
        return value;
    }

private:
    Lexer lex_;
    std::size_t dim_;

    bool at_symbol(char c) const {
        return lex_.peek().kind == Token::Symbol && lex_.peek().symbol == c;
    }

    void expect_symbol(char c, const std::string& what) {
        if (!at_symbol(c)) lex_.fail("expected '" + std::string(1, c) + "' " + what,
                                     lex_.peek().column);
        lex_.next();
    }

    ExpSum expr() {
        ExpSum acc = term();
        while (at_symbol('+') || at_symbol('-')) {
            char op = lex_.next().symbol;
            ExpSum rhs = term();
            acc = op == '+' ? acc + rhs : acc - rhs;
        }
        return acc;
    }

    ExpSum term() {
        ExpSum acc = unary();
        while (at_symbol('*') || at_symbol('/')) {
            Token op = lex_.next();
            ExpSum rhs = unary();
            if (op.symbol == '*') {
                acc = acc * rhs;
            } else {
                Complex divisor = constant_value(rhs, "divisor", op.column);
                if (divisor == Complex(0.0)) lex_.fail("division by zero", op.column);
                acc = acc.scaled(1.0 / divisor);
            }
        }
        return acc;
    }

    ExpSum unary() {
        if (at_symbol('-')) {
            lex_.next();
            return unary().scaled(-1.0);
        }
        return power();
    }

    ExpSum power() {
        ExpSum base = atom();
        if (!at_symbol('^')) return base;
        Token caret = lex_.next();
        Token e = lex_.next();
        if (e.kind != Token::Number || e.number < 0.0 || e.number != std::floor(e.number))
            lex_.fail("exponent must be a non-negative integer", caret.column);
        unsigned n = static_cast<unsigned>(e.number);
        ExpSum acc = ExpSum::constant(dim_, 1.0);
        for (unsigned i = 0; i < n; ++i) acc = acc * base;
        return acc;
    }

    // The printer renders general complex coefficients as "(a+b*i)"; lexing
    // that shape atomically keeps componentwise-tiny parts that would not
    // survive being assembled from separately pruned constants.
    std::optional<Complex> try_complex_literal() {
        Lexer saved = lex_;
        auto bail = [&]() {
            lex_ = saved;
            return std::optional<Complex>{};
        };
        double sign = 1.0;
        if (at_symbol('-')) {
            lex_.next();
            sign = -1.0;
        }
        if (lex_.peek().kind != Token::Number) return bail();
        double re = sign * lex_.next().number;
        if (!at_symbol('+') && !at_symbol('-')) return bail();
        double pm = lex_.next().symbol == '+' ? 1.0 : -1.0;
        if (lex_.peek().kind != Token::Number) return bail();
        double im = pm * lex_.next().number;
        if (!at_symbol('*')) return bail();
        lex_.next();
        if (lex_.peek().kind != Token::Ident || lex_.peek().ident != "i") return bail();
        lex_.next();
        if (!at_symbol(')')) return bail();
        lex_.next();
        return Complex(re, im);
    }

    ExpSum atom() {
        Token t = lex_.next();
        if (t.kind == Token::Number) return ExpSum::constant(dim_, t.number);
        if (t.kind == Token::Symbol && t.symbol == '(') {
            if (auto literal = try_complex_literal()) return ExpSum::constant(dim_, *literal);
            ExpSum inner = expr();
            expect_symbol(')', "to close parenthesis");
            return inner;
        }
        if (t.kind == Token::Ident) {
            if (t.ident == "i") return ExpSum::constant(dim_, Complex(0.0, 1.0));
            if (t.ident == "pi") return ExpSum::constant(dim_, std::acos(-1.0));
            if (t.ident == "exp") {
                expect_symbol('(', "after exp");
                ExpSum arg = expr();
                expect_symbol(')', "to close exp");
                if (!arg.is_polynomial())
                    lex_.fail("nested exp: the argument of exp must be a polynomial", t.column);
                return ExpSum::exponential(arg.as_polynomial());
            }
            if (t.ident == "log") {
                expect_symbol('(', "after log");
                ExpSum arg = expr();
                expect_symbol(')', "to close log");
                Complex v = constant_value(arg, "argument of log", t.column);
                if (v.imag() != 0.0 || v.real() <= 0.0)
                    lex_.fail("log argument must be a positive real constant", t.column);
                return ExpSum::constant(dim_, std::log(v.real()));
            }
            if (t.ident.size() > 1 && t.ident[0] == 'z') {
                std::size_t index = 0;
                for (std::size_t k = 1; k < t.ident.size(); ++k) {
                    if (!std::isdigit(static_cast<unsigned char>(t.ident[k])))
                        lex_.fail("unknown identifier '" + t.ident + "'", t.column);
                    index = index * 10 + static_cast<std::size_t>(t.ident[k] - '0');
                }
                if (index < 1 || index > dim_)
                    lex_.fail("variable z" + std::to_string(index) + " exceeds dimension " +
                                  std::to_string(dim_),
                              t.column);
                return ExpSum::polynomial(SparsePoly::variable(dim_, index - 1));
            }
            lex_.fail("unknown identifier '" + t.ident + "'", t.column);
        }
        lex_.fail("expected a value", t.column);
    }

    Complex constant_value(const ExpSum& x, const std::string& what, std::size_t column) {
        if (x.is_zero()) return 0.0;
        if (!x.is_polynomial()) lex_.fail(what + " must be constant", column);
        SparsePoly p = x.as_polynomial();
        if (!p.is_constant()) lex_.fail(what + " must be constant", column);
        return p.constant_term();
    }
};

// ---- printing ---------------------------------------------------------------

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

bool print_negative(Complex c) {
    return c.real() < 0.0 || (c.real() == 0.0 && c.imag() < 0.0);
}

// Renders a monomial with a sign-normalized coefficient (real part positive,
// or purely imaginary with positive imaginary part).
std::string format_monomial(Complex c, const MultiIndex& m) {
    std::string vars;
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[j] == 0) continue;
        if (!vars.empty()) vars += '*';
        vars += 'z' + std::to_string(j + 1);
        if (m[j] > 1) vars += '^' + std::to_string(m[j]);
    }
    std::string coeff;
    bool skip_coeff = false;
    if (c.imag() == 0.0) {
        coeff = format_number(c.real());
        skip_coeff = c.real() == 1.0 && !vars.empty();
    } else if (c.real() == 0.0) {
        coeff = c.imag() == 1.0 ? "i" : format_number(c.imag()) + "*i";
    } else {
        coeff = "(" + format_number(c.real()) + (c.imag() < 0.0 ? "-" : "+") +
                format_number(std::abs(c.imag())) + "*i)";
    }
    if (vars.empty()) return coeff;
    if (skip_coeff) return vars;
    return coeff + "*" + vars;
}

}  // namespace

std::string print_poly(const SparsePoly& p) {
    if (p.is_zero()) return "0";
    // Descending grlex order.
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        Complex c = it->second;
        bool negative = print_negative(c);
        if (negative) c = -c;
        if (first) {
            if (negative) out += '-';
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        out += format_monomial(c, it->first);
    }
    return out;
}

namespace {

std::string print_term(const ExpTerm& t) {
    std::string coeff = print_poly(t.coeff);
    if (t.exponent.is_zero()) return coeff;
    std::string expo = "exp(" + print_poly(t.exponent) + ")";
    SparsePoly one = SparsePoly::constant(t.coeff.dim(), 1.0);
    if (t.coeff == one) return expo;
    if (t.coeff == one.scaled(-1.0)) return "-" + expo;
    if (t.coeff.terms().size() > 1) coeff = "(" + coeff + ")";
    return coeff + "*" + expo;
}

}  // namespace

std::string print_expr(const ExpSum& x) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : x.terms()) {
        std::string piece = print_term(t);
        if (first) {
            out = piece;
            first = false;
        } else if (!piece.empty() && piece[0] == '-') {
            out += " - " + piece.substr(1);
        } else {
            out += " + " + piece;
        }
    }
    return out;
}

ExpSum parse_expr(std::string_view text, std::size_t dim) {
    return ExprParser(text, dim, 1).parse();
}

Complex parse_complex(std::string_view text) {
    ExpSum x = ExprParser(text, 1, 1).parse();
    if (x.is_zero()) return 0.0;
    if (!x.is_polynomial() || !x.as_polynomial().is_constant())
        throw ParseError("expected a constant expression", 1, 1);
    return x.as_polynomial().constant_term();
}

// ---- manifests --------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

struct ManifestEntry {
    std::string value;
    std::size_t line;
};

std::vector<Complex> parse_vector(const std::string& text, std::size_t dim, std::size_t line) {
    std::string body = trim(text);
    if (body.size() < 2 || body.front() != '(' || body.back() != ')')
        throw ParseError("shift vector must be written as (expr, ...)", line, 1);
    body = body.substr(1, body.size() - 2);
    std::vector<std::string> parts;
    int depth = 0;
    std::string current;
    for (char ch : body) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            parts.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    parts.push_back(current);
    if (parts.size() != dim)
        throw ParseError("shift vector has " + std::to_string(parts.size()) + " entries, expected " +
                             std::to_string(dim),
                         line, 1);
    std::vector<Complex> out;
    for (const auto& part : parts) {
        ExpSum x = ExprParser(part, dim, line).parse();
        if (!x.is_polynomial() || !x.as_polynomial().is_constant())
            throw ParseError("shift entries must be constants", line, 1);
        out.push_back(x.is_zero() ? Complex(0.0) : x.as_polynomial().constant_term());
    }
    return out;
}

}  // namespace

ManifestDocument parse_manifest(std::string_view text) {
    std::map<std::string, ManifestEntry> entries;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string line = trim(text.substr(pos, end - pos));
        ++lineno;
        pos = end + 1;
        if (line.empty() || line[0] == '#') {
            if (pos > text.size()) break;
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key=value", lineno, 1);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        static const char* known[] = {"system", "n",    "k",      "c",          "f1",
                                      "f2",     "g1",   "g2",     "tol",        "seed",
                                      "points", "radius", "provenance", "expected"};
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ParseError("unknown key '" + key + "'", lineno, 1);
        if (entries.contains(key)) throw ParseError("duplicate key '" + key + "'", lineno, 1);
        entries[key] = ManifestEntry{value, lineno};
        if (pos > text.size()) break;
    }

    auto require = [&](const std::string& key) -> const ManifestEntry& {
        auto it = entries.find(key);
        if (it == entries.end()) throw ParseError("missing required key '" + key + "'", lineno, 1);
        return it->second;
    };
    auto get_int = [&](const std::string& key, long long fallback) -> long long {
        auto it = entries.find(key);
        if (it == entries.end()) return fallback;
        try {
            std::size_t used = 0;
            long long v = std::stoll(it->second.value, &used);
            if (used != it->second.value.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw ParseError("invalid integer for '" + key + "'", it->second.line, 1);
        }
    };
    auto get_real = [&](const std::string& key, double fallback) -> double {
        auto it = entries.find(key);
        if (it == entries.end()) return fallback;
        try {
            std::size_t used = 0;
            double v = std::stod(it->second.value, &used);
            if (used != it->second.value.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw ParseError("invalid number for '" + key + "'", it->second.line, 1);
        }
    };

    ManifestDocument doc;
    const auto& system = require("system");
    SystemTag tag;
    if (system.value == "difference")
        tag = SystemTag::Difference;
    else if (system.value == "pdd")
        tag = SystemTag::Pdd;
    else if (system.value == "diffpdd")
        tag = SystemTag::DiffPdd;
    else
        throw ParseError("system must be difference, pdd or diffpdd", system.line, 1);

    long long n = get_int("n", 0);
    if (!entries.contains("n") || n < 1) throw ParseError("n must be a positive integer", lineno, 1);
    std::size_t dim = static_cast<std::size_t>(n);

    long long k = get_int("k", 0);
    doc.manifest.kind = SystemKind{tag, static_cast<int>(k)};
    doc.manifest.dim = dim;

    const auto& c_entry = require("c");
    doc.manifest.shift = parse_vector(c_entry.value, dim, c_entry.line);

    auto parse_entry_expr = [&](const std::string& key) -> ExpSum {
        const auto& entry = require(key);
        return ExprParser(entry.value, dim, entry.line).parse();
    };
    doc.manifest.f1 = parse_entry_expr("f1");
    doc.manifest.f2 = parse_entry_expr("f2");

    if (tag == SystemTag::DiffPdd) {
        if (entries.contains("g1") || entries.contains("g2"))
            throw ParseError("diffpdd has RHS 1 and takes no g1/g2", lineno, 1);
    } else {
        for (const char* key : {"g1", "g2"}) {
            ExpSum g = parse_entry_expr(key);
            if (!g.is_polynomial())
                throw ParseError(std::string(key) + " must be a polynomial", require(key).line, 1);
            if (key[1] == '1')
                doc.manifest.g1 = g.as_polynomial();
            else
                doc.manifest.g2 = g.as_polynomial();
        }
    }

    if (entries.contains("provenance")) doc.manifest.provenance = entries["provenance"].value;
    if (entries.contains("expected")) {
        const auto& e = entries["expected"];
        if (e.value == "pass")
            doc.expected = Expectation::Pass;
        else if (e.value == "fail")
            doc.expected = Expectation::Fail;
        else
            throw ParseError("expected must be pass or fail", e.line, 1);
    }

    doc.tol = get_real("tol", kDefaultTol);
    if (doc.tol <= 0.0) throw ParseError("tol must be positive", require("tol").line, 1);
    doc.sampling.seed = static_cast<std::uint64_t>(get_int("seed", static_cast<long long>(kDefaultSeed)));
    long long points = get_int("points", kDefaultPoints);
    if (points < 1) throw ParseError("points must be >= 1", require("points").line, 1);
    doc.sampling.num_points = static_cast<int>(points);
    doc.sampling.radius = get_real("radius", kDefaultRadius);
    if (doc.sampling.radius <= 0.0)
        throw ParseError("radius must be positive", require("radius").line, 1);

    doc.manifest.validate();
    return doc;
}

std::string print_manifest(const ManifestDocument& doc) {
    const SolutionManifest& m = doc.manifest;
    std::ostringstream out;
    out << "system=" << to_string(m.kind.tag) << "\n";
    out << "n=" << m.dim << "\n";
    if (m.kind.tag != SystemTag::Difference) out << "k=" << m.kind.k << "\n";
    out << "c=(";
    for (std::size_t j = 0; j < m.shift.size(); ++j) {
        if (j) out << ", ";
        out << print_poly(SparsePoly::constant(1, m.shift[j]));
    }
    out << ")\n";
    out << "f1=" << print_expr(m.f1) << "\n";
    out << "f2=" << print_expr(m.f2) << "\n";
    if (m.g1) out << "g1=" << print_poly(*m.g1) << "\n";
    if (m.g2) out << "g2=" << print_poly(*m.g2) << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", doc.tol);
    out << "tol=" << buf << "\n";
    out << "seed=" << doc.sampling.seed << "\n";
    out << "points=" << doc.sampling.num_points << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", doc.sampling.radius);
    out << "radius=" << buf << "\n";
    if (!m.provenance.empty()) out << "provenance=" << m.provenance << "\n";
    if (doc.expected != Expectation::None)
        out << "expected=" << (doc.expected == Expectation::Pass ? "pass" : "fail") << "\n";
    return out.str();
}

}  // namespace fermat
