#pragma once

// A small language for permutation-antisymmetrised Maurer-Cartan formulas.
//
//   expr   := term (('+' | '-') term)*
//   term   := coeff? factor factor*          juxtaposition is the wedge product
//   coeff  := '-'? INT ('/' INT)? ('/' 'pi2')?
//   factor := 'sumS4' '(' expr ')'  |  '(' expr ')'  |  atom ('^' '2')? entry
//   atom   := 'MCL' '(' INT ')'  |  'MCR' '(' INT ')'  |  'X'
//   entry  := '[' idx ',' idx ']'
//   idx    := '1'..'4'  |  'p1'..'p4'
//
// MCL(k) is h_k^{-1} dh_k, MCR(k) is dh_k h_k^{-1}, X is the Lie algebra
// argument of an equivariant form. sumS4 sums its body over all tau in S4
// with weight sgn(tau), binding p_i to tau(i).

#include "eqcartan/cartanmodel.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace eqcartan::formdsl {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column),
          message_(message) {}

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    int line_;
    int column_;
    std::string message_;
};

// ---------------------------------------------------------------------------
// AST

struct Index {
    bool placeholder = false;
    int value = 1;  // literal 1..4, or placeholder number 1..4

    friend bool operator==(const Index&, const Index&) = default;
};

enum class AtomKind { Left, Right, Algebra };

struct Atom {
    AtomKind kind = AtomKind::Algebra;
    int factor = 0;  // 1-based; unused for Algebra

    friend bool operator==(const Atom&, const Atom&) = default;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct EntryNode {
    Atom atom;
    bool squared = false;
    Index row;
    Index col;
};

struct ScaleNode {
    std::int64_t numerator = 1;
    std::int64_t denominator = 1;
    bool inverse_pi2 = false;
    NodePtr child;

    double value() const {
        const double c = static_cast<double>(numerator) / static_cast<double>(denominator);
        return inverse_pi2 ? c / (std::numbers::pi * std::numbers::pi) : c;
    }
};

struct SumS4Node {
    NodePtr body;
};

struct WedgeNode {
    std::vector<NodePtr> factors;
};

struct BinaryNode {
    char op = '+';
    NodePtr lhs;
    NodePtr rhs;
};

struct Node {
    std::variant<EntryNode, ScaleNode, SumS4Node, WedgeNode, BinaryNode> v;
};

inline bool equal(const NodePtr& a, const NodePtr& b);

inline bool equal(const Node& a, const Node& b) {
    if (a.v.index() != b.v.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.v);
            if constexpr (std::is_same_v<T, EntryNode>) {
                return x.atom == y.atom && x.squared == y.squared && x.row == y.row && x.col == y.col;
            } else if constexpr (std::is_same_v<T, ScaleNode>) {
                return x.numerator == y.numerator && x.denominator == y.denominator &&
                       x.inverse_pi2 == y.inverse_pi2 && equal(x.child, y.child);
            } else if constexpr (std::is_same_v<T, SumS4Node>) {
                return equal(x.body, y.body);
            } else if constexpr (std::is_same_v<T, WedgeNode>) {
                if (x.factors.size() != y.factors.size()) return false;
                for (std::size_t i = 0; i < x.factors.size(); ++i) {
                    if (!equal(x.factors[i], y.factors[i])) return false;
                }
                return true;
            } else {
                return x.op == y.op && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
            }
        },
        a.v);
}

inline bool equal(const NodePtr& a, const NodePtr& b) {
    if (!a || !b) return a == b;
    return equal(*a, *b);
}

/// A parsed expression.
struct FormExpr {
    NodePtr root;

    friend bool operator==(const FormExpr& a, const FormExpr& b) { return equal(a.root, b.root); }
};

// ---------------------------------------------------------------------------
// Lexer

namespace detail {

enum class Tok { Int, Ident, LParen, RParen, LBracket, RBracket, Comma, Plus, Minus, Slash, Caret, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1, column = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        const int l = line, col = column;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Tok::Int, std::string(src.substr(i, j - i)), l, col});
            advance(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, col});
            advance(j - i);
            continue;
        }
        Tok kind;
        switch (c) {
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case '[': kind = Tok::LBracket; break;
            case ']': kind = Tok::RBracket; break;
            case ',': kind = Tok::Comma; break;
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '/': kind = Tok::Slash; break;
            case '^': kind = Tok::Caret; break;
            default:
                throw ParseError(l, col, std::string("unexpected character '") + c + "'");
        }
        out.push_back({kind, std::string(1, c), l, col});
        advance(1);
    }
    out.push_back({Tok::End, "", line, column});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : tokens_(lex(src)) {}

    NodePtr parse() {
        NodePtr e = expr();
        if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "'");
        return e;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    const Token& next() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

    [[noreturn]] static void fail(const Token& t, const std::string& message) {
        throw ParseError(t.line, t.column, message);
    }

    const Token& expect(Tok kind, const char* what) {
        if (peek().kind != kind) {
            fail(peek(), std::string("expected ") + what +
                             (peek().kind == Tok::End ? " before end of input" : ", found '" + peek().text + "'"));
        }
        return next();
    }

    bool starts_factor() const {
        const Token& t = peek();
        if (t.kind == Tok::LParen) return true;
        if (t.kind != Tok::Ident) return false;
        return t.text == "sumS4" || t.text == "MCL" || t.text == "MCR" || t.text == "X";
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const char op = next().text[0];
            NodePtr rhs = term();
            lhs = std::make_shared<Node>(Node{BinaryNode{op, lhs, rhs}});
        }
        return lhs;
    }

    static std::int64_t to_int(const Token& t) {
        try {
            return std::stoll(t.text);
        } catch (const std::out_of_range&) {
            fail(t, "integer literal too large");
        }
    }

    NodePtr term() {
        std::optional<ScaleNode> coeff;
        if (peek().kind == Tok::Int || (peek().kind == Tok::Minus && peek(1).kind == Tok::Int)) {
            ScaleNode s;
            const bool negative = peek().kind == Tok::Minus;
            if (negative) next();
            s.numerator = to_int(next());
            if (negative) s.numerator = -s.numerator;
            if (peek().kind == Tok::Slash && peek(1).kind == Tok::Int) {
                next();
                const Token& d = next();
                s.denominator = to_int(d);
                if (s.denominator == 0) fail(d, "zero denominator");
            }
            if (peek().kind == Tok::Slash) {
                next();
                const Token& p = peek();
                if (p.kind != Tok::Ident || p.text != "pi2") fail(p, "expected integer or 'pi2' after '/'");
                next();
                s.inverse_pi2 = true;
            }
            coeff = s;
        } else if (peek().kind == Tok::Minus) {
            fail(peek(), "a leading '-' must be followed by an integer coefficient");
        }

        if (!starts_factor()) {
            fail(peek(), peek().kind == Tok::End ? "expected a factor before end of input"
                                                 : "expected a factor, found '" + peek().text + "'");
        }
        std::vector<NodePtr> factors;
        while (starts_factor()) factors.push_back(factor());

        NodePtr body = factors.size() == 1 ? factors.front()
                                           : std::make_shared<Node>(Node{WedgeNode{std::move(factors)}});
        if (!coeff) return body;
        coeff->child = body;
        return std::make_shared<Node>(Node{*coeff});
    }

    void reject_entry_on_scalar() {
        if (peek().kind == Tok::LBracket) fail(peek(), "entry selection applied to a scalar expression");
        if (peek().kind == Tok::Caret) fail(peek(), "'^2' applies only to matrix atoms");
    }

    NodePtr factor() {
        const Token& t = peek();
        if (t.kind == Tok::LParen) {
            next();
            NodePtr inner = expr();
            expect(Tok::RParen, "')'");
            reject_entry_on_scalar();
            return inner;
        }
        if (t.text == "sumS4") {
            next();
            expect(Tok::LParen, "'(' after sumS4");
            ++sum_depth_;
            NodePtr body = expr();
            --sum_depth_;
            expect(Tok::RParen, "')'");
            reject_entry_on_scalar();
            return std::make_shared<Node>(Node{SumS4Node{body}});
        }

        EntryNode e;
        const Token atom_tok = next();
        if (atom_tok.text == "X") {
            e.atom = Atom{AtomKind::Algebra, 0};
        } else {
            e.atom.kind = atom_tok.text == "MCL" ? AtomKind::Left : AtomKind::Right;
            expect(Tok::LParen, "'(' after Maurer-Cartan atom");
            const Token& k = expect(Tok::Int, "factor index");
            const auto factor_index = to_int(k);
            if (factor_index < 1 || factor_index > 64) fail(k, "factor index must be between 1 and 64");
            e.atom.factor = static_cast<int>(factor_index);
            expect(Tok::RParen, "')'");
        }
        if (peek().kind == Tok::Caret) {
            next();
            const Token& two = expect(Tok::Int, "'2' after '^'");
            if (two.text != "2") fail(two, "only the square '^2' is supported");
            e.squared = true;
        }
        if (peek().kind != Tok::LBracket) {
            fail(peek(), "matrix atom '" + atom_tok.text + "' needs an entry selection [i,j]");
        }
        next();
        e.row = index();
        expect(Tok::Comma, "','");
        e.col = index();
        expect(Tok::RBracket, "']'");
        return std::make_shared<Node>(Node{e});
    }

    Index index() {
        const Token& t = peek();
        if (t.kind == Tok::Int && t.text.size() == 1 && t.text[0] >= '1' && t.text[0] <= '4') {
            next();
            return Index{false, t.text[0] - '0'};
        }
        if (t.kind == Tok::Ident && t.text.size() == 2 && t.text[0] == 'p' && t.text[1] >= '1' &&
            t.text[1] <= '4') {
            if (sum_depth_ == 0) fail(t, "unbound placeholder " + t.text);
            next();
            return Index{true, t.text[1] - '0'};
        }
        fail(t, "expected an index 1-4 or p1-p4");
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int sum_depth_ = 0;
};

}  // namespace detail

inline FormExpr parse(std::string_view src) { return FormExpr{detail::Parser(src).parse()}; }

// ---------------------------------------------------------------------------
// Pretty printing (normalised form)

namespace detail {

inline std::string print_node(const NodePtr& n);

inline std::string print_index(const Index& i) {
    return (i.placeholder ? "p" : "") + std::to_string(i.value);
}

/// Prints `n` where a single factor is expected.
inline std::string print_factor(const NodePtr& n) {
    if (std::holds_alternative<EntryNode>(n->v) || std::holds_alternative<SumS4Node>(n->v)) {
        return print_node(n);
    }
    return "(" + print_node(n) + ")";
}

inline std::string print_node(const NodePtr& n) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, EntryNode>) {
                std::string s;
                switch (x.atom.kind) {
                    case AtomKind::Left: s = "MCL(" + std::to_string(x.atom.factor) + ")"; break;
                    case AtomKind::Right: s = "MCR(" + std::to_string(x.atom.factor) + ")"; break;
                    case AtomKind::Algebra: s = "X"; break;
                }
                if (x.squared) s += "^2";
                return s + "[" + print_index(x.row) + "," + print_index(x.col) + "]";
            } else if constexpr (std::is_same_v<T, ScaleNode>) {
                std::string s = std::to_string(x.numerator);
                if (x.denominator != 1) s += "/" + std::to_string(x.denominator);
                if (x.inverse_pi2) s += "/pi2";
                if (std::holds_alternative<WedgeNode>(x.child->v)) return s + " " + print_node(x.child);
                return s + " " + print_factor(x.child);
            } else if constexpr (std::is_same_v<T, SumS4Node>) {
                return "sumS4(" + print_node(x.body) + ")";
            } else if constexpr (std::is_same_v<T, WedgeNode>) {
                std::string s;
                for (std::size_t i = 0; i < x.factors.size(); ++i) {
                    if (i) s += " ";
                    s += print_factor(x.factors[i]);
                }
                return s;
            } else {
                const bool wrap = std::holds_alternative<BinaryNode>(x.rhs->v);
                return print_node(x.lhs) + " " + x.op + " " +
                       (wrap ? "(" + print_node(x.rhs) + ")" : print_node(x.rhs));
            }
        },
        n->v);
}

}  // namespace detail

inline std::string pretty_print(const FormExpr& e) { return detail::print_node(e.root); }

// ---------------------------------------------------------------------------
// Typing and interpretation

struct FormSignature {
    int form_degree = 0;
    int poly_degree = 0;
    int max_factor = 0;
};

namespace detail {

inline FormSignature signature(const NodePtr& n) {
    return std::visit(
        [](const auto& x) -> FormSignature {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, EntryNode>) {
                const int power = x.squared ? 2 : 1;
                if (x.atom.kind == AtomKind::Algebra) return {0, power, 0};
                return {power, 0, x.atom.factor};
            } else if constexpr (std::is_same_v<T, ScaleNode>) {
                return signature(x.child);
            } else if constexpr (std::is_same_v<T, SumS4Node>) {
                return signature(x.body);
            } else if constexpr (std::is_same_v<T, WedgeNode>) {
                FormSignature total;
                for (const auto& f : x.factors) {
                    const auto s = signature(f);
                    total.form_degree += s.form_degree;
                    total.poly_degree += s.poly_degree;
                    total.max_factor = std::max(total.max_factor, s.max_factor);
                }
                return total;
            } else {
                const auto l = signature(x.lhs);
                const auto r = signature(x.rhs);
                if (l.form_degree != r.form_degree) {
                    throw UsageError("non-uniform form degree: " + std::to_string(l.form_degree) + " vs " +
                                     std::to_string(r.form_degree));
                }
                if (l.poly_degree != r.poly_degree) {
                    throw UsageError("non-uniform X-degree: " + std::to_string(l.poly_degree) + " vs " +
                                     std::to_string(r.poly_degree));
                }
                return {l.form_degree, l.poly_degree, std::max(l.max_factor, r.max_factor)};
            }
        },
        n->v);
}

using Binding = std::array<int, 4>;  // p_i -> tau(i), 0 when unbound

/// Builds the form denoted by `n` under `binding` out of formcalc pieces.
inline FormEval build(const NodePtr& n, const Binding& binding, const SkewMatrix& x, int level) {
    return std::visit(
        [&](const auto& node) -> FormEval {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, EntryNode>) {
                auto resolve = [&](const Index& i) {
                    if (!i.placeholder) return i.value;
                    const int v = binding[static_cast<std::size_t>(i.value - 1)];
                    if (v == 0) throw UsageError("unbound placeholder p" + std::to_string(i.value));
                    return v;
                };
                MatrixFormEval m = [&] {
                    switch (node.atom.kind) {
                        case AtomKind::Left: return mc_left(node.atom.factor, level);
                        case AtomKind::Right: return mc_right(node.atom.factor, level);
                        default: return constant_matrix(x.matrix(), level);
                    }
                }();
                if (node.squared) m = matrix_wedge(m, m);
                return entry(m, resolve(node.row), resolve(node.col));
            } else if constexpr (std::is_same_v<T, ScaleNode>) {
                return scale(node.value(), build(node.child, binding, x, level));
            } else if constexpr (std::is_same_v<T, SumS4Node>) {
                std::optional<FormEval> total;
                for (const auto& tau : s4_table()) {
                    Binding inner{tau.images[0], tau.images[1], tau.images[2], tau.images[3]};
                    FormEval term = scale(static_cast<double>(tau.sign), build(node.body, inner, x, level));
                    total = total ? add(*total, term) : term;
                }
                return *total;
            } else if constexpr (std::is_same_v<T, WedgeNode>) {
                FormEval acc = build(node.factors.front(), binding, x, level);
                for (std::size_t i = 1; i < node.factors.size(); ++i) {
                    acc = wedge(acc, build(node.factors[i], binding, x, level));
                }
                return acc;
            } else {
                FormEval l = build(node.lhs, binding, x, level);
                FormEval r = build(node.rhs, binding, x, level);
                return node.op == '+' ? add(l, r) : subtract(l, r);
            }
        },
        n->v);
}

}  // namespace detail

/// Form degree, X-degree and largest factor index; throws UsageError when
/// the summands of the expression disagree on degrees.
inline FormSignature signature(const FormExpr& e) { return detail::signature(e.root); }

/// Smallest nerve level on which every atom of `e` is defined (at least 1).
inline int required_level(const FormExpr& e) { return std::max(1, signature(e).max_factor); }

/// The equivariant form denoted by `e` on NG(level). X-independent
/// expressions give polynomial degree 0.
inline EquivariantForm interpret(const FormExpr& e, int level) {
    const FormSignature sig = signature(e);
    if (sig.max_factor > level) {
        throw UsageError("factor index " + std::to_string(sig.max_factor) + " out of range for level " +
                         std::to_string(level));
    }
    return EquivariantForm{level, sig.form_degree, sig.poly_degree,
                           [root = e.root, level](const SkewMatrix& x) {
                               return detail::build(root, detail::Binding{}, x, level);
                           }};
}

// ---------------------------------------------------------------------------
// Shipped corpus (identical to forms/*.form)

namespace corpus {

inline constexpr std::string_view kE13 =
    "1/192/pi2 sumS4(MCL(1)[p1,p2] MCL(1)^2[p3,p4] + MCL(1)[p3,p4] MCL(1)^2[p1,p2])";
inline constexpr std::string_view kE22 =
    "-1/64/pi2 sumS4(MCL(1)[p1,p2] MCR(2)[p3,p4] + MCL(1)[p3,p4] MCR(2)[p1,p2])";
inline constexpr std::string_view kMu =
    "-1/64/pi2 sumS4(X[p1,p2] MCL(1)[p3,p4] + X[p3,p4] MCL(1)[p1,p2]) - "
    "1/64/pi2 sumS4(X[p1,p2] MCR(1)[p3,p4] + X[p3,p4] MCR(1)[p1,p2])";

}  // namespace corpus

}  // namespace eqcartan::formdsl
