#pragma once

// Expression language for algebra and tensor elements.
//
//   sum    := tensor (("+" | "-") tensor)*
//   tensor := prod ("ox" prod)?
//   prod   := unary ("*" unary)*
//   unary  := "-" unary | pow
//   pow    := atom ("^" int)?
//   atom   := rational | "I" | "a0" | "lam" | x0..x3 | p0..p3 | "A" | "S"
//           | "Z" ("^" "[" sum "]")? | "M" "[" i "," j "]" | "Mhat" "[" i "," "0" "]"
//           | "exp" "(" sum ")" | "(" sum ")"
//
// `ox` binds looser than `*`, so the flat rendering `c*a0*x1 ox p2` reads back
// as (c*a0*x1) ox p2. M[i,0] is the case (i) boost, Mhat[i,0] the boost of the
// selected realization.

#include <cctype>
#include <charconv>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "kappa/poincare.hpp"
#include "kappa/tensor.hpp"

namespace kappa::dsl {

class ParseError : public std::invalid_argument {
public:
    ParseError(std::size_t offset, const std::string& what)
        : std::invalid_argument("syntax error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, LBracket, RBracket, Comma, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t offset = 0;
};

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto digits = [&src](std::size_t j) {
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        return j;
    };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token t;
        t.offset = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = digits(i);
            if (j + 1 < src.size() && src[j] == '/' && std::isdigit(static_cast<unsigned char>(src[j + 1])))
                j = digits(j + 1);
            t.kind = Tok::Number;
            t.text = src.substr(i, j - i);
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            t.kind = Tok::Ident;
            t.text = src.substr(i, j - i);
            i = j;
        } else {
            switch (c) {
                case '+': t.kind = Tok::Plus; break;
                case '-': t.kind = Tok::Minus; break;
                case '*': t.kind = Tok::Star; break;
                case '^': t.kind = Tok::Caret; break;
                case '(': t.kind = Tok::LParen; break;
                case ')': t.kind = Tok::RParen; break;
                case '[': t.kind = Tok::LBracket; break;
                case ']': t.kind = Tok::RBracket; break;
                case ',': t.kind = Tok::Comma; break;
                default: throw ParseError(i, std::string("unexpected character '") + c + "'");
            }
            t.text = std::string(1, c);
            ++i;
        }
        out.push_back(std::move(t));
    }
    out.push_back({Tok::End, "", src.size()});
    return out;
}

// ---------------------------------------------------------------------------
// Syntax tree

enum class NodeKind { Number, Imag, A0, Lam, X, P, A, S, Z, M, Mhat, Sum, Product, Power, Neg, Exp, Tensor };

struct Node {
    NodeKind kind;
    std::size_t offset = 0;
    Rational number;
    int i = 0;
    int j = 0;
    /// Sum: child signs (+1 / -1).
    std::vector<int> signs;
    std::vector<std::unique_ptr<Node>> children;
};

using NodePtr = std::unique_ptr<Node>;

inline NodePtr make_node(NodeKind k, std::size_t offset) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->offset = offset;
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& src) : toks_(lex(src)) {}

    NodePtr parse() {
        NodePtr n = sum();
        if (peek().kind != Tok::End) throw ParseError(peek().offset, "unexpected '" + peek().text + "'");
        return n;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k) throw ParseError(peek().offset, std::string("expected ") + what);
        return next();
    }
    bool at_ox() const { return peek().kind == Tok::Ident && peek().text == "ox"; }

    NodePtr sum() {
        auto n = make_node(NodeKind::Sum, peek().offset);
        n->children.push_back(tensor());
        n->signs.push_back(1);
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const int sign = next().kind == Tok::Plus ? 1 : -1;
            n->children.push_back(tensor());
            n->signs.push_back(sign);
        }
        if (n->children.size() == 1) return std::move(n->children.front());
        return n;
    }

    NodePtr tensor() {
        NodePtr left = prod();
        if (!at_ox()) return left;
        const std::size_t at = peek().offset;
        next();
        auto n = make_node(NodeKind::Tensor, at);
        n->children.push_back(std::move(left));
        n->children.push_back(prod());
        if (at_ox()) throw ParseError(peek().offset, "tensor nesting depth > 1");
        return n;
    }

    NodePtr prod() {
        auto n = make_node(NodeKind::Product, peek().offset);
        n->children.push_back(unary());
        while (accept(Tok::Star)) n->children.push_back(unary());
        if (n->children.size() == 1) return std::move(n->children.front());
        return n;
    }

    NodePtr unary() {
        if (peek().kind == Tok::Minus) {
            auto n = make_node(NodeKind::Neg, next().offset);
            n->children.push_back(unary());
            return n;
        }
        return pow();
    }

    int small_int(const char* what) {
        const Token& t = expect(Tok::Number, what);
        int v = 0;
        const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size() || v > 64)
            throw ParseError(t.offset, std::string("expected ") + what);
        return v;
    }

    NodePtr pow() {
        NodePtr base = atom();
        if (peek().kind != Tok::Caret) return base;
        const std::size_t at = next().offset;
        auto n = make_node(NodeKind::Power, at);
        n->i = small_int("a non-negative integer exponent");
        n->children.push_back(std::move(base));
        return n;
    }

    static Rational number(const Token& t) {
        const auto slash = t.text.find('/');
        auto conv = [&t](const std::string& s) {
            std::int64_t v = 0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(t.offset, "number out of range");
            return v;
        };
        if (slash == std::string::npos) return Rational(conv(t.text));
        const std::int64_t den = conv(t.text.substr(slash + 1));
        if (den == 0) throw ParseError(t.offset, "zero denominator");
        return Rational(conv(t.text.substr(0, slash)), den);
    }

    NodePtr index_pair(NodeKind k, std::size_t at) {
        auto n = make_node(k, at);
        expect(Tok::LBracket, "'['");
        n->i = small_int("an index");
        expect(Tok::Comma, "','");
        n->j = small_int("an index");
        expect(Tok::RBracket, "']'");
        return n;
    }

    NodePtr atom() {
        const Token& t = peek();
        const std::size_t at = t.offset;
        if (t.kind == Tok::Number) {
            auto n = make_node(NodeKind::Number, at);
            n->number = number(next());
            return n;
        }
        if (t.kind == Tok::LParen) {
            next();
            NodePtr inner = sum();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (t.kind != Tok::Ident) throw ParseError(at, t.kind == Tok::End ? "expected expression" : "unexpected '" + t.text + "'");
        const std::string id = next().text;
        if (id == "I") return make_node(NodeKind::Imag, at);
        if (id == "a0") return make_node(NodeKind::A0, at);
        if (id == "lam") return make_node(NodeKind::Lam, at);
        if (id == "A") return make_node(NodeKind::A, at);
        if (id == "S") return make_node(NodeKind::S, at);
        if (id.size() == 2 && (id[0] == 'x' || id[0] == 'p') && id[1] >= '0' && id[1] <= '3') {
            auto n = make_node(id[0] == 'x' ? NodeKind::X : NodeKind::P, at);
            n->i = id[1] - '0';
            return n;
        }
        if (id == "Z") {
            auto n = make_node(NodeKind::Z, at);
            if (peek().kind == Tok::Caret && toks_[pos_ + 1].kind == Tok::LBracket) {
                next();
                next();
                n->children.push_back(sum());
                expect(Tok::RBracket, "']'");
            }
            return n;
        }
        if (id == "M") return index_pair(NodeKind::M, at);
        if (id == "Mhat") return index_pair(NodeKind::Mhat, at);
        if (id == "exp") {
            auto n = make_node(NodeKind::Exp, at);
            expect(Tok::LParen, "'('");
            n->children.push_back(sum());
            expect(Tok::RParen, "')'");
            return n;
        }
        if (id == "ox") throw ParseError(at, "'ox' needs a left operand");
        throw ParseError(at, "unknown identifier '" + id + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

inline NodePtr parse(const std::string& src) { return Parser(src).parse(); }

// ---------------------------------------------------------------------------
// Elaboration

struct Context {
    int order = 3;
    /// Substituted for lam after elaboration when set.
    std::optional<Rational> lambda;
    /// Realization behind Mhat[i,0].
    LorentzCase boost_case = LorentzCase::II;
};

using Value = std::variant<AlgebraElement, TensorElement>;

class Elaborator {
public:
    explicit Elaborator(const Context& ctx) : ctx_(ctx), n_(ctx.order) {}

    Value run(const Node& node) { return eval(node); }

private:
    [[noreturn]] static void fail(const Node& node, const std::string& what) { throw ParseError(node.offset, what); }

    static bool is_scalar(const AlgebraElement& a) {
        for (const auto& [k, c] : a)
            if (!k.is_unit()) return false;
        return true;
    }

    LambdaPoly lampoly(const Node& node) {
        const Value v = eval(node);
        const auto* a = std::get_if<AlgebraElement>(&v);
        if (a == nullptr || !is_scalar(*a)) fail(node, "Z exponent must be a polynomial in lam");
        const Scalar& s = a->coeff(Monomial{});
        if (!s.is_zero() && s.min_grade() > 0) fail(node, "Z exponent must not contain a0");
        for (const auto& e : s.entries())
            if (e.a0 != 0) fail(node, "Z exponent must not contain a0");
        return s.component(0);
    }

    LambdaPoly lambda_value() const {
        return ctx_.lambda ? LambdaPoly(*ctx_.lambda) : LambdaPoly::lam();
    }

    Value mul(const Node& node, const Value& a, const Value& b) {
        const auto* aa = std::get_if<AlgebraElement>(&a);
        const auto* ab = std::get_if<AlgebraElement>(&b);
        if (aa && ab) return *aa * *ab;
        const auto* ta = std::get_if<TensorElement>(&a);
        const auto* tb = std::get_if<TensorElement>(&b);
        if (ta && tb) return *ta * *tb;
        const AlgebraElement& s = aa ? *aa : *ab;
        if (!is_scalar(s)) fail(node, "an algebra element can multiply a tensor only if it is a scalar");
        const Scalar c = s.coeff(Monomial{});
        return c * (ta ? *ta : *tb);
    }

    Value eval(const Node& node) {
        switch (node.kind) {
            case NodeKind::Number: return algebra::constant(Scalar(n_, GaussianRational(node.number)));
            case NodeKind::Imag: return algebra::constant(Scalar(n_, GaussianRational::I()));
            case NodeKind::A0: return algebra::constant(Scalar::a0(n_));
            case NodeKind::Lam: return algebra::constant(Scalar::lam(n_));
            case NodeKind::X: return algebra::x(node.i, n_);
            case NodeKind::P: return algebra::p(node.i, n_);
            case NodeKind::A: return a_element(n_);
            case NodeKind::S: return s_element(n_);
            case NodeKind::Z:
                return z_power(node.children.empty() ? LambdaPoly(1) : lampoly(*node.children.front()), n_);
            case NodeKind::M: {
                if (node.i < 1 || node.i > 3 || node.j > 3) fail(node, "M[i,j] needs i in 1..3 and j in 0..3");
                if (node.j == 0)
                    return mhat(node.i, LorentzRealization::preset(LorentzCase::I, lambda_value(), n_), n_);
                if (node.i == node.j) fail(node, "M[i,j] needs distinct indices");
                return mij(node.i, node.j, n_);
            }
            case NodeKind::Mhat: {
                if (node.i < 1 || node.i > 3 || node.j != 0) fail(node, "Mhat[i,0] needs i in 1..3");
                return mhat(node.i, LorentzRealization::preset(ctx_.boost_case, lambda_value(), n_), n_);
            }
            case NodeKind::Sum: {
                Value acc = eval(*node.children.front());
                if (node.signs.front() < 0) acc = negate(acc);
                for (std::size_t k = 1; k < node.children.size(); ++k) {
                    Value v = eval(*node.children[k]);
                    if (acc.index() != v.index()) fail(*node.children[k], "cannot add an algebra element and a tensor");
                    if (node.signs[k] < 0) v = negate(v);
                    std::visit([&v](auto& x) { x += std::get<std::decay_t<decltype(x)>>(v); }, acc);
                }
                return acc;
            }
            case NodeKind::Product: {
                Value acc = eval(*node.children.front());
                for (std::size_t k = 1; k < node.children.size(); ++k)
                    acc = mul(*node.children[k], acc, eval(*node.children[k]));
                return acc;
            }
            case NodeKind::Power: {
                const Value v = eval(*node.children.front());
                if (const auto* a = std::get_if<AlgebraElement>(&v)) return power(*a, node.i);
                return t_power(std::get<TensorElement>(v), node.i);
            }
            case NodeKind::Neg: return negate(eval(*node.children.front()));
            case NodeKind::Exp: {
                const Value v = eval(*node.children.front());
                try {
                    if (const auto* a = std::get_if<AlgebraElement>(&v)) return graded_exp(*a);
                    return t_exp(std::get<TensorElement>(v));
                } catch (const std::domain_error&) {
                    fail(node, "exp needs an argument carrying at least one power of a0");
                }
            }
            case NodeKind::Tensor: {
                const Value l = eval(*node.children[0]);
                const Value r = eval(*node.children[1]);
                const auto* al = std::get_if<AlgebraElement>(&l);
                const auto* ar = std::get_if<AlgebraElement>(&r);
                if (!al || !ar) fail(node, "tensor nesting depth > 1");
                return tensor::pure(*al, *ar);
            }
        }
        fail(node, "unsupported expression");
    }

    static Value negate(const Value& v) {
        return std::visit([](const auto& x) -> Value { return -x; }, v);
    }

    Context ctx_;
    int n_;
};

/// Parses and elaborates; lam is substituted when the context fixes lambda.
inline Value evaluate(const std::string& src, const Context& ctx = {}) {
    const NodePtr ast = parse(src);
    Value v = Elaborator(ctx).run(*ast);
    if (ctx.lambda) std::visit([&ctx](auto& x) { x = x.substitute_lambda(*ctx.lambda); }, v);
    return v;
}

}  // namespace kappa::dsl
