#pragma once

// Text rendering. The flat form writes every element as a sum of atoms
//   coeff*a0^k*lam^j*monomial            (algebra)
//   coeff*a0^k*lam^j*left ox right       (tensor)
// and is read back exactly by the expression parser. The factorized form
// groups exponential tails into Z^[c] factors for human reading.

#include <algorithm>
#include <optional>
#include <utility>
#include <string>
#include <type_traits>
#include <vector>

#include "kappa/algebra.hpp"
#include "kappa/tensor.hpp"

namespace kappa::render {

/// `a/b`, `c/d*I`, or `(a/b + c/d*I)` when both parts are present.
inline std::string text(const GaussianRational& g) {
    if (g.im.is_zero()) return g.re.str();
    std::string im;
    if (g.im == Rational(1)) im = "I";
    else if (g.im == Rational(-1)) im = "-I";
    else im = g.im.str() + "*I";
    if (g.re.is_zero()) return im;
    const bool neg = g.im < Rational(0);
    const std::string mag = neg ? text(GaussianRational(Rational(0), -g.im)) : im;
    return "(" + g.re.str() + (neg ? " - " : " + ") + mag + ")";
}

inline std::string text(const Monomial& m) {
    std::string out;
    auto put = [&out](char g, int mu, int e) {
        if (e == 0) return;
        if (!out.empty()) out += '*';
        out += g;
        out += static_cast<char>('0' + mu);
        if (e > 1) out += '^' + std::to_string(e);
    };
    for (int mu = 0; mu < kDim; ++mu) put('x', mu, m.x[mu]);
    for (int mu = 0; mu < kDim; ++mu) put('p', mu, m.p[mu]);
    return out.empty() ? "1" : out;
}

inline std::string text(const XMonomial& m) {
    Monomial h;
    h.x = m;
    return text(h);
}

/// Compact lambda polynomial for use inside Z^[...], e.g. `1-lam`, `-lam`, `1/2`.
inline std::string lampoly(const LambdaPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int d = 0; d <= p.degree(); ++d) {
        GaussianRational c = p.coeff(d);
        if (c.is_zero()) continue;
        bool neg = c.is_real() && c.re < Rational(0);
        if (neg) c = -c;
        std::string body;
        if (d == 0) {
            body = text(c);
        } else {
            const std::string var = d == 1 ? "lam" : "lam^" + std::to_string(d);
            body = c == GaussianRational(1) ? var : text(c) + "*" + var;
        }
        if (out.empty()) out = neg ? "-" + body : body;
        else out += (neg ? "-" : "+") + body;
    }
    return out;
}

namespace detail {

struct Atom {
    GaussianRational coeff;
    std::string factors;  // `a0^k*lam^j*...`, may be empty
};

inline std::string scalar_factors(int a0, int lam) {
    std::string s;
    auto put = [&s](const std::string& f) {
        if (!s.empty()) s += '*';
        s += f;
    };
    if (a0 == 1) put("a0");
    else if (a0 > 1) put("a0^" + std::to_string(a0));
    if (lam == 1) put("lam");
    else if (lam > 1) put("lam^" + std::to_string(lam));
    return s;
}

/// Joins atoms as `t1 + t2 - t3`, pulling a leading minus out of real or
/// imaginary coefficients.
inline std::string join(const std::vector<Atom>& atoms) {
    if (atoms.empty()) return "0";
    std::string out;
    for (const Atom& a : atoms) {
        GaussianRational c = a.coeff;
        const bool neg = c.is_real() ? c.re < Rational(0) : c.re.is_zero() && c.im < Rational(0);
        if (neg) c = -c;
        std::string body;
        if (a.factors.empty()) body = text(c);
        else if (c == GaussianRational(1)) body = a.factors;
        else if (a.factors.rfind("1 ox ", 0) == 0) body = text(c) + a.factors.substr(1);
        else body = text(c) + "*" + a.factors;
        if (out.empty()) out = neg ? "-" + body : body;
        else out += (neg ? " - " : " + ") + body;
    }
    return out;
}

inline std::string with(std::string a, const std::string& b) {
    if (b.empty()) return a;
    if (a.empty()) return b;
    return a + "*" + b;
}

}  // namespace detail

inline std::string text(const Scalar& s) {
    std::vector<detail::Atom> atoms;
    for (const auto& e : s.entries()) atoms.push_back({e.c, detail::scalar_factors(e.a0, e.lam)});
    return detail::join(atoms);
}

inline std::string text(const LambdaPoly& p) { return text(Scalar(kMaxOrder, p)); }

template <class Key>
std::string text(const SparseElement<Key>& a) {
    std::vector<detail::Atom> atoms;
    for (const auto& [k, c] : a) {
        for (const auto& e : c.entries()) {
            const std::string sf = detail::scalar_factors(e.a0, e.lam);
            std::string body;
            if constexpr (std::is_same_v<Key, TensorKey>) {
                const std::string l = k.left.is_unit() ? "" : text(k.left);
                std::string left = detail::with(sf, l);
                // A bare coefficient needs an explicit factor to carry the leg.
                if (left.empty()) left = "1";
                body = left + " ox " + text(k.right);
            } else {
                const std::string m = text(k);
                body = detail::with(sf, m == "1" ? "" : m);
            }
            atoms.push_back({e.c, body});
        }
    }
    return detail::join(atoms);
}

// ---------------------------------------------------------------------------
// Z-factorized tensor rendering.

namespace detail {

struct Piece {
    TensorKey head;
    std::string body;
};

/// a / b when b divides a exactly.
inline std::optional<LambdaPoly> divide_exact(LambdaPoly a, const LambdaPoly& b) {
    if (a.is_zero()) return LambdaPoly();
    if (b.degree() > a.degree()) return std::nullopt;
    std::vector<GaussianRational> q(a.degree() - b.degree() + 1);
    const GaussianRational lead = b.coeff(b.degree()).inverse();
    for (int d = a.degree(); d >= b.degree(); --d) {
        const GaussianRational c = a.coeff(d) * lead;
        q[d - b.degree()] = c;
        std::vector<GaussianRational> shift(d - b.degree() + 1);
        shift.back() = c;
        a -= LambdaPoly(std::move(shift)) * b;
    }
    if (!a.is_zero()) return std::nullopt;
    return LambdaPoly(std::move(q));
}

/// Sign and factor string for a lambda-polynomial coefficient: `2*lam`, `(1-lam)`, ...
inline std::pair<bool, std::string> coefficient_prefix(const LambdaPoly& c) {
    int nonzero = 0;
    int deg = 0;
    for (int d = 0; d <= c.degree(); ++d)
        if (!c.coeff(d).is_zero()) {
            ++nonzero;
            deg = d;
        }
    if (nonzero != 1) return {false, "(" + lampoly(c) + ")"};
    GaussianRational g = c.coeff(deg);
    const bool neg = g.is_real() && g.re < Rational(0);
    if (neg) g = -g;
    std::string s = g == GaussianRational(1) ? "" : text(g);
    return {neg, with(s, scalar_factors(0, deg))};
}

inline std::string leg(int a0, const Monomial& m, const LambdaPoly& zexp) {
    std::string s = scalar_factors(a0, 0);
    if (!m.is_unit()) s = with(s, text(m));
    if (zexp == LambdaPoly(1)) s = with(s, "Z");
    else if (!zexp.is_zero()) s = with(s, "Z^[" + lampoly(zexp) + "]");
    return s;
}

}  // namespace detail

/// Tensor rendering with exponential tails folded into Z^[c] factors, e.g.
/// `p1 ox Z^[-lam] + Z^[1-lam] ox p1`. Terms that do not fit such a pattern
/// are written flat.
inline std::string factorized(const TensorElement& t) {
    const int n = t.order();
    TensorElement rest = t;
    std::vector<detail::Piece> pieces;
    while (!rest.is_zero()) {
        // Head: term of lowest a0 grade, first in key order among those.
        int best_grade = n + 1;
        TensorKey head{};
        for (const auto& [k, c] : rest)
            if (c.min_grade() < best_grade) {
                best_grade = c.min_grade();
                head = k;
            }
        const int r = best_grade;
        const LambdaPoly coeff = rest.coeff(head).component(r);
        TensorElement candidate(n);
        LambdaPoly u;
        LambdaPoly v;
        // The fitted exponents are only trusted when a second-order term confirms them.
        bool fits = !coeff.is_zero() && r + 2 <= n;
        if (fits) {
            TensorKey kl = head;
            ++kl.left.p[0];
            TensorKey kr = head;
            ++kr.right.p[0];
            const auto du = detail::divide_exact(rest.coeff(kl).component(r + 1), coeff);
            const auto dv = detail::divide_exact(rest.coeff(kr).component(r + 1), coeff);
            fits = du.has_value() && dv.has_value();
            if (fits) {
                u = *du;
                v = *dv;
                candidate = Scalar(n, coeff, r) * tensor::pure(algebra::monomial(head.left, n) * z_power(u, n),
                                                               algebra::monomial(head.right, n) * z_power(v, n));
                // Every candidate atom must be present in the remainder with the same coefficient.
                for (const auto& [k, c] : candidate)
                    for (const auto& e : c.entries())
                        if (!(rest.coeff(k).component(e.a0).coeff(e.lam) == e.c)) fits = false;
            }
        }
        std::string body;
        if (fits && !(u.is_zero() && v.is_zero())) {
            auto [neg, prefix] = detail::coefficient_prefix(coeff);
            std::string left = detail::with(prefix, detail::leg(r, head.left, u));
            if (left.empty()) left = "1";
            std::string right = detail::leg(0, head.right, v);
            if (right.empty()) right = "1";
            body = (neg ? "-" : "") + left + " ox " + right;
            rest -= candidate;
        } else {
            TensorElement single(n);
            single.add_term(head, rest.coeff(head).graded_part(r));
            body = text(single);
            rest -= single;
        }
        pieces.push_back({head, body});
    }
    std::stable_sort(pieces.begin(), pieces.end(),
                     [](const detail::Piece& a, const detail::Piece& b) { return b.head < a.head; });
    std::string out;
    for (const auto& p : pieces) {
        if (out.empty()) {
            out = p.body;
            continue;
        }
        if (p.body.front() == '-') out += " - " + p.body.substr(1);
        else out += " + " + p.body;
    }
    return out.empty() ? "0" : out;
}

}  // namespace kappa::render
