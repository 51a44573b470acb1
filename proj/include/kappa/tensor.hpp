#pragma once

// H (x) H and H (x) H (x) H, the flip, the multiplication map, and reduction
// of tensors modulo the exchange relations R0, R and Rtilde.

#include <array>
#include <compare>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kappa/algebra.hpp"

namespace kappa {

struct TensorKey {
    Monomial left;
    Monomial right;
    friend auto operator<=>(const TensorKey&, const TensorKey&) = default;
};

struct TensorKey3 {
    Monomial first;
    Monomial second;
    Monomial third;
    friend auto operator<=>(const TensorKey3&, const TensorKey3&) = default;
};

using TensorElement = SparseElement<TensorKey>;
using TensorElement3 = SparseElement<TensorKey3>;

namespace tensor {

inline TensorElement one(int order) { return {order, TensorKey{}, Scalar::one(order)}; }

/// u (x) v.
inline TensorElement pure(const AlgebraElement& u, const AlgebraElement& v) {
    if (u.order() != v.order()) throw std::invalid_argument("mismatched truncation orders");
    TensorElement r(u.order());
    for (const auto& [mu, cu] : u)
        for (const auto& [mv, cv] : v) r.add_term({mu, mv}, cu * cv);
    return r;
}

inline TensorElement left(const AlgebraElement& u) { return pure(u, algebra::one(u.order())); }
inline TensorElement right(const AlgebraElement& v) { return pure(algebra::one(v.order()), v); }

/// out += a * (c key).
inline void mul_term_into(const TensorElement& a, const TensorKey& key, const Scalar& c, TensorElement& out) {
    for (const auto& [ka, ca] : a) {
        const Scalar s = ca * c;
        if (s.is_zero()) continue;
        const auto lp = monomial_mul(ka.left, key.left);
        const auto rp = monomial_mul(ka.right, key.right);
        for (const auto& [ml, gl] : lp)
            for (const auto& [mr, gr] : rp) out.add_term({ml, mr}, (gl * gr) * s);
    }
}

}  // namespace tensor

/// Componentwise product (a1 (x) a2)(b1 (x) b2) = a1 b1 (x) a2 b2.
inline TensorElement t_mul(const TensorElement& a, const TensorElement& b) {
    if (a.order() != b.order()) throw std::invalid_argument("mismatched truncation orders");
    TensorElement r(a.order());
    for (const auto& [kb, cb] : b) tensor::mul_term_into(a, kb, cb, r);
    return r;
}

inline TensorElement operator*(const TensorElement& a, const TensorElement& b) { return t_mul(a, b); }

inline TensorElement t_commutator(const TensorElement& a, const TensorElement& b) { return a * b - b * a; }

inline TensorElement tau0(const TensorElement& a) {
    return a.map_keys([](const TensorKey& k) { return TensorKey{k.right, k.left}; });
}

/// Multiplication map u (x) v -> u v.
inline AlgebraElement m0(const TensorElement& a) {
    AlgebraElement r(a.order());
    for (const auto& [k, c] : a)
        for (const auto& [m, g] : monomial_mul(k.left, k.right)) r.add_term(m, g * c);
    return r;
}

inline TensorElement t_power(const TensorElement& a, int n) {
    TensorElement r = tensor::one(a.order());
    for (int k = 0; k < n; ++k) r = r * a;
    return r;
}

inline TensorElement t_exp(const TensorElement& a) {
    if (a.min_grade() < 1) throw std::domain_error("t_exp: argument has an a0-grade-0 part");
    TensorElement result = tensor::one(a.order());
    TensorElement term = result;
    for (int n = 1; n <= a.order(); ++n) {
        term = GaussianRational(Rational(1, n)) * (term * a);
        if (term.is_zero()) break;
        result += term;
    }
    return result;
}

/// e^X Y e^{-X} = sum_n ad_X^n(Y) / n!.
inline TensorElement t_adjoint(const TensorElement& x, const TensorElement& y) {
    if (x.min_grade() < 1) throw std::domain_error("t_adjoint: generator has an a0-grade-0 part");
    TensorElement result = y;
    TensorElement term = y;
    for (int n = 1; n <= x.order(); ++n) {
        term = GaussianRational(Rational(1, n)) * t_commutator(x, term);
        if (term.is_zero()) break;
        result += term;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Triple tensors, only what the cocycle condition needs.

namespace tensor3 {

inline TensorElement3 one(int order) { return {order, TensorKey3{}, Scalar::one(order)}; }

/// Place a two-leg tensor into legs (first, second), (second, third) or (first, third).
enum class Legs { k12, k23, k13 };

inline TensorElement3 embed(const TensorElement& t, Legs legs) {
    TensorElement3 r(t.order());
    for (const auto& [k, c] : t) {
        switch (legs) {
            case Legs::k12: r.add_term({k.left, k.right, Monomial{}}, c); break;
            case Legs::k23: r.add_term({Monomial{}, k.left, k.right}, c); break;
            case Legs::k13: r.add_term({k.left, Monomial{}, k.right}, c); break;
        }
    }
    return r;
}

inline TensorElement3 mul(const TensorElement3& a, const TensorElement3& b) {
    if (a.order() != b.order()) throw std::invalid_argument("mismatched truncation orders");
    TensorElement3 r(a.order());
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            const Scalar s = ca * cb;
            if (s.is_zero()) continue;
            const auto p1 = monomial_mul(ka.first, kb.first);
            const auto p2 = monomial_mul(ka.second, kb.second);
            const auto p3 = monomial_mul(ka.third, kb.third);
            for (const auto& [m1, g1] : p1)
                for (const auto& [m2, g2] : p2)
                    for (const auto& [m3, g3] : p3) r.add_term({m1, m2, m3}, (g1 * g2 * g3) * s);
        }
    return r;
}

inline TensorElement3 exp(const TensorElement3& a) {
    if (a.min_grade() < 1) throw std::domain_error("t_exp: argument has an a0-grade-0 part");
    TensorElement3 result = one(a.order());
    TensorElement3 term = result;
    for (int n = 1; n <= a.order(); ++n) {
        term = GaussianRational(Rational(1, n)) * mul(term, a);
        if (term.is_zero()) break;
        result += term;
    }
    return result;
}

}  // namespace tensor3

// ---------------------------------------------------------------------------
// Exchange relations.

enum class RelationTag { R0, R, Rtilde };

inline std::string_view relation_name(RelationTag t) {
    switch (t) {
        case RelationTag::R0: return "R0";
        case RelationTag::R: return "R";
        case RelationTag::Rtilde: return "Rtilde";
    }
    return "?";
}

inline RelationTag parse_relation(std::string_view s) {
    if (s == "R0") return RelationTag::R0;
    if (s == "R") return RelationTag::R;
    if (s == "Rtilde") return RelationTag::Rtilde;
    throw std::invalid_argument("unknown relation set: " + std::string(s));
}

/// Order in which coordinate generators are peeled off the left leg.
struct PeelOrder {
    bool randomized = false;
    std::uint64_t seed = 0;
};

struct CanonicalizeStats {
    int rounds = 0;
    int round_bound = 0;
};

/// A set of exchange relations x_mu (x) 1 = rhs_mu, read as rewrite rules on
/// the quotient by the right ideal they generate.
///
/// Every stored right-hand side has a coordinate-free left leg, so each
/// rewrite round removes at least one coordinate from the left leg.
class RelationSet {
public:
    RelationSet(RelationTag tag, LambdaPoly lambda, int order)
        : tag_(tag), lambda_(std::move(lambda)), order_(order) {
        build();
    }

    [[nodiscard]] RelationTag tag() const noexcept { return tag_; }
    [[nodiscard]] const LambdaPoly& lambda() const noexcept { return lambda_; }
    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] const TensorElement& rhs(int mu) const { return rhs_.at(mu); }

    /// x_mu (x) 1 - (right-hand side as written in the exchange identity).
    [[nodiscard]] TensorElement relation_element(int mu) const {
        const int n = order_;
        const LambdaPoly lam = lambda_;
        TensorElement lhs = tensor::left(algebra::x(mu, n));
        if (tag_ == RelationTag::R0) return lhs - tensor::right(algebra::x(mu, n));
        const AlgebraElement s = s_element(n);
        if (mu == 0) {
            // R:      x0 (x) 1 = 1 (x) x0 - a0((1-lam) 1 (x) S + lam S (x) 1)
            // Rtilde: x0 (x) 1 = 1 (x) x0 + a0(lam 1 (x) S + (1-lam) S (x) 1)
            const Scalar sign = tag_ == RelationTag::R ? Scalar::a0(n) : -Scalar::a0(n);
            const LambdaPoly right_coeff = tag_ == RelationTag::R ? LambdaPoly(1) - lam : lam;
            const LambdaPoly left_coeff = tag_ == RelationTag::R ? lam : LambdaPoly(1) - lam;
            return lhs - tensor::right(algebra::x(0, n)) +
                   (sign * Scalar(n, right_coeff)) * tensor::right(s) + (sign * Scalar(n, left_coeff)) * tensor::left(s);
        }
        // R:      x_i (x) 1 = Z^{lam-1} (x) x_i Z^{-lam}
        // Rtilde: x_i (x) 1 = Z^{lam} (x) x_i Z^{1-lam}
        const LambdaPoly lc = tag_ == RelationTag::R ? lam - LambdaPoly(1) : lam;
        const LambdaPoly rc = tag_ == RelationTag::R ? -lam : LambdaPoly(1) - lam;
        return lhs - tensor::pure(z_power(lc, n), algebra::x(mu, n) * z_power(rc, n));
    }

private:
    void build() {
        const int n = order_;
        if (tag_ == RelationTag::R0) {
            for (int mu = 0; mu < kDim; ++mu) rhs_[mu] = tensor::right(algebra::x(mu, n));
            return;
        }
        for (int i = 1; i < kDim; ++i) rhs_[i] = tensor::left(algebra::x(i, n)) - relation_element(i);
        // Resolve S (x) 1 = sum_k (x_k (x) 1)(p_k (x) 1) with the spatial rules.
        TensorElement s_left(n);
        for (int k = 1; k < kDim; ++k) s_left += rhs_[k] * tensor::left(algebra::p(k, n));
        const AlgebraElement s = s_element(n);
        const LambdaPoly lam = lambda_;
        const Scalar sign = tag_ == RelationTag::R ? -Scalar::a0(n) : Scalar::a0(n);
        const LambdaPoly right_coeff = tag_ == RelationTag::R ? LambdaPoly(1) - lam : lam;
        const LambdaPoly left_coeff = tag_ == RelationTag::R ? lam : LambdaPoly(1) - lam;
        rhs_[0] = tensor::right(algebra::x(0, n)) + (sign * Scalar(n, right_coeff)) * tensor::right(s) +
                  (sign * Scalar(n, left_coeff)) * s_left;
    }

    RelationTag tag_;
    LambdaPoly lambda_;
    int order_;
    std::array<TensorElement, kDim> rhs_;
};

/// Unique representative with no coordinate generator in the left leg.
inline TensorElement canonicalize(const TensorElement& a, const RelationSet& rel, PeelOrder peel = {},
                                  CanonicalizeStats* stats = nullptr) {
    if (a.order() != rel.order()) throw std::invalid_argument("mismatched truncation orders");
    std::mt19937_64 rng(peel.seed);
    TensorElement done(a.order());
    TensorElement pending = a;
    int bound = 0;
    for (const auto& [k, c] : a) bound = std::max(bound, k.left.x_degree());
    int rounds = 0;
    while (!pending.is_zero()) {
        if (rounds > bound) throw std::logic_error("canonicalize: rewrite round bound exceeded");
        ++rounds;
        TensorElement next(a.order());
        for (const auto& [k, c] : pending) {
            if (k.left.x_degree() == 0) {
                done.add_term(k, c);
                continue;
            }
            int mu = -1;
            if (peel.randomized) {
                std::vector<int> present;
                for (int nu = 0; nu < kDim; ++nu)
                    if (k.left.x[nu] != 0) present.push_back(nu);
                mu = present[std::uniform_int_distribution<std::size_t>(0, present.size() - 1)(rng)];
            } else {
                for (int nu = 0; nu < kDim && mu < 0; ++nu)
                    if (k.left.x[nu] != 0) mu = nu;
            }
            TensorKey rest = k;
            rest.left.x[mu] = static_cast<std::uint8_t>(rest.left.x[mu] - 1);
            tensor::mul_term_into(rel.rhs(mu), rest, c, next);
        }
        pending = std::move(next);
    }
    if (stats != nullptr) {
        stats->rounds = rounds;
        stats->round_bound = bound;
    }
    return done;
}

inline bool equal_mod(const TensorElement& a, const TensorElement& b, const RelationSet& rel) {
    return canonicalize(a - b, rel).is_zero();
}

}  // namespace kappa
