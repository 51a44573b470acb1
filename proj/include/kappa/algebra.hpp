#pragma once

// The Heisenberg algebra on x_mu, p_mu (mu = 0..3) with
//   [x_mu, x_nu] = 0,  [p_mu, p_nu] = 0,  [p_mu, x_nu] = -i eta_{mu nu},
// eta = diag(-1, 1, 1, 1), kept in PBW normal form x^alpha p^beta.

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kappa/scalars.hpp"
#include "kappa/sparse.hpp"

namespace kappa {

inline constexpr int kDim = 4;

inline constexpr int eta(int mu) noexcept { return mu == 0 ? -1 : 1; }

/// x^alpha p^beta with every coordinate to the left of every momentum.
struct Monomial {
    std::array<std::uint8_t, kDim> x{};
    std::array<std::uint8_t, kDim> p{};

    static Monomial x_gen(int mu) {
        Monomial m;
        m.x.at(mu) = 1;
        return m;
    }
    static Monomial p_gen(int mu) {
        Monomial m;
        m.p.at(mu) = 1;
        return m;
    }

    [[nodiscard]] int x_degree() const noexcept { return x[0] + x[1] + x[2] + x[3]; }
    [[nodiscard]] int p_degree() const noexcept { return p[0] + p[1] + p[2] + p[3]; }
    [[nodiscard]] int degree() const noexcept { return x_degree() + p_degree(); }
    [[nodiscard]] bool is_unit() const noexcept { return degree() == 0; }

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Exponent vector of a coordinate monomial x^alpha in the commutative algebra.
using XMonomial = std::array<std::uint8_t, kDim>;

using AlgebraElement = SparseElement<Monomial>;
using Polynomial = SparseElement<XMonomial>;

namespace detail {

/// p_mu^b x_mu^c = sum_k k! C(b,k) C(c,k) (-i eta_mu)^k x_mu^{c-k} p_mu^{b-k}.
inline const std::vector<std::pair<int, GaussianRational>>& reorder_terms(int mu, int b, int c) {
    static thread_local std::array<std::vector<std::vector<std::vector<std::pair<int, GaussianRational>>>>, kDim> cache;
    auto& table = cache[mu];
    if (table.size() <= static_cast<std::size_t>(b)) table.resize(b + 1);
    auto& row = table[b];
    if (row.size() <= static_cast<std::size_t>(c)) row.resize(c + 1);
    auto& out = row[c];
    if (out.empty()) {
        const GaussianRational unit = eta(mu) < 0 ? GaussianRational::I() : -GaussianRational::I();
        GaussianRational unit_pow(1);
        for (int k = 0; k <= std::min(b, c); ++k) {
            out.emplace_back(k, GaussianRational(factorial(k) * binomial(b, k) * binomial(c, k)) * unit_pow);
            unit_pow = unit_pow * unit;
        }
    }
    return out;
}

}  // namespace detail

/// Normal-ordered product of two monomials as (monomial, coefficient) pairs.
inline std::vector<std::pair<Monomial, GaussianRational>> monomial_mul(const Monomial& a, const Monomial& b) {
    std::vector<std::pair<Monomial, GaussianRational>> out;
    Monomial base;
    for (int mu = 0; mu < kDim; ++mu) {
        base.x[mu] = static_cast<std::uint8_t>(a.x[mu] + b.x[mu]);
        base.p[mu] = static_cast<std::uint8_t>(a.p[mu] + b.p[mu]);
    }
    bool trivial = true;
    for (int mu = 0; mu < kDim; ++mu)
        if (a.p[mu] != 0 && b.x[mu] != 0) trivial = false;
    if (trivial) {
        out.emplace_back(base, GaussianRational(1));
        return out;
    }
    out.emplace_back(base, GaussianRational(1));
    for (int mu = 0; mu < kDim; ++mu) {
        if (a.p[mu] == 0 || b.x[mu] == 0) continue;
        const auto& terms = detail::reorder_terms(mu, a.p[mu], b.x[mu]);
        std::vector<std::pair<Monomial, GaussianRational>> next;
        next.reserve(out.size() * terms.size());
        for (const auto& [m, c] : out)
            for (const auto& [k, g] : terms) {
                Monomial n = m;
                n.x[mu] = static_cast<std::uint8_t>(n.x[mu] - k);
                n.p[mu] = static_cast<std::uint8_t>(n.p[mu] - k);
                next.emplace_back(n, c * g);
            }
        out = std::move(next);
    }
    return out;
}

namespace algebra {

inline AlgebraElement one(int order) { return {order, Monomial{}, Scalar::one(order)}; }
inline AlgebraElement constant(const Scalar& s) { return {s.order(), Monomial{}, s}; }
inline AlgebraElement x(int mu, int order) { return {order, Monomial::x_gen(mu), Scalar::one(order)}; }
inline AlgebraElement p(int mu, int order) { return {order, Monomial::p_gen(mu), Scalar::one(order)}; }
inline AlgebraElement monomial(const Monomial& m, int order) { return {order, m, Scalar::one(order)}; }

}  // namespace algebra

inline AlgebraElement normal_mul(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.order() != b.order()) throw std::invalid_argument("mismatched truncation orders");
    AlgebraElement r(a.order());
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            const Scalar c = ca * cb;
            if (c.is_zero()) continue;
            for (const auto& [m, g] : monomial_mul(ma, mb)) r.add_term(m, g * c);
        }
    return r;
}

inline AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return normal_mul(a, b); }

inline AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) {
    return normal_mul(a, b) - normal_mul(b, a);
}

inline AlgebraElement power(const AlgebraElement& a, int n) {
    AlgebraElement r = algebra::one(a.order());
    for (int k = 0; k < n; ++k) r = r * a;
    return r;
}

/// sum_n a^n / n!, which terminates because a carries at least one power of a0.
inline AlgebraElement graded_exp(const AlgebraElement& a) {
    if (a.min_grade() < 1) throw std::domain_error("graded_exp: argument has an a0-grade-0 part");
    AlgebraElement result = algebra::one(a.order());
    AlgebraElement term = result;
    for (int n = 1; n <= a.order(); ++n) {
        term = GaussianRational(Rational(1, n)) * (term * a);
        if (term.is_zero()) break;
        result += term;
    }
    return result;
}

/// F(at) for a formal series F in one variable.
inline AlgebraElement apply_series(const OneVarSeries& f, const AlgebraElement& at) {
    const int g = at.min_grade();
    if (g < 1) throw std::domain_error("apply_series: argument has an a0-grade-0 part");
    const int needed = at.order() / g;
    if (f.bound() < needed) throw std::invalid_argument("apply_series: series bound below truncation order");
    AlgebraElement result(at.order());
    AlgebraElement term = algebra::one(at.order());
    for (int n = 0; n <= needed; ++n) {
        if (!f.coeff(n).is_zero()) result += Scalar(at.order(), f.coeff(n)) * term;
        term = term * at;
    }
    return result;
}

/// A = a0 p0. With a = (a0, 0, 0, 0) carrying a lower index, A = -a.p = a0 p0.
inline AlgebraElement a_element(int order) { return Scalar::a0(order) * algebra::p(0, order); }

/// S = x_k p_k summed over the spatial indices.
inline AlgebraElement s_element(int order) {
    AlgebraElement s(order);
    for (int k = 1; k < kDim; ++k) {
        Monomial m;
        m.x[k] = 1;
        m.p[k] = 1;
        s.add_term(m, Scalar::one(order));
    }
    return s;
}

/// Z^c = exp(c A).
inline AlgebraElement z_power(const LambdaPoly& c, int order) {
    return graded_exp(Scalar(order, c) * a_element(order));
}

// ---------------------------------------------------------------------------
// Action on the coordinate algebra: x_mu multiplies, p_mu acts as
// -i d/dx^mu = -i eta_mu d/dx_mu.

namespace poly {

inline Polynomial one(int order) { return {order, XMonomial{}, Scalar::one(order)}; }
inline Polynomial monomial(const XMonomial& m, int order) { return {order, m, Scalar::one(order)}; }
inline Polynomial x(int mu, int order) {
    XMonomial m{};
    m.at(mu) = 1;
    return monomial(m, order);
}

inline Polynomial mul(const Polynomial& f, const Polynomial& g) {
    if (f.order() != g.order()) throw std::invalid_argument("mismatched truncation orders");
    Polynomial r(f.order());
    for (const auto& [a, ca] : f)
        for (const auto& [b, cb] : g) {
            XMonomial m{};
            for (int mu = 0; mu < kDim; ++mu) m[mu] = static_cast<std::uint8_t>(a[mu] + b[mu]);
            r.add_term(m, ca * cb);
        }
    return r;
}

}  // namespace poly

/// h |> f for a single monomial h and coordinate monomial f.
inline std::pair<XMonomial, GaussianRational> act_monomial(const Monomial& h, const XMonomial& f, bool& nonzero) {
    XMonomial out = f;
    GaussianRational c(1);
    nonzero = true;
    for (int mu = 0; mu < kDim; ++mu) {
        const int b = h.p[mu];
        if (b == 0) continue;
        if (b > out[mu]) {
            nonzero = false;
            return {};
        }
        Rational falling(1);
        for (int k = 0; k < b; ++k) falling *= Rational(out[mu] - k);
        const GaussianRational unit = eta(mu) < 0 ? GaussianRational::I() : -GaussianRational::I();
        GaussianRational up(1);
        for (int k = 0; k < b; ++k) up = up * unit;
        c = c * up * GaussianRational(falling);
        out[mu] = static_cast<std::uint8_t>(out[mu] - b);
    }
    for (int mu = 0; mu < kDim; ++mu) out[mu] = static_cast<std::uint8_t>(out[mu] + h.x[mu]);
    return {out, c};
}

inline Polynomial act(const AlgebraElement& h, const Polynomial& f) {
    if (h.order() != f.order()) throw std::invalid_argument("mismatched truncation orders");
    Polynomial r(f.order());
    for (const auto& [m, cm] : h)
        for (const auto& [q, cq] : f) {
            bool nonzero = false;
            auto [out, g] = act_monomial(m, q, nonzero);
            if (nonzero) r.add_term(out, g * (cm * cq));
        }
    return r;
}

inline AlgebraElement substitute_lambda_element(const AlgebraElement& a, const Rational& v) {
    return a.substitute_lambda(v);
}

}  // namespace kappa
