#pragma once

// Lorentz generators realized in the Heisenberg algebra,
//   Mhat_{i0} = x_i p0 F1(A) - x0 p_i F2(A) + a0 S p_i F3(A) + a0 x_i p^2 F4(A),
//   M_{ij}    = x_i p_j - x_j p_i,
// their coproducts, commutators, and the kappa-Minkowski coordinates.

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kappa/hopf.hpp"
#include "kappa/linsolve.hpp"
#include "kappa/render.hpp"
#include "kappa/report.hpp"

namespace kappa {

enum class LorentzCase { I, II, III, Custom };

inline std::string case_name(LorentzCase c) {
    switch (c) {
        case LorentzCase::I: return "i";
        case LorentzCase::II: return "ii";
        case LorentzCase::III: return "iii";
        case LorentzCase::Custom: return "custom";
    }
    return "?";
}

inline LorentzCase parse_case(const std::string& s) {
    if (s == "i") return LorentzCase::I;
    if (s == "ii") return LorentzCase::II;
    if (s == "iii") return LorentzCase::III;
    throw std::invalid_argument("unknown case: " + s + " (expected i, ii or iii)");
}

namespace series {

/// (e^{c1 u} - e^{c2 u}) / (d u), computed one degree higher before dividing.
inline OneVarSeries exp_difference_over_u(int bound, const LambdaPoly& c1, const LambdaPoly& c2, const Rational& d) {
    const OneVarSeries num = OneVarSeries::exp_linear(bound + 1, c1) - OneVarSeries::exp_linear(bound + 1, c2);
    return (LambdaPoly(Rational(1) / d) * num).div_u();
}

inline OneVarSeries sinh_over_u(int bound) { return exp_difference_over_u(bound, LambdaPoly(1), LambdaPoly(-1), 2); }

inline OneVarSeries cosh(int bound) {
    return LambdaPoly(Rational(1, 2)) *
           (OneVarSeries::exp_linear(bound, LambdaPoly(1)) + OneVarSeries::exp_linear(bound, LambdaPoly(-1)));
}

}  // namespace series

/// The four functions of A in the boost ansatz, with the lambda they belong to.
struct LorentzRealization {
    LorentzCase label = LorentzCase::Custom;
    LambdaPoly lambda;
    OneVarSeries f1;
    OneVarSeries f2;
    OneVarSeries f3;
    OneVarSeries f4;

    /// Case presets. Case (ii) always uses lambda = 1/2.
    static LorentzRealization preset(LorentzCase c, const LambdaPoly& lambda, int order) {
        const int n = order;
        LorentzRealization r;
        r.label = c;
        r.lambda = lambda;
        switch (c) {
            case LorentzCase::I:
                r.f1 = series::exp_difference_over_u(n, LambdaPoly(2) - lambda, -lambda, 2);
                r.f2 = OneVarSeries::exp_linear(n, lambda);
                r.f3 = (LambdaPoly(1) - lambda) * OneVarSeries::exp_linear(n, lambda);
                r.f4 = LambdaPoly(Rational(-1, 2)) * OneVarSeries::exp_linear(n, lambda);
                break;
            case LorentzCase::II:
                r.lambda = LambdaPoly(Rational(1, 2));
                r.f1 = series::sinh_over_u(n);
                r.f2 = OneVarSeries::constant(n, LambdaPoly(1));
                r.f3 = OneVarSeries(n);
                r.f4 = OneVarSeries(n);
                break;
            case LorentzCase::III:
                r.f1 = OneVarSeries::constant(n, LambdaPoly(1));
                r.f2 = OneVarSeries::constant(n, LambdaPoly(1));
                r.f3 = OneVarSeries(n);
                r.f4 = OneVarSeries(n);
                break;
            case LorentzCase::Custom:
                throw std::invalid_argument("custom realizations are built field by field");
        }
        return r;
    }
};

inline void check_spatial(int i) {
    if (i < 1 || i > 3) throw std::invalid_argument("spatial index must be 1, 2 or 3, got " + std::to_string(i));
}

/// M_{ij} = x_i p_j - x_j p_i.
inline AlgebraElement mij(int i, int j, int order) {
    check_spatial(i);
    check_spatial(j);
    if (i == j) throw std::invalid_argument("M_ij needs distinct indices");
    return algebra::x(i, order) * algebra::p(j, order) - algebra::x(j, order) * algebra::p(i, order);
}

/// M_{ij}, with M_{ii} = 0 for use inside index sums.
inline AlgebraElement mij_or_zero(int i, int j, int order) {
    return i == j ? AlgebraElement(order) : mij(i, j, order);
}

/// The boost of a realization.
inline AlgebraElement mhat(int i, const LorentzRealization& real, int order) {
    check_spatial(i);
    const AlgebraElement a = a_element(order);
    const AlgebraElement s = s_element(order);
    AlgebraElement p2(order);
    for (int k = 1; k < kDim; ++k) p2 += algebra::p(k, order) * algebra::p(k, order);
    const AlgebraElement xi = algebra::x(i, order);
    const AlgebraElement pi = algebra::p(i, order);
    const Scalar a0 = Scalar::a0(order);
    return xi * algebra::p(0, order) * apply_series(real.f1, a) -
           algebra::x(0, order) * pi * apply_series(real.f2, a) + a0 * (s * pi * apply_series(real.f3, a)) +
           a0 * (xi * p2 * apply_series(real.f4, a));
}

// ---------------------------------------------------------------------------
// Closed forms of the boost coproducts (compared modulo R).

/// Case (i): M_{i0} (x) 1 + Z (x) M_{i0} - a0 Z^lam p_j (x) M_{ij}.
inline TensorElement boost_coproduct_case_i(int i, const LambdaPoly& lambda, int order) {
    const LorentzRealization r = LorentzRealization::preset(LorentzCase::I, lambda, order);
    const AlgebraElement m = mhat(i, r, order);
    TensorElement t = tensor::left(m) + tensor::pure(z_power(1, order), m);
    for (int j = 1; j < kDim; ++j)
        if (j != i)
            t -= Scalar::a0(order) * tensor::pure(z_power(lambda, order) * algebra::p(j, order), mij(i, j, order));
    return t;
}

/// Case (ii): Mhat (x) Z^{-1/2} + Z^{1/2} (x) Mhat + a0/2 (M_ij Z^{1/2} (x) p_j - p_j (x) M_ij Z^{-1/2}).
inline TensorElement boost_coproduct_case_ii(int i, int order) {
    const LorentzRealization r = LorentzRealization::preset(LorentzCase::II, Rational(1, 2), order);
    const AlgebraElement m = mhat(i, r, order);
    const AlgebraElement zp = z_power(Rational(1, 2), order);
    const AlgebraElement zm = z_power(Rational(-1, 2), order);
    TensorElement t = tensor::pure(m, zm) + tensor::pure(zp, m);
    const Scalar half = Scalar(order, GaussianRational(Rational(1, 2))) * Scalar::a0(order);
    for (int j = 1; j < kDim; ++j) {
        if (j == i) continue;
        const AlgebraElement mj = mij(i, j, order);
        const AlgebraElement pj = algebra::p(j, order);
        t += half * (tensor::pure(mj * zp, pj) - tensor::pure(pj, mj * zm));
    }
    return t;
}

/// Case (iii): x_i p0 (x) Z^lam + Z^{lam-1} (x) x_i p0 - x0 p_i (x) Z^{-lam} - Z^{1-lam} (x) x0 p_i
///             - (1-lam) a0 p_i (x) S Z^{-lam} + lam a0 S Z^{1-lam} (x) p_i.
inline TensorElement boost_coproduct_case_iii(int i, const LambdaPoly& lambda, int order) {
    check_spatial(i);
    const AlgebraElement xp = algebra::x(i, order) * algebra::p(0, order);
    const AlgebraElement xq = algebra::x(0, order) * algebra::p(i, order);
    const AlgebraElement s = s_element(order);
    const AlgebraElement pi = algebra::p(i, order);
    const LambdaPoly one(1);
    const Scalar a0 = Scalar::a0(order);
    return tensor::pure(xp, z_power(lambda, order)) + tensor::pure(z_power(lambda - one, order), xp) -
           tensor::pure(xq, z_power(-lambda, order)) - tensor::pure(z_power(one - lambda, order), xq) -
           (a0 * Scalar(order, one - lambda)) * tensor::pure(pi, s * z_power(-lambda, order)) +
           (a0 * Scalar(order, lambda)) * tensor::pure(s * z_power(one - lambda, order), pi);
}

/// M_ij (x) 1 + 1 (x) M_ij.
inline TensorElement rotation_coproduct(int i, int j, int order) {
    const AlgebraElement m = mij(i, j, order);
    return tensor::left(m) + tensor::right(m);
}

/// Mhat_{i0} of case (ii) written through the case (i) boost at lambda = 1/2:
/// M_{i0} Z^{-1/2} + (a0/2) M_{ij} p_j.
inline AlgebraElement standard_boost_from_undeformed(int i, int order) {
    const LorentzRealization r = LorentzRealization::preset(LorentzCase::I, Rational(1, 2), order);
    AlgebraElement out = mhat(i, r, order) * z_power(Rational(-1, 2), order);
    const Scalar half = Scalar(order, GaussianRational(Rational(1, 2))) * Scalar::a0(order);
    for (int j = 1; j < kDim; ++j)
        if (j != i) out += half * (mij(i, j, order) * algebra::p(j, order));
    return out;
}

// ---------------------------------------------------------------------------
// Lorentz algebra.

inline int delta(int a, int b) { return a == b ? 1 : 0; }

/// Commutators of the realized generators against their expected closed forms:
/// [M_{i0}, M_{j0}] = -i M_ij (times cosh A in case (ii)),
/// [M_{i0}, M_{jk}] = i(delta_ik M_{j0} - delta_ij M_{k0}),
/// [M_ij, M_kl] = -i(delta_jk M_il + delta_il M_jk - delta_jl M_ik - delta_ik M_jl).
/// For cases (i) and (iii) the boost-boost commutator must also be a0-independent.
inline Report lorentz_algebra_check(const LorentzRealization& real, int order) {
    Report rep;
    rep.suite = "lorentz algebra, case " + case_name(real.label);
    const int n = order;
    const GaussianRational i_unit = GaussianRational::I();
    std::array<AlgebraElement, kDim> boost;
    for (int i = 1; i < kDim; ++i) boost[i] = mhat(i, real, n);
    const AlgebraElement cosh_a = apply_series(series::cosh(n), a_element(n));
    for (int i = 1; i < kDim; ++i)
        for (int j = i + 1; j < kDim; ++j) {
            const AlgebraElement c = commutator(boost[i], boost[j]);
            AlgebraElement expected = -i_unit * mij(i, j, n);
            if (real.label == LorentzCase::II) expected = expected * cosh_a;
            const std::string tag = std::to_string(i) + "0," + std::to_string(j) + "0";
            rep.add("[M" + tag + "]", c == expected, render::text(c - expected));
            if (real.label == LorentzCase::I || real.label == LorentzCase::III)
                rep.add("[M" + tag + "] a0-independent", c == c.graded_part(0), render::text(c - c.graded_part(0)));
        }
    for (int i = 1; i < kDim; ++i)
        for (int j = 1; j < kDim; ++j)
            for (int k = j + 1; k < kDim; ++k) {
                const AlgebraElement c = commutator(boost[i], mij(j, k, n));
                AlgebraElement expected(n);
                if (delta(i, k) != 0) expected += i_unit * boost[j];
                if (delta(i, j) != 0) expected -= i_unit * boost[k];
                const std::string tag = std::to_string(i) + "0," + std::to_string(j) + std::to_string(k);
                rep.add("[M" + tag + "]", c == expected, render::text(c - expected));
            }
    for (int i = 1; i < kDim; ++i)
        for (int j = i + 1; j < kDim; ++j)
            for (int k = 1; k < kDim; ++k)
                for (int l = k + 1; l < kDim; ++l) {
                    const AlgebraElement c = commutator(mij(i, j, n), mij(k, l, n));
                    const AlgebraElement expected =
                        -i_unit * (Scalar(n, GaussianRational(delta(j, k))) * mij_or_zero(i, l, n) +
                                   Scalar(n, GaussianRational(delta(i, l))) * mij_or_zero(j, k, n) -
                                   Scalar(n, GaussianRational(delta(j, l))) * mij_or_zero(i, k, n) -
                                   Scalar(n, GaussianRational(delta(i, k))) * mij_or_zero(j, l, n));
                    const std::string tag =
                        std::to_string(i) + std::to_string(j) + "," + std::to_string(k) + std::to_string(l);
                    rep.add("[M" + tag + "]", c == expected, render::text(c - expected));
                }
    return rep;
}

/// Momentum monomials p^beta of total degree d.
inline std::vector<Monomial> momentum_monomials(int d) {
    std::vector<Monomial> out;
    for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b)
            for (int c = d - a - b; c >= 0; --c) {
                Monomial m;
                m.p = {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(c),
                       static_cast<std::uint8_t>(d - a - b - c)};
                out.push_back(m);
            }
    return out;
}

/// First a0 order at which `canonical` (reduced modulo rel) is not a combination
/// of the words a0^k (g P1 (x) P2) and a0^k (P2 (x) g P1), with g among `gens`
/// and P1, P2 momentum monomials of total degree k; -1 if it is one through
/// max_order. The relation set must have a rational lambda.
inline int first_order_outside_span(const TensorElement& canonical, const std::vector<AlgebraElement>& gens,
                                    const RelationSet& rel, int max_order) {
    const int n = canonical.order();
    TensorElement residual = canonical;
    for (int k = 0; k <= std::min(max_order, n); ++k) {
        const TensorElement target = residual.graded_part(k);
        if (target.is_zero()) continue;
        std::vector<TensorElement> words;
        for (int d1 = 0; d1 <= k; ++d1)
            for (const Monomial& m1 : momentum_monomials(d1))
                for (const Monomial& m2 : momentum_monomials(k - d1))
                    for (const AlgebraElement& g : gens) {
                        const AlgebraElement left = Scalar::a0(n, k) * (g * algebra::monomial(m1, n));
                        const AlgebraElement other = algebra::monomial(m2, n);
                        words.push_back(canonicalize(tensor::pure(left, other), rel));
                        words.push_back(canonicalize(tensor::pure(other, left), rel));
                    }
        std::map<TensorKey, std::size_t> row_of;
        auto row = [&row_of](const TensorKey& key) { return row_of.try_emplace(key, row_of.size()).first->second; };
        for (const auto& [key, c] : target) row(key);
        for (const auto& w : words)
            for (const auto& [key, c] : w)
                if (!c.graded_part(k).is_zero()) row(key);
        ExactMatrix a(row_of.size(), words.size());
        std::vector<GaussianRational> b(row_of.size());
        for (const auto& [key, c] : target) b[row_of.at(key)] = field_entry(c.component(k));
        for (std::size_t j = 0; j < words.size(); ++j)
            for (const auto& [key, c] : words[j]) {
                const LambdaPoly e = c.component(k);
                if (!e.is_zero()) a.at(row_of.at(key), j) = field_entry(e);
            }
        const SolutionSpace sol = solve(a, b);
        if (sol.kind == SolutionKind::Infeasible) return k;
        for (std::size_t j = 0; j < words.size(); ++j)
            if (!sol.particular[j].is_zero()) residual -= sol.particular[j] * words[j];
    }
    return -1;
}

/// Boosts and rotations of one realization.
inline std::vector<AlgebraElement> lorentz_generators(const LorentzRealization& real, int order) {
    std::vector<AlgebraElement> g;
    for (int i = 1; i < kDim; ++i) g.push_back(mhat(i, real, order));
    for (int i = 1; i < kDim; ++i)
        for (int j = i + 1; j < kDim; ++j) g.push_back(mij(i, j, order));
    return g;
}

// ---------------------------------------------------------------------------
// kappa-Minkowski coordinates.

struct KappaCoordinates {
    std::array<AlgebraElement, kDim> xhat;
    /// p0^L = (1 - Z^{-1})/a0, p_i^L = p_i Z^{lam-1}.
    std::array<AlgebraElement, kDim> p_left;

    KappaCoordinates(const LambdaPoly& lambda, int order) {
        const int n = order;
        xhat[0] = algebra::x(0, n) - (Scalar::a0(n) * Scalar(n, LambdaPoly(1) - lambda)) * s_element(n);
        for (int i = 1; i < kDim; ++i) xhat[i] = algebra::x(i, n) * z_power(-lambda, n);
        const OneVarSeries g = (OneVarSeries::constant(n + 1, LambdaPoly(1)) -
                                OneVarSeries::exp_linear(n + 1, LambdaPoly(-1)))
                                   .div_u();
        p_left[0] = algebra::p(0, n) * apply_series(g, a_element(n));
        for (int i = 1; i < kDim; ++i) p_left[i] = algebra::p(i, n) * z_power(lambda - LambdaPoly(1), n);
    }

    /// [xhat_mu, xhat_nu] = i(a_mu xhat_nu - a_nu xhat_mu) with a = (a0, 0, 0, 0).
    [[nodiscard]] Report commutator_check() const {
        Report rep;
        rep.suite = "kappa-Minkowski";
        const int n = xhat[0].order();
        auto a = [n](int mu) { return mu == 0 ? Scalar::a0(n) : Scalar(n); };
        for (int mu = 0; mu < kDim; ++mu)
            for (int nu = mu + 1; nu < kDim; ++nu) {
                const AlgebraElement c = commutator(xhat[mu], xhat[nu]);
                const AlgebraElement expected =
                    Scalar(n, GaussianRational::I()) * (a(mu) * xhat[nu] - a(nu) * xhat[mu]);
                rep.add("[xhat" + std::to_string(mu) + ", xhat" + std::to_string(nu) + "]", c == expected,
                        render::text(c - expected));
            }
        return rep;
    }

    /// Z^{-1} (x) xhat_mu - a_mu p^L_alpha (x) xhat^alpha, indices raised with eta.
    [[nodiscard]] TensorElement compact_coproduct(int mu) const {
        const int n = xhat[0].order();
        TensorElement t = tensor::pure(z_power(-1, n), xhat[mu]);
        if (mu != 0) return t;
        for (int al = 0; al < kDim; ++al)
            t -= Scalar(n, GaussianRational(eta(al))) * Scalar::a0(n) * tensor::pure(p_left[al], xhat[al]);
        return t;
    }
};

}  // namespace kappa
