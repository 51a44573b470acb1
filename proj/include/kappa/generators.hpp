#pragma once

// Seeded random elements for property checks.

#include <cstdint>
#include <random>
#include <vector>

#include "kappa/algebra.hpp"
#include "kappa/tensor.hpp"

namespace kappa::gen {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Small Gaussian rational, never zero.
inline GaussianRational gaussian(Rng& rng) {
    for (;;) {
        const Rational re(uniform(rng, -5, 5), uniform(rng, 1, 4));
        const Rational im = uniform(rng, 0, 2) == 0 ? Rational(uniform(rng, -3, 3), uniform(rng, 1, 3)) : Rational(0);
        GaussianRational g(re, im);
        if (!g.is_zero()) return g;
    }
}

/// Coefficient with optional a0 and lam powers.
inline Scalar scalar(Rng& rng, int order, bool with_lambda) {
    std::vector<GaussianRational> c(with_lambda ? static_cast<std::size_t>(uniform(rng, 1, 2)) : 1);
    for (auto& g : c) g = uniform(rng, 0, 2) == 0 ? GaussianRational{} : gaussian(rng);
    c.front() = gaussian(rng);
    return Scalar(order, LambdaPoly(std::move(c)), uniform(rng, 0, order));
}

/// Monomial with total degree at most max_degree.
inline Monomial monomial(Rng& rng, int max_degree, bool with_x = true) {
    Monomial m;
    const int d = uniform(rng, 0, max_degree);
    for (int k = 0; k < d; ++k) {
        const int mu = uniform(rng, 0, kDim - 1);
        if (with_x && uniform(rng, 0, 1) == 0) ++m.x[mu];
        else ++m.p[mu];
    }
    return m;
}

inline AlgebraElement element(Rng& rng, int order, int max_terms = 3, int max_degree = 3, bool with_lambda = false) {
    AlgebraElement a(order);
    const int n = uniform(rng, 1, max_terms);
    for (int k = 0; k < n; ++k) a.add_term(monomial(rng, max_degree), scalar(rng, order, with_lambda));
    return a;
}

inline Polynomial polynomial(Rng& rng, int order, int max_terms = 3, int max_degree = 3) {
    Polynomial f(order);
    const int n = uniform(rng, 1, max_terms);
    for (int k = 0; k < n; ++k) {
        XMonomial m{};
        const int d = uniform(rng, 0, max_degree);
        for (int q = 0; q < d; ++q) ++m[uniform(rng, 0, kDim - 1)];
        f.add_term(m, scalar(rng, order, false));
    }
    return f;
}

inline TensorElement tensor_element(Rng& rng, int order, int max_terms = 3, int max_degree = 2,
                                    bool with_lambda = false) {
    TensorElement t(order);
    const int n = uniform(rng, 1, max_terms);
    for (int k = 0; k < n; ++k)
        t.add_term(TensorKey{monomial(rng, max_degree), monomial(rng, max_degree)}, scalar(rng, order, with_lambda));
    return t;
}

/// All coordinate monomials of total degree at most d.
inline std::vector<XMonomial> x_monomials(int d) {
    std::vector<XMonomial> out;
    for (int a = 0; a <= d; ++a)
        for (int b = 0; a + b <= d; ++b)
            for (int c = 0; a + b + c <= d; ++c)
                for (int e = 0; a + b + c + e <= d; ++e)
                    out.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                                   static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(e)});
    return out;
}

}  // namespace kappa::gen
