#pragma once

// The abelian twist family
//   F = exp(i(lam S (x) A - (1 - lam) A (x) S)),  S = x_k p_k,  A = a0 p0,
// with the coproducts, realizations, R-matrix and star products it induces.

#include <array>
#include <stdexcept>
#include <vector>

#include "kappa/algebra.hpp"
#include "kappa/tensor.hpp"

namespace kappa {

/// One summand c * (P (x) Q) of a twist exponent, with P and Q primitive.
struct TwistTerm {
    Scalar coeff;
    AlgebraElement left;
    AlgebraElement right;
};

enum class CoproductMethod { Twist, Homomorphism };

enum class StarTwist { F, Ftilde };

/// Everything derived from one choice of lambda and truncation order.
/// Immutable after construction.
class Deformation {
public:
    Deformation(LambdaPoly lambda, int order)
        : lambda_(std::move(lambda)),
          order_(order),
          a_(a_element(order)),
          s_(s_element(order)),
          r0_(RelationTag::R0, lambda_, order),
          r_(RelationTag::R, lambda_, order),
          rtilde_(RelationTag::Rtilde, lambda_, order) {
        const Scalar i = Scalar(order, GaussianRational::I());
        exponent_terms_ = {
            {i * Scalar(order, lambda_), s_, a_},
            {-i * Scalar(order, LambdaPoly(1) - lambda_), a_, s_},
        };
        f_ = exponent_from(exponent_terms_);
        twist_ = t_exp(f_);
        twist_inverse_ = t_exp(-f_);
        rho_ = i * (tensor::pure(a_, s_) - tensor::pure(s_, a_));
        rmatrix_ = t_exp(rho_);
        rmatrix_inverse_ = t_exp(-rho_);
        for (int mu = 0; mu < kDim; ++mu) {
            gen_x_[mu] = coproduct(algebra::x(mu, order));
            gen_p_[mu] = coproduct(algebra::p(mu, order));
        }
    }

    [[nodiscard]] const LambdaPoly& lambda() const noexcept { return lambda_; }
    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] const AlgebraElement& A() const noexcept { return a_; }
    [[nodiscard]] const AlgebraElement& S() const noexcept { return s_; }
    [[nodiscard]] AlgebraElement Z(const LambdaPoly& c) const { return z_power(c, order_); }
    [[nodiscard]] Scalar lam() const { return Scalar(order_, lambda_); }

    [[nodiscard]] const RelationSet& relations(RelationTag t) const {
        switch (t) {
            case RelationTag::R0: return r0_;
            case RelationTag::R: return r_;
            case RelationTag::Rtilde: return rtilde_;
        }
        return r0_;
    }

    [[nodiscard]] const std::vector<TwistTerm>& twist_exponent_terms() const noexcept { return exponent_terms_; }
    [[nodiscard]] const TensorElement& twist_exponent() const noexcept { return f_; }
    [[nodiscard]] const TensorElement& twist() const noexcept { return twist_; }
    [[nodiscard]] const TensorElement& twist_inverse() const noexcept { return twist_inverse_; }

    /// rho = i(A (x) S - S (x) A), so that R = exp(rho).
    [[nodiscard]] const TensorElement& rho() const noexcept { return rho_; }
    [[nodiscard]] const TensorElement& rmatrix() const noexcept { return rmatrix_; }
    [[nodiscard]] const TensorElement& rmatrix_inverse() const noexcept { return rmatrix_inverse_; }

    /// Undeformed coproduct, reduced modulo R0. Coordinates enter as
    /// alpha x (x) 1 + (1 - alpha) 1 (x) x; the class does not depend on alpha.
    [[nodiscard]] TensorElement coproduct0(const AlgebraElement& h, const Rational& alpha = Rational(1)) const {
        std::array<TensorElement, kDim> dx;
        std::array<TensorElement, kDim> dp;
        for (int mu = 0; mu < kDim; ++mu) {
            dx[mu] = GaussianRational(alpha) * tensor::left(algebra::x(mu, order_)) +
                     GaussianRational(Rational(1) - alpha) * tensor::right(algebra::x(mu, order_));
            dp[mu] = tensor::left(algebra::p(mu, order_)) + tensor::right(algebra::p(mu, order_));
        }
        return homomorphic_image(h, dx, dp, r0_);
    }

    /// Deformed coproduct reduced modulo R.
    [[nodiscard]] TensorElement coproduct(const AlgebraElement& h, CoproductMethod method = CoproductMethod::Twist) const {
        if (method == CoproductMethod::Twist) return canonicalize(t_adjoint(f_, coproduct0(h)), r_);
        return homomorphic_image(h, gen_x_, gen_p_, r_);
    }

    /// tau0 Delta tau0, reduced modulo Rtilde.
    [[nodiscard]] TensorElement coproduct_opposite(const AlgebraElement& h) const {
        return canonicalize(tau0(coproduct(h)), rtilde_);
    }

    /// R Delta(h) R^{-1}, reduced modulo Rtilde.
    [[nodiscard]] TensorElement rmatrix_conjugate(const AlgebraElement& h) const {
        return canonicalize(t_adjoint(rho_, coproduct(h)), rtilde_);
    }

    /// tau = tau0 R applied to t.
    [[nodiscard]] TensorElement flip(const TensorElement& t) const { return tau0(rmatrix_ * t); }

    /// m0 of the leg-wise action of t on f (x) g.
    [[nodiscard]] static Polynomial act_legwise(const TensorElement& t, const Polynomial& f, const Polynomial& g) {
        Polynomial r(t.order());
        for (const auto& [k, c] : t) {
            const Polynomial lf = act(algebra::monomial(k.left, t.order()), f);
            if (lf.is_zero()) continue;
            const Polynomial rg = act(algebra::monomial(k.right, t.order()), g);
            if (rg.is_zero()) continue;
            r += c * poly::mul(lf, rg);
        }
        return r;
    }

    /// f -> m0(F^{-1} |> (x_mu (x) f)).
    [[nodiscard]] Polynomial realization_operator(int mu, const Polynomial& f) const {
        return act_legwise(twist_inverse_, poly::x(mu, order_), f);
    }

    /// Closed forms xhat_i = x_i Z^{-lam}, xhat_0 = x0 - a0(1 - lam) S.
    [[nodiscard]] AlgebraElement xhat(int mu) const {
        if (mu == 0)
            return algebra::x(0, order_) - (Scalar::a0(order_) * Scalar(order_, LambdaPoly(1) - lambda_)) * s_;
        return algebra::x(mu, order_) * Z(-lambda_);
    }

    [[nodiscard]] Polynomial star_product(const Polynomial& f, const Polynomial& g, StarTwist which) const {
        const TensorElement& t = which == StarTwist::F ? twist_inverse_ : twist_inverse_tilde();
        return act_legwise(t, f, g);
    }

    /// (F (x) 1)(Delta0 (x) id)F == (1 (x) F)(id (x) Delta0)F, exactly in H^{(x)3}.
    /// With mutate set, one exponent summand of (Delta0 (x) id)F has its sign flipped.
    [[nodiscard]] bool verify_cocycle(bool mutate = false) const {
        TensorElement3 lhs_exp(order_);
        TensorElement3 rhs_exp(order_);
        bool first = true;
        for (const auto& term : exponent_terms_) {
            const Scalar c = (mutate && first) ? -term.coeff : term.coeff;
            first = false;
            // (Delta0 (x) id)(P (x) Q) = P (x) 1 (x) Q + 1 (x) P (x) Q
            lhs_exp += c * (tensor3::embed(tensor::pure(term.left, term.right), tensor3::Legs::k13) +
                            tensor3::embed(tensor::pure(term.left, term.right), tensor3::Legs::k23));
            // (id (x) Delta0)(P (x) Q) = P (x) Q (x) 1 + P (x) 1 (x) Q
            rhs_exp += term.coeff * (tensor3::embed(tensor::pure(term.left, term.right), tensor3::Legs::k12) +
                                     tensor3::embed(tensor::pure(term.left, term.right), tensor3::Legs::k13));
        }
        const TensorElement3 lhs = tensor3::mul(tensor3::embed(twist_, tensor3::Legs::k12), tensor3::exp(lhs_exp));
        const TensorElement3 rhs = tensor3::mul(tensor3::embed(twist_, tensor3::Legs::k23), tensor3::exp(rhs_exp));
        return lhs == rhs;
    }

    /// (eps (x) id)F = 1 = (id (x) eps)F, eps projecting onto the unit monomial.
    [[nodiscard]] bool verify_counit() const {
        AlgebraElement left_eps(order_);
        AlgebraElement right_eps(order_);
        for (const auto& [k, c] : twist_) {
            if (k.left.is_unit()) left_eps.add_term(k.right, c);
            if (k.right.is_unit()) right_eps.add_term(k.left, c);
        }
        const AlgebraElement one = algebra::one(order_);
        return left_eps == one && right_eps == one;
    }

    [[nodiscard]] TensorElement twist_tilde() const { return tau0(twist_); }
    [[nodiscard]] TensorElement twist_inverse_tilde() const { return tau0(twist_inverse_); }

private:
    TensorElement exponent_from(const std::vector<TwistTerm>& terms) const {
        TensorElement f(order_);
        for (const auto& t : terms) f += t.coeff * tensor::pure(t.left, t.right);
        return f;
    }

    /// Image of h under the algebra map sending x_mu -> dx[mu], p_mu -> dp[mu],
    /// reduced modulo rel after every factor.
    TensorElement homomorphic_image(const AlgebraElement& h, const std::array<TensorElement, kDim>& dx,
                                    const std::array<TensorElement, kDim>& dp, const RelationSet& rel) const {
        TensorElement result(order_);
        for (const auto& [m, c] : h) {
            TensorElement acc = c * tensor::one(order_);
            for (int mu = 0; mu < kDim; ++mu)
                for (int k = 0; k < m.x[mu]; ++k) acc = canonicalize(acc * dx[mu], rel);
            for (int mu = 0; mu < kDim; ++mu)
                for (int k = 0; k < m.p[mu]; ++k) acc = canonicalize(acc * dp[mu], rel);
            result += acc;
        }
        return result;
    }

    LambdaPoly lambda_;
    int order_;
    AlgebraElement a_;
    AlgebraElement s_;
    RelationSet r0_;
    RelationSet r_;
    RelationSet rtilde_;
    std::vector<TwistTerm> exponent_terms_;
    TensorElement f_;
    TensorElement twist_;
    TensorElement twist_inverse_;
    TensorElement rho_;
    TensorElement rmatrix_;
    TensorElement rmatrix_inverse_;
    std::array<TensorElement, kDim> gen_x_;
    std::array<TensorElement, kDim> gen_p_;
};

}  // namespace kappa
