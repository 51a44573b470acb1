#include <gtest/gtest.h>

#include <limits>

#include "kappa/generators.hpp"
#include "kappa/linsolve.hpp"
#include "kappa/render.hpp"
#include "kappa/tensor.hpp"

using namespace kappa;

namespace {

GaussianRational gr(std::int64_t re, std::int64_t im = 0) { return {Rational(re), Rational(im)}; }

}  // namespace

TEST(Rational, NormalizesSignAndGcd) {
    const Rational r(6, -8);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 4);
    EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
    EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
    EXPECT_LT(Rational(-1, 2), Rational(1, 3));
    EXPECT_EQ(Rational(-7, 3).str(), "-7/3");
}

TEST(Rational, ZeroDenominatorThrows) {
    EXPECT_THROW(Rational(1, 0), std::domain_error);
    EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, OverflowThrowsInsteadOfWrapping) {
    const Rational big(std::numeric_limits<std::int64_t>::max() / 2);
    EXPECT_THROW(big * big, std::overflow_error);
    EXPECT_THROW(big + big + big, std::overflow_error);
}

TEST(GaussianRational, FieldAxiomsOnRandomValues) {
    gen::Rng rng(11);
    for (int s = 0; s < 200; ++s) {
        const GaussianRational a = gen::gaussian(rng);
        const GaussianRational b = gen::gaussian(rng);
        const GaussianRational c = gen::gaussian(rng);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * a.inverse(), gr(1));
        EXPECT_EQ((a / b) * b, a);
    }
    EXPECT_EQ(GaussianRational::I() * GaussianRational::I(), gr(-1));
    for (int k = -5; k < 6; ++k) EXPECT_EQ(i_power(k) * i_power(-k), gr(1));
}

TEST(LambdaPoly, ArithmeticAndEvaluation) {
    const LambdaPoly lam = LambdaPoly::lam();
    const LambdaPoly p = (lam + LambdaPoly(1)) * (lam - LambdaPoly(1));
    EXPECT_EQ(p.degree(), 2);
    EXPECT_EQ(p.evaluate(gr(3)), gr(8));
    EXPECT_TRUE((p - lam * lam + LambdaPoly(1)).is_zero());
    EXPECT_EQ(LambdaPoly().degree(), -1);
}

TEST(Scalar, TruncatesAboveOrder) {
    const Scalar a = Scalar::a0(2);
    EXPECT_FALSE((a * a).is_zero());
    EXPECT_TRUE((a * a * a).is_zero());
    EXPECT_EQ((a + Scalar::one(2)).graded_part(1), a);
}

TEST(Scalar, SubstituteLambdaCommutesWithProducts) {
    gen::Rng rng(5);
    for (int s = 0; s < 100; ++s) {
        const Scalar a = gen::scalar(rng, 4, true);
        const Scalar b = gen::scalar(rng, 4, true);
        const Rational v(gen::uniform(rng, -3, 3), gen::uniform(rng, 1, 4));
        EXPECT_EQ((a * b).substitute_lambda(v), a.substitute_lambda(v) * b.substitute_lambda(v));
    }
}

TEST(Scalar, MismatchedOrdersThrow) { EXPECT_THROW(Scalar::one(2) + Scalar::one(3), std::invalid_argument); }

TEST(Algebra, HeisenbergRelations) {
    const int n = 3;
    for (int mu = 0; mu < kDim; ++mu)
        for (int nu = 0; nu < kDim; ++nu) {
            const AlgebraElement c = commutator(algebra::p(mu, n), algebra::x(nu, n));
            const AlgebraElement expected =
                mu == nu ? algebra::constant(Scalar(n, -GaussianRational::I() * gr(eta(mu)))) : AlgebraElement(n);
            EXPECT_EQ(c, expected) << mu << nu;
            EXPECT_TRUE(commutator(algebra::x(mu, n), algebra::x(nu, n)).is_zero());
            EXPECT_TRUE(commutator(algebra::p(mu, n), algebra::p(nu, n)).is_zero());
        }
}

TEST(Algebra, NormalOrderingPutsCoordinatesLeft) {
    const int n = 2;
    EXPECT_EQ(render::text(algebra::p(1, n) * algebra::x(1, n)), "-I + x1*p1");
    EXPECT_EQ(render::text(algebra::p(0, n) * algebra::x(0, n)), "I + x0*p0");
    const AlgebraElement p2x2 = power(algebra::p(1, n), 2) * power(algebra::x(1, n), 2);
    EXPECT_EQ(render::text(p2x2), "-2 - 4*I*x1*p1 + x1^2*p1^2");
}

TEST(Algebra, AssociativityOnRandomTriples) {
    gen::Rng rng(1);
    for (int s = 0; s < 200; ++s) {
        const AlgebraElement a = gen::element(rng, 3, 3, 3, true);
        const AlgebraElement b = gen::element(rng, 3, 3, 3, true);
        const AlgebraElement c = gen::element(rng, 3, 3, 3, true);
        ASSERT_TRUE(((a * b) * c - a * (b * c)).is_zero()) << s;
    }
}

TEST(Algebra, DistributivityAndCommutatorIdentities) {
    gen::Rng rng(2);
    for (int s = 0; s < 100; ++s) {
        const AlgebraElement a = gen::element(rng, 3);
        const AlgebraElement b = gen::element(rng, 3);
        const AlgebraElement c = gen::element(rng, 3);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(commutator(a, b), -commutator(b, a));
        const AlgebraElement jacobi = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                                      commutator(c, commutator(a, b));
        EXPECT_TRUE(jacobi.is_zero());
    }
}

TEST(Algebra, ExponentialOfCommutingSummands) {
    const int n = 4;
    const LambdaPoly lam = LambdaPoly::lam();
    EXPECT_EQ(z_power(lam, n) * z_power(-lam, n), algebra::one(n));
    EXPECT_EQ(z_power(lam, n) * z_power(LambdaPoly(1) - lam, n), z_power(1, n));
    EXPECT_EQ(graded_exp(a_element(n)), z_power(1, n));
    EXPECT_TRUE(commutator(a_element(n), s_element(n)).is_zero());
}

TEST(Action, CompositionOnRandomElements) {
    gen::Rng rng(3);
    for (int s = 0; s < 100; ++s) {
        const AlgebraElement h1 = gen::element(rng, 3, 2, 3);
        const AlgebraElement h2 = gen::element(rng, 3, 2, 3);
        const Polynomial f = gen::polynomial(rng, 3, 3, 4);
        ASSERT_EQ(act(h1 * h2, f), act(h1, act(h2, f))) << s;
    }
}

TEST(Action, MomentaDifferentiate) {
    const int n = 2;
    const Polynomial f = poly::mul(poly::x(1, n), poly::x(1, n));
    const Polynomial df = act(algebra::p(1, n), f);
    EXPECT_EQ(df, Polynomial(n, XMonomial{0, 1, 0, 0}, Scalar(n, gr(0, -2))));
    EXPECT_EQ(act(algebra::x(2, n), f), poly::mul(poly::x(2, n), f));
}

TEST(Tensor, LegwiseProductAndFlip) {
    gen::Rng rng(4);
    for (int s = 0; s < 100; ++s) {
        const TensorElement a = gen::tensor_element(rng, 3);
        const TensorElement b = gen::tensor_element(rng, 3);
        EXPECT_EQ(tau0(tau0(a)), a);
        EXPECT_EQ(tau0(a * b), tau0(a) * tau0(b));
    }
    const int n = 2;
    const TensorElement t = tensor::pure(algebra::p(1, n), algebra::x(1, n)) * tensor::pure(algebra::x(1, n), algebra::p(1, n));
    EXPECT_EQ(t, tensor::pure(algebra::p(1, n) * algebra::x(1, n), algebra::x(1, n) * algebra::p(1, n)));
}

TEST(Tensor, ExponentialInverse) {
    const int n = 4;
    const TensorElement rho = Scalar(n, GaussianRational::I()) *
                              (tensor::pure(a_element(n), s_element(n)) - tensor::pure(s_element(n), a_element(n)));
    EXPECT_EQ(t_exp(rho) * t_exp(-rho), tensor::one(n));
    EXPECT_EQ(tau0(t_exp(rho)), t_exp(-rho));
}

TEST(Tensor, ThreeLegEmbeddingsMultiply) {
    gen::Rng rng(8);
    const TensorElement a = gen::tensor_element(rng, 2);
    const TensorElement b = gen::tensor_element(rng, 2);
    using tensor3::Legs;
    EXPECT_EQ(tensor3::mul(tensor3::embed(a, Legs::k12), tensor3::embed(b, Legs::k12)),
              tensor3::embed(a * b, Legs::k12));
    EXPECT_EQ(tensor3::mul(tensor3::embed(a, Legs::k13), tensor3::embed(b, Legs::k13)),
              tensor3::embed(a * b, Legs::k13));
}

TEST(Canonicalize, LeftLegIsCoordinateFreeAndIdempotent) {
    const int n = 3;
    gen::Rng rng(9);
    for (RelationTag tag : {RelationTag::R0, RelationTag::R, RelationTag::Rtilde}) {
        const RelationSet rel(tag, LambdaPoly::lam(), n);
        for (int s = 0; s < 40; ++s) {
            const TensorElement t = gen::tensor_element(rng, n, 3, 2, true);
            CanonicalizeStats stats;
            const TensorElement c = canonicalize(t, rel, {}, &stats);
            for (const auto& [k, v] : c) EXPECT_EQ(k.left.x_degree(), 0);
            // The last round only moves finished terms.
            EXPECT_LE(stats.rounds, stats.round_bound + 1);
            EXPECT_EQ(canonicalize(c, rel), c);
        }
    }
}

TEST(Canonicalize, PeelOrderDoesNotMatter) {
    const int n = 3;
    gen::Rng rng(10);
    for (RelationTag tag : {RelationTag::R, RelationTag::Rtilde}) {
        const RelationSet rel(tag, LambdaPoly::lam(), n);
        for (int s = 0; s < 40; ++s) {
            const TensorElement t = gen::tensor_element(rng, n, 3, 3, true);
            EXPECT_EQ(canonicalize(t, rel, PeelOrder{true, static_cast<std::uint64_t>(s)}), canonicalize(t, rel));
        }
    }
}

TEST(Canonicalize, IsRightModuleMap) {
    const int n = 3;
    gen::Rng rng(12);
    const RelationSet rel(RelationTag::R, LambdaPoly::lam(), n);
    for (int s = 0; s < 30; ++s) {
        const TensorElement t = gen::tensor_element(rng, n, 2, 2);
        const TensorElement u = gen::tensor_element(rng, n, 2, 2);
        EXPECT_TRUE(equal_mod(t * u, canonicalize(t, rel) * u, rel));
    }
}

TEST(Canonicalize, UndeformedRelationsMoveCoordinatesAcross) {
    const int n = 2;
    const RelationSet rel(RelationTag::R0, LambdaPoly::lam(), n);
    EXPECT_EQ(canonicalize(tensor::left(algebra::x(1, n)), rel), tensor::right(algebra::x(1, n)));
    EXPECT_THROW(canonicalize(tensor::left(algebra::x(1, 3)), rel), std::invalid_argument);
    EXPECT_THROW(parse_relation("Rhat"), std::invalid_argument);
}

TEST(Linsolve, UniqueParametricInfeasible) {
    ExactMatrix a(2, 2);
    a.at(0, 0) = gr(1);
    a.at(0, 1) = gr(1);
    a.at(1, 0) = gr(1);
    a.at(1, 1) = gr(-1);
    const SolutionSpace u = solve(a, {gr(3), gr(1)});
    ASSERT_EQ(u.kind, SolutionKind::Unique);
    EXPECT_EQ(u.particular[0], gr(2));
    EXPECT_EQ(u.particular[1], gr(1));

    ExactMatrix b(2, 2);
    b.at(0, 0) = gr(1);
    b.at(0, 1) = gr(2);
    b.at(1, 0) = gr(2);
    b.at(1, 1) = gr(4);
    EXPECT_EQ(solve(b, {gr(1), gr(2)}).kind, SolutionKind::Parametric);
    EXPECT_EQ(solve(b, {gr(1), gr(3)}).kind, SolutionKind::Infeasible);
    EXPECT_THROW(solve(b, {gr(1)}), std::invalid_argument);
}

TEST(Linsolve, RandomConsistentSystemsAreSolved) {
    gen::Rng rng(13);
    for (int s = 0; s < 100; ++s) {
        const std::size_t m = static_cast<std::size_t>(gen::uniform(rng, 1, 6));
        const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 6));
        ExactMatrix a(m, n);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < n; ++c)
                a.at(r, c) = gr(gen::uniform(rng, -3, 3), gen::uniform(rng, 0, 3) == 0 ? 1 : 0);
        std::vector<GaussianRational> x(n);
        for (auto& v : x) v = gr(gen::uniform(rng, -4, 4));
        std::vector<GaussianRational> b(m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < n; ++c) b[r] += a.at(r, c) * x[c];
        const SolutionSpace sol = solve(a, b);
        ASSERT_NE(sol.kind, SolutionKind::Infeasible);
        EXPECT_EQ(sol.rank + sol.nullspace.size(), n);
        auto residual_zero = [&](const std::vector<GaussianRational>& v, bool homogeneous) {
            for (std::size_t r = 0; r < m; ++r) {
                GaussianRational acc;
                for (std::size_t c = 0; c < n; ++c) acc += a.at(r, c) * v[c];
                if (!(acc == (homogeneous ? GaussianRational{} : b[r]))) return false;
            }
            return true;
        };
        EXPECT_TRUE(residual_zero(sol.particular, false));
        for (const auto& v : sol.nullspace) EXPECT_TRUE(residual_zero(v, true));
    }
}
