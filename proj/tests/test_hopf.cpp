#include <gtest/gtest.h>

#include "kappa/generators.hpp"
#include "kappa/hopf.hpp"
#include "kappa/poincare.hpp"
#include "kappa/render.hpp"

using namespace kappa;

namespace {

const LambdaPoly kLam = LambdaPoly::lam();
const LambdaPoly kOne(1);

Scalar sc(int n, const LambdaPoly& p) { return Scalar(n, p); }

::testing::AssertionResult same_mod(const TensorElement& a, const TensorElement& b, const RelationSet& rel) {
    const TensorElement r = canonicalize(a - b, rel);
    if (r.is_zero()) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "residual " << render::text(r);
}

class Deformed : public ::testing::Test {
protected:
    static constexpr int n = 3;
    Deformation d{kLam, n};
    const RelationSet& r = d.relations(RelationTag::R);
    const RelationSet& rt = d.relations(RelationTag::Rtilde);
};

}  // namespace

TEST_F(Deformed, TwistIsInvertibleAndMapsToR) {
    EXPECT_EQ(d.twist() * d.twist_inverse(), tensor::one(n));
    EXPECT_EQ(d.rmatrix(), t_exp(d.rho()));
    EXPECT_EQ(d.rmatrix(), d.twist_tilde() * d.twist_inverse());
    EXPECT_EQ(tau0(d.rmatrix()), d.rmatrix_inverse());
}

TEST_F(Deformed, CocycleAndCounit) {
    EXPECT_TRUE(d.verify_cocycle());
    EXPECT_TRUE(d.verify_counit());
    EXPECT_FALSE(d.verify_cocycle(true));
}

TEST_F(Deformed, MomentumCoproducts) {
    // p0 is primitive and Z is group-like.
    const AlgebraElement p0 = algebra::p(0, n);
    EXPECT_EQ(d.coproduct(p0), tensor::left(p0) + tensor::right(p0));
    EXPECT_TRUE(same_mod(d.coproduct(d.Z(kOne)), tensor::pure(d.Z(kOne), d.Z(kOne)), r));
    for (int i = 1; i < kDim; ++i) {
        const AlgebraElement pi = algebra::p(i, n);
        EXPECT_EQ(d.coproduct(pi), tensor::pure(pi, d.Z(-kLam)) + tensor::pure(d.Z(kOne - kLam), pi));
    }
}

TEST_F(Deformed, CoordinateCoproductsBothForms) {
    const Scalar a0 = Scalar::a0(n);
    for (int i = 1; i < kDim; ++i) {
        const AlgebraElement xi = algebra::x(i, n);
        EXPECT_TRUE(same_mod(d.coproduct(xi), tensor::pure(xi, d.Z(kLam)), r));
        EXPECT_TRUE(same_mod(d.coproduct(xi), tensor::pure(d.Z(kLam - kOne), xi), r));
    }
    const AlgebraElement x0 = algebra::x(0, n);
    const AlgebraElement s = d.S();
    EXPECT_TRUE(same_mod(d.coproduct(x0), tensor::left(x0) + a0 * sc(n, kOne - kLam) * tensor::right(s), r));
    EXPECT_TRUE(same_mod(d.coproduct(x0), tensor::right(x0) - a0 * sc(n, kLam) * tensor::left(s), r));
}

TEST_F(Deformed, UndeformedLimit) {
    for (int mu = 0; mu < kDim; ++mu)
        for (const AlgebraElement& h : {algebra::x(mu, n), algebra::p(mu, n)})
            EXPECT_EQ(d.coproduct(h).graded_part(0), d.coproduct0(h).graded_part(0));
}

TEST_F(Deformed, CoproductIsHomomorphismOnRandomPairs) {
    gen::Rng rng(21);
    for (int s = 0; s < 40; ++s) {
        const AlgebraElement h1 = gen::element(rng, n, 2, 2);
        const AlgebraElement h2 = gen::element(rng, n, 2, 2);
        ASSERT_TRUE(same_mod(d.coproduct(h1 * h2), d.coproduct(h1) * d.coproduct(h2), r)) << s;
    }
}

TEST_F(Deformed, TwistAndHomomorphismMethodsAgree) {
    gen::Rng rng(22);
    for (int s = 0; s < 20; ++s) {
        const AlgebraElement h = gen::element(rng, n, 2, 3);
        EXPECT_EQ(d.coproduct(h, CoproductMethod::Twist), d.coproduct(h, CoproductMethod::Homomorphism));
    }
}

TEST_F(Deformed, RealizationClosedForms) {
    const Scalar a0 = Scalar::a0(n);
    for (int i = 1; i < kDim; ++i) EXPECT_EQ(d.xhat(i), algebra::x(i, n) * d.Z(-kLam));
    EXPECT_EQ(d.xhat(0), algebra::x(0, n) - a0 * sc(n, kOne - kLam) * d.S());
}

TEST_F(Deformed, KappaMinkowskiCommutators) {
    // [xhat0, xhat_i] = i a0 xhat_i; spatial coordinates commute.
    const Scalar ia0 = Scalar(n, GaussianRational::I()) * Scalar::a0(n);
    for (int i = 1; i < kDim; ++i) {
        EXPECT_EQ(commutator(d.xhat(0), d.xhat(i)), ia0 * d.xhat(i));
        for (int j = 1; j < kDim; ++j) EXPECT_TRUE(commutator(d.xhat(i), d.xhat(j)).is_zero());
    }
}

TEST_F(Deformed, StarProductWithCoordinateIsRealization) {
    for (const auto& m : gen::x_monomials(3)) {
        const Polynomial f = poly::monomial(m, n);
        for (int mu = 0; mu < kDim; ++mu)
            EXPECT_EQ(d.star_product(poly::x(mu, n), f, StarTwist::F), act(d.xhat(mu), f)) << render::text(m);
        EXPECT_EQ(d.star_product(poly::one(n), f, StarTwist::F), f);
        EXPECT_EQ(d.star_product(f, poly::one(n), StarTwist::F), f);
    }
}

TEST_F(Deformed, StarProductIsAssociative) {
    const auto ms = gen::x_monomials(1);
    for (const auto& a : ms)
        for (const auto& b : ms)
            for (const auto& c : ms) {
                const Polynomial f = poly::monomial(a, n);
                const Polynomial g = poly::monomial(b, n);
                const Polynomial h = poly::monomial(c, n);
                EXPECT_EQ(d.star_product(d.star_product(f, g, StarTwist::F), h, StarTwist::F),
                          d.star_product(f, d.star_product(g, h, StarTwist::F), StarTwist::F));
            }
}

TEST_F(Deformed, OppositeStarProduct) {
    const auto ms = gen::x_monomials(2);
    for (const auto& a : ms)
        for (const auto& b : ms) {
            const Polynomial f = poly::monomial(a, n);
            const Polynomial g = poly::monomial(b, n);
            EXPECT_EQ(d.star_product(f, g, StarTwist::F), d.star_product(g, f, StarTwist::Ftilde));
        }
}

TEST_F(Deformed, RMatrixIntertwinesCoproducts) {
    gen::Rng rng(23);
    for (int s = 0; s < 20; ++s) {
        const AlgebraElement h = gen::element(rng, n, 2, 2);
        EXPECT_EQ(d.rmatrix_conjugate(h), d.coproduct_opposite(h));
    }
    for (int i = 1; i < kDim; ++i) {
        const AlgebraElement xi = algebra::x(i, n);
        EXPECT_TRUE(same_mod(d.rmatrix_conjugate(xi), tensor::pure(xi, d.Z(kLam - kOne)), rt));
        EXPECT_TRUE(same_mod(d.rmatrix_conjugate(xi), tensor::pure(d.Z(kLam), xi), rt));
    }
}

TEST_F(Deformed, FlipIsInvolution) {
    gen::Rng rng(24);
    for (int s = 0; s < 20; ++s) {
        const TensorElement t = gen::tensor_element(rng, n);
        EXPECT_EQ(d.flip(d.flip(t)), t);
    }
}

TEST_F(Deformed, YangBaxter) {
    using tensor3::Legs;
    const TensorElement& rm = d.rmatrix();
    const auto r12 = tensor3::embed(rm, Legs::k12);
    const auto r13 = tensor3::embed(rm, Legs::k13);
    const auto r23 = tensor3::embed(rm, Legs::k23);
    EXPECT_EQ(tensor3::mul(tensor3::mul(r12, r13), r23), tensor3::mul(tensor3::mul(r23, r13), r12));
}

TEST(Deformation, NumericLambdaMatchesSubstitution) {
    const int n = 3;
    const Deformation sym(kLam, n);
    const Deformation half(Rational(1, 2), n);
    const AlgebraElement h = algebra::x(0, n) * algebra::p(1, n);
    EXPECT_EQ(sym.twist().substitute_lambda(Rational(1, 2)), half.twist());
    EXPECT_EQ(sym.coproduct(h).substitute_lambda(Rational(1, 2)), half.coproduct(h));
}

TEST(Poincare, LorentzAlgebraForAllCases) {
    const int n = 4;
    for (LorentzCase c : {LorentzCase::I, LorentzCase::II, LorentzCase::III}) {
        const LorentzRealization real = LorentzRealization::preset(c, kLam, n);
        const Report rep = lorentz_algebra_check(real, n);
        for (const auto& ch : rep.checks) EXPECT_TRUE(ch.passed) << case_name(c) << " " << ch.name << ": " << ch.residual;
    }
}

TEST(Poincare, CaseTwoBoostsCloseWithCoshA) {
    const int n = 4;
    const LorentzRealization real = LorentzRealization::preset(LorentzCase::II, Rational(1, 2), n);
    const AlgebraElement cosh_a =
        Scalar(n, GaussianRational(Rational(1, 2))) * (z_power(kOne, n) + z_power(-kOne, n));
    for (int i = 1; i < kDim; ++i)
        for (int j = i + 1; j < kDim; ++j)
            EXPECT_EQ(commutator(mhat(i, real, n), mhat(j, real, n)),
                      Scalar(n, -GaussianRational::I()) * (mij(i, j, n) * cosh_a));
}

TEST(Poincare, CaseThreeIsUndeformed) {
    const int n = 3;
    const LorentzRealization real = LorentzRealization::preset(LorentzCase::III, kLam, n);
    for (int i = 1; i < kDim; ++i)
        EXPECT_EQ(mhat(i, real, n), algebra::x(i, n) * algebra::p(0, n) - algebra::x(0, n) * algebra::p(i, n));
}

TEST(Poincare, BoostCoproductsMatchClosedForms) {
    const int n = 3;
    const Deformation d(kLam, n);
    const Deformation half(Rational(1, 2), n);
    for (int i = 1; i < kDim; ++i) {
        const auto ri = LorentzRealization::preset(LorentzCase::I, kLam, n);
        const auto rii = LorentzRealization::preset(LorentzCase::II, Rational(1, 2), n);
        const auto riii = LorentzRealization::preset(LorentzCase::III, kLam, n);
        EXPECT_TRUE(same_mod(d.coproduct(mhat(i, ri, n)), boost_coproduct_case_i(i, kLam, n),
                              d.relations(RelationTag::R)));
        EXPECT_TRUE(same_mod(half.coproduct(mhat(i, rii, n)), boost_coproduct_case_ii(i, n),
                              half.relations(RelationTag::R)));
        EXPECT_TRUE(same_mod(d.coproduct(mhat(i, riii, n)), boost_coproduct_case_iii(i, kLam, n),
                              d.relations(RelationTag::R)));
    }
}

TEST(Poincare, RotationsArePrimitive) {
    const int n = 3;
    const Deformation d(kLam, n);
    for (int i = 1; i < kDim; ++i)
        for (int j = i + 1; j < kDim; ++j)
            EXPECT_TRUE(same_mod(d.coproduct(mij(i, j, n)), rotation_coproduct(i, j, n), d.relations(RelationTag::R)));
}

TEST(Poincare, StandardBoostFromUndeformed) {
    const int n = 4;
    const auto rii = LorentzRealization::preset(LorentzCase::II, Rational(1, 2), n);
    for (int i = 1; i < kDim; ++i) EXPECT_EQ(mhat(i, rii, n), standard_boost_from_undeformed(i, n));
}

TEST(Poincare, CaseThreeLeavesLorentzSpan) {
    const int n = 2;
    const Deformation d(Rational(1, 2), n);
    for (LorentzCase c : {LorentzCase::I, LorentzCase::II, LorentzCase::III}) {
        const auto real = LorentzRealization::preset(c, d.lambda(), n);
        const int k = first_order_outside_span(d.coproduct(mhat(1, real, n)), lorentz_generators(real, n),
                                               d.relations(RelationTag::R), 2);
        if (c == LorentzCase::III) EXPECT_GE(k, 0);
        else EXPECT_LT(k, 0) << case_name(c);
    }
}

TEST(Poincare, BadIndicesThrow) {
    EXPECT_THROW(mij(0, 1, 2), std::invalid_argument);
    EXPECT_THROW(mij(2, 2, 2), std::invalid_argument);
    EXPECT_THROW(parse_case("iv"), std::invalid_argument);
    EXPECT_THROW(LorentzRealization::preset(LorentzCase::Custom, kLam, 2), std::invalid_argument);
}
