#include <gtest/gtest.h>

#include <map>
#include <set>

#include "kappa/generators.hpp"
#include "kappa/rexpand.hpp"
#include "golden.hpp"

using namespace kappa;
using kappa::golden::Golden;
using kappa::golden::third_order_golden;

namespace {

GaussianRational q(std::int64_t n, std::int64_t d = 1) { return GaussianRational(Rational(n, d)); }

class CaseTwo : public ::testing::Test {
protected:
    static void SetUpTestSuite() { results_ = new std::vector<ExpansionResult>(expand(3, LorentzCase::II)); }
    static void TearDownTestSuite() {
        delete results_;
        results_ = nullptr;
    }
    static const ExpansionResult& at(int k) { return results_->at(static_cast<std::size_t>(k - 1)); }
    static std::vector<ExpansionResult>* results_;
};

std::vector<ExpansionResult>* CaseTwo::results_ = nullptr;

}  // namespace

TEST(Ansatz, CountsPerOrder) {
    EXPECT_EQ(generate_ansatz(1).size(), 4u);
    EXPECT_EQ(generate_ansatz(2).size(), 10u);
    EXPECT_EQ(generate_ansatz(3).size(), 28u);
}

TEST(Ansatz, WordsHaveTheRightDegreeAndMirror) {
    for (int k = 1; k <= 4; ++k) {
        const auto terms = generate_ansatz(k);
        std::set<std::string> labels;
        for (std::size_t j = 0; j < terms.size(); ++j) {
            EXPECT_TRUE(labels.insert(terms[j].label()).second) << "duplicate word " << terms[j].label();
            const std::size_t m = mirror_index(terms, j);
            EXPECT_EQ(mirror_index(terms, m), j);
            EXPECT_NE(terms[j].name[0], terms[m].name[0]);
        }
    }
}

TEST(Ansatz, ContributionsHaveTheirOrder) {
    const int k = 3;
    const auto real = expansion_realization(LorentzCase::II, k);
    for (const auto& t : generate_ansatz(k)) {
        const TensorElement c = t.contribution(real, k);
        EXPECT_EQ(c.min_grade(), k) << t.label();
    }
}

TEST_F(CaseTwo, FirstOrderIsUnique) {
    const ExpansionResult& r = at(1);
    EXPECT_EQ(r.status, SolutionKind::Unique);
    EXPECT_EQ(r.equations, 7u);
    EXPECT_EQ(r.terms.size(), 4u);
    std::map<std::string, GaussianRational> by_label;
    for (std::size_t j = 0; j < r.terms.size(); ++j) by_label[r.terms[j].label()] = r.constant[j];
    EXPECT_EQ(by_label["Mhat_i0 ox p_i"], q(-1));
    EXPECT_EQ(by_label["p_i ox Mhat_i0"], q(1));
    EXPECT_TRUE(r.substitution_verified);
}

TEST_F(CaseTwo, FirstOrderIsRhoAtLeadingOrder) {
    const Deformation d(Rational(1, 2), 1);
    const auto real = expansion_realization(LorentzCase::II, 1);
    EXPECT_TRUE(canonicalize(at(1).value(real, 1) - d.rho(), d.relations(RelationTag::Rtilde)).is_zero());
}

TEST_F(CaseTwo, SecondOrderVanishes) {
    const ExpansionResult& r = at(2);
    EXPECT_EQ(r.status, SolutionKind::Unique);
    EXPECT_EQ(r.equations, 16u);
    EXPECT_EQ(r.terms.size(), 10u);
    for (const auto& c : r.constant) EXPECT_TRUE(c.is_zero());
    EXPECT_TRUE(r.substitution_verified);
}

TEST_F(CaseTwo, ThirdOrderMatchesGolden) {
    const ExpansionResult& r = at(3);
    ASSERT_EQ(r.status, SolutionKind::Parametric);
    EXPECT_EQ(r.equations, 35u);
    EXPECT_EQ(r.terms.size(), 28u);
    ASSERT_EQ(r.parameters, (std::vector<std::string>{"alpha1", "beta1", "alpha2"}));
    const auto& golden = third_order_golden();
    std::size_t matched = 0;
    for (std::size_t j = 0; j < r.terms.size(); ++j) {
        const std::string label = r.terms[j].label();
        const auto it = golden.find(label);
        const Golden g = it == golden.end() ? Golden{0, 0, 0, 0} : it->second;
        if (it != golden.end()) ++matched;
        EXPECT_EQ(r.constant[j], q(g.constant, 24)) << label;
        EXPECT_EQ(r.linear[j][0], q(g.alpha1, 24)) << label;
        EXPECT_EQ(r.linear[j][1], q(g.beta1, 24)) << label;
        EXPECT_EQ(r.linear[j][2], q(g.alpha2, 24)) << label;
    }
    EXPECT_EQ(matched, golden.size());
    EXPECT_TRUE(r.substitution_verified);
}

TEST_F(CaseTwo, ThirdOrderRemainderOracle) {
    // The order-3 remainder written out by hand, moved to canonical form.
    const int n = 3;
    const Deformation d(Rational(1, 2), n);
    const auto real = expansion_realization(LorentzCase::II, n);
    const TensorElement target = bch_target(3, {at(1).value(real, n), at(2).value(real, n)}, d);
    auto p = [](int mu) { return algebra::p(mu, n); };
    const AlgebraElement p0 = p(0);
    TensorElement e(n);
    for (int i = 1; i < kDim; ++i) {
        TensorElement t(n);
        auto add = [&t](std::int64_t c, const AlgebraElement& a, const AlgebraElement& b) {
            t += q(c) * tensor::pure(a, b);
        };
        add(3, p0 * p0 * p0, p(i));
        add(-3, p(i), p0 * p0 * p0);
        add(3, p0, p(i) * p0 * p0);
        add(-3, p(i) * p0 * p0, p0);
        add(2, p0 * p0, p(i) * p0);
        add(-2, p(i) * p0, p0 * p0);
        for (int j = 1; j < kDim; ++j) {
            add(-2, p(i) * p(j) * p0, p(j));
            add(2, p(j), p(i) * p(j) * p0);
            add(-2, p(i) * p(j), p(j) * p0);
            add(2, p(j) * p0, p(i) * p(j));
            add(-2, p(i) * p0, p(j) * p(j));
            add(2, p(j) * p(j), p(i) * p0);
            add(-2, p0, p(i) * p(j) * p(j));
            add(2, p(i) * p(j) * p(j), p0);
        }
        e += tensor::right(algebra::x(i, n)) * t;
    }
    e = Scalar(n, GaussianRational(Rational(0), Rational(-1, 24))) * Scalar::a0(n, 3) * e;
    EXPECT_TRUE(canonicalize(e - target, d.relations(RelationTag::Rtilde)).is_zero());
}

TEST_F(CaseTwo, SubstitutionHoldsForRandomParameters) {
    const int n = 3;
    const Deformation d(Rational(1, 2), n);
    const auto real = expansion_realization(LorentzCase::II, n);
    gen::Rng rng(31);
    for (int s = 0; s < 10; ++s) {
        std::vector<GaussianRational> params;
        for (int k = 0; k < 3; ++k) params.push_back(q(gen::uniform(rng, -9, 9), gen::uniform(rng, 1, 5)));
        const TensorElement sum = at(1).value(real, n) + at(3).value(params, real, n);
        EXPECT_TRUE(canonicalize(d.rmatrix() - t_exp(sum), d.relations(RelationTag::Rtilde)).is_zero());
    }
}

TEST_F(CaseTwo, ParametersSpanWordDependencies) {
    // Distinct parameter values give the same class mod Rtilde: the words are dependent there.
    const auto real = expansion_realization(LorentzCase::II, 3);
    const Deformation d(Rational(1, 2), 3);
    const ExpansionResult& r = at(3);
    EXPECT_TRUE(equal_mod(r.value({q(1), q(2), q(3)}, real, 3), r.value(real, 3), d.relations(RelationTag::Rtilde)));
    EXPECT_NE(r.coefficients({q(1), q(2), q(3)}), r.coefficients(r.chosen));
}

TEST_F(CaseTwo, WedgeUnderEqualAlphaBeta) {
    const ExpansionResult& r = at(3);
    EXPECT_TRUE(wedge_check(r, {q(-6), q(-6), q(-2)}));
    EXPECT_TRUE(wedge_check(r, {q(5), q(5), q(7)}));
    EXPECT_FALSE(wedge_check(r, {q(1), q(2), q(3)}));
    gen::Rng rng(32);
    for (int s = 0; s < 20; ++s) {
        const GaussianRational a = q(gen::uniform(rng, -20, 20), gen::uniform(rng, 1, 6));
        const GaussianRational b = q(gen::uniform(rng, -20, 20), gen::uniform(rng, 1, 6));
        EXPECT_TRUE(wedge_check(r, {a, a, b}));
        if (!(a == b)) {
            EXPECT_FALSE(wedge_check(r, {a, b, b}));
        }
    }
}

TEST_F(CaseTwo, WedgeCheckRejectsSymmetrizedCoefficients) {
    const ExpansionResult& r = at(3);
    std::vector<GaussianRational> c = r.coefficients({q(-6), q(-6), q(-2)});
    for (std::size_t j = 0; j < c.size(); ++j)
        if (r.terms[j].name[0] == 'd') c[j] = c[mirror_index(r.terms, j)];
    EXPECT_FALSE(wedge_check(r.terms, c));
}

TEST_F(CaseTwo, LowerOrdersAreWedge) {
    const auto real = expansion_realization(LorentzCase::II, 1);
    EXPECT_TRUE(is_wedge(at(1).value(real, 1)));
    EXPECT_TRUE(wedge_check(at(1), {}));
}

TEST_F(CaseTwo, TranslationPreservesValue) {
    for (int k = 1; k <= 3; ++k) {
        const ExpansionResult& r = at(k);
        const auto real = expansion_realization(LorentzCase::II, k);
        const TranslatedExpansion t = translate_basis(r, LorentzCase::II, LorentzCase::I);
        EXPECT_EQ(t.value, r.value(real, k)) << k;
        const TranslatedExpansion same = translate_basis(r, LorentzCase::II, LorentzCase::II);
        EXPECT_EQ(same.value, r.value(real, k));
    }
    const TranslatedExpansion t1 = translate_basis(at(1), LorentzCase::II, LorentzCase::I);
    ASSERT_EQ(t1.terms.size(), 4u);
    EXPECT_EQ(t1.terms[0].label, "M_i0*Z^[-1/2] ox p_i");
    EXPECT_THROW(translate_basis(at(1), LorentzCase::II, LorentzCase::III), std::invalid_argument);
}

TEST_F(CaseTwo, Rendering) {
    EXPECT_EQ(to_latex(at(2)), "r_{2} = 0");
    const std::string tex = to_latex(at(3));
    EXPECT_NE(tex.find("r_{3} = -i a_0^{3}"), std::string::npos);
    EXPECT_NE(tex.find("\\alpha_1"), std::string::npos);
    EXPECT_NE(to_text(at(3)).find("c9 = -1/12 - 1/24*alpha1"), std::string::npos);
}

TEST(CaseThree, ThirdOrderIsInfeasible) {
    const auto rs = expand(4, LorentzCase::III);
    ASSERT_EQ(rs.size(), 3u);
    EXPECT_EQ(rs[0].status, SolutionKind::Unique);
    EXPECT_EQ(rs[1].status, SolutionKind::Unique);
    EXPECT_EQ(rs[2].status, SolutionKind::Infeasible);
    EXPECT_THROW(rs[2].coefficients({}), std::domain_error);
    EXPECT_THROW(solve_order(4, rs, LorentzCase::III), std::domain_error);
}

TEST(CaseTwoHigher, FourthOrderIsParametric) {
    const auto rs = expand(4, LorentzCase::II);
    ASSERT_EQ(rs.size(), 4u);
    EXPECT_EQ(rs[3].status, SolutionKind::Parametric);
    EXPECT_TRUE(rs[3].substitution_verified);
    EXPECT_EQ(rs[3].parameters.front(), "t1");
}

TEST(Expansion, BadArguments) {
    const Deformation d(Rational(1, 2), 2);
    EXPECT_THROW(bch_remainder(2, {}, d), std::invalid_argument);
    EXPECT_THROW(bch_target(2, {TensorElement(2)}, d), std::domain_error);
    EXPECT_THROW(solve_order(0, {}, LorentzCase::II), std::invalid_argument);
    EXPECT_THROW(solve_order(2, {}, LorentzCase::II), std::invalid_argument);
}
