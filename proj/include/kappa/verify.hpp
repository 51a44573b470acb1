#pragma once

// Verification suites. Every check compares exactly, in the quotient named in
// the check; a failed check carries the rendered residual.

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "kappa/generators.hpp"
#include "kappa/hopf.hpp"
#include "kappa/poincare.hpp"
#include "kappa/render.hpp"
#include "kappa/report.hpp"

namespace kappa {

struct VerifyOptions {
    /// Symbolic lambda when unset.
    std::optional<Rational> lambda;
    int order = 3;
    std::uint64_t seed = 0;
    /// Random samples per property check.
    int samples = 100;

    [[nodiscard]] LambdaPoly lambda_poly() const { return lambda ? LambdaPoly(*lambda) : LambdaPoly::lam(); }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"algebra", "coalgebra", "twist", "rmatrix", "poincare"};
    return names;
}

namespace detail {

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    [[nodiscard]] double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline void expect_equal(Report& rep, const std::string& name, const AlgebraElement& a, const AlgebraElement& b) {
    rep.add(name, a == b, render::text(a - b));
}

inline void expect_equal(Report& rep, const std::string& name, const TensorElement& a, const TensorElement& b) {
    rep.add(name, a == b, render::text(a - b));
}

inline void expect_equal(Report& rep, const std::string& name, const Polynomial& a, const Polynomial& b) {
    rep.add(name, a == b, render::text(a - b));
}

inline void expect_equal_mod(Report& rep, const std::string& name, const TensorElement& a, const TensorElement& b,
                             const RelationSet& rel) {
    const TensorElement r = canonicalize(a - b, rel);
    rep.add(name + " mod " + std::string(relation_name(rel.tag())), r.is_zero(), render::text(r));
}

inline std::string gen_name(char g, int mu) { return std::string(1, g) + std::to_string(mu); }

/// Failures among many random samples are folded into one check.
class SampleCheck {
public:
    SampleCheck(Report& rep, std::string name) : rep_(rep), name_(std::move(name)) {}
    void fail(int sample, std::string residual) {
        if (!failed_) residual_ = "sample " + std::to_string(sample) + ": " + std::move(residual);
        failed_ = true;
    }
    ~SampleCheck() { rep_.add(name_, !failed_, residual_); }
    SampleCheck(const SampleCheck&) = delete;
    SampleCheck& operator=(const SampleCheck&) = delete;

private:
    Report& rep_;
    std::string name_;
    bool failed_ = false;
    std::string residual_;
};

}  // namespace detail

/// Heisenberg relations, associativity, and the action on coordinates.
inline Report verify_algebra(const VerifyOptions& o) {
    using detail::expect_equal;
    const detail::Timer timer;
    Report rep;
    rep.suite = "algebra";
    const int n = o.order;
    const GaussianRational i_unit = GaussianRational::I();
    for (int mu = 0; mu < kDim; ++mu)
        for (int nu = 0; nu < kDim; ++nu) {
            const AlgebraElement expected =
                mu == nu ? algebra::constant(Scalar(n, -i_unit * GaussianRational(eta(mu)))) : AlgebraElement(n);
            expect_equal(rep, "[p" + std::to_string(mu) + ", x" + std::to_string(nu) + "]",
                         commutator(algebra::p(mu, n), algebra::x(nu, n)), expected);
            expect_equal(rep, "[x" + std::to_string(mu) + ", x" + std::to_string(nu) + "]",
                         commutator(algebra::x(mu, n), algebra::x(nu, n)), AlgebraElement(n));
            expect_equal(rep, "[p" + std::to_string(mu) + ", p" + std::to_string(nu) + "]",
                         commutator(algebra::p(mu, n), algebra::p(nu, n)), AlgebraElement(n));
            const Polynomial act_x = act(algebra::p(mu, n), poly::x(nu, n));
            const Polynomial expected_act =
                mu == nu ? Polynomial(n, XMonomial{}, Scalar(n, -i_unit * GaussianRational(eta(mu)))) : Polynomial(n);
            expect_equal(rep, "p" + std::to_string(mu) + " |> x" + std::to_string(nu), act_x, expected_act);
        }
    expect_equal(rep, "[A, S]", commutator(a_element(n), s_element(n)), AlgebraElement(n));
    expect_equal(rep, "Z^[lam] Z^[1-lam] = Z", z_power(LambdaPoly::lam(), n) * z_power(LambdaPoly(1) - LambdaPoly::lam(), n),
                 z_power(1, n));

    gen::Rng rng(o.seed);
    {
        detail::SampleCheck check(rep, "associativity on random triples");
        for (int s = 0; s < o.samples; ++s) {
            const AlgebraElement a = gen::element(rng, n, 3, 3, true);
            const AlgebraElement b = gen::element(rng, n, 3, 3, true);
            const AlgebraElement c = gen::element(rng, n, 3, 3, true);
            const AlgebraElement r = (a * b) * c - a * (b * c);
            if (!r.is_zero()) check.fail(s, render::text(r));
        }
    }
    {
        detail::SampleCheck check(rep, "action composition (h1 h2) |> f = h1 |> (h2 |> f)");
        for (int s = 0; s < o.samples; ++s) {
            const AlgebraElement h1 = gen::element(rng, n, 2, 3);
            const AlgebraElement h2 = gen::element(rng, n, 2, 3);
            const Polynomial f = gen::polynomial(rng, n, 3, 4);
            const Polynomial r = act(h1 * h2, f) - act(h1, act(h2, f));
            if (!r.is_zero()) check.fail(s, render::text(r));
        }
    }
    rep.seconds = timer.seconds();
    return rep;
}

/// Twisted coproducts of the generators, the a0 -> 0 limit, and the homomorphism property.
inline Report verify_coalgebra(const VerifyOptions& o) {
    using detail::expect_equal;
    using detail::expect_equal_mod;
    const detail::Timer timer;
    Report rep;
    rep.suite = "coalgebra";
    const int n = o.order;
    const Deformation d(o.lambda_poly(), n);
    const LambdaPoly lam = d.lambda();
    const LambdaPoly one(1);
    const RelationSet& r = d.relations(RelationTag::R);
    const RelationSet& r0 = d.relations(RelationTag::R0);
    const Scalar a0 = Scalar::a0(n);
    const AlgebraElement s = d.S();

    for (int mu = 0; mu < kDim; ++mu) {
        for (RelationTag tag : {RelationTag::R0, RelationTag::R, RelationTag::Rtilde}) {
            const RelationSet& rel = d.relations(tag);
            const TensorElement z = canonicalize(rel.relation_element(mu), rel);
            rep.add("relation element " + detail::gen_name('x', mu) + " in " + std::string(relation_name(tag)),
                    z.is_zero(), render::text(z));
        }
    }
    for (int i = 1; i < kDim; ++i) {
        const AlgebraElement xi = algebra::x(i, n);
        const AlgebraElement pi = algebra::p(i, n);
        const TensorElement dx = d.coproduct(xi);
        expect_equal_mod(rep, "D" + detail::gen_name('x', i) + " = x ox Z^[lam]", dx, tensor::pure(xi, d.Z(lam)), r);
        expect_equal_mod(rep, "D" + detail::gen_name('x', i) + " = Z^[lam-1] ox x", dx,
                         tensor::pure(d.Z(lam - one), xi), r);
        expect_equal_mod(rep, "x" + std::to_string(i) + " ox 1 = Z^[lam-1] ox x Z^[-lam]", tensor::left(xi),
                         tensor::pure(d.Z(lam - one), xi * d.Z(-lam)), r);
        const TensorElement dp = d.coproduct(pi);
        expect_equal(rep, "D" + detail::gen_name('p', i), dp,
                     tensor::pure(pi, d.Z(-lam)) + tensor::pure(d.Z(one - lam), pi));
    }
    const AlgebraElement x0 = algebra::x(0, n);
    const TensorElement dx0 = d.coproduct(x0);
    expect_equal_mod(rep, "Dx0 = x0 ox 1 + a0(1-lam) 1 ox S", dx0,
                     tensor::left(x0) + (a0 * Scalar(n, one - lam)) * tensor::right(s), r);
    expect_equal_mod(rep, "Dx0 = 1 ox x0 - a0 lam S ox 1", dx0,
                     tensor::right(x0) - (a0 * Scalar(n, lam)) * tensor::left(s), r);
    expect_equal_mod(rep, "x0 ox 1 = 1 ox x0 - a0((1-lam) 1 ox S + lam S ox 1)", tensor::left(x0),
                     tensor::right(x0) - a0 * (Scalar(n, one - lam) * tensor::right(s) + Scalar(n, lam) * tensor::left(s)),
                     r);
    expect_equal(rep, "Dp0", d.coproduct(algebra::p(0, n)),
                 tensor::left(algebra::p(0, n)) + tensor::right(algebra::p(0, n)));

    for (int mu = 0; mu < kDim; ++mu)
        for (char g : {'x', 'p'}) {
            const AlgebraElement h = g == 'x' ? algebra::x(mu, n) : algebra::p(mu, n);
            const TensorElement limit = canonicalize(d.coproduct(h).graded_part(0), r0);
            expect_equal(rep, "a0 -> 0 limit of D" + detail::gen_name(g, mu), limit,
                         d.coproduct0(h).graded_part(0));
        }
    for (int mu = 0; mu < kDim; ++mu)
        for (int nu = 0; nu < kDim; ++nu) {
            const AlgebraElement p = algebra::p(mu, n);
            const AlgebraElement x = algebra::x(nu, n);
            expect_equal_mod(rep, "[Dp" + std::to_string(mu) + ", Dx" + std::to_string(nu) + "] = D[p, x]",
                             t_commutator(d.coproduct(p), d.coproduct(x)), d.coproduct(commutator(p, x)), r);
        }

    gen::Rng rng(o.seed + 1);
    {
        detail::SampleCheck check(rep, "D(h1 h2) = D(h1) D(h2) mod R on random pairs");
        for (int k = 0; k < o.samples; ++k) {
            const AlgebraElement h1 = gen::element(rng, n, 2, 2);
            const AlgebraElement h2 = gen::element(rng, n, 2, 2);
            const TensorElement res = canonicalize(d.coproduct(h1 * h2) - d.coproduct(h1) * d.coproduct(h2), r);
            if (!res.is_zero()) check.fail(k, render::text(res));
        }
    }
    {
        detail::SampleCheck check(rep, "twist and homomorphism coproducts agree on random elements");
        for (int k = 0; k < std::max(1, o.samples / 5); ++k) {
            const AlgebraElement h = gen::element(rng, n, 2, 3);
            const TensorElement res =
                d.coproduct(h, CoproductMethod::Twist) - d.coproduct(h, CoproductMethod::Homomorphism);
            if (!res.is_zero()) check.fail(k, render::text(res));
        }
    }
    rep.seconds = timer.seconds();
    return rep;
}

/// Twist axioms, the realization it induces, and star products.
inline Report verify_twist(const VerifyOptions& o) {
    using detail::expect_equal;
    using detail::expect_equal_mod;
    const detail::Timer timer;
    Report rep;
    rep.suite = "twist";
    const int n = o.order;
    const Deformation d(o.lambda_poly(), n);
    const RelationSet& r = d.relations(RelationTag::R);
    rep.add("cocycle condition", d.verify_cocycle());
    rep.add("cocycle detects a sign-flipped exponent", !d.verify_cocycle(true), "mutated twist passed");
    rep.add("counit condition", d.verify_counit());
    expect_equal(rep, "F F^-1 = 1", d.twist() * d.twist_inverse(), tensor::one(n));

    const auto monomials = gen::x_monomials(std::min(4, n + 1));
    for (int mu = 0; mu < kDim; ++mu) {
        detail::SampleCheck check(rep, "m0(F^-1 |> (x" + std::to_string(mu) + " ox f)) = xhat |> f, deg f <= " +
                                           std::to_string(std::min(4, n + 1)));
        for (std::size_t k = 0; k < monomials.size(); ++k) {
            const Polynomial f = poly::monomial(monomials[k], n);
            const Polynomial res = d.realization_operator(mu, f) - act(d.xhat(mu), f);
            if (!res.is_zero()) check.fail(static_cast<int>(k), render::text(res));
        }
    }
    const KappaCoordinates kc(d.lambda(), n);
    for (int mu = 0; mu < kDim; ++mu) expect_equal(rep, "xhat" + std::to_string(mu) + " closed form", kc.xhat[mu], d.xhat(mu));
    for (const auto& c : kc.commutator_check().checks) rep.checks.push_back(c);
    for (int mu = 0; mu < kDim; ++mu) {
        const TensorElement dx = d.coproduct(kc.xhat[mu]);
        const std::string name = "Dxhat" + std::to_string(mu);
        expect_equal_mod(rep, name + " = xhat ox 1", dx, tensor::left(kc.xhat[mu]), r);
        expect_equal_mod(rep, name + " compact form", dx, kc.compact_coproduct(mu), r);
    }
    {
        TensorElement alt = tensor::right(kc.xhat[0]);
        for (int k = 1; k < kDim; ++k)
            alt -= Scalar::a0(n) * tensor::pure(algebra::p(k, n) * d.Z(d.lambda() - LambdaPoly(1)), kc.xhat[k]);
        expect_equal_mod(rep, "Dxhat0 = 1 ox xhat0 - a0 p_k Z^[lam-1] ox xhat_k", d.coproduct(kc.xhat[0]), alt, r);
    }

    const auto star_monomials = gen::x_monomials(std::min(3, n));
    {
        detail::SampleCheck check(rep, "(f * g)_F = (g * f)_Ftilde on monomial pairs");
        int k = 0;
        for (const auto& mf : star_monomials)
            for (const auto& mg : star_monomials) {
                const Polynomial f = poly::monomial(mf, n);
                const Polynomial g = poly::monomial(mg, n);
                const Polynomial res = d.star_product(f, g, StarTwist::F) - d.star_product(g, f, StarTwist::Ftilde);
                if (!res.is_zero()) check.fail(k, render::text(res));
                ++k;
            }
    }
    rep.seconds = timer.seconds();
    return rep;
}

/// The universal R-matrix and the opposite coproduct.
inline Report verify_rmatrix(const VerifyOptions& o) {
    using detail::expect_equal;
    using detail::expect_equal_mod;
    const detail::Timer timer;
    Report rep;
    rep.suite = "rmatrix";
    const int n = o.order;
    const Deformation d(o.lambda_poly(), n);
    const LambdaPoly lam = d.lambda();
    const LambdaPoly one(1);
    const RelationSet& rt = d.relations(RelationTag::Rtilde);
    const Scalar a0 = Scalar::a0(n);
    const AlgebraElement s = d.S();

    expect_equal(rep, "R = Ftilde F^-1", d.rmatrix(), d.twist_tilde() * d.twist_inverse());
    expect_equal(rep, "tau0 R tau0 = R^-1", tau0(d.rmatrix()), d.rmatrix_inverse());
    expect_equal(rep, "tau^2 = 1 ox 1", tau0(d.rmatrix()) * d.rmatrix(), tensor::one(n));
    gen::Rng rng(o.seed + 2);
    {
        detail::SampleCheck check(rep, "tau(tau(t)) = t on random tensors");
        for (int k = 0; k < o.samples; ++k) {
            const TensorElement t = gen::tensor_element(rng, n);
            const TensorElement res = d.flip(d.flip(t)) - t;
            if (!res.is_zero()) check.fail(k, render::text(res));
        }
    }
    for (int mu = 0; mu < kDim; ++mu)
        for (char g : {'x', 'p'}) {
            const AlgebraElement h = g == 'x' ? algebra::x(mu, n) : algebra::p(mu, n);
            const TensorElement conj = d.rmatrix_conjugate(h);
            expect_equal(rep, "R D" + detail::gen_name(g, mu) + " R^-1 = Dtilde", conj, d.coproduct_opposite(h));
        }
    for (int i = 1; i < kDim; ++i) {
        const AlgebraElement xi = algebra::x(i, n);
        const AlgebraElement pi = algebra::p(i, n);
        const TensorElement c = d.rmatrix_conjugate(xi);
        expect_equal_mod(rep, "R Dx" + std::to_string(i) + " R^-1 = x ox Z^[lam-1]", c, tensor::pure(xi, d.Z(lam - one)), rt);
        expect_equal_mod(rep, "R Dx" + std::to_string(i) + " R^-1 = Z^[lam] ox x", c, tensor::pure(d.Z(lam), xi), rt);
        expect_equal_mod(rep, "R Dp" + std::to_string(i) + " R^-1", d.rmatrix_conjugate(pi),
                         tensor::pure(pi, d.Z(one - lam)) + tensor::pure(d.Z(-lam), pi), rt);
    }
    const AlgebraElement x0 = algebra::x(0, n);
    const TensorElement c0 = d.rmatrix_conjugate(x0);
    expect_equal_mod(rep, "R Dx0 R^-1 = x0 ox 1 - a0 lam 1 ox S", c0,
                     tensor::left(x0) - (a0 * Scalar(n, lam)) * tensor::right(s), rt);
    expect_equal_mod(rep, "R Dx0 R^-1 = 1 ox x0 + a0(1-lam) S ox 1", c0,
                     tensor::right(x0) + (a0 * Scalar(n, one - lam)) * tensor::left(s), rt);
    expect_equal_mod(rep, "R Dp0 R^-1", d.rmatrix_conjugate(algebra::p(0, n)),
                     tensor::left(algebra::p(0, n)) + tensor::right(algebra::p(0, n)), rt);
    for (int i = 1; i < kDim; ++i)
        expect_equal_mod(rep, "x" + std::to_string(i) + " ox 1 = Z^[lam] ox x Z^[1-lam]", tensor::left(algebra::x(i, n)),
                         tensor::pure(d.Z(lam), algebra::x(i, n) * d.Z(one - lam)), rt);
    expect_equal_mod(rep, "x0 ox 1 = 1 ox x0 + a0 lam 1 ox S + a0(1-lam) S ox 1", tensor::left(x0),
                     tensor::right(x0) + a0 * (Scalar(n, lam) * tensor::right(s) + Scalar(n, one - lam) * tensor::left(s)),
                     rt);
    rep.seconds = timer.seconds();
    return rep;
}

/// Lorentz sector: algebra, coproducts of all generators by both methods, and
/// closure of the coalgebra.
inline Report verify_poincare(const VerifyOptions& o) {
    using detail::expect_equal;
    using detail::expect_equal_mod;
    const detail::Timer timer;
    Report rep;
    rep.suite = "poincare";
    const int n = o.order;
    const Deformation d(o.lambda_poly(), n);
    const Deformation half(Rational(1, 2), n);
    for (LorentzCase c : {LorentzCase::I, LorentzCase::II, LorentzCase::III}) {
        const Deformation& def = c == LorentzCase::II ? half : d;
        const RelationSet& r = def.relations(RelationTag::R);
        const LorentzRealization real = LorentzRealization::preset(c, def.lambda(), n);
        const std::string tag = "case " + case_name(c);
        for (const auto& ch : lorentz_algebra_check(real, n).checks)
            rep.checks.push_back({tag + " " + ch.name, ch.passed, ch.residual});
        for (int i = 1; i < kDim; ++i) {
            const AlgebraElement m = mhat(i, real, n);
            const TensorElement tw = def.coproduct(m, CoproductMethod::Twist);
            const TensorElement hm = def.coproduct(m, CoproductMethod::Homomorphism);
            const std::string name = tag + " DM" + std::to_string(i) + "0";
            expect_equal(rep, name + " twist = homomorphism", tw, hm);
            TensorElement closed;
            switch (c) {
                case LorentzCase::I: closed = boost_coproduct_case_i(i, def.lambda(), n); break;
                case LorentzCase::II: closed = boost_coproduct_case_ii(i, n); break;
                default: closed = boost_coproduct_case_iii(i, def.lambda(), n); break;
            }
            expect_equal_mod(rep, name + " closed form", tw, closed, r);
        }
    }
    for (int i = 1; i < kDim; ++i)
        for (int j = i + 1; j < kDim; ++j) {
            const AlgebraElement m = mij(i, j, n);
            const std::string name = "DM" + std::to_string(i) + std::to_string(j);
            const RelationSet& r = d.relations(RelationTag::R);
            expect_equal_mod(rep, name + " primitive (twist)", d.coproduct(m), rotation_coproduct(i, j, n), r);
            expect_equal_mod(rep, name + " primitive (homomorphism)", d.coproduct(m, CoproductMethod::Homomorphism),
                             rotation_coproduct(i, j, n), r);
        }
    const LorentzRealization standard = LorentzRealization::preset(LorentzCase::II, Rational(1, 2), n);
    for (int i = 1; i < kDim; ++i)
        expect_equal(rep, "Mhat" + std::to_string(i) + "0 = M Z^[-1/2] + a0/2 M_ij p_j", mhat(i, standard, n),
                     standard_boost_from_undeformed(i, n));

    // Closure: boost coproducts stay in the span of words linear in the
    // Lorentz generators; case (iii) leaves it.
    const Rational span_lambda = o.lambda.value_or(Rational(1, 2));
    const int span_order = 2;
    if (n < span_order) {
        rep.seconds = timer.seconds();
        return rep;
    }
    const Deformation span_def(span_lambda, n);
    for (LorentzCase c : {LorentzCase::I, LorentzCase::II, LorentzCase::III}) {
        const Deformation& def = c == LorentzCase::II ? half : span_def;
        const LorentzRealization real = LorentzRealization::preset(c, def.lambda(), n);
        const std::vector<AlgebraElement> gens = lorentz_generators(real, n);
        const TensorElement dm = def.coproduct(mhat(1, real, n));
        const int k = first_order_outside_span(dm, gens, def.relations(RelationTag::R), span_order);
        const std::string name = "case " + case_name(c) + " DM10 linear in Lorentz generators through a0^" +
                                 std::to_string(span_order) + " (lam=" + def.lambda().constant().re.str() + ")";
        if (c == LorentzCase::III)
            rep.add("case iii DM10 leaves the Lorentz span (lam=" + def.lambda().constant().re.str() + ")", k >= 0,
                    "stayed in the span");
        else
            rep.add(name, k < 0, "first order outside the span: " + std::to_string(k));
    }
    rep.seconds = timer.seconds();
    return rep;
}

inline Report run_suite(const std::string& name, const VerifyOptions& o) {
    if (name == "algebra") return verify_algebra(o);
    if (name == "coalgebra") return verify_coalgebra(o);
    if (name == "twist") return verify_twist(o);
    if (name == "rmatrix") return verify_rmatrix(o);
    if (name == "poincare") return verify_poincare(o);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

/// `all` expands to every suite in a fixed order.
inline std::vector<Report> run_suites(const std::string& name, const VerifyOptions& o) {
    std::vector<Report> out;
    if (name == "all") {
        for (const auto& s : suite_names()) out.push_back(run_suite(s, o));
    } else {
        out.push_back(run_suite(name, o));
    }
    return out;
}

}  // namespace kappa
