#include <gtest/gtest.h>

#include <sstream>

#include "kappa/cli.hpp"
#include "kappa/generators.hpp"

using namespace kappa;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli_run(std::vector<std::string> args) {
    args.insert(args.begin(), "kappa_cli");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

AlgebraElement alg(const std::string& src, dsl::Context ctx = {}) {
    return std::get<AlgebraElement>(dsl::evaluate(src, ctx));
}

TensorElement ten(const std::string& src, dsl::Context ctx = {}) {
    return std::get<TensorElement>(dsl::evaluate(src, ctx));
}

std::size_t error_offset(const std::string& src) {
    try {
        dsl::evaluate(src);
    } catch (const dsl::ParseError& e) {
        return e.offset();
    }
    return std::string::npos;
}

}  // namespace

TEST(Parse, RoundTripRandomAlgebraElements) {
    gen::Rng rng(41);
    for (int s = 0; s < 300; ++s) {
        const AlgebraElement a = gen::element(rng, 3, 3, 3, true);
        ASSERT_EQ(alg(render::text(a)), a) << render::text(a);
    }
}

TEST(Parse, RoundTripRandomTensors) {
    gen::Rng rng(42);
    for (int s = 0; s < 300; ++s) {
        const TensorElement t = gen::tensor_element(rng, 3, 3, 2, true);
        ASSERT_EQ(ten(render::text(t)), t) << render::text(t);
    }
}

TEST(Parse, FactorizedCoproductsReparse) {
    const int n = 3;
    const Deformation d(LambdaPoly::lam(), n);
    const RelationSet& r = d.relations(RelationTag::R);
    std::vector<AlgebraElement> gens;
    for (int mu = 0; mu < kDim; ++mu) {
        gens.push_back(algebra::x(mu, n));
        gens.push_back(algebra::p(mu, n));
    }
    gens.push_back(mij(1, 2, n));
    gens.push_back(alg("Mhat[2,0]", dsl::Context{n, std::nullopt, LorentzCase::I}));
    for (const auto& h : gens) {
        const TensorElement t = d.coproduct(h);
        const std::string f = render::factorized(t);
        EXPECT_TRUE(equal_mod(ten(f, dsl::Context{n, std::nullopt, LorentzCase::II}), t, r)) << f;
    }
}

TEST(Parse, Grammar) {
    const int n = 3;
    EXPECT_EQ(alg("M[1,2]"), mij(1, 2, n));
    EXPECT_EQ(alg("exp(a0*p0)"), z_power(1, n));
    EXPECT_EQ(alg("Z"), z_power(1, n));
    EXPECT_EQ(alg("Z^[-lam]"), z_power(-LambdaPoly::lam(), n));
    EXPECT_EQ(alg("A"), a_element(n));
    EXPECT_EQ(alg("S"), s_element(n));
    EXPECT_EQ(alg("x1^2"), algebra::x(1, n) * algebra::x(1, n));
    EXPECT_EQ(alg("-(1/2)*I*p3"), Scalar(n, GaussianRational(Rational(0), Rational(-1, 2))) * algebra::p(3, n));
    EXPECT_EQ(alg("Mhat[1,0]"), mhat(1, LorentzRealization::preset(LorentzCase::II, Rational(1, 2), n), n));
    EXPECT_EQ(alg("Mhat[1,0]", {n, std::nullopt, LorentzCase::III}),
              alg("x1*p0 - x0*p1"));
    EXPECT_EQ(alg("lam*p1", {n, Rational(1, 3)}), Scalar(n, GaussianRational(Rational(1, 3))) * algebra::p(1, n));
}

TEST(Parse, TensorBindsLooserThanProduct) {
    const int n = 3;
    EXPECT_EQ(ten("2*p1 ox p2*x1"), Scalar(n, GaussianRational(2)) * tensor::pure(algebra::p(1, n), algebra::p(2, n) * algebra::x(1, n)));
    EXPECT_EQ(ten("p1 ox p2 - p2 ox p1"), tensor::pure(algebra::p(1, n), algebra::p(2, n)) -
                                               tensor::pure(algebra::p(2, n), algebra::p(1, n)));
    EXPECT_EQ(ten("a0*(p1 ox p2)"), Scalar::a0(n) * tensor::pure(algebra::p(1, n), algebra::p(2, n)));
}

TEST(Parse, ErrorsCarryOffsets) {
    EXPECT_EQ(error_offset("exp("), 4u);
    EXPECT_EQ(error_offset("p1 + foo"), 5u);
    EXPECT_EQ(error_offset("p1 +"), 4u);
    EXPECT_EQ(error_offset("(p1"), 3u);
    EXPECT_EQ(error_offset("p1 $ p2"), 3u);
    EXPECT_EQ(error_offset("ox p1"), 0u);
    EXPECT_NE(error_offset("p1 ox (p2 ox p3)"), std::string::npos);
    EXPECT_NE(error_offset("x4"), std::string::npos);
    try {
        dsl::evaluate("p1 + foo");
    } catch (const dsl::ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("offset 5"), std::string::npos);
    }
}

TEST(Parse, ElaborationErrors) {
    EXPECT_THROW(dsl::evaluate("exp(p1)"), std::invalid_argument);
    EXPECT_THROW(dsl::evaluate("x1 * (p1 ox p2)"), std::invalid_argument);
    EXPECT_THROW(dsl::evaluate("M[1,1]"), std::invalid_argument);
}

TEST(Cli, HelpAndUsage) {
    EXPECT_EQ(cli_run({"--help"}).code, cli::kExitOk);
    EXPECT_EQ(cli_run({"rexpand", "--help"}).code, cli::kExitOk);
    EXPECT_EQ(cli_run({}).code, cli::kExitUsage);
    EXPECT_EQ(cli_run({"frobnicate"}).code, cli::kExitUsage);
    EXPECT_EQ(cli_run({"coproduct"}).code, cli::kExitUsage);
    EXPECT_EQ(cli_run({"coproduct", "--gen", "p1", "--method", "magic"}).code, cli::kExitUsage);
}

TEST(Cli, Eval) {
    const CliResult r = cli_run({"eval", "p1*x1"});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_EQ(r.out, "-I + x1*p1\n");
    const CliResult bad = cli_run({"eval", "exp("});
    EXPECT_EQ(bad.code, cli::kExitUsage);
    EXPECT_NE(bad.err.find("offset 4"), std::string::npos);
    const CliResult canon = cli_run({"eval", "x1 ox 1", "--canonicalize", "R0"});
    EXPECT_EQ(canon.out, "1 ox x1\n");
    EXPECT_EQ(cli_run({"eval", "p1", "--canonicalize", "R"}).code, cli::kExitUsage);
}

TEST(Cli, Coproduct) {
    const CliResult r = cli_run({"coproduct", "--gen", "p1", "--lambda", "sym", "--order", "3"});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_EQ(r.out, "p1 ox Z^[-lam] + Z^[1-lam] ox p1\n");
    const CliResult j = cli_run({"coproduct", "--gen", "p0", "--format", "json"});
    const auto parsed = json_io::Json::parse(j.out);
    EXPECT_EQ(parsed["relations"], "R");
    EXPECT_EQ(parsed["coproduct"]["kind"], "tensor");
    EXPECT_EQ(cli_run({"coproduct", "--gen", "p1", "--case", "ii", "--lambda", "1/3"}).code, cli::kExitUsage);
    EXPECT_EQ(cli_run({"coproduct", "--gen", "p1 ox p2"}).code, cli::kExitUsage);
    EXPECT_EQ(cli_run({"coproduct", "--gen", "p1", "--order", "99"}).code, cli::kExitUsage);
}

TEST(Cli, Rexpand) {
    const CliResult r = cli_run({"rexpand", "--order", "3"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto j = json_io::Json::parse(r.out);
    ASSERT_EQ(j["orders"].size(), 3u);
    EXPECT_EQ(j["orders"][2]["status"], "Parametric");
    EXPECT_EQ(j["orders"][2]["dimension"], 3);
    EXPECT_EQ(j["orders"][2]["coefficients"]["c12"]["parameters"]["alpha1"], json_io::Json::parse("[[-1,24],[0,1]]"));
    EXPECT_EQ(j["orders"][0]["coefficients"]["c1"]["value"], json_io::Json::parse("[[-1,1],[0,1]]"));

    const CliResult iii = cli_run({"rexpand", "--order", "3", "--case", "iii"});
    EXPECT_EQ(iii.code, cli::kExitOk);
    EXPECT_EQ(json_io::Json::parse(iii.out)["orders"][2]["status"], "Infeasible");

    const CliResult i = cli_run({"rexpand", "--order", "1", "--case", "i", "--format", "text"});
    EXPECT_NE(i.out.find("M_i0*Z^[-1/2] ox p_i"), std::string::npos);
    EXPECT_EQ(cli_run({"rexpand", "--order", "2", "--lambda", "sym"}).code, cli::kExitUsage);
    EXPECT_EQ(cli_run({"rexpand", "--order", "2", "--lambda", "1/3"}).code, cli::kExitUsage);
    EXPECT_EQ(cli_run({"rexpand", "--order", "0"}).code, cli::kExitUsage);
}

TEST(Cli, VerifySuites) {
    const CliResult r = cli_run({"verify", "--suite", "algebra", "--samples", "10"});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_NE(r.out.find("algebra: PASS"), std::string::npos);
    EXPECT_EQ(cli_run({"verify", "--suite", "nope"}).code, cli::kExitUsage);
    EXPECT_EQ(cli_run({"verify", "--samples", "0"}).code, cli::kExitUsage);
}

TEST(Cli, DeterministicJson) {
    const std::vector<std::string> args{"verify", "--suite", "coalgebra", "--seed", "7", "--samples", "5", "--format", "json"};
    const CliResult a = cli_run(args);
    const CliResult b = cli_run(args);
    EXPECT_EQ(a.code, cli::kExitOk);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(json_io::Json::parse(a.out)["seed"], 7);
    EXPECT_EQ(cli_run({"rexpand", "--order", "3"}).out, cli_run({"rexpand", "--order", "3"}).out);
    EXPECT_EQ(cli_run({"eval", "Mhat[1,0] ox p1", "--format", "json"}).out,
              cli_run({"eval", "Mhat[1,0] ox p1", "--format", "json"}).out);
}

TEST(Json, NumberEncodings) {
    EXPECT_EQ(json_io::encode(Rational(-3, 4)).dump(), "[-3,4]");
    EXPECT_EQ(json_io::encode(GaussianRational(Rational(1), Rational(-1, 2))).dump(), "[[1,1],[-1,2]]");
    EXPECT_EQ(json_io::encode(Scalar::a0(2, 2)).dump(), "[[2,0,[[1,1],[0,1]]]]");
    EXPECT_EQ(cli::parse_lambda("sym"), std::nullopt);
    EXPECT_EQ(cli::parse_lambda("-2/6"), Rational(-1, 3));
    EXPECT_THROW(cli::parse_lambda("half"), std::invalid_argument);
}
