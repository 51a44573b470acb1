#pragma once

// Command-line front end. Exit codes: 0 success, 1 a verification failed,
// 2 usage, parse or domain error.

#include <charconv>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kappa/json_io.hpp"
#include "kappa/parse.hpp"
#include "kappa/rexpand.hpp"
#include "kappa/verify.hpp"

namespace kappa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// `sym` for symbolic lambda, else an integer or `p/q`.
inline std::optional<Rational> parse_lambda(const std::string& s) {
    if (s == "sym") return std::nullopt;
    auto to_int = [&s](std::string_view part) {
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc() || ptr != part.data() + part.size())
            throw std::invalid_argument("lambda must be 'sym' or a rational p/q, got '" + s + "'");
        return v;
    };
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(to_int(s));
    const std::int64_t den = to_int(std::string_view(s).substr(slash + 1));
    if (den == 0) throw std::invalid_argument("lambda has a zero denominator");
    return Rational(to_int(std::string_view(s).substr(0, slash)), den);
}

inline json_io::Json encode_lambda(const std::optional<Rational>& l) {
    return l ? json_io::encode(*l) : json_io::Json("sym");
}

namespace detail {

struct CommonOptions {
    std::string lambda = "auto";
    int order = 3;
    std::string format = "text";
};

/// Case (ii) lives at lambda = 1/2; `auto` picks it there and symbolic elsewhere.
inline std::optional<Rational> resolve_lambda(const std::string& text, LorentzCase c) {
    if (c == LorentzCase::II) {
        if (text == "auto") return Rational(1, 2);
        const auto l = parse_lambda(text);
        if (!l || !(*l == Rational(1, 2))) throw std::invalid_argument("case ii requires lambda 1/2");
        return l;
    }
    return text == "auto" ? std::nullopt : parse_lambda(text);
}

inline void check_order(int order) {
    if (order < 0 || order > kMaxOrder)
        throw std::invalid_argument("order must be between 0 and " + std::to_string(kMaxOrder));
}

inline std::string text_of(const dsl::Value& v) {
    return std::visit([](const auto& x) { return render::text(x); }, v);
}

inline json_io::Json json_of(const dsl::Value& v) {
    return std::visit([](const auto& x) { return json_io::encode(x); }, v);
}

}  // namespace detail

/// Runs one command line; output goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact symbolic computations on the kappa-deformed phase space"};
    app.require_subcommand(1);

    // coproduct
    auto* cop = app.add_subcommand("coproduct", "Deformed coproduct of an element, reduced modulo R");
    std::string cop_gen;
    std::string cop_case = "i";
    std::string cop_method = "twist";
    detail::CommonOptions cop_opts;
    cop->add_option("--gen", cop_gen, "Element, e.g. p1, x0, M[1,2], Mhat[1,0], or any expression")->required();
    cop->add_option("--case", cop_case, "Realization behind Mhat[i,0]")->check(CLI::IsMember({"i", "ii", "iii"}));
    cop->add_option("--lambda", cop_opts.lambda, "sym or p/q (default: 1/2 for case ii, else sym)");
    cop->add_option("--order", cop_opts.order, "Truncation order in a0");
    cop->add_option("--method", cop_method, "twist or hom")->check(CLI::IsMember({"twist", "hom"}));
    cop->add_option("--format", cop_opts.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    // rexpand
    auto* rex = app.add_subcommand("rexpand", "Expand the R-matrix in Poincare generators order by order");
    int rex_order = 1;
    std::string rex_case = "ii";
    std::string rex_lambda = "1/2";
    std::string rex_format = "json";
    rex->add_option("--order", rex_order, "Highest order k")->required();
    rex->add_option("--case", rex_case, "ii (Mhat basis), i (translated to M), iii (negative case)")
        ->check(CLI::IsMember({"i", "ii", "iii"}));
    rex->add_option("--lambda", rex_lambda, "Must be 1/2");
    rex->add_option("--format", rex_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    // verify
    auto* ver = app.add_subcommand("verify", "Run identity checks");
    std::string ver_suite = "all";
    std::string ver_lambda = "sym";
    int ver_order = 3;
    std::uint64_t ver_seed = 0;
    int ver_samples = 100;
    std::string ver_format = "text";
    bool ver_timing = false;
    ver->add_option("--suite", ver_suite, "algebra, coalgebra, twist, rmatrix, poincare or all")
        ->check(CLI::IsMember({"algebra", "coalgebra", "twist", "rmatrix", "poincare", "all"}));
    ver->add_option("--lambda", ver_lambda, "sym or p/q");
    ver->add_option("--order", ver_order, "Truncation order in a0");
    ver->add_option("--seed", ver_seed, "Seed for random samples");
    ver->add_option("--samples", ver_samples, "Random samples per property check");
    ver->add_option("--format", ver_format, "text or json")->check(CLI::IsMember({"text", "json"}));
    ver->add_flag("--timing", ver_timing, "Report per-suite wall time");

    // eval
    auto* ev = app.add_subcommand("eval", "Evaluate an expression");
    std::string ev_expr;
    std::string ev_canon;
    std::string ev_case = "ii";
    detail::CommonOptions ev_opts;
    bool ev_factorized = false;
    ev->add_option("expr", ev_expr, "Expression")->required();
    ev->add_option("--canonicalize", ev_canon, "Reduce a tensor modulo R0, R or Rtilde")
        ->check(CLI::IsMember({"R0", "R", "Rtilde"}));
    ev->add_option("--case", ev_case, "Realization behind Mhat[i,0]")->check(CLI::IsMember({"i", "ii", "iii"}));
    ev->add_option("--lambda", ev_opts.lambda, "sym or p/q (default sym)");
    ev->add_option("--order", ev_opts.order, "Truncation order in a0");
    ev->add_option("--format", ev_opts.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    ev->add_flag("--factorized", ev_factorized, "Group exponential tails of tensors into Z^[c] factors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (cop->parsed()) {
            const LorentzCase c = parse_case(cop_case);
            detail::check_order(cop_opts.order);
            const auto lambda = detail::resolve_lambda(cop_opts.lambda, c);
            dsl::Context ctx{cop_opts.order, lambda, c};
            const dsl::Value v = dsl::evaluate(cop_gen, ctx);
            const auto* h = std::get_if<AlgebraElement>(&v);
            if (h == nullptr) throw std::invalid_argument("--gen must be an algebra element, not a tensor");
            const Deformation d(lambda ? LambdaPoly(*lambda) : LambdaPoly::lam(), cop_opts.order);
            const auto method = cop_method == "hom" ? CoproductMethod::Homomorphism : CoproductMethod::Twist;
            const TensorElement t = d.coproduct(*h, method);
            if (cop_opts.format == "json") {
                json_io::Json j{{"command", "coproduct"}, {"generator", cop_gen}, {"case", cop_case},
                                {"lambda", encode_lambda(lambda)}, {"order", cop_opts.order},
                                {"method", cop_method},        {"relations", "R"},
                                {"factorized", render::factorized(t)}, {"coproduct", json_io::encode(t)}};
                out << j.dump(2) << "\n";
            } else {
                out << render::factorized(t) << "\n";
            }
            return kExitOk;
        }

        if (rex->parsed()) {
            if (rex_order < 1 || rex_order > kMaxOrder)
                throw std::invalid_argument("rexpand order must be between 1 and " + std::to_string(kMaxOrder));
            const auto lambda = parse_lambda(rex_lambda);
            if (!lambda) throw std::invalid_argument("rexpand requires a rational lambda");
            if (!(*lambda == Rational(1, 2))) throw std::invalid_argument("the expansion is defined at lambda 1/2");
            const LorentzCase c = parse_case(rex_case);
            const std::vector<ExpansionResult> results = expand(rex_order, c == LorentzCase::I ? LorentzCase::II : c);
            bool verified = true;
            for (const auto& r : results)
                if (r.status != SolutionKind::Infeasible) verified = verified && r.substitution_verified;
            if (rex_format == "json") {
                json_io::Json orders = json_io::Json::array();
                for (const auto& r : results) {
                    json_io::Json jr = json_io::encode(r);
                    if (c == LorentzCase::I) {
                        const TranslatedExpansion tr = translate_basis(r, LorentzCase::II, LorentzCase::I);
                        json_io::Json terms = json_io::Json::array();
                        for (const auto& t : tr.terms)
                            terms.push_back(json_io::Json{{"coefficient", json_io::encode(t.coeff)}, {"word", t.label}});
                        jr["translated"] = terms;
                    }
                    orders.push_back(jr);
                }
                json_io::Json j{{"command", "rexpand"}, {"case", rex_case}, {"lambda", json_io::encode(*lambda)},
                                {"orders", orders}};
                out << j.dump(2) << "\n";
            } else {
                for (const auto& r : results) {
                    out << to_text(r);
                    if (c == LorentzCase::I && r.status != SolutionKind::Infeasible) {
                        out << "in the case (i) generators, with the chosen parameters set to 0:\n";
                        for (const auto& t : translate_basis(r, LorentzCase::II, LorentzCase::I).terms)
                            out << "  " << render::text(t.coeff) << " * " << t.label << "\n";
                    }
                }
            }
            return verified ? kExitOk : kExitFailed;
        }

        if (ver->parsed()) {
            detail::check_order(ver_order);
            if (ver_samples < 1) throw std::invalid_argument("--samples must be positive");
            VerifyOptions o;
            o.lambda = parse_lambda(ver_lambda);
            o.order = ver_order;
            o.seed = ver_seed;
            o.samples = ver_samples;
            const std::vector<Report> reports = run_suites(ver_suite, o);
            bool all = true;
            for (const auto& r : reports) all = all && r.passed();
            if (ver_format == "json") {
                json_io::Json suites = json_io::Json::array();
                for (const auto& r : reports) suites.push_back(json_io::encode(r, ver_timing));
                json_io::Json j{{"command", "verify"}, {"lambda", encode_lambda(o.lambda)}, {"order", o.order},
                                {"seed", o.seed},      {"samples", o.samples},               {"passed", all},
                                {"suites", suites}};
                out << j.dump(2) << "\n";
            } else {
                for (const auto& r : reports) {
                    std::size_t ok = 0;
                    for (const auto& ch : r.checks) ok += ch.passed ? 1 : 0;
                    out << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << ok << "/" << r.checks.size()
                        << " checks)";
                    if (ver_timing) out << " " << r.seconds << " s";
                    out << "\n";
                    for (const auto& ch : r.checks)
                        if (!ch.passed) out << "  FAIL " << ch.name << "\n    residual: " << ch.residual << "\n";
                }
            }
            return all ? kExitOk : kExitFailed;
        }

        if (ev->parsed()) {
            const LorentzCase c = parse_case(ev_case);
            detail::check_order(ev_opts.order);
            const auto lambda = ev_opts.lambda == "auto" ? std::nullopt : parse_lambda(ev_opts.lambda);
            dsl::Context ctx{ev_opts.order, lambda, c};
            dsl::Value v = dsl::evaluate(ev_expr, ctx);
            if (!ev_canon.empty()) {
                auto* t = std::get_if<TensorElement>(&v);
                if (t == nullptr) throw std::invalid_argument("--canonicalize applies to tensor expressions");
                const RelationSet rel(parse_relation(ev_canon), lambda ? LambdaPoly(*lambda) : LambdaPoly::lam(),
                                      ev_opts.order);
                *t = canonicalize(*t, rel);
            }
            if (ev_opts.format == "json") {
                json_io::Json j{{"command", "eval"}, {"expression", ev_expr}, {"lambda", encode_lambda(lambda)},
                                {"order", ev_opts.order}, {"value", detail::json_of(v)}};
                if (!ev_canon.empty()) j["relations"] = ev_canon;
                out << j.dump(2) << "\n";
            } else if (ev_factorized && std::holds_alternative<TensorElement>(v)) {
                out << render::factorized(std::get<TensorElement>(v)) << "\n";
            } else {
                out << detail::text_of(v) << "\n";
            }
            return kExitOk;
        }
    } catch (const std::overflow_error& e) {
        err << "error: arithmetic overflow: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace kappa::cli
