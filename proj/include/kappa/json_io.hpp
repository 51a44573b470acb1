#pragma once

// JSON encodings. Numbers are exact: a rational is [num, den], a Gaussian
// rational is [[re_num, re_den], [im_num, im_den]]. Key order is fixed.

#include "json.hpp"

#include "kappa/report.hpp"
#include "kappa/rexpand.hpp"

namespace kappa::json_io {

using Json = nlohmann::ordered_json;

inline Json encode(const Rational& r) { return Json::array({r.num(), r.den()}); }

inline Json encode(const GaussianRational& g) { return Json::array({encode(g.re), encode(g.im)}); }

/// [[a0_power, lam_power, coefficient], ...]
inline Json encode(const Scalar& s) {
    Json out = Json::array();
    for (const auto& e : s.entries()) out.push_back(Json::array({e.a0, e.lam, encode(e.c)}));
    return out;
}

inline Json encode(const AlgebraElement& a) {
    Json terms = Json::array();
    for (const auto& [m, c] : a) terms.push_back(Json{{"monomial", render::text(m)}, {"scalar", encode(c)}});
    return Json{{"kind", "algebra"}, {"order", a.order()}, {"terms", terms}, {"text", render::text(a)}};
}

inline Json encode(const TensorElement& t) {
    Json terms = Json::array();
    for (const auto& [k, c] : t)
        terms.push_back(
            Json{{"left", render::text(k.left)}, {"right", render::text(k.right)}, {"scalar", encode(c)}});
    return Json{{"kind", "tensor"}, {"order", t.order()}, {"terms", terms}, {"text", render::text(t)}};
}

/// Checks in suite order; timing only on request so repeated runs are byte-identical.
inline Json encode(const Report& r, bool timing = false) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json j{{"name", c.name}, {"passed", c.passed}};
        if (!c.passed) j["residual"] = c.residual;
        checks.push_back(j);
    }
    Json out{{"suite", r.suite}, {"passed", r.passed()}, {"checks", checks}};
    if (timing) out["seconds"] = r.seconds;
    return out;
}

/// Coefficient name -> {"word", "value" (constant part), "parameters" (linear part)}.
inline Json encode(const ExpansionResult& r) {
    Json out{{"order", r.order},
             {"case", case_name(r.lorentz_case)},
             {"status", solution_kind_name(r.status)},
             {"dimension", r.dimension()},
             {"equations", r.equations},
             {"unknowns", r.terms.size()},
             {"parameters", r.parameters}};
    if (r.status == SolutionKind::Infeasible) return out;
    Json coeffs = Json::object();
    for (std::size_t j = 0; j < r.terms.size(); ++j) {
        Json c{{"word", r.terms[j].label()}, {"value", encode(r.constant[j])}};
        Json lin = Json::object();
        for (std::size_t p = 0; p < r.parameters.size(); ++p)
            if (!r.linear[j][p].is_zero()) lin[r.parameters[p]] = encode(r.linear[j][p]);
        if (!lin.empty()) c["parameters"] = lin;
        coeffs[r.terms[j].name] = c;
    }
    out["coefficients"] = coeffs;
    out["substitution_verified"] = r.substitution_verified;
    out["latex"] = to_latex(r);
    return out;
}

}  // namespace kappa::json_io
