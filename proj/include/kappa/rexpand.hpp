#pragma once

// Re-expansion of R = exp(rho) as exp(r1 + r2 + ...) with each r_k linear in
// the Lorentz generators:
//   r_k = -i a0^k sum_j c_j T_j,
// T_j running over rotation-invariant words (G P1) (x) P2 and P2 (x) (G P1),
// G in {Mhat_{i0}, M_ij}, P1, P2 momentum monomials of total degree k.
// Coefficients are fixed by comparing canonical forms modulo Rtilde, at
// lambda = 1/2, on the basis of rotation-invariant tensor structures.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "kappa/hopf.hpp"
#include "kappa/linsolve.hpp"
#include "kappa/poincare.hpp"
#include "kappa/render.hpp"

namespace kappa {

namespace detail {

/// sum_k p_k (x) p_k.
inline TensorElement split_pair(int n) {
    TensorElement t(n);
    for (int k = 1; k < kDim; ++k) t += tensor::pure(algebra::p(k, n), algebra::p(k, n));
    return t;
}

inline AlgebraElement p_squared(int n) {
    AlgebraElement s(n);
    for (int k = 1; k < kDim; ++k) s += algebra::p(k, n) * algebra::p(k, n);
    return s;
}

/// Momentum content p0^{p0_a} (p^2)^{pairs_a} (x) p0^{p0_b} (p^2)^{pairs_b}, times (sum p_k (x) p_k)^split.
inline TensorElement scalar_momenta(int p0_a, int pairs_a, int split, int pairs_b, int p0_b, int n) {
    const AlgebraElement p0 = algebra::p(0, n);
    const AlgebraElement p2 = p_squared(n);
    TensorElement t = tensor::pure(power(p0, p0_a) * power(p2, pairs_a), power(p0, p0_b) * power(p2, pairs_b));
    const TensorElement s = split_pair(n);
    for (int q = 0; q < split; ++q) t = t * s;
    return t;
}

inline std::string momentum_word(bool with_index, char index, int p0, int pairs, const std::vector<char>& split_names,
                                 char& next_pair) {
    std::string s;
    auto put = [&s](const std::string& f) {
        if (!s.empty()) s += '*';
        s += f;
    };
    if (with_index) put(std::string("p_") + index);
    for (int q = 0; q < pairs; ++q) {
        const char c = next_pair++;
        put(std::string("p_") + c);
        put(std::string("p_") + c);
    }
    for (char c : split_names) put(std::string("p_") + c);
    if (p0 == 1) put("p0");
    else if (p0 > 1) put("p0^" + std::to_string(p0));
    return s;
}

}  // namespace detail

/// One rotation-invariant ansatz word, described by where each momentum sits.
/// For a boost G = Mhat_{i0}, one p_i carries the free index; for a rotation
/// G = M_ij, p_j sits in the G leg and p_i in the other leg. The remaining
/// momenta are p0's and contracted pairs p_k p_k, either both in the G leg,
/// split across the legs, or both in the other leg.
struct AnsatzTerm {
    std::string name;
    bool g_left = true;
    bool rotation = false;
    bool index_in_g = false;
    int p0_g = 0;
    int p0_o = 0;
    int pairs_g = 0;
    int pairs_split = 0;
    int pairs_o = 0;

    [[nodiscard]] int g_leg_momenta() const {
        return (rotation || index_in_g ? 1 : 0) + p0_g + 2 * pairs_g + pairs_split;
    }
    [[nodiscard]] int other_leg_momenta() const {
        return (rotation || !index_in_g ? 1 : 0) + p0_o + 2 * pairs_o + pairs_split;
    }
    [[nodiscard]] int left_leg_momenta() const { return g_left ? g_leg_momenta() : other_leg_momenta(); }
    [[nodiscard]] int degree() const { return g_leg_momenta() + other_leg_momenta(); }

    /// e.g. `Mhat_i0*p_i*p0 ox p_j*p_j`.
    [[nodiscard]] std::string label() const {
        char next = rotation ? 'k' : 'j';
        std::vector<char> split;
        for (int q = 0; q < pairs_split; ++q) split.push_back(static_cast<char>(next + pairs_g + q));
        char g_next = next;
        std::string g = rotation ? "M_ij" : "Mhat_i0";
        const std::string gm =
            detail::momentum_word(rotation ? true : index_in_g, rotation ? 'j' : 'i', p0_g, pairs_g, split, g_next);
        if (!gm.empty()) g += "*" + gm;
        char o_next = static_cast<char>(next + pairs_g + pairs_split);
        std::string o =
            detail::momentum_word(rotation ? true : !index_in_g, 'i', p0_o, pairs_o, split, o_next);
        if (o.empty()) o = "1";
        return g_left ? g + " ox " + o : o + " ox " + g;
    }

    /// The word summed over all spatial indices, without the -i a0^k prefactor.
    /// boosts[i - 1] stands in for Mhat_{i0}.
    [[nodiscard]] TensorElement structure(const std::vector<AlgebraElement>& boosts, int n) const {
        TensorElement out(n);
        const TensorElement scalars = g_left ? detail::scalar_momenta(p0_g, pairs_g, pairs_split, pairs_o, p0_o, n)
                                             : detail::scalar_momenta(p0_o, pairs_o, pairs_split, pairs_g, p0_g, n);
        auto on_g = [this](const AlgebraElement& a) { return g_left ? tensor::left(a) : tensor::right(a); };
        auto on_other = [this](const AlgebraElement& a) { return g_left ? tensor::right(a) : tensor::left(a); };
        for (int i = 1; i < kDim; ++i) {
            if (rotation) {
                for (int j = 1; j < kDim; ++j)
                    if (j != i)
                        out += on_g(mij(i, j, n) * algebra::p(j, n)) * on_other(algebra::p(i, n)) * scalars;
            } else {
                const AlgebraElement& g = boosts.at(static_cast<std::size_t>(i - 1));
                const TensorElement pi = index_in_g ? on_g(algebra::p(i, n)) : on_other(algebra::p(i, n));
                out += on_g(g) * pi * scalars;
            }
        }
        return out;
    }

    [[nodiscard]] TensorElement structure(const LorentzRealization& real, int n) const {
        std::vector<AlgebraElement> boosts;
        if (!rotation)
            for (int i = 1; i < kDim; ++i) boosts.push_back(mhat(i, real, n));
        return structure(boosts, n);
    }

    /// -i a0^k times the structure.
    [[nodiscard]] TensorElement contribution(const std::vector<AlgebraElement>& boosts, int n) const {
        return Scalar(n, -GaussianRational::I()) * Scalar::a0(n, degree()) * structure(boosts, n);
    }
    [[nodiscard]] TensorElement contribution(const LorentzRealization& real, int n) const {
        return Scalar(n, -GaussianRational::I()) * Scalar::a0(n, degree()) * structure(real, n);
    }

    [[nodiscard]] auto sort_key() const {
        return std::make_tuple(left_leg_momenta(), rotation, !index_in_g, -p0_g, -pairs_g, -pairs_split);
    }
};

/// All ansatz words with extra momentum degree k, named c1.. (G in the left
/// leg) and d1.. (G in the right leg), each ordered by the number of momenta
/// in the left leg.
inline std::vector<AnsatzTerm> generate_ansatz(int k) {
    if (k < 1) throw std::invalid_argument("ansatz order must be at least 1");
    std::vector<AnsatzTerm> left;
    std::vector<AnsatzTerm> right;
    auto emit = [&](AnsatzTerm t) {
        for (bool g_left : {true, false}) {
            t.g_left = g_left;
            (g_left ? left : right).push_back(t);
        }
    };
    auto distribute = [&](AnsatzTerm base, int scalar_degree) {
        for (int b = 0; 2 * b <= scalar_degree; ++b) {
            const int a = scalar_degree - 2 * b;
            for (int p0g = 0; p0g <= a; ++p0g)
                for (int gg = 0; gg <= b; ++gg)
                    for (int sp = 0; gg + sp <= b; ++sp) {
                        AnsatzTerm t = base;
                        t.p0_g = p0g;
                        t.p0_o = a - p0g;
                        t.pairs_g = gg;
                        t.pairs_split = sp;
                        t.pairs_o = b - gg - sp;
                        emit(t);
                    }
        }
    };
    for (bool in_g : {true, false}) {
        AnsatzTerm t;
        t.index_in_g = in_g;
        distribute(t, k - 1);
    }
    if (k >= 2) {
        AnsatzTerm t;
        t.rotation = true;
        distribute(t, k - 2);
    }
    auto by_key = [](const AnsatzTerm& x, const AnsatzTerm& y) { return x.sort_key() < y.sort_key(); };
    std::stable_sort(left.begin(), left.end(), by_key);
    std::stable_sort(right.begin(), right.end(), by_key);
    std::vector<AnsatzTerm> out;
    for (std::size_t j = 0; j < left.size(); ++j) {
        left[j].name = "c" + std::to_string(j + 1);
        out.push_back(left[j]);
    }
    for (std::size_t j = 0; j < right.size(); ++j) {
        right[j].name = "d" + std::to_string(j + 1);
        out.push_back(right[j]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rotation-invariant structures of canonical (left-leg x-free) tensors with one
// coordinate in the right leg: either x0 or a spatial x_i contracted with p_i.

struct CanonicalStructure {
    bool time = false;         // x0 instead of x_i
    bool index_left = false;   // position of the p_i contracted with x_i
    int p0_left = 0;
    int p0_right = 0;
    int pairs_left = 0;
    int pairs_split = 0;
    int pairs_right = 0;

    [[nodiscard]] TensorElement element(int n) const {
        TensorElement t = detail::scalar_momenta(p0_left, pairs_left, pairs_split, pairs_right, p0_right, n);
        if (time) return tensor::right(algebra::x(0, n)) * t;
        TensorElement out(n);
        for (int i = 1; i < kDim; ++i) {
            const TensorElement pi = index_left ? tensor::left(algebra::p(i, n)) : tensor::right(algebra::p(i, n));
            out += tensor::right(algebra::x(i, n)) * pi * t;
        }
        return out;
    }
};

/// Structures whose momentum degree is k + 1.
inline std::vector<CanonicalStructure> canonical_structures(int k) {
    std::vector<CanonicalStructure> out;
    auto distribute = [&](CanonicalStructure base, int degree) {
        for (int b = 0; 2 * b <= degree; ++b) {
            const int a = degree - 2 * b;
            for (int pl = 0; pl <= a; ++pl)
                for (int gl = 0; gl <= b; ++gl)
                    for (int sp = 0; gl + sp <= b; ++sp) {
                        CanonicalStructure s = base;
                        s.p0_left = pl;
                        s.p0_right = a - pl;
                        s.pairs_left = gl;
                        s.pairs_split = sp;
                        s.pairs_right = b - gl - sp;
                        out.push_back(s);
                    }
        }
    };
    for (bool left : {true, false}) {
        CanonicalStructure s;
        s.index_left = left;
        distribute(s, k);
    }
    CanonicalStructure s;
    s.time = true;
    distribute(s, k + 1);
    return out;
}

/// Coordinates of a homogeneous canonical tensor (a0 stripped) in the structure basis.
class StructureBasis {
public:
    StructureBasis(int k, int n) : structures_(canonical_structures(k)) {
        for (const auto& s : structures_) elements_.push_back(s.element(n));
        for (const auto& e : elements_)
            for (const auto& [key, c] : e) row_of_.try_emplace(key, row_of_.size());
        matrix_ = ExactMatrix(row_of_.size(), elements_.size());
        for (std::size_t j = 0; j < elements_.size(); ++j)
            for (const auto& [key, c] : elements_[j]) matrix_.at(row_of_.at(key), j) = field_entry(c.component(0));
    }

    [[nodiscard]] std::size_t size() const { return structures_.size(); }
    [[nodiscard]] const std::vector<CanonicalStructure>& structures() const { return structures_; }

    /// Throws std::domain_error if the tensor is not rotation invariant of the expected shape.
    [[nodiscard]] std::vector<GaussianRational> coordinates(const std::map<TensorKey, GaussianRational>& v) const {
        std::vector<GaussianRational> b(row_of_.size());
        for (const auto& [key, c] : v) {
            auto it = row_of_.find(key);
            if (it == row_of_.end())
                throw std::domain_error("tensor has a component outside the rotation-invariant structures");
            b[it->second] = c;
        }
        const SolutionSpace s = solve(matrix_, b);
        if (s.kind != SolutionKind::Unique)
            throw std::domain_error("tensor is not a combination of rotation-invariant structures");
        return s.particular;
    }

private:
    std::vector<CanonicalStructure> structures_;
    std::vector<TensorElement> elements_;
    std::map<TensorKey, std::size_t> row_of_;
    ExactMatrix matrix_;
};

/// The a0^k coefficients of a tensor as field values.
inline std::map<TensorKey, GaussianRational> order_part(const TensorElement& t, int k) {
    std::map<TensorKey, GaussianRational> out;
    for (const auto& [key, c] : t) {
        const LambdaPoly p = c.component(k);
        if (!p.is_zero()) out.emplace(key, field_entry(p));
    }
    return out;
}

// ---------------------------------------------------------------------------

/// Solution of one order. Coefficient j equals
///   constant[j] + sum_p linear[j][p] * parameter_p.
struct ExpansionResult {
    int order = 0;
    LorentzCase lorentz_case = LorentzCase::II;
    SolutionKind status = SolutionKind::Infeasible;
    std::size_t equations = 0;
    std::vector<AnsatzTerm> terms;
    std::vector<std::string> parameters;
    std::vector<GaussianRational> constant;
    std::vector<std::vector<GaussianRational>> linear;
    /// Parameter values used when this order feeds later orders.
    std::vector<GaussianRational> chosen;
    bool substitution_verified = false;

    [[nodiscard]] std::size_t dimension() const { return parameters.size(); }

    [[nodiscard]] std::vector<GaussianRational> coefficients(const std::vector<GaussianRational>& params) const {
        if (status == SolutionKind::Infeasible) throw std::domain_error("no solution at this order");
        if (params.size() != parameters.size()) throw std::invalid_argument("wrong number of parameter values");
        std::vector<GaussianRational> c = constant;
        for (std::size_t j = 0; j < c.size(); ++j)
            for (std::size_t p = 0; p < params.size(); ++p) c[j] += linear[j][p] * params[p];
        return c;
    }

    /// r_k at the given parameter values, built at truncation n.
    [[nodiscard]] TensorElement value(const std::vector<GaussianRational>& params, const LorentzRealization& real,
                                      int n) const {
        const std::vector<GaussianRational> c = coefficients(params);
        TensorElement r(n);
        for (std::size_t j = 0; j < terms.size(); ++j)
            if (!c[j].is_zero()) r += c[j] * terms[j].contribution(real, n);
        return r;
    }
    [[nodiscard]] TensorElement value(const LorentzRealization& real, int n) const { return value(chosen, real, n); }
};

/// The realization used by the expansion: the case preset at lambda = 1/2.
inline LorentzRealization expansion_realization(LorentzCase c, int n) {
    if (c == LorentzCase::Custom) throw std::invalid_argument("expansion needs a case preset");
    return LorentzRealization::preset(c, Rational(1, 2), n);
}

/// Canonical form modulo Rtilde of exp(rho) - exp(r_1 + ... + r_{k-1}) at truncation k.
inline TensorElement bch_remainder(int k, const std::vector<TensorElement>& prior, const Deformation& d) {
    if (static_cast<int>(prior.size()) != k - 1)
        throw std::invalid_argument("order " + std::to_string(k) + " needs exactly " + std::to_string(k - 1) +
                                    " prior terms");
    TensorElement sum(d.order());
    for (const auto& r : prior) sum += r;
    const TensorElement e = sum.is_zero() ? tensor::one(d.order()) : t_exp(sum);
    return canonicalize(d.rmatrix() - e, d.relations(RelationTag::Rtilde));
}

/// The a0^k part of the remainder; lower orders must already cancel.
inline TensorElement bch_target(int k, const std::vector<TensorElement>& prior, const Deformation& d) {
    const TensorElement rem = bch_remainder(k, prior, d);
    if (rem.min_grade() < k) throw std::domain_error("prior terms do not reproduce R below the requested order");
    return rem.graded_part(k);
}

/// Positions of the coefficients that define the reported third-order parameters:
///   alpha1 = -24 c[M_ij p_j p0 (x) p_i], beta1 = 24 c[p_i (x) M_ij p_j p0],
///   alpha2 = -24 c[M_ij p_j (x) p_i p0].
struct ParameterAnchor {
    std::string name;
    AnsatzTerm shape;
    Rational scale;
};

inline std::vector<ParameterAnchor> third_order_anchors() {
    AnsatzTerm a1;
    a1.rotation = true;
    a1.g_left = true;
    a1.p0_g = 1;
    AnsatzTerm b1 = a1;
    b1.g_left = false;
    AnsatzTerm a2;
    a2.rotation = true;
    a2.g_left = true;
    a2.p0_o = 1;
    return {{"alpha1", a1, Rational(-24)}, {"beta1", b1, Rational(24)}, {"alpha2", a2, Rational(-24)}};
}

inline bool same_shape(const AnsatzTerm& a, const AnsatzTerm& b) {
    return a.g_left == b.g_left && a.rotation == b.rotation && (a.rotation || a.index_in_g == b.index_in_g) &&
           a.p0_g == b.p0_g && a.p0_o == b.p0_o && a.pairs_g == b.pairs_g && a.pairs_split == b.pairs_split &&
           a.pairs_o == b.pairs_o;
}

namespace detail {

/// Re-express particular + span(nullspace) through parameters tied to anchor
/// coefficients (when the anchors determine the nullspace), else through the
/// free unknowns t1, t2, ...
inline void parametrize(ExpansionResult& r, const SolutionSpace& s) {
    const std::size_t m = s.nullspace.size();
    const std::size_t n = r.terms.size();
    r.constant = s.particular;
    r.linear.assign(n, std::vector<GaussianRational>(m));
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t j = 0; j < n; ++j) r.linear[j][p] = s.nullspace[p][j];
    r.parameters.clear();
    for (std::size_t p = 0; p < m; ++p) r.parameters.push_back("t" + std::to_string(p + 1));
    if (r.order != 3 || m != 3) return;
    // coefficient_anchor = particular + N t; parameter = scale * coefficient_anchor.
    std::vector<std::size_t> idx;
    std::vector<Rational> scale;
    for (const auto& a : third_order_anchors()) {
        for (std::size_t j = 0; j < n; ++j)
            if (same_shape(r.terms[j], a.shape)) {
                idx.push_back(j);
                scale.push_back(a.scale);
            }
    }
    if (idx.size() != 3) return;
    ExactMatrix nm(3, 3);
    for (std::size_t q = 0; q < 3; ++q)
        for (std::size_t p = 0; p < 3; ++p) nm.at(q, p) = GaussianRational(scale[q]) * r.linear[idx[q]][p];
    // t = Ninv (alpha - scale * particular_anchor): solve column by column.
    std::vector<std::vector<GaussianRational>> ninv(3, std::vector<GaussianRational>(3));
    for (std::size_t e = 0; e < 3; ++e) {
        std::vector<GaussianRational> unit(3);
        unit[e] = GaussianRational(1);
        const SolutionSpace col = solve(nm, unit);
        if (col.kind != SolutionKind::Unique) return;
        for (std::size_t p = 0; p < 3; ++p) ninv[p][e] = col.particular[p];
    }
    std::vector<GaussianRational> offset(3);  // -Ninv * scale * particular_anchor
    for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t q = 0; q < 3; ++q)
            offset[p] -= ninv[p][q] * GaussianRational(scale[q]) * r.constant[idx[q]];
    std::vector<GaussianRational> constant = r.constant;
    std::vector<std::vector<GaussianRational>> linear(n, std::vector<GaussianRational>(3));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t p = 0; p < 3; ++p) {
            constant[j] += r.linear[j][p] * offset[p];
            for (std::size_t q = 0; q < 3; ++q) linear[j][q] += r.linear[j][p] * ninv[p][q];
        }
    r.constant = std::move(constant);
    r.linear = std::move(linear);
    r.parameters = {"alpha1", "beta1", "alpha2"};
}

}  // namespace detail

/// Solve order k given already solved orders 1..k-1 of the same case.
inline ExpansionResult solve_order(int k, const std::vector<ExpansionResult>& prior, LorentzCase c) {
    if (k < 1 || k > kMaxOrder) throw std::invalid_argument("expansion order out of range");
    if (static_cast<int>(prior.size()) != k - 1) throw std::invalid_argument("solve_order needs all lower orders");
    const int n = k;
    const Deformation d(Rational(1, 2), n);
    const LorentzRealization real = expansion_realization(c, n);
    std::vector<TensorElement> prior_values;
    for (const auto& p : prior) {
        if (p.status == SolutionKind::Infeasible) throw std::domain_error("a lower order has no solution");
        prior_values.push_back(p.value(real, n));
    }
    const TensorElement target = bch_target(k, prior_values, d);
    ExpansionResult res;
    res.order = k;
    res.lorentz_case = c;
    res.terms = generate_ansatz(k);
    const RelationSet& rt = d.relations(RelationTag::Rtilde);

    const StructureBasis basis(k, n);
    const std::vector<GaussianRational> tv = basis.coordinates(order_part(target, k));
    std::vector<std::vector<GaussianRational>> cols;
    std::vector<TensorElement> canon;
    for (const auto& t : res.terms) {
        canon.push_back(canonicalize(t.contribution(real, n), rt));
        cols.push_back(basis.coordinates(order_part(canon.back(), k)));
    }
    std::vector<std::size_t> rows;
    for (std::size_t s = 0; s < basis.size(); ++s) {
        bool used = !tv[s].is_zero();
        for (const auto& col : cols) used = used || !col[s].is_zero();
        if (used) rows.push_back(s);
    }
    res.equations = rows.size();
    ExactMatrix a(rows.size(), cols.size());
    std::vector<GaussianRational> b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        b[r] = tv[rows[r]];
        for (std::size_t j = 0; j < cols.size(); ++j) a.at(r, j) = cols[j][rows[r]];
    }
    const SolutionSpace sol = solve(a, b);
    res.status = sol.kind;
    if (sol.kind == SolutionKind::Infeasible) return res;
    detail::parametrize(res, sol);
    res.chosen.assign(res.parameters.size(), GaussianRational{});

    // Substitution check: the new term closes the remainder at order k.
    prior_values.push_back(res.value(real, n));
    TensorElement sum(n);
    for (const auto& r : prior_values) sum += r;
    res.substitution_verified = canonicalize(d.rmatrix() - t_exp(sum), rt).is_zero();
    return res;
}

/// Orders 1..max_order in sequence. Stops after the first infeasible order.
inline std::vector<ExpansionResult> expand(int max_order, LorentzCase c) {
    std::vector<ExpansionResult> out;
    for (int k = 1; k <= max_order; ++k) {
        out.push_back(solve_order(k, out, c));
        if (out.back().status == SolutionKind::Infeasible) break;
    }
    return out;
}

/// tau0(t) == -t.
inline bool is_wedge(const TensorElement& t) { return tau0(t) == -t; }

/// Index of the word with the legs exchanged.
inline std::size_t mirror_index(const std::vector<AnsatzTerm>& terms, std::size_t j) {
    AnsatzTerm m = terms.at(j);
    m.g_left = !m.g_left;
    for (std::size_t q = 0; q < terms.size(); ++q)
        if (same_shape(terms[q], m)) return q;
    throw std::logic_error("ansatz is not closed under exchanging legs");
}

/// Formal antisymmetry: each word and its mirror carry opposite coefficients.
/// The words are linearly dependent as tensors from the third order on, so
/// this is a statement about the coefficients rather than the tensor.
inline bool wedge_check(const std::vector<AnsatzTerm>& terms, const std::vector<GaussianRational>& coeffs) {
    if (coeffs.size() != terms.size()) throw std::invalid_argument("one coefficient per ansatz word expected");
    for (std::size_t j = 0; j < terms.size(); ++j)
        if (!(coeffs[mirror_index(terms, j)] == -coeffs[j])) return false;
    return true;
}

inline bool wedge_check(const ExpansionResult& r, const std::vector<GaussianRational>& params) {
    return wedge_check(r.terms, r.coefficients(params));
}

// ---------------------------------------------------------------------------
// Change of basis Mhat_{i0} = M_{i0} Z^{-1/2} + (a0/2) M_ij p_j.

struct TranslatedTerm {
    GaussianRational coeff;
    std::string label;
};

struct TranslatedExpansion {
    int order = 0;
    LorentzCase target_case = LorentzCase::II;
    std::vector<TranslatedTerm> terms;
    /// The expression evaluated at truncation `order` (equals the source exactly).
    TensorElement value;
};

/// Rewrites r_k (case ii) in the case (i) generators at lambda = 1/2.
inline TranslatedExpansion translate_basis(const ExpansionResult& r, LorentzCase from, LorentzCase to) {
    if (from != LorentzCase::II || r.lorentz_case != LorentzCase::II)
        throw std::invalid_argument("only case (ii) expansions can be translated");
    if (to == LorentzCase::III)
        throw std::invalid_argument("case (iii) generators are not related to the case (ii) boosts");
    if (to != LorentzCase::I && to != LorentzCase::II) throw std::invalid_argument("unsupported target basis");
    const int n = r.order;
    TranslatedExpansion out;
    out.order = n;
    out.target_case = to;
    const std::vector<GaussianRational> c = r.coefficients(r.chosen);
    const LorentzRealization source = expansion_realization(LorentzCase::II, n);
    if (to == LorentzCase::II) {
        for (std::size_t j = 0; j < r.terms.size(); ++j)
            if (!c[j].is_zero()) out.terms.push_back({c[j], r.terms[j].label()});
        out.value = r.value(source, n);
        return out;
    }
    // Mhat_{i0} -> M_{i0} Z^{-1/2} + (a0/2) M_ij p_j, word by word.
    out.value = TensorElement(n);
    const LorentzRealization undeformed = expansion_realization(LorentzCase::I, n);
    std::vector<AlgebraElement> dressed;
    std::vector<AlgebraElement> rotated;
    const Scalar half = Scalar(n, GaussianRational(Rational(1, 2))) * Scalar::a0(n);
    for (int i = 1; i < kDim; ++i) {
        dressed.push_back(mhat(i, undeformed, n) * z_power(Rational(-1, 2), n));
        AlgebraElement m(n);
        for (int j = 1; j < kDim; ++j)
            if (j != i) m += half * (mij(i, j, n) * algebra::p(j, n));
        rotated.push_back(m);
    }
    for (std::size_t j = 0; j < r.terms.size(); ++j) {
        if (c[j].is_zero()) continue;
        const AnsatzTerm& t = r.terms[j];
        if (t.rotation) {
            out.terms.push_back({c[j], t.label()});
            out.value += c[j] * t.contribution(dressed, n);
            continue;
        }
        std::string a = t.label();
        a.replace(a.find("Mhat_i0"), 7, "M_i0*Z^[-1/2]");
        std::string b = t.label();
        b.replace(b.find("Mhat_i0"), 7, "a0/2*M_im*p_m");
        out.terms.push_back({c[j], a});
        out.terms.push_back({c[j], b});
        out.value += c[j] * (t.contribution(dressed, n) + t.contribution(rotated, n));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rendering.

/// `-1/12 - 1/24*alpha2`, `0`, `beta1/24` style affine coefficient.
inline std::string affine_text(const GaussianRational& constant, const std::vector<GaussianRational>& linear,
                               const std::vector<std::string>& names) {
    std::vector<render::detail::Atom> atoms;
    if (!constant.is_zero()) atoms.push_back({constant, ""});
    for (std::size_t p = 0; p < names.size(); ++p)
        if (!linear[p].is_zero()) atoms.push_back({linear[p], names[p]});
    return render::detail::join(atoms);
}

inline std::string coefficient_text(const ExpansionResult& r, std::size_t j) {
    return affine_text(r.constant.at(j), r.linear.at(j), r.parameters);
}

/// Plain-text report: status line, then one `name = value    word` line per
/// nonzero coefficient.
inline std::string to_text(const ExpansionResult& r) {
    std::string out = "order " + std::to_string(r.order) + ", case " + case_name(r.lorentz_case) + ": " +
                      solution_kind_name(r.status);
    if (r.status == SolutionKind::Parametric) out += " (dimension " + std::to_string(r.dimension()) + ")";
    out += ", " + std::to_string(r.equations) + " equations, " + std::to_string(r.terms.size()) + " unknowns\n";
    if (r.status == SolutionKind::Infeasible) return out;
    out += "r" + std::to_string(r.order) + " = -I*a0^" + std::to_string(r.order) + " * sum_j c_j T_j\n";
    bool any = false;
    for (std::size_t j = 0; j < r.terms.size(); ++j) {
        const std::string v = coefficient_text(r, j);
        if (v == "0") continue;
        any = true;
        std::string line = "  " + r.terms[j].name + " = " + v;
        line.resize(std::max<std::size_t>(line.size() + 2, 32), ' ');
        out += line + r.terms[j].label() + "\n";
    }
    if (!any) out += "  all coefficients vanish\n";
    out += std::string("substitution check: ") + (r.substitution_verified ? "passed" : "FAILED") + "\n";
    return out;
}

namespace detail {

inline std::string latex_word(std::string w) {
    auto replace_all = [&w](const std::string& a, const std::string& b) {
        for (std::size_t pos = w.find(a); pos != std::string::npos; pos = w.find(a, pos + b.size()))
            w.replace(pos, a.size(), b);
    };
    replace_all("Mhat_i0", "\\hat{M}_{i0}");
    replace_all("M_ij", "M_{ij}");
    replace_all(" ox ", " \\otimes ");
    replace_all("p0", "p_0");
    replace_all("alpha1", "\\alpha_1");
    replace_all("beta1", "\\beta_1");
    replace_all("alpha2", "\\alpha_2");
    replace_all("*", " ");
    return w;
}

}  // namespace detail

/// `-i a_0^{k} ( c \hat{M}_{i0} \otimes p_i + ... )`.
inline std::string to_latex(const ExpansionResult& r) {
    if (r.status == SolutionKind::Infeasible) return "\\text{no solution}";
    std::string body;
    for (std::size_t j = 0; j < r.terms.size(); ++j) {
        const std::string v = coefficient_text(r, j);
        if (v == "0") continue;
        const bool simple = v.find_first_of("+ ") == std::string::npos;
        std::string c = simple ? v : "(" + v + ")";
        bool neg = false;
        if (simple && c.front() == '-') {
            neg = true;
            c.erase(0, 1);
        }
        if (c == "1") c.clear();
        std::string term = (c.empty() ? "" : detail::latex_word(c) + "\\,") + detail::latex_word(r.terms[j].label());
        if (body.empty()) body = (neg ? "-" : "") + term;
        else body += (neg ? " - " : " + ") + term;
    }
    if (body.empty()) return "r_{" + std::to_string(r.order) + "} = 0";
    return "r_{" + std::to_string(r.order) + "} = -i a_0^{" + std::to_string(r.order) + "} \\left( " + body +
           " \\right)";
}

}  // namespace kappa
