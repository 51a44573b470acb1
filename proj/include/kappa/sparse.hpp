#pragma once

#include <map>
#include <stdexcept>
#include <utility>

#include "kappa/scalars.hpp"

namespace kappa {

/// Finite linear combination of keys with Scalar coefficients, all sharing
/// one truncation order. Iteration follows the key order, which makes every
/// rendering deterministic.
template <class Key>
class SparseElement {
public:
    using key_type = Key;
    using map_type = std::map<Key, Scalar>;

    SparseElement() = default;
    explicit SparseElement(int order) : order_(order), zero_(order) {}
    SparseElement(int order, const Key& k, const Scalar& c) : SparseElement(order) { add_term(k, c); }

    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] const map_type& terms() const noexcept { return terms_; }
    [[nodiscard]] auto begin() const { return terms_.begin(); }
    [[nodiscard]] auto end() const { return terms_.end(); }

    [[nodiscard]] const Scalar& coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? zero_ : it->second;
    }

    void add_term(const Key& k, const Scalar& c) {
        if (c.order() != order_) throw std::invalid_argument("mismatched truncation orders");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void add_term(const Key& k, const GaussianRational& c) { add_term(k, Scalar(order_, c)); }

    /// Lowest a0 power over all coefficients.
    [[nodiscard]] int min_grade() const noexcept {
        int g = order_ + 1;
        for (const auto& [k, c] : terms_) g = std::min(g, c.min_grade());
        return g;
    }

    [[nodiscard]] SparseElement graded_part(int k) const {
        SparseElement r(order_);
        for (const auto& [key, c] : terms_) r.add_term(key, c.graded_part(k));
        return r;
    }

    [[nodiscard]] SparseElement with_order(int order) const {
        SparseElement r(order);
        for (const auto& [key, c] : terms_) r.add_term(key, c.with_order(order));
        return r;
    }

    [[nodiscard]] SparseElement substitute_lambda(const Rational& v) const {
        SparseElement r(order_);
        for (const auto& [key, c] : terms_) r.add_term(key, c.substitute_lambda(v));
        return r;
    }

    [[nodiscard]] int lambda_degree() const noexcept {
        int d = -1;
        for (const auto& [k, c] : terms_) d = std::max(d, c.lambda_degree());
        return d;
    }

    /// Apply a key map (e.g. a leg swap) keeping coefficients.
    template <class F>
    [[nodiscard]] SparseElement map_keys(F&& f) const {
        SparseElement r(order_);
        for (const auto& [key, c] : terms_) r.add_term(f(key), c);
        return r;
    }

    SparseElement operator-() const {
        SparseElement r = *this;
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }
    SparseElement& operator+=(const SparseElement& o) {
        check(o);
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    SparseElement& operator-=(const SparseElement& o) {
        check(o);
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    friend SparseElement operator+(SparseElement a, const SparseElement& b) { return a += b; }
    friend SparseElement operator-(SparseElement a, const SparseElement& b) { return a -= b; }

    friend SparseElement operator*(const Scalar& s, const SparseElement& a) {
        if (s.order() != a.order_) throw std::invalid_argument("mismatched truncation orders");
        SparseElement r(a.order_);
        for (const auto& [k, c] : a.terms_) r.add_term(k, s * c);
        return r;
    }
    friend SparseElement operator*(const GaussianRational& s, const SparseElement& a) {
        SparseElement r(a.order_);
        if (s.is_zero()) return r;
        for (const auto& [k, c] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), k, s * c);
        return r;
    }

    friend bool operator==(const SparseElement& a, const SparseElement& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

private:
    void check(const SparseElement& o) const {
        if (o.order_ != order_) throw std::invalid_argument("mismatched truncation orders");
    }

    int order_ = 0;
    Scalar zero_;
    map_type terms_;
};

}  // namespace kappa
