#pragma once

// Coefficient ring: Gaussian rationals, polynomials in the twist parameter
// lambda, and series in the deformation parameter a0 truncated at a0^N.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "kappa/rational.hpp"

namespace kappa {

/// Largest supported a0 truncation order.
inline constexpr int kMaxOrder = 6;

struct GaussianRational {
    Rational re;
    Rational im;

    constexpr GaussianRational() = default;
    constexpr GaussianRational(Rational r) : re(r) {}  // NOLINT: implicit lift
    constexpr GaussianRational(std::int64_t r) : re(r) {}  // NOLINT: implicit lift
    constexpr GaussianRational(Rational r, Rational i) : re(r), im(i) {}

    static GaussianRational I() { return {Rational(0), Rational(1)}; }

    [[nodiscard]] bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }
    [[nodiscard]] bool is_real() const noexcept { return im.is_zero(); }

    GaussianRational operator-() const { return {-re, -im}; }
    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        if (a.im.is_zero() && b.im.is_zero()) return {a.re * b.re, Rational(0)};
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    [[nodiscard]] GaussianRational inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        const Rational n = re * re + im * im;
        return {re / n, -im / n};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        if (b.im.is_zero()) {
            if (b.re.is_zero()) throw std::domain_error("division by zero");
            return {a.re / b.re, a.im / b.re};
        }
        return a * b.inverse();
    }
    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

    friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

/// (-i)^k etc. without repeated multiplication.
inline GaussianRational i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {Rational(1), Rational(0)};
        case 1: return {Rational(0), Rational(1)};
        case 2: return {Rational(-1), Rational(0)};
        default: return {Rational(0), Rational(-1)};
    }
}

inline Rational factorial(int n) {
    Rational r(1);
    for (int k = 2; k <= n; ++k) r *= Rational(k);
    return r;
}

inline Rational binomial(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    Rational r(1);
    for (int j = 1; j <= k; ++j) r = r * Rational(n - k + j) / Rational(j);
    return r;
}

/// Polynomial in lambda with Gaussian rational coefficients.
class LambdaPoly {
public:
    LambdaPoly() = default;
    LambdaPoly(GaussianRational c) {  // NOLINT: implicit lift of constants
        if (!c.is_zero()) coeffs_.push_back(c);
    }
    LambdaPoly(Rational c) : LambdaPoly(GaussianRational(c)) {}      // NOLINT
    LambdaPoly(std::int64_t c) : LambdaPoly(GaussianRational(c)) {}  // NOLINT
    explicit LambdaPoly(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    /// The generator lambda itself.
    static LambdaPoly lam() { return LambdaPoly(std::vector<GaussianRational>{GaussianRational{}, GaussianRational(1)}); }

    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
    [[nodiscard]] bool is_constant() const noexcept { return coeffs_.size() <= 1; }
    /// -1 for the zero polynomial.
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] GaussianRational coeff(int d) const {
        return d >= 0 && d < static_cast<int>(coeffs_.size()) ? coeffs_[d] : GaussianRational{};
    }
    [[nodiscard]] GaussianRational constant() const { return coeff(0); }
    [[nodiscard]] const std::vector<GaussianRational>& coeffs() const noexcept { return coeffs_; }

    [[nodiscard]] GaussianRational evaluate(const GaussianRational& v) const {
        GaussianRational acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * v + *it;
        return acc;
    }

    LambdaPoly operator-() const {
        LambdaPoly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    friend LambdaPoly operator+(const LambdaPoly& a, const LambdaPoly& b) {
        std::vector<GaussianRational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
        return LambdaPoly(std::move(c));
    }
    friend LambdaPoly operator-(const LambdaPoly& a, const LambdaPoly& b) { return a + (-b); }
    friend LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<GaussianRational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return LambdaPoly(std::move(c));
    }
    LambdaPoly& operator+=(const LambdaPoly& o) { return *this = *this + o; }
    LambdaPoly& operator-=(const LambdaPoly& o) { return *this = *this - o; }
    LambdaPoly& operator*=(const LambdaPoly& o) { return *this = *this * o; }

    [[nodiscard]] LambdaPoly pow(int n) const {
        LambdaPoly r(1);
        for (int k = 0; k < n; ++k) r *= *this;
        return r;
    }

    friend bool operator==(const LambdaPoly&, const LambdaPoly&) = default;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }
    std::vector<GaussianRational> coeffs_;
};

/// Element of (Q[i])[lambda][a0] / (a0^{N+1}).
///
/// Stored sparsely as (a0-degree, lambda-degree, coefficient) triples sorted
/// by degrees; no zero coefficients are stored.
class Scalar {
public:
    struct Entry {
        std::uint8_t a0;
        std::uint8_t lam;
        GaussianRational c;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    Scalar() = default;
    explicit Scalar(int order) : order_(checked_order(order)) {}
    Scalar(int order, const GaussianRational& c) : order_(checked_order(order)) {
        if (!c.is_zero()) entries_.push_back({0, 0, c});
    }
    Scalar(int order, const LambdaPoly& p, int a0_degree = 0) : order_(checked_order(order)) {
        if (a0_degree > order_) return;
        for (int d = 0; d <= p.degree(); ++d)
            if (!p.coeff(d).is_zero())
                entries_.push_back({static_cast<std::uint8_t>(a0_degree), static_cast<std::uint8_t>(d), p.coeff(d)});
    }

    static Scalar one(int order) { return Scalar(order, GaussianRational(1)); }
    static Scalar a0(int order, int power = 1) { return Scalar(order, LambdaPoly(1), power); }
    static Scalar lam(int order) { return Scalar(order, LambdaPoly::lam()); }

    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] bool is_zero() const noexcept { return entries_.empty(); }
    [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }

    /// Lowest a0 power present; order()+1 for zero.
    [[nodiscard]] int min_grade() const noexcept { return entries_.empty() ? order_ + 1 : entries_.front().a0; }
    [[nodiscard]] int lambda_degree() const noexcept {
        int d = -1;
        for (const auto& e : entries_) d = std::max<int>(d, e.lam);
        return d;
    }

    /// Coefficient of a0^k as a lambda polynomial.
    [[nodiscard]] LambdaPoly component(int k) const {
        std::vector<GaussianRational> c;
        for (const auto& e : entries_) {
            if (e.a0 != k) continue;
            if (c.size() <= e.lam) c.resize(e.lam + 1);
            c[e.lam] = e.c;
        }
        return LambdaPoly(std::move(c));
    }

    /// The a0^k part only.
    [[nodiscard]] Scalar graded_part(int k) const {
        Scalar r(order_);
        for (const auto& e : entries_)
            if (e.a0 == k) r.entries_.push_back(e);
        return r;
    }

    /// Same value re-read at a different truncation order.
    [[nodiscard]] Scalar with_order(int order) const {
        Scalar r(order);
        for (const auto& e : entries_)
            if (e.a0 <= r.order_) r.entries_.push_back(e);
        return r;
    }

    [[nodiscard]] Scalar substitute_lambda(const Rational& v) const {
        Scalar r(order_);
        std::vector<Entry> out;
        for (const auto& e : entries_) {
            Rational p(1);
            for (int k = 0; k < e.lam; ++k) p *= v;
            out.push_back({e.a0, 0, e.c * GaussianRational(p)});
        }
        r.entries_ = normalize(std::move(out));
        return r;
    }

    Scalar operator-() const {
        Scalar r = *this;
        for (auto& e : r.entries_) e.c = -e.c;
        return r;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        check_same(a, b);
        Scalar r(a.order_);
        r.entries_.reserve(a.entries_.size() + b.entries_.size());
        auto i = a.entries_.begin();
        auto j = b.entries_.begin();
        while (i != a.entries_.end() || j != b.entries_.end()) {
            if (j == b.entries_.end() || (i != a.entries_.end() && key(*i) < key(*j))) {
                r.entries_.push_back(*i++);
            } else if (i == a.entries_.end() || key(*j) < key(*i)) {
                r.entries_.push_back(*j++);
            } else {
                GaussianRational c = i->c + j->c;
                if (!c.is_zero()) r.entries_.push_back({i->a0, i->lam, c});
                ++i;
                ++j;
            }
        }
        return r;
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        check_same(a, b);
        Scalar r(a.order_);
        if (a.is_zero() || b.is_zero()) return r;
        if (a.entries_.size() == 1 && b.entries_.size() == 1) {
            const auto& x = a.entries_[0];
            const auto& y = b.entries_[0];
            if (x.a0 + y.a0 <= a.order_)
                r.entries_.push_back({static_cast<std::uint8_t>(x.a0 + y.a0), static_cast<std::uint8_t>(x.lam + y.lam), x.c * y.c});
            return r;
        }
        std::vector<Entry> out;
        out.reserve(a.entries_.size() * b.entries_.size());
        for (const auto& x : a.entries_)
            for (const auto& y : b.entries_) {
                if (x.a0 + y.a0 > a.order_) break;  // b is sorted by a0
                out.push_back({static_cast<std::uint8_t>(x.a0 + y.a0), static_cast<std::uint8_t>(x.lam + y.lam), x.c * y.c});
            }
        r.entries_ = normalize(std::move(out));
        return r;
    }

    friend Scalar operator*(const GaussianRational& c, const Scalar& s) {
        Scalar r(s.order_);
        if (c.is_zero()) return r;
        r.entries_ = s.entries_;
        for (auto& e : r.entries_) e.c = e.c * c;
        return r;
    }
    friend Scalar operator*(const Scalar& s, const GaussianRational& c) { return c * s; }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    /// Multiply by a0^k.
    [[nodiscard]] Scalar shift_a0(int k) const {
        Scalar r(order_);
        for (const auto& e : entries_)
            if (e.a0 + k <= order_) r.entries_.push_back({static_cast<std::uint8_t>(e.a0 + k), e.lam, e.c});
        return r;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.order_ == b.order_ && a.entries_ == b.entries_;
    }

private:
    static int checked_order(int order) {
        if (order < 0 || order > kMaxOrder) throw std::invalid_argument("truncation order out of range");
        return order;
    }
    static void check_same(const Scalar& a, const Scalar& b) {
        if (a.order_ != b.order_) throw std::invalid_argument("mismatched truncation orders");
    }
    static std::pair<int, int> key(const Entry& e) { return {e.a0, e.lam}; }

    static std::vector<Entry> normalize(std::vector<Entry> v) {
        std::sort(v.begin(), v.end(), [](const Entry& x, const Entry& y) { return key(x) < key(y); });
        std::vector<Entry> out;
        out.reserve(v.size());
        for (auto& e : v) {
            if (!out.empty() && key(out.back()) == key(e)) {
                out.back().c += e.c;
            } else {
                if (!out.empty() && out.back().c.is_zero()) out.pop_back();
                out.push_back(e);
            }
        }
        if (!out.empty() && out.back().c.is_zero()) out.pop_back();
        return out;
    }

    int order_ = 0;
    std::vector<Entry> entries_;
};

/// Formal series in one variable u, kept through u^bound, with lambda
/// polynomial coefficients. Used for functions of A = a0 p0.
class OneVarSeries {
public:
    OneVarSeries() = default;
    explicit OneVarSeries(int bound) : coeffs_(bound + 1) {
        if (bound < 0) throw std::invalid_argument("negative series bound");
    }
    OneVarSeries(int bound, std::vector<LambdaPoly> coeffs) : OneVarSeries(bound) {
        for (std::size_t k = 0; k < coeffs.size() && k < coeffs_.size(); ++k) coeffs_[k] = std::move(coeffs[k]);
    }

    static OneVarSeries constant(int bound, const LambdaPoly& c) { return OneVarSeries(bound, {c}); }
    static OneVarSeries u(int bound) { return OneVarSeries(bound, {LambdaPoly(), LambdaPoly(1)}); }
    /// exp(c u).
    static OneVarSeries exp_linear(int bound, const LambdaPoly& c) {
        OneVarSeries s(bound);
        LambdaPoly term(1);
        for (int n = 0; n <= bound; ++n) {
            s.coeffs_[n] = term * LambdaPoly(GaussianRational(Rational(1) / factorial(n)));
            term *= c;
        }
        return s;
    }

    [[nodiscard]] int bound() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] const LambdaPoly& coeff(int n) const { return coeffs_.at(n); }
    [[nodiscard]] const std::vector<LambdaPoly>& coeffs() const noexcept { return coeffs_; }

    friend OneVarSeries operator+(const OneVarSeries& a, const OneVarSeries& b) {
        OneVarSeries r(std::min(a.bound(), b.bound()));
        for (int n = 0; n <= r.bound(); ++n) r.coeffs_[n] = a.coeffs_[n] + b.coeffs_[n];
        return r;
    }
    OneVarSeries operator-() const {
        OneVarSeries r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    friend OneVarSeries operator-(const OneVarSeries& a, const OneVarSeries& b) { return a + (-b); }
    friend OneVarSeries operator*(const OneVarSeries& a, const OneVarSeries& b) {
        OneVarSeries r(std::min(a.bound(), b.bound()));
        for (int i = 0; i <= r.bound(); ++i)
            for (int j = 0; i + j <= r.bound(); ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return r;
    }
    friend OneVarSeries operator*(const LambdaPoly& c, const OneVarSeries& s) {
        OneVarSeries r = s;
        for (auto& x : r.coeffs_) x = c * x;
        return r;
    }

    /// exp(s); requires a vanishing constant term.
    [[nodiscard]] OneVarSeries exp() const {
        if (!coeffs_.front().is_zero()) throw std::domain_error("series_exp: nonzero constant term");
        OneVarSeries result = constant(bound(), LambdaPoly(1));
        OneVarSeries power = result;
        for (int n = 1; n <= bound(); ++n) {
            power = power * *this;
            result = result + LambdaPoly(GaussianRational(Rational(1) / factorial(n))) * power;
        }
        return result;
    }

    /// s / u; requires a vanishing constant term. The bound drops by one.
    [[nodiscard]] OneVarSeries div_u() const {
        if (!coeffs_.front().is_zero()) throw std::domain_error("series_div_u: nonzero constant term");
        if (bound() == 0) throw std::domain_error("series_div_u: nothing left after shift");
        OneVarSeries r(bound() - 1);
        for (int n = 1; n <= bound(); ++n) r.coeffs_[n - 1] = coeffs_[n];
        return r;
    }

    [[nodiscard]] OneVarSeries truncated(int bound) const {
        OneVarSeries r(std::min(bound, this->bound()));
        for (int n = 0; n <= r.bound(); ++n) r.coeffs_[n] = coeffs_[n];
        return r;
    }

    friend bool operator==(const OneVarSeries&, const OneVarSeries&) = default;

private:
    std::vector<LambdaPoly> coeffs_;
};

}  // namespace kappa
