#pragma once

// Dense exact linear systems over the Gaussian rationals.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "kappa/scalars.hpp"

namespace kappa {

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    GaussianRational& at(std::size_t r, std::size_t c) {
        check(r, c);
        return data_[r * cols_ + c];
    }
    [[nodiscard]] const GaussianRational& at(std::size_t r, std::size_t c) const {
        check(r, c);
        return data_[r * cols_ + c];
    }

    [[nodiscard]] std::vector<GaussianRational> apply(const std::vector<GaussianRational>& x) const {
        if (x.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
        std::vector<GaussianRational> y(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (!data_[r * cols_ + c].is_zero()) y[r] += data_[r * cols_ + c] * x[c];
        return y;
    }

private:
    void check(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<GaussianRational> data_;
};

enum class SolutionKind { Unique, Parametric, Infeasible };

inline std::string solution_kind_name(SolutionKind k) {
    switch (k) {
        case SolutionKind::Unique: return "Unique";
        case SolutionKind::Parametric: return "Parametric";
        case SolutionKind::Infeasible: return "Infeasible";
    }
    return "?";
}

/// Solution set particular + span(nullspace); both empty when infeasible.
struct SolutionSpace {
    SolutionKind kind = SolutionKind::Infeasible;
    std::vector<GaussianRational> particular;
    std::vector<std::vector<GaussianRational>> nullspace;
    std::size_t rank = 0;
    /// Pivot column of each nonzero row of the reduced matrix.
    std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination, pivoting on the first nonzero entry of each column.
inline SolutionSpace solve(const ExactMatrix& a, const std::vector<GaussianRational>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length differs from row count");
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    std::vector<std::vector<GaussianRational>> w(m, std::vector<GaussianRational>(n + 1));
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) w[r][c] = a.at(r, c);
        w[r][n] = b[r];
    }
    SolutionSpace out;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < m; ++c) {
        std::size_t p = row;
        while (p < m && w[p][c].is_zero()) ++p;
        if (p == m) continue;
        std::swap(w[p], w[row]);
        const GaussianRational inv = w[row][c].inverse();
        for (std::size_t k = c; k <= n; ++k) w[row][k] = w[row][k] * inv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row || w[r][c].is_zero()) continue;
            const GaussianRational f = w[r][c];
            for (std::size_t k = c; k <= n; ++k)
                if (!w[row][k].is_zero()) w[r][k] -= f * w[row][k];
        }
        out.pivots.push_back(c);
        ++row;
    }
    out.rank = row;
    for (std::size_t r = row; r < m; ++r)
        if (!w[r][n].is_zero()) {
            out.kind = SolutionKind::Infeasible;
            return out;
        }
    out.particular.assign(n, GaussianRational{});
    std::vector<bool> is_pivot(n, false);
    for (std::size_t r = 0; r < row; ++r) {
        out.particular[out.pivots[r]] = w[r][n];
        is_pivot[out.pivots[r]] = true;
    }
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<GaussianRational> v(n);
        v[f] = GaussianRational(1);
        for (std::size_t r = 0; r < row; ++r) v[out.pivots[r]] = -w[r][f];
        out.nullspace.push_back(std::move(v));
    }
    out.kind = out.nullspace.empty() ? SolutionKind::Unique : SolutionKind::Parametric;
    return out;
}

/// The constant value of a lambda polynomial; symbolic entries are rejected.
inline GaussianRational field_entry(const LambdaPoly& p) {
    if (!p.is_constant())
        throw std::invalid_argument("linear systems need lambda specialized to a rational value first");
    return p.constant();
}

}  // namespace kappa
