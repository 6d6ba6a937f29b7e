#pragma once

// Small dense linear systems over Q, by fraction-exact Gauss-Jordan elimination.

#include <cstddef>
#include <optional>
#include <vector>

#include "rational.hpp"

namespace itfe {

using Matrix = std::vector<std::vector<Rational>>;

struct LinearSolution {
    /// One solution (free variables set to zero), absent if inconsistent.
    std::optional<std::vector<Rational>> particular;
    /// Basis of the solution space of the homogeneous system.
    std::vector<std::vector<Rational>> kernel;
};

/// Solves A x = b, A with `cols` columns (rows may be empty when cols = 0).
inline LinearSolution solve_linear(Matrix a, std::vector<Rational> b, std::size_t cols) {
    const std::size_t rows = a.size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        const Rational inv = inverse(a[r][c]);
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    LinearSolution out;
    bool consistent = true;
    for (std::size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) consistent = false;
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    if (consistent) {
        std::vector<Rational> x(cols);
        for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
        out.particular = std::move(x);
    }
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][f];
        out.kernel.push_back(std::move(v));
    }
    return out;
}

} // namespace itfe
