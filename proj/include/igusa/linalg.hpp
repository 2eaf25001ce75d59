#pragma once

#include "igusa/numeric.hpp"

#include <optional>
#include <vector>

namespace igusa {

using QMatrix = std::vector<std::vector<Rat>>; // row major

namespace linalg {

// Row echelon reduction in place; returns rank.
inline int echelon(QMatrix& m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    int rank = 0;
    for (size_t col = 0; col < cols && static_cast<size_t>(rank) < rows; ++col) {
        size_t pivot = rows;
        for (size_t r = static_cast<size_t>(rank); r < rows; ++r)
            if (m[r][col] != 0) { pivot = r; break; }
        if (pivot == rows) continue;
        std::swap(m[static_cast<size_t>(rank)], m[pivot]);
        Rat inv = Rat(1) / m[static_cast<size_t>(rank)][col];
        for (size_t c = col; c < cols; ++c) m[static_cast<size_t>(rank)][c] *= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == static_cast<size_t>(rank) || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (size_t c = col; c < cols; ++c) m[r][c] -= f * m[static_cast<size_t>(rank)][c];
        }
        ++rank;
    }
    return rank;
}

inline int rank(QMatrix m) { return echelon(m); }

template <typename Vec>
inline int rank_of_vectors(const std::vector<Vec>& vecs, size_t dim) {
    QMatrix m;
    for (const auto& v : vecs) {
        std::vector<Rat> row(dim);
        for (size_t i = 0; i < dim; ++i) row[i] = Rat(v[i]);
        m.push_back(std::move(row));
    }
    return rank(std::move(m));
}

// Solve A x = b exactly; nullopt when inconsistent. When the system is
// underdetermined, free variables are set to zero.
inline std::optional<std::vector<Rat>> solve(QMatrix a, std::vector<Rat> b) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    for (size_t r = 0; r < rows; ++r) a[r].push_back(b[r]);
    echelon(a);
    std::vector<Rat> x(cols, Rat(0));
    for (size_t r = 0; r < rows; ++r) {
        size_t lead = cols + 1;
        for (size_t c = 0; c <= cols; ++c)
            if (a[r][c] != 0) { lead = c; break; }
        if (lead == cols) return std::nullopt; // 0 = nonzero
        if (lead > cols) continue;             // zero row
        x[lead] = a[r][cols];
        for (size_t c = lead + 1; c < cols; ++c) x[lead] -= a[r][c] * x[c];
        // echelon() fully reduces, so trailing entries are on free columns
        // only; with free variables pinned to zero this back-substitution
        // is exact.
    }
    return x;
}

// One nonzero rational vector in the null space, or nullopt if trivial.
inline std::optional<std::vector<Rat>> null_vector(QMatrix m) {
    if (m.empty()) return std::nullopt;
    size_t cols = m[0].size();
    echelon(m);
    std::vector<long> lead_col(m.size(), -1);
    std::vector<bool> is_lead(cols, false);
    for (size_t r = 0; r < m.size(); ++r)
        for (size_t c = 0; c < cols; ++c)
            if (m[r][c] != 0) {
                lead_col[r] = static_cast<long>(c);
                is_lead[c] = true;
                break;
            }
    long free_col = -1;
    for (size_t c = 0; c < cols; ++c)
        if (!is_lead[c]) { free_col = static_cast<long>(c); break; }
    if (free_col < 0) return std::nullopt;
    std::vector<Rat> x(cols, Rat(0));
    x[static_cast<size_t>(free_col)] = Rat(1);
    for (size_t r = 0; r < m.size(); ++r) {
        if (lead_col[r] < 0) continue;
        Rat acc(0);
        for (size_t c = static_cast<size_t>(lead_col[r]) + 1; c < cols; ++c)
            acc += m[r][c] * x[c];
        x[static_cast<size_t>(lead_col[r])] = -acc;
    }
    return x;
}

// Scale a rational vector to a primitive integer vector.
inline std::vector<Int> primitive_integer(const std::vector<Rat>& v) {
    Int lcm = 1;
    for (const auto& x : v) {
        Int d = denominator(x);
        lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
    std::vector<Int> w;
    Int g = 0;
    for (const auto& x : v) {
        Int e = numerator(x) * (lcm / denominator(x));
        g = boost::multiprecision::gcd(g, e < 0 ? Int(-e) : e);
        w.push_back(e);
    }
    if (g > 1)
        for (auto& e : w) e /= g;
    return w;
}

} // namespace linalg
} // namespace igusa
