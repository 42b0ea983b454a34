#pragma once

// Brute-force reference implementations, deliberately independent of the
// library's algorithmic paths. Tests compare library output against these.

#include <algorithm>
#include <numeric>
#include <vector>

#include "patqsym/numeric.hpp"

namespace oracle {

// Pattern containment by full enumeration of index subsets, no pruning.
inline bool contains_naive(const std::vector<int>& s, const std::vector<int>& p) {
    const int n = static_cast<int>(s.size());
    const int k = static_cast<int>(p.size());
    if (k > n) return false;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        bool iso = true;
        for (int a = 0; a < k && iso; ++a)
            for (int b = a + 1; b < k && iso; ++b)
                if ((p[a] < p[b]) != (s[idx[a]] < s[idx[b]])) iso = false;
        if (iso) return true;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline std::vector<std::vector<int>> all_perms(int n) {
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 1);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

inline std::vector<std::vector<int>> avoiders_naive(int n,
                                                    const std::vector<std::vector<int>>& pats) {
    std::vector<std::vector<int>> out;
    for (const auto& s : all_perms(n)) {
        bool ok = true;
        for (const auto& p : pats)
            if (contains_naive(s, p)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(s);
    }
    return out;
}

// Kostka number as the number of chains of partitions growing by horizontal
// strips of sizes content[0], content[1], ...; a different route than the
// cell-by-cell tableau fill.
inline patqsym::Integer kostka_strips(const std::vector<int>& shape,
                                      const std::vector<int>& content, int upto = -1) {
    const int j = upto < 0 ? static_cast<int>(content.size()) : upto;
    if (j == 0) return shape.empty() ? 1 : 0;
    const int strip = content[j - 1];
    patqsym::Integer total = 0;
    std::vector<int> nu(shape.size());
    auto rec = [&](auto&& self, std::size_t row, int removed) -> void {
        if (removed > strip) return;
        if (row == shape.size()) {
            if (removed != strip) return;
            std::vector<int> trimmed;
            for (int v : nu)
                if (v > 0) trimmed.push_back(v);
            total += kostka_strips(trimmed, content, j - 1);
            return;
        }
        const int lo = row + 1 < shape.size() ? shape[row + 1] : 0;
        for (int v = lo; v <= shape[row]; ++v) {
            nu[row] = v;
            self(self, row + 1, removed + shape[row] - v);
        }
    };
    rec(rec, 0, 0);
    return total;
}

// Exact determinant by Gaussian elimination with pivot search.
inline patqsym::Rational det_elimination(std::vector<std::vector<patqsym::Rational>> m) {
    using patqsym::Rational;
    const std::size_t n = m.size();
    Rational det(1);
    int sign = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            sign = -sign;
        }
        det = det * m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            const Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] = m[r][c] - f * m[col][c];
        }
    }
    return sign < 0 ? -det : det;
}

// Catalan by the closed binomial form, independent of the recurrence the
// verification harness uses.
inline patqsym::Integer catalan_binomial(int n) {
    return patqsym::binomial(2 * static_cast<std::uint64_t>(n), n) / patqsym::Integer(n + 1);
}

} // namespace oracle
