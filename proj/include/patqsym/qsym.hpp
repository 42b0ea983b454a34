#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "patqsym/errors.hpp"
#include "patqsym/numeric.hpp"
#include "patqsym/perm.hpp"
#include "patqsym/shape.hpp"

namespace patqsym {

// Element of QSym_n in the monomial basis. Terms are keyed by the subset mask
// of the composition; zero coefficients are never stored.
class QSymElement {
public:
    explicit QSymElement(int n) : n_(n) {
        if (n < 1) throw precondition_error("qsym element degree must be >= 1");
    }

    int degree() const { return n_; }
    const std::map<SubsetMask, Integer>& terms() const { return c_; }

    Integer coefficient(SubsetMask m) const {
        auto it = c_.find(m);
        return it == c_.end() ? Integer(0) : it->second;
    }
    Integer coefficient(const Composition& a) const {
        if (a.n() != n_) throw precondition_error("coefficient: composition of wrong degree");
        return coefficient(a.subset_mask());
    }

    void add(SubsetMask m, const Integer& v) {
        if (v == 0) return;
        auto [it, inserted] = c_.try_emplace(m, v);
        if (!inserted) {
            it->second += v;
            if (it->second == 0) c_.erase(it);
        }
    }

    friend QSymElement operator+(const QSymElement& a, const QSymElement& b) {
        if (a.n_ != b.n_) throw precondition_error("qsym addition across degrees");
        QSymElement r = a;
        for (const auto& [m, v] : b.c_) r.add(m, v);
        return r;
    }
    friend QSymElement operator-(const QSymElement& a, const QSymElement& b) {
        if (a.n_ != b.n_) throw precondition_error("qsym subtraction across degrees");
        QSymElement r = a;
        for (const auto& [m, v] : b.c_) r.add(m, -v);
        return r;
    }

    friend bool operator==(const QSymElement&, const QSymElement&) = default;

private:
    int n_;
    std::map<SubsetMask, Integer> c_;
};

// Sparse series over partitions of n, used for both the monomial symmetric
// basis and the Schur basis. The tag keeps the two types distinct.
template <class Tag>
class PartitionSeries {
public:
    explicit PartitionSeries(int n) : n_(n) {
        if (n < 1) throw precondition_error("series degree must be >= 1");
    }

    int degree() const { return n_; }
    const std::map<Partition, Integer, PartitionBefore>& terms() const { return c_; }

    Integer coefficient(const Partition& p) const {
        auto it = c_.find(p);
        return it == c_.end() ? Integer(0) : it->second;
    }

    void add(const Partition& p, const Integer& v) {
        if (v == 0) return;
        if (p.n() != n_) throw precondition_error("series term of wrong degree");
        auto [it, inserted] = c_.try_emplace(p, v);
        if (!inserted) {
            it->second += v;
            if (it->second == 0) c_.erase(it);
        }
    }

    friend bool operator==(const PartitionSeries&, const PartitionSeries&) = default;

private:
    int n_;
    std::map<Partition, Integer, PartitionBefore> c_;
};

using SymElement = PartitionSeries<struct MonomialBasisTag>;
using SchurExpansion = PartitionSeries<struct SchurBasisTag>;

// F_alpha = sum of M_beta over refinements beta <= alpha.
inline QSymElement fundamental_to_monomial(const Composition& alpha) {
    QSymElement f(alpha.n());
    const SubsetMask base = alpha.subset_mask();
    const SubsetMask full = alpha.n() == 1 ? 0 : (SubsetMask(1) << (alpha.n() - 1)) - 1;
    for (SubsetMask s = base;; s = (s + 1) | base) {
        f.add(s, 1);
        if (s == full) break;
    }
    return f;
}

// Q_n(S) with monomial coefficient c_alpha = |{pi in S : Des(pi) subset of
// S_alpha}|, accumulated by a subset-sum sweep over descent masks.
inline QSymElement generating_function(const PermSet& S, int cap = kMaxCompositionDegree) {
    const int n = S.degree();
    detail::check_degree(n, cap, "generating_function");
    const std::size_t n_masks = std::size_t(1) << (n - 1);
    std::vector<std::int64_t> counts(n_masks, 0);
    for (const auto& p : S.members()) ++counts[p.descent_mask()];
    for (int b = 0; b < n - 1; ++b)
        for (std::size_t m = 0; m < n_masks; ++m)
            if (m & (std::size_t(1) << b)) counts[m] += counts[m ^ (std::size_t(1) << b)];
    QSymElement q(n);
    for (std::size_t m = 0; m < n_masks; ++m)
        if (counts[m]) q.add(static_cast<SubsetMask>(m), Integer(static_cast<long>(counts[m])));
    return q;
}

// Symmetric iff the coefficients are constant on rearrangement classes.
inline bool is_symmetric(const QSymElement& f) {
    const int n = f.degree();
    const SubsetMask full = n == 1 ? 0 : (SubsetMask(1) << (n - 1)) - 1;
    std::map<Partition, Integer, PartitionBefore> seen;
    for (SubsetMask m = 0;; ++m) {
        Partition cls = sort_to_partition(Composition::from_subset_mask(m, n));
        Integer c = f.coefficient(m);
        auto [it, inserted] = seen.try_emplace(cls, c);
        if (!inserted && it->second != c) return false;
        if (m == full) break;
    }
    return true;
}

// Reads off m_lambda coefficients from class representatives.
inline SymElement to_monomial_symmetric(const QSymElement& f) {
    if (!is_symmetric(f))
        throw precondition_error("to_monomial_symmetric: element is not symmetric");
    SymElement g(f.degree());
    for (const auto& lam : enumerate_partitions(f.degree()))
        g.add(lam, f.coefficient(lam.as_composition().subset_mask()));
    return g;
}

namespace detail {

// Counts semistandard Young tableaux of the given shape and content by a
// direct backtracking fill, row-major. Rows weakly increase, columns strictly
// increase; an entry in row r (1-based) is at least r.
inline Integer count_ssyt(const std::vector<int>& shape, const std::vector<int>& content) {
    const int rows = static_cast<int>(shape.size());
    const int max_val = static_cast<int>(content.size());
    std::vector<int> remaining = content;
    std::vector<std::vector<int>> cell(rows);
    for (int r = 0; r < rows; ++r) cell[r].assign(shape[r], 0);

    Integer total = 0;
    auto rec = [&](auto&& self, int r, int c) -> void {
        if (r == rows) {
            total += 1;
            return;
        }
        const int nr = c + 1 == shape[r] ? r + 1 : r;
        const int nc = c + 1 == shape[r] ? 0 : c + 1;
        const int lo_row = r > 0 && c < shape[r - 1] ? cell[r - 1][c] + 1 : 1;
        const int lo = std::max({lo_row, c > 0 ? cell[r][c - 1] : 1, r + 1});
        for (int v = lo; v <= max_val; ++v) {
            if (remaining[v - 1] == 0) continue;
            --remaining[v - 1];
            cell[r][c] = v;
            self(self, nr, nc);
            ++remaining[v - 1];
        }
        cell[r][c] = 0;
    };
    rec(rec, 0, 0);
    return total;
}

} // namespace detail

// Kostka numbers, cached in memory with an optional persistent file layer.
// Lookups take a shared lock; misses compute outside any lock and insert
// under an exclusive one, so concurrent readers always see the same values.
class KostkaTable {
public:
    Integer get(const Partition& lam, const Partition& mu) {
        if (lam.n() != mu.n()) throw precondition_error("kostka: partitions of different n");
        const Key key{lam.parts(), mu.parts()};
        {
            std::shared_lock lock(mu_);
            auto it = tab_.find(key);
            if (it != tab_.end()) return it->second;
        }
        Integer v = detail::count_ssyt(lam.parts(), mu.parts());
        {
            std::unique_lock lock(mu_);
            tab_.emplace(key, v);
            dirty_ = true;
        }
        return v;
    }

    // Loads the file when it exists; entries computed later can be persisted
    // with save().
    void attach(const std::string& path) {
        std::unique_lock lock(mu_);
        path_ = path;
        std::ifstream in(path);
        if (!in) return;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            auto p1 = line.find('|');
            auto p2 = line.find('|', p1 == std::string::npos ? p1 : p1 + 1);
            if (p1 == std::string::npos || p2 == std::string::npos)
                throw parse_error("malformed kostka cache entry", lineno);
            Key key{parse_parts(line.substr(0, p1), lineno),
                    parse_parts(line.substr(p1 + 1, p2 - p1 - 1), lineno)};
            tab_[key] = Integer(line.substr(p2 + 1));
        }
    }

    void save() const {
        std::shared_lock lock(mu_);
        if (path_.empty() || !dirty_) return;
        std::filesystem::path p(path_);
        if (p.has_parent_path()) {
            std::error_code ec;
            std::filesystem::create_directories(p.parent_path(), ec);
        }
        std::ofstream out(path_, std::ios::trunc);
        if (!out) return;
        for (const auto& [key, v] : tab_)
            out << join(key.first) << '|' << join(key.second) << '|' << v.get_str() << '\n';
        dirty_ = false;
    }

    std::size_t size() const {
        std::shared_lock lock(mu_);
        return tab_.size();
    }

    void clear() {
        std::unique_lock lock(mu_);
        tab_.clear();
        dirty_ = false;
    }

private:
    using Key = std::pair<std::vector<int>, std::vector<int>>;

    static std::string join(const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(v[i]);
        }
        return s;
    }

    static std::vector<int> parse_parts(const std::string& s, std::size_t lineno) {
        std::vector<int> parts;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ','))
            try {
                parts.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw parse_error("malformed kostka cache part", lineno);
            }
        if (parts.empty()) throw parse_error("empty kostka cache key", lineno);
        return parts;
    }

    mutable std::shared_mutex mu_;
    std::map<Key, Integer> tab_;
    std::string path_;
    mutable bool dirty_ = false;
};

inline KostkaTable& kostka_cache() {
    static KostkaTable table;
    return table;
}

inline Integer kostka(const Partition& lam, const Partition& mu, KostkaTable& table) {
    return table.get(lam, mu);
}

inline Integer kostka(const Partition& lam, const Partition& mu) {
    return kostka(lam, mu, kostka_cache());
}

// Solves g = sum_lambda d_lambda s_lambda by forward substitution along the
// partition enumeration order; the Kostka system is unitriangular, so the
// solution is exact over the integers.
inline SchurExpansion monomial_to_schur(const SymElement& g, KostkaTable& table) {
    const auto parts = enumerate_partitions(g.degree());
    std::vector<Integer> d(parts.size());
    SchurExpansion out(g.degree());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        Integer val = g.coefficient(parts[i]);
        for (std::size_t j = 0; j < i; ++j) {
            if (d[j] == 0) continue;
            val -= d[j] * kostka(parts[j], parts[i], table);
        }
        d[i] = val;
        if (val != 0) out.add(parts[i], val);
    }
    return out;
}

inline SchurExpansion monomial_to_schur(const SymElement& g) {
    return monomial_to_schur(g, kostka_cache());
}

// Re-expands a Schur expansion into the monomial symmetric basis; the inverse
// route of monomial_to_schur, kept for cross-checking.
inline SymElement expand_schur(const SchurExpansion& d, KostkaTable& table) {
    SymElement g(d.degree());
    const auto parts = enumerate_partitions(d.degree());
    for (const auto& [lam, coeff] : d.terms())
        for (const auto& mu : parts) {
            Integer k = kostka(lam, mu, table);
            if (k != 0) g.add(mu, coeff * k);
        }
    return g;
}

inline SymElement expand_schur(const SchurExpansion& d) {
    return expand_schur(d, kostka_cache());
}

// (symmetric and non-negative in the Schur basis, expansion when symmetric).
// The empty set yields the zero element, which is vacuously Schur-positive.
inline std::pair<bool, std::optional<SchurExpansion>> is_schur_positive(const PermSet& S,
                                                                        KostkaTable& table) {
    QSymElement q = generating_function(S);
    if (!is_symmetric(q)) return {false, std::nullopt};
    SchurExpansion d = monomial_to_schur(to_monomial_symmetric(q), table);
    bool positive = true;
    for (const auto& [lam, c] : d.terms())
        if (c < 0) positive = false;
    return {positive, std::move(d)};
}

inline std::pair<bool, std::optional<SchurExpansion>> is_schur_positive(const PermSet& S) {
    return is_schur_positive(S, kostka_cache());
}

} // namespace patqsym
