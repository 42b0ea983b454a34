#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

#include "patqsym/errors.hpp"
#include "patqsym/shape.hpp"

namespace patqsym {

// One-line notation: entries[i-1] = sigma(i), a bijection on [n].
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
        std::vector<int> sorted = entries_;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != static_cast<int>(i) + 1)
                throw precondition_error("not a permutation of [n] in one-line notation");
        if (entries_.empty()) throw precondition_error("permutation must have degree >= 1");
    }

    int degree() const { return static_cast<int>(entries_.size()); }
    const std::vector<int>& entries() const { return entries_; }
    int operator()(int i) const { return entries_[i - 1]; } // 1-based

    Permutation inverse() const {
        std::vector<int> inv(entries_.size());
        for (std::size_t i = 0; i < entries_.size(); ++i) inv[entries_[i] - 1] = static_cast<int>(i) + 1;
        return Permutation(std::move(inv));
    }

    // Des(sigma) = { i in [n-1] : sigma_i > sigma_{i+1} }
    std::vector<int> descent_set() const {
        std::vector<int> des;
        for (std::size_t i = 0; i + 1 < entries_.size(); ++i)
            if (entries_[i] > entries_[i + 1]) des.push_back(static_cast<int>(i) + 1);
        return des;
    }

    SubsetMask descent_mask() const {
        SubsetMask mask = 0;
        for (std::size_t i = 0; i + 1 < entries_.size(); ++i)
            if (entries_[i] > entries_[i + 1]) mask |= SubsetMask(1) << i;
        return mask;
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(entries_[i]);
        }
        s += ']';
        return s;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation& a, const Permutation& b) {
        return a.entries_ <=> b.entries_;
    }

private:
    std::vector<int> entries_;
};

enum class Direction { increasing, decreasing };

inline Permutation monotone(int n, Direction d) {
    if (n < 1) throw precondition_error("monotone: n must be >= 1");
    std::vector<int> e(n);
    for (int i = 0; i < n; ++i) e[i] = d == Direction::increasing ? i + 1 : n - i;
    return Permutation(std::move(e));
}

// Ordered, duplicate-free list of permutations of one degree. The stored
// order is significant: family extraction indexes members by position.
class PermSet {
public:
    PermSet() = default;

    PermSet(int degree, std::vector<Permutation> members)
        : degree_(degree), members_(std::move(members)) {
        if (degree_ < 1) throw precondition_error("perm set degree must be >= 1");
        for (const auto& p : members_)
            if (p.degree() != degree_)
                throw precondition_error("perm set members must share one degree");
        std::vector<Permutation> sorted = members_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw precondition_error("perm set members must be distinct");
    }

    static PermSet sorted(int degree, std::vector<Permutation> members) {
        std::sort(members.begin(), members.end());
        return PermSet(degree, std::move(members));
    }

    int degree() const { return degree_; }
    const std::vector<Permutation>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

    bool contains(const Permutation& p) const {
        return std::find(members_.begin(), members_.end(), p) != members_.end();
    }

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (i) s += ',';
            s += members_[i].str();
        }
        s += '}';
        return s;
    }

    friend bool operator==(const PermSet&, const PermSet&) = default;

private:
    int degree_ = 1;
    std::vector<Permutation> members_;
};

namespace detail {

// Searches indices i_1 < ... < i_k with s order-isomorphic to p on them,
// pruning on partial order-isomorphism. forced_last >= 0 pins the final
// pattern position to that index of s.
inline bool contains_pattern_at(const std::vector<int>& s, const std::vector<int>& p,
                                int forced_last) {
    const int n = static_cast<int>(s.size());
    const int k = static_cast<int>(p.size());
    if (k == 0) return true;
    if (forced_last >= 0 ? k > forced_last + 1 : k > n) return false;

    std::vector<int> chosen(k, -1);
    const int free_slots = forced_last >= 0 ? k - 1 : k;
    if (forced_last >= 0) chosen[k - 1] = forced_last;
    const int limit = forced_last >= 0 ? forced_last : n;

    auto consistent = [&](int j, int idx) {
        for (int j2 = 0; j2 < k; ++j2) {
            if (chosen[j2] < 0 || j2 == j) continue;
            if ((p[j2] < p[j]) != (s[chosen[j2]] < s[idx])) return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, int j, int start) -> bool {
        if (j == free_slots) return true;
        const int hi = limit - (free_slots - 1 - j);
        for (int idx = start; idx < hi; ++idx) {
            if (!consistent(j, idx)) continue;
            chosen[j] = idx;
            if (self(self, j + 1, idx + 1)) return true;
            chosen[j] = -1;
        }
        return false;
    };
    return rec(rec, 0, 0);
}

} // namespace detail

// True iff sigma contains the pattern pi; degrees are unconstrained and
// k > n forces avoidance.
inline bool contains_pattern(const Permutation& sigma, const Permutation& pi) {
    return detail::contains_pattern_at(sigma.entries(), pi.entries(), -1);
}

// Des(sigma) contained in S_alpha: sigma increases along each segment.
inline bool respects(const Permutation& sigma, const Composition& alpha) {
    if (alpha.n() != sigma.degree())
        throw precondition_error("respects: composition of " + std::to_string(alpha.n()) +
                                 " against degree " + std::to_string(sigma.degree()));
    return (sigma.descent_mask() & ~alpha.subset_mask()) == 0;
}

// S_n(Pi) in lexicographic order of one-line notation. Prefixes already known
// to avoid Pi are only re-tested at their last position.
inline PermSet avoiders(int n, const PermSet& patterns, int cap = 10) {
    if (n < 1) throw precondition_error("avoiders: n must be >= 1");
    if (n > cap)
        throw budget_error("avoiders: n " + std::to_string(n) + " exceeds enumeration cap " +
                           std::to_string(cap));
    std::vector<Permutation> out;
    std::vector<int> prefix;
    prefix.reserve(n);
    std::vector<bool> used(n + 1, false);

    auto prefix_ok = [&]() {
        const int len = static_cast<int>(prefix.size());
        for (const auto& pi : patterns.members())
            if (pi.degree() <= len &&
                detail::contains_pattern_at(prefix, pi.entries(), len - 1))
                return false;
        return true;
    };

    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(prefix.size()) == n) {
            out.push_back(Permutation(prefix));
            return;
        }
        for (int v = 1; v <= n; ++v) {
            if (used[v]) continue;
            used[v] = true;
            prefix.push_back(v);
            if (prefix_ok()) self(self);
            prefix.pop_back();
            used[v] = false;
        }
    };
    rec(rec);
    return PermSet(n, std::move(out));
}

inline PermSet symmetric_group(int n, int cap = 10) { return avoiders(n, PermSet(), cap); }

// D_J^{-1}: permutations of S_k whose inverse has descent set exactly J.
inline PermSet inverse_descent_class(int k, const std::vector<int>& J, int cap = 10) {
    if (k < 1) throw precondition_error("inverse_descent_class: k must be >= 1");
    SubsetMask jmask = 0;
    for (int e : J) {
        if (e < 1 || e > k - 1)
            throw precondition_error("inverse_descent_class: element " + std::to_string(e) +
                                     " outside [1, k-1]");
        jmask |= SubsetMask(1) << (e - 1);
    }
    const PermSet sk = symmetric_group(k, cap);
    std::vector<Permutation> out;
    for (const auto& p : sk.members())
        if (p.inverse().descent_mask() == jmask) out.push_back(p);
    return PermSet(k, std::move(out));
}

// The size-n symmetric set: n prepended, the final adjacent transposition,
// and the descending block (n, n-1) inserted at offsets 0..n-3. Members are
// returned in lexicographic order.
inline PermSet size_n_symmetric_set(int n) {
    if (n < 4) throw precondition_error("size_n_symmetric_set: n must be >= 4");
    std::vector<Permutation> members;

    std::vector<int> a(n);
    a[0] = n;
    for (int i = 1; i < n; ++i) a[i] = i;
    members.push_back(Permutation(a));

    std::vector<int> b(n);
    for (int i = 0; i < n - 2; ++i) b[i] = i + 1;
    b[n - 2] = n;
    b[n - 1] = n - 1;
    members.push_back(Permutation(b));

    for (int t = 0; t <= n - 3; ++t) {
        std::vector<int> e;
        e.reserve(n);
        for (int v = 1; v <= t; ++v) e.push_back(v);
        e.push_back(n);
        e.push_back(n - 1);
        for (int v = t + 1; v <= n - 2; ++v) e.push_back(v);
        members.push_back(Permutation(std::move(e)));
    }
    return PermSet::sorted(n, std::move(members));
}

} // namespace patqsym
