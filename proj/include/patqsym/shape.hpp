#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "patqsym/errors.hpp"

namespace patqsym {

// Subsets of [n-1] are stored as bitmasks: bit i-1 stands for the element i.
// Compositions of n are in bijection with these masks, so the composition cap
// below bounds every enumeration of compositions at 2^19 items.
using SubsetMask = std::uint32_t;

inline constexpr int kMaxCompositionDegree = 20;

namespace detail {
inline void check_degree(int n, int cap, const char* what) {
    if (n < 1) throw precondition_error(std::string(what) + ": degree must be >= 1");
    if (n > cap)
        throw budget_error(std::string(what) + ": degree " + std::to_string(n) +
                           " exceeds cap " + std::to_string(cap));
}

inline std::string join_parts(const std::vector<int>& parts) {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts[i]);
    }
    s += ')';
    return s;
}
} // namespace detail

class Composition {
public:
    Composition() = default;

    explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (int p : parts_) {
            if (p < 1) throw precondition_error("composition parts must be >= 1");
            n_ += p;
        }
        if (parts_.empty()) throw precondition_error("composition must be non-empty");
    }

    // {i_1 < ... < i_k} of [n-1]  ->  (i_1, i_2-i_1, ..., n-i_k)
    static Composition from_subset_mask(SubsetMask mask, int n) {
        if (n < 1) throw precondition_error("composition degree must be >= 1");
        if (n > 1 && (mask >> (n - 1)) != 0)
            throw precondition_error("subset element out of range [1, n-1]");
        if (n == 1 && mask != 0) throw precondition_error("subset element out of range [1, n-1]");
        std::vector<int> parts;
        int prev = 0;
        for (int i = 1; i < n; ++i) {
            if (mask & (SubsetMask(1) << (i - 1))) {
                parts.push_back(i - prev);
                prev = i;
            }
        }
        parts.push_back(n - prev);
        return Composition(std::move(parts));
    }

    int n() const { return n_; }
    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }

    SubsetMask subset_mask() const {
        SubsetMask mask = 0;
        int acc = 0;
        for (std::size_t i = 0; i + 1 < parts_.size(); ++i) {
            acc += parts_[i];
            mask |= SubsetMask(1) << (acc - 1);
        }
        return mask;
    }

    std::string str() const { return detail::join_parts(parts_); }

    friend bool operator==(const Composition&, const Composition&) = default;

private:
    std::vector<int> parts_;
    int n_ = 0;
};

class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        if (parts_.empty()) throw precondition_error("partition must be non-empty");
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1) throw precondition_error("partition parts must be >= 1");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw precondition_error("partition parts must be non-increasing");
            n_ += parts_[i];
        }
    }

    int n() const { return n_; }
    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    std::string str() const { return detail::join_parts(parts_); }

    Composition as_composition() const { return Composition(parts_); }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
    int n_ = 0;
};

// Orders partitions of the same n by their position in enumerate_partitions:
// descending lexicographic, (n) first and (1^n) last. Partitions of smaller n
// sort before larger n so mixed maps stay well-defined.
struct PartitionBefore {
    bool operator()(const Partition& a, const Partition& b) const {
        if (a.n() != b.n()) return a.n() < b.n();
        return std::lexicographical_compare(b.parts().begin(), b.parts().end(),
                                            a.parts().begin(), a.parts().end());
    }
};

inline Composition subset_to_composition(const std::vector<int>& subset, int n) {
    if (n < 1) throw precondition_error("subset_to_composition: n must be >= 1");
    SubsetMask mask = 0;
    for (int e : subset) {
        if (e < 1 || e > n - 1)
            throw precondition_error("subset element " + std::to_string(e) +
                                     " out of range [1, n-1]");
        SubsetMask bit = SubsetMask(1) << (e - 1);
        if (mask & bit) throw precondition_error("duplicate subset element");
        mask |= bit;
    }
    return Composition::from_subset_mask(mask, n);
}

inline std::vector<int> composition_to_subset(const Composition& alpha) {
    std::vector<int> subset;
    int acc = 0;
    const auto& parts = alpha.parts();
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        acc += parts[i];
        subset.push_back(acc);
    }
    return subset;
}

// beta <= alpha in refinement order: S_alpha is contained in S_beta.
inline bool refines(const Composition& beta, const Composition& alpha) {
    if (beta.n() != alpha.n())
        throw precondition_error("refines: compositions of different n");
    SubsetMask sa = alpha.subset_mask(), sb = beta.subset_mask();
    return (sa & ~sb) == 0;
}

inline bool equivalent(const Composition& a, const Composition& b) {
    if (a.n() != b.n()) return false;
    std::vector<int> pa = a.parts(), pb = b.parts();
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    return pa == pb;
}

inline Partition sort_to_partition(const Composition& alpha) {
    std::vector<int> parts = alpha.parts();
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    return Partition(std::move(parts));
}

// lam dominated by mu: every prefix sum of lam is <= the one of mu.
inline bool dominance_leq(const Partition& lam, const Partition& mu) {
    if (lam.n() != mu.n()) throw precondition_error("dominance_leq: partitions of different n");
    long acc_l = 0, acc_m = 0;
    std::size_t len = std::max(lam.parts().size(), mu.parts().size());
    for (std::size_t i = 0; i < len; ++i) {
        acc_l += i < lam.parts().size() ? lam.parts()[i] : 0;
        acc_m += i < mu.parts().size() ? mu.parts()[i] : 0;
        if (acc_l > acc_m) return false;
    }
    return true;
}

// All 2^{n-1} compositions of n, ordered by subset mask; (n) comes first.
inline std::vector<Composition> enumerate_compositions(int n, int cap = kMaxCompositionDegree) {
    detail::check_degree(n, cap, "enumerate_compositions");
    SubsetMask full = n == 1 ? 0 : (SubsetMask(1) << (n - 1)) - 1;
    std::vector<Composition> out;
    out.reserve(std::size_t(full) + 1);
    for (SubsetMask m = 0;; ++m) {
        out.push_back(Composition::from_subset_mask(m, n));
        if (m == full) break;
    }
    return out;
}

// Descending lexicographic: (n) first, (1^n) last. This is a linear extension
// of dominance from the top, which keeps the Kostka system triangular.
inline std::vector<Partition> enumerate_partitions(int n) {
    if (n < 1) throw precondition_error("enumerate_partitions: n must be >= 1");
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.push_back(Partition(cur));
            return;
        }
        for (int p = std::min(max_part, remaining); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

} // namespace patqsym
