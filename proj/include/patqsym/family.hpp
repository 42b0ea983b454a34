#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "patqsym/errors.hpp"
#include "patqsym/numeric.hpp"
#include "patqsym/perm.hpp"

namespace patqsym {

// Fixed-width bitset over a ground set [width], elements 1-based.
class Bitset {
public:
    explicit Bitset(int width) : width_(width), w_((width + 63) / 64, 0) {
        if (width < 1) throw precondition_error("bitset width must be >= 1");
    }

    static Bitset from_mask(std::uint64_t mask, int width) {
        Bitset b(width);
        b.w_[0] = mask;
        return b;
    }

    int width() const { return width_; }

    void set(int i) {
        check(i);
        w_[(i - 1) / 64] |= std::uint64_t(1) << ((i - 1) % 64);
    }
    bool test(int i) const {
        check(i);
        return (w_[(i - 1) / 64] >> ((i - 1) % 64)) & 1;
    }

    int count() const {
        int c = 0;
        for (auto word : w_) c += std::popcount(word);
        return c;
    }

    std::vector<int> elements() const {
        std::vector<int> out;
        for (int i = 1; i <= width_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

    std::string str() const {
        auto e = elements();
        if (e.empty()) return "-";
        std::string s;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(e[i]);
        }
        return s;
    }

    friend int intersection_count(const Bitset& a, const Bitset& b) {
        if (a.width_ != b.width_) throw precondition_error("bitsets over different grounds");
        int c = 0;
        for (std::size_t i = 0; i < a.w_.size(); ++i) c += std::popcount(a.w_[i] & b.w_[i]);
        return c;
    }

    friend bool operator==(const Bitset&, const Bitset&) = default;

    // Lexicographic on ascending element lists; a shorter prefix sorts first.
    static bool lex_less(const Bitset& a, const Bitset& b) {
        auto ea = a.elements(), eb = b.elements();
        return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
    }

private:
    void check(int i) const {
        if (i < 1 || i > width_)
            throw precondition_error("bitset element " + std::to_string(i) + " outside [1, " +
                                     std::to_string(width_) + "]");
    }

    int width_;
    std::vector<std::uint64_t> w_;
};

// Ordered family A_1, ..., A_m over [ground_n]. Adjacency |i-j| = 1 refers to
// the stored order; families are never canonicalized by reordering.
struct SetFamily {
    int ground_n = 0;
    std::vector<Bitset> sets;

    SetFamily(int ground, std::vector<Bitset> s) : ground_n(ground), sets(std::move(s)) {
        if (ground_n < 1) throw precondition_error("family ground set must be >= 1");
        for (const auto& b : sets)
            if (b.width() != ground_n)
                throw precondition_error("family member over a different ground set");
    }

    std::size_t size() const { return sets.size(); }

    std::string str() const {
        std::string s = "n=" + std::to_string(ground_n);
        for (const auto& b : sets) s += "; " + b.str();
        return s;
    }

    friend bool operator==(const SetFamily&, const SetFamily&) = default;
};

// One classified quantity: a constant value over all applicable index pairs,
// "nonconstant" when pairs disagree, or "vacuous" when no pair exists.
struct ProfileField {
    enum class State { value, nonconstant, vacuous };

    State state = State::vacuous;
    int value = 0;

    static ProfileField of(int v) { return {State::value, v}; }
    static ProfileField nonconstant() { return {State::nonconstant, 0}; }
    static ProfileField vacuous() { return {State::vacuous, 0}; }

    bool has_value() const { return state == State::value; }

    std::string str() const {
        switch (state) {
        case State::value: return std::to_string(value);
        case State::nonconstant: return "nonconstant";
        default: return "vacuous";
        }
    }

    friend bool operator==(const ProfileField&, const ProfileField&) = default;
};

struct IntersectionProfile {
    ProfileField uniform_k;
    ProfileField adjacent_l1;
    ProfileField distant_l2;
    bool distinct = false;

    std::string str() const {
        return "k=" + uniform_k.str() + " l1=" + adjacent_l1.str() + " l2=" + distant_l2.str() +
               " distinct=" + (distinct ? "true" : "false");
    }

    friend bool operator==(const IntersectionProfile&, const IntersectionProfile&) = default;
};

// A_i = { j : i not in Des(pi_j) } for i = 1..n-1, over ground [|S|].
inline SetFamily extract_family(const PermSet& S) {
    const int n = S.degree();
    if (n < 2) throw precondition_error("extract_family: degree must be >= 2");
    const int m = static_cast<int>(S.size());
    if (m < 1) throw precondition_error("extract_family: set must be non-empty");
    std::vector<Bitset> sets;
    sets.reserve(n - 1);
    for (int i = 1; i <= n - 1; ++i) {
        Bitset a(m);
        for (int j = 1; j <= m; ++j)
            if (!(S.members()[j - 1].descent_mask() & (SubsetMask(1) << (i - 1)))) a.set(j);
        sets.push_back(std::move(a));
    }
    return SetFamily(m, std::move(sets));
}

inline IntersectionProfile classify(const SetFamily& F) {
    const int m = static_cast<int>(F.size());
    if (m < 1) throw precondition_error("classify: family must be non-empty");
    IntersectionProfile p;

    int k = F.sets[0].count();
    bool k_const = true;
    for (const auto& a : F.sets) k_const = k_const && a.count() == k;
    p.uniform_k = k_const ? ProfileField::of(k) : ProfileField::nonconstant();

    if (m < 2) {
        p.adjacent_l1 = ProfileField::vacuous();
    } else {
        int l1 = intersection_count(F.sets[0], F.sets[1]);
        bool l1_const = true;
        for (int i = 0; i + 1 < m; ++i)
            l1_const = l1_const && intersection_count(F.sets[i], F.sets[i + 1]) == l1;
        p.adjacent_l1 = l1_const ? ProfileField::of(l1) : ProfileField::nonconstant();
    }

    if (m < 3) {
        p.distant_l2 = ProfileField::vacuous();
    } else {
        int l2 = intersection_count(F.sets[0], F.sets[2]);
        bool l2_const = true;
        for (int i = 0; i < m; ++i)
            for (int j = i + 2; j < m; ++j)
                l2_const = l2_const && intersection_count(F.sets[i], F.sets[j]) == l2;
        p.distant_l2 = l2_const ? ProfileField::of(l2) : ProfileField::nonconstant();
    }

    p.distinct = true;
    for (int i = 0; i < m && p.distinct; ++i)
        for (int j = i + 1; j < m; ++j)
            if (F.sets[i] == F.sets[j]) {
                p.distinct = false;
                break;
            }
    return p;
}

using IntMatrix = std::vector<std::vector<Integer>>;

// The (m+1) x (m+1) evaluation matrix: entry (i, j) for i, j <= m is
// f_i(v_j) = |A_i ∩ A_j| - l2; the last row evaluates the f_i at the witness
// w = 0 and the last column evaluates g at the v_j, with g(w) = -k in the
// corner. The family must be k-uniform, (l1, l2)-intersecting and distinct;
// l2 is taken from the argument where the family has no distant pair.
inline IntMatrix evaluation_matrix(const SetFamily& F, int l2) {
    if (l2 < 0) throw precondition_error("evaluation_matrix: l2 must be >= 0");
    const IntersectionProfile p = classify(F);
    if (!p.uniform_k.has_value())
        throw precondition_error("evaluation_matrix: family is not uniform");
    if (!p.distinct) throw precondition_error("evaluation_matrix: family has repeated sets");
    if (p.adjacent_l1.state == ProfileField::State::nonconstant)
        throw precondition_error("evaluation_matrix: adjacent intersections are not constant");
    if (p.distant_l2.state == ProfileField::State::nonconstant)
        throw precondition_error("evaluation_matrix: distant intersections are not constant");
    if (p.distant_l2.has_value() && p.distant_l2.value != l2)
        throw precondition_error("evaluation_matrix: family has distant intersection " +
                                 std::to_string(p.distant_l2.value) + ", not " +
                                 std::to_string(l2));

    const int m = static_cast<int>(F.size());
    const int k = p.uniform_k.value;
    IntMatrix M(m + 1, std::vector<Integer>(m + 1));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            M[i][j] = Integer(intersection_count(F.sets[i], F.sets[j]) - l2);
    for (int i = 0; i < m; ++i) M[i][m] = 0;
    for (int j = 0; j < m; ++j) M[m][j] = Integer(-l2);
    M[m][m] = Integer(-k);
    return M;
}

// Determinant of the m x m tridiagonal matrix with 1 on the diagonal and
// alpha on both adjacent diagonals: d_m = d_{m-1} - alpha^2 d_{m-2},
// d_0 = d_1 = 1 (empty-matrix convention for d_0).
inline Rational tridiag_det(int m, const Rational& alpha) {
    if (m < 0) throw precondition_error("tridiag_det: m must be >= 0");
    if (m <= 1) return Rational(1);
    const Rational a2 = alpha * alpha;
    Rational prev2(1), prev(1);
    for (int i = 2; i <= m; ++i) {
        Rational cur = prev - a2 * prev2;
        prev2 = std::move(prev);
        prev = std::move(cur);
    }
    return prev;
}

struct SearchOptions {
    std::uint64_t node_budget = 100'000'000;
    bool iso_prune = false;
    unsigned threads = 1;
    // When set, node accounting (and the budget) is shared across calls.
    std::atomic<std::uint64_t>* node_counter = nullptr;
};

struct SearchResult {
    std::optional<SetFamily> family;
    std::uint64_t nodes = 0;
};

namespace detail {

// Relabels ground elements by first occurrence (sets in order, elements
// ascending within each set) and reports whether the sequence is fixed.
inline bool first_occurrence_canonical(const std::vector<std::uint64_t>& seq, int count, int n) {
    std::vector<int> label(n + 1, 0);
    int next = 1;
    for (int s = 0; s < count; ++s)
        for (int e = 1; e <= n; ++e)
            if (seq[s] & (std::uint64_t(1) << (e - 1)))
                if (!label[e]) label[e] = next++;
    for (int s = 0; s < count; ++s) {
        std::uint64_t remapped = 0;
        for (int e = 1; e <= n; ++e)
            if (seq[s] & (std::uint64_t(1) << (e - 1)))
                remapped |= std::uint64_t(1) << (label[e] - 1);
        if (remapped != seq[s]) return false;
    }
    return true;
}

struct SearchContext {
    int n, k, l1, l2, m_target;
    std::vector<std::uint64_t> candidates; // all k-subsets of [n], lex order
    bool iso_prune;
    std::uint64_t budget;
    std::atomic<std::uint64_t>* nodes;
};

// Depth-first extension in candidate order; the first witness found is the
// lexicographically least with the given prefix.
inline bool search_dfs(const SearchContext& ctx, std::vector<std::uint64_t>& seq, int pos,
                       const std::atomic<bool>* abort_flag) {
    if (pos == ctx.m_target) return true;
    for (std::uint64_t cand : ctx.candidates) {
        std::uint64_t visited = ctx.nodes->fetch_add(1, std::memory_order_relaxed) + 1;
        if (visited > ctx.budget)
            throw budget_error("search_extremal: node budget " + std::to_string(ctx.budget) +
                               " exceeded");
        if ((visited & 0x3ff) == 0 && abort_flag &&
            abort_flag->load(std::memory_order_relaxed))
            return false;
        if (std::popcount(cand & seq[pos - 1]) != ctx.l1) continue;
        bool ok = true;
        for (int j = 0; j + 1 < pos; ++j)
            if (std::popcount(cand & seq[j]) != ctx.l2) {
                ok = false;
                break;
            }
        if (!ok) continue;
        seq[pos] = cand;
        if (ctx.iso_prune && !first_occurrence_canonical(seq, pos + 1, ctx.n)) continue;
        if (search_dfs(ctx, seq, pos + 1, abort_flag)) return true;
    }
    return false;
}

inline SetFamily to_family(const std::vector<std::uint64_t>& seq, int n) {
    std::vector<Bitset> sets;
    sets.reserve(seq.size());
    for (auto mask : seq) sets.push_back(Bitset::from_mask(mask, n));
    return SetFamily(n, std::move(sets));
}

} // namespace detail

// Searches for a k-uniform (l1, l2)-intersecting sequence of m_target
// distinct k-subsets of [n]. A_1 is pinned to {1..k}: the profile is
// invariant under ground relabeling, so this loses no witness. The full
// search is exhaustive; iso_prune additionally discards non-canonical
// prefixes for faster exploratory runs.
inline SearchResult search_extremal_counted(int n, int k, int l1, int l2, int m_target,
                                            const SearchOptions& opt = {}) {
    if (k < 1 || k > n) throw precondition_error("search_extremal: need 1 <= k <= n");
    if (l1 < 0 || l1 >= k || l2 < 0 || l2 >= k)
        throw precondition_error("search_extremal: need 0 <= l1, l2 < k");
    if (m_target < 1) throw precondition_error("search_extremal: m_target must be >= 1");
    if (n > 63) throw precondition_error("search_extremal: ground set capped at 63");

    detail::SearchContext ctx;
    ctx.n = n;
    ctx.k = k;
    ctx.l1 = l1;
    ctx.l2 = l2;
    ctx.m_target = m_target;
    ctx.iso_prune = opt.iso_prune;
    ctx.budget = opt.node_budget;
    std::atomic<std::uint64_t> local_nodes{0};
    ctx.nodes = opt.node_counter ? opt.node_counter : &local_nodes;
    const std::uint64_t nodes_at_start = ctx.nodes->load();

    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i + 1;
    for (;;) {
        std::uint64_t mask = 0;
        for (int e : idx) mask |= std::uint64_t(1) << (e - 1);
        ctx.candidates.push_back(mask);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }

    auto finish = [&](std::optional<SetFamily> fam) {
        return SearchResult{std::move(fam), ctx.nodes->load() - nodes_at_start};
    };

    std::vector<std::uint64_t> seq(m_target, 0);
    seq[0] = ctx.candidates[0];
    if (m_target == 1) return finish(detail::to_family({seq[0]}, n));

    if (opt.threads <= 1) {
        if (detail::search_dfs(ctx, seq, 1, nullptr))
            return finish(detail::to_family(seq, n));
        return finish(std::nullopt);
    }

    // Parallel mode: split the choice of A_2 into chunks; the merged result is
    // the witness from the lowest chunk, which is the lexicographically least.
    const std::size_t n_cands = ctx.candidates.size();
    const unsigned n_workers = std::min<std::size_t>(opt.threads, n_cands);
    std::atomic<std::size_t> next_chunk{0};
    std::atomic<std::size_t> best_chunk{n_cands};
    std::atomic<bool> abort{false};
    std::vector<std::optional<std::vector<std::uint64_t>>> found(n_cands);
    std::exception_ptr first_error;
    std::mutex error_mu;

    auto worker = [&]() {
        std::vector<std::uint64_t> wseq(m_target, 0);
        wseq[0] = ctx.candidates[0];
        for (;;) {
            std::size_t c = next_chunk.fetch_add(1);
            if (c >= n_cands) return;
            if (c > best_chunk.load()) return;
            std::uint64_t cand = ctx.candidates[c];
            if (std::popcount(cand & wseq[0]) != ctx.l1) continue;
            wseq[1] = cand;
            if (ctx.iso_prune && !detail::first_occurrence_canonical(wseq, 2, ctx.n)) continue;
            try {
                bool hit = m_target == 2 || detail::search_dfs(ctx, wseq, 2, &abort);
                if (hit) {
                    found[c] = wseq;
                    std::size_t prev = best_chunk.load();
                    while (c < prev && !best_chunk.compare_exchange_weak(prev, c)) {
                    }
                }
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                abort.store(true);
                return;
            }
        }
    };

    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) workers.emplace_back(worker);
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);

    std::size_t best = best_chunk.load();
    if (best < n_cands && found[best]) return finish(detail::to_family(*found[best], n));
    return finish(std::nullopt);
}

inline std::optional<SetFamily> search_extremal(int n, int k, int l1, int l2, int m_target,
                                                const SearchOptions& opt = {}) {
    return search_extremal_counted(n, k, l1, l2, m_target, opt).family;
}

} // namespace patqsym
