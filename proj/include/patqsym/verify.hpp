#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "patqsym/config.hpp"
#include "patqsym/errors.hpp"
#include "patqsym/family.hpp"
#include "patqsym/numeric.hpp"
#include "patqsym/parallel.hpp"
#include "patqsym/perm.hpp"
#include "patqsym/qsym.hpp"
#include "patqsym/shape.hpp"

namespace patqsym {

enum class Verdict { holds, fails, out_of_budget };

inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    default: return "out-of-budget";
    }
}

struct CheckStats {
    std::uint64_t nodes = 0;
    std::uint64_t candidates = 0;
    double wall_ms = 0.0;

    friend bool operator==(const CheckStats&, const CheckStats&) = default;
};

struct SubResult {
    std::string key;
    std::string verdict; // "holds", "fails" or "info"
    std::string detail;

    friend bool operator==(const SubResult&, const SubResult&) = default;
};

// Everything but the stats block is deterministic for fixed parameters.
// verdict == fails always comes with at least one witness.
struct CheckReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> parameters;
    Verdict verdict = Verdict::holds;
    bool partial = false;
    std::vector<std::string> witnesses;
    std::vector<SubResult> sub_results;
    CheckStats stats;

    friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

// The exceptional symmetric pair in S_4, stored verbatim.
inline const PermSet& known_symmetric_pair_s4() {
    static const PermSet pair(4, {Permutation({3, 4, 1, 2}), Permutation({3, 1, 4, 2})});
    return pair;
}

// C_0, ..., C_{n_max} by the convolution recurrence; this is the independent
// oracle the classical-sanity check compares avoidance counts against.
inline std::vector<Integer> catalan_numbers(int n_max) {
    std::vector<Integer> c(n_max + 1);
    c[0] = 1;
    for (int n = 0; n < n_max; ++n) {
        Integer acc = 0;
        for (int i = 0; i <= n; ++i) acc += c[i] * c[n - i];
        c[n + 1] = acc;
    }
    return c;
}

namespace detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// Per-degree machinery for scanning many candidate sets: the composition
// masks grouped into rearrangement classes, and per-descent-mask coverage
// rows (bit m of coverage(d) is set iff d is a subset of mask m). A set's
// monomial coefficient vector is the bitwise sum of its members' rows, so
// symmetry checks over huge sweeps stay in machine integers; callers
// cross-validate sampled candidates against the generating-function path.
class SymmetryScanner {
public:
    explicit SymmetryScanner(int n) : n_(n) {
        const std::size_t n_masks = std::size_t(1) << (n - 1);
        words_ = (n_masks + 63) / 64;
        std::map<Partition, std::vector<SubsetMask>, PartitionBefore> grouped;
        for (std::size_t m = 0; m < n_masks; ++m)
            grouped[sort_to_partition(Composition::from_subset_mask(
                        static_cast<SubsetMask>(m), n))]
                .push_back(static_cast<SubsetMask>(m));
        for (auto& [part, masks] : grouped) classes_.push_back(std::move(masks));

        coverage_.assign(n_masks * words_, 0);
        for (std::size_t d = 0; d < n_masks; ++d)
            for (std::size_t m = 0; m < n_masks; ++m)
                if ((d & ~m) == 0)
                    coverage_[d * words_ + m / 64] |= std::uint64_t(1) << (m % 64);
    }

    int degree() const { return n_; }
    std::size_t n_masks() const { return std::size_t(1) << (n_ - 1); }
    const std::vector<std::vector<SubsetMask>>& classes() const { return classes_; }

    bool covers(SubsetMask des, SubsetMask comp) const {
        return (coverage_[std::size_t(des) * words_ + comp / 64] >> (comp % 64)) & 1;
    }

    // Des(pi) ⊆ S_alpha counts for a whole permutation list, by subset-sum.
    std::vector<std::int64_t> totals(const std::vector<SubsetMask>& descents) const {
        std::vector<std::int64_t> counts(n_masks(), 0);
        for (SubsetMask d : descents) ++counts[d];
        for (int b = 0; b < n_ - 1; ++b)
            for (std::size_t m = 0; m < counts.size(); ++m)
                if (m & (std::size_t(1) << b)) counts[m] += counts[m ^ (std::size_t(1) << b)];
        return counts;
    }

    // Constancy of count_of(mask) on every rearrangement class.
    template <class CountOf>
    bool symmetric(CountOf&& count_of) const {
        for (const auto& cls : classes_) {
            const auto ref = count_of(cls[0]);
            for (std::size_t t = 1; t < cls.size(); ++t)
                if (count_of(cls[t]) != ref) return false;
        }
        return true;
    }

private:
    int n_;
    std::size_t words_;
    std::vector<std::vector<SubsetMask>> classes_;
    std::vector<std::uint64_t> coverage_;
};

inline std::string perm_subset_str(const std::vector<const Permutation*>& perms) {
    std::string s = "{";
    for (std::size_t i = 0; i < perms.size(); ++i) {
        if (i) s += ',';
        s += perms[i]->str();
    }
    s += '}';
    return s;
}

inline void add_sub(CheckReport& rep, std::string key, bool holds, std::string detail) {
    rep.sub_results.push_back({std::move(key), holds ? "holds" : "fails", std::move(detail)});
}

inline void add_info(CheckReport& rep, std::string key, std::string detail) {
    rep.sub_results.push_back({std::move(key), "info", std::move(detail)});
}

} // namespace detail

// Enumerates every p-element pattern set Pi in S_k and reports whether any
// complement S_k \ Pi is symmetric; the expected verdict under the theorem's
// hypotheses (p >= 3, k >= p + 2) is that none is. Sampled candidates are
// re-checked through the generating-function pipeline.
inline CheckReport check_main_theorem(int k, int p, const RunConfig& cfg) {
    if (p < 3 || k < p + 2)
        throw precondition_error("main-theorem requires p >= 3 and k >= p + 2");
    detail::Stopwatch watch;
    CheckReport rep;
    rep.name = "main-theorem";
    rep.parameters = {{"k", std::to_string(k)}, {"p", std::to_string(p)}};

    const PermSet sk = symmetric_group(k, cfg.enumeration_cap);
    const std::size_t N = sk.size();
    const Integer declared = binomial(N, p);
    rep.parameters.emplace_back("declared_candidates", declared.get_str());

    std::uint64_t limit = std::uint64_t(-1);
    if (declared > Integer(static_cast<unsigned long>(cfg.node_budget))) {
        if (!cfg.partial_allowed) {
            rep.verdict = Verdict::out_of_budget;
            detail::add_sub(rep, "budget", false,
                            declared.get_str() + " candidates exceed node budget " +
                                std::to_string(cfg.node_budget) + "; rerun with --partial");
            rep.stats.wall_ms = watch.ms();
            return rep;
        }
        rep.partial = true;
        limit = cfg.node_budget;
    }

    const detail::SymmetryScanner scanner(k);
    std::vector<SubsetMask> descents(N);
    for (std::size_t i = 0; i < N; ++i) descents[i] = sk.members()[i].descent_mask();
    const std::vector<std::int64_t> totals = scanner.totals(descents);

    auto complement_symmetric = [&](const std::vector<std::size_t>& idx) {
        return scanner.symmetric([&](SubsetMask m) {
            std::int64_t c = totals[m];
            for (std::size_t i : idx) c -= scanner.covers(descents[i], m) ? 1 : 0;
            return c;
        });
    };

    // Replays one candidate through the full generating-function pipeline.
    auto validate = [&](const std::vector<std::size_t>& idx, bool fast_verdict) {
        std::vector<Permutation> rest;
        rest.reserve(N - idx.size());
        for (std::size_t i = 0; i < N; ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end())
                rest.push_back(sk.members()[i]);
        if (is_symmetric(generating_function(PermSet(k, std::move(rest)))) != fast_verdict)
            throw error("internal: scanner disagrees with generating function pipeline");
    };

    const std::size_t n_blocks = N - p + 1; // blocks keyed by the smallest index
    std::vector<std::vector<std::string>> block_witnesses(n_blocks);
    std::vector<std::uint64_t> block_tested(n_blocks, 0);

    auto run_block = [&](std::uint64_t b, std::uint64_t* countdown) {
        std::vector<std::size_t> idx(p);
        idx[0] = b;
        bool validated = false;
        auto rec = [&](auto&& self, int slot, std::size_t start) -> bool {
            if (slot == p) {
                if (countdown) {
                    if (*countdown == 0) return true;
                    --*countdown;
                }
                ++block_tested[b];
                const bool sym = complement_symmetric(idx);
                if (!validated && b % 16 == 0) {
                    validate(idx, sym);
                    validated = true;
                }
                if (sym) {
                    std::vector<const Permutation*> perms;
                    for (std::size_t i : idx) perms.push_back(&sk.members()[i]);
                    block_witnesses[b].push_back(detail::perm_subset_str(perms));
                }
                return false;
            }
            for (std::size_t i = start; i < N; ++i) {
                idx[slot] = i;
                if (self(self, slot + 1, i + 1)) return true;
            }
            return false;
        };
        rec(rec, 1, b + 1);
    };

    if (rep.partial) {
        std::uint64_t countdown = limit;
        for (std::uint64_t b = 0; b < n_blocks && countdown > 0; ++b) run_block(b, &countdown);
    } else {
        parallel_blocks(n_blocks, cfg.threads, [&](std::uint64_t b) { run_block(b, nullptr); });
    }

    std::uint64_t tested = 0;
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
        tested += block_tested[b];
        for (auto& w : block_witnesses[b]) rep.witnesses.push_back(std::move(w));
    }
    rep.stats.candidates = tested;
    rep.stats.nodes = tested;
    rep.verdict = rep.witnesses.empty() ? Verdict::holds : Verdict::fails;
    detail::add_sub(rep, "symmetric-complements", rep.witnesses.empty(),
                    "tested=" + std::to_string(tested) +
                        " symmetric=" + std::to_string(rep.witnesses.size()));
    rep.stats.wall_ms = watch.ms();
    return rep;
}

// Sweeps the non-monotone subsets of S_n of size up to min(max_size, n-2)
// for symmetric members, and confirms the size-(n-1) inverse-descent-class
// witness when max_size reaches n-1. For n >= 5 the expected verdict is
// "holds": no small symmetric set, and the witness is symmetric.
inline CheckReport check_min_symmetric_size(int n, int max_size, const RunConfig& cfg) {
    if (n < 4) throw precondition_error("min-symmetric-size requires n >= 4");
    if (max_size < 1) throw precondition_error("min-symmetric-size requires max_size >= 1");
    detail::Stopwatch watch;
    CheckReport rep;
    rep.name = "min-symmetric-size";
    rep.parameters = {{"n", std::to_string(n)}, {"max_size", std::to_string(max_size)}};

    const PermSet sn = symmetric_group(n, cfg.enumeration_cap);
    std::vector<Permutation> universe;
    const Permutation inc = monotone(n, Direction::increasing);
    const Permutation dec = monotone(n, Direction::decreasing);
    for (const auto& pi : sn.members())
        if (pi != inc && pi != dec) universe.push_back(pi);
    const std::size_t M = universe.size();
    const int sweep_max = std::min(max_size, n - 2);

    Integer declared = 0;
    for (int s = 1; s <= sweep_max; ++s) declared += binomial(M, s);
    rep.parameters.emplace_back("declared_candidates", declared.get_str());

    bool sampling = false;
    if (declared > Integer(static_cast<unsigned long>(cfg.node_budget))) {
        if (!cfg.partial_allowed) {
            rep.verdict = Verdict::out_of_budget;
            detail::add_sub(rep, "budget", false,
                            declared.get_str() + " candidates exceed node budget " +
                                std::to_string(cfg.node_budget) +
                                "; rerun with --partial for sampled evidence");
            rep.stats.wall_ms = watch.ms();
            return rep;
        }
        sampling = true;
        rep.partial = true;
    }

    const detail::SymmetryScanner scanner(n);
    std::vector<SubsetMask> descents(M);
    for (std::size_t i = 0; i < M; ++i) descents[i] = universe[i].descent_mask();

    auto subset_symmetric = [&](const std::vector<std::size_t>& idx) {
        return scanner.symmetric([&](SubsetMask m) {
            std::int64_t c = 0;
            for (std::size_t i : idx) c += scanner.covers(descents[i], m) ? 1 : 0;
            return c;
        });
    };
    auto validate = [&](const std::vector<std::size_t>& idx, bool fast_verdict) {
        std::vector<Permutation> members;
        for (std::size_t i : idx) members.push_back(universe[i]);
        if (is_symmetric(generating_function(PermSet(n, std::move(members)))) != fast_verdict)
            throw error("internal: scanner disagrees with generating function pipeline");
    };
    auto witness_str = [&](const std::vector<std::size_t>& idx) {
        std::vector<const Permutation*> perms;
        for (std::size_t i : idx) perms.push_back(&universe[i]);
        return detail::perm_subset_str(perms);
    };

    std::uint64_t tested_total = 0;
    bool small_found = false;
    for (int s = 1; s <= sweep_max; ++s) {
        std::vector<std::string> found;
        std::uint64_t tested = 0;
        const bool exhaustive = !sampling || binomial(M, s) <= Integer(static_cast<unsigned long>(cfg.sample_count));
        if (exhaustive) {
            const std::size_t n_blocks = M - s + 1;
            std::vector<std::vector<std::string>> block_found(n_blocks);
            std::vector<std::uint64_t> block_tested(n_blocks, 0);
            parallel_blocks(n_blocks, cfg.threads, [&](std::uint64_t b) {
                std::vector<std::size_t> idx(s);
                idx[0] = b;
                bool validated = false;
                auto rec = [&](auto&& self, int slot, std::size_t start) -> void {
                    if (slot == s) {
                        ++block_tested[b];
                        const bool sym = subset_symmetric(idx);
                        if (!validated && b % 16 == 0) {
                            validate(idx, sym);
                            validated = true;
                        }
                        if (sym) block_found[b].push_back(witness_str(idx));
                        return;
                    }
                    for (std::size_t i = start; i < M; ++i) {
                        idx[slot] = i;
                        self(self, slot + 1, i + 1);
                    }
                };
                rec(rec, 1, b + 1);
            });
            for (std::size_t b = 0; b < n_blocks; ++b) {
                tested += block_tested[b];
                for (auto& w : block_found[b]) found.push_back(std::move(w));
            }
        } else {
            std::mt19937_64 rng(cfg.seed * 1000003ULL + static_cast<std::uint64_t>(s));
            std::uniform_int_distribution<std::size_t> pick(0, M - 1);
            for (std::uint64_t t = 0; t < cfg.sample_count; ++t) {
                std::vector<std::size_t> idx;
                while (idx.size() < static_cast<std::size_t>(s)) {
                    std::size_t i = pick(rng);
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
                }
                std::sort(idx.begin(), idx.end());
                ++tested;
                if (subset_symmetric(idx)) found.push_back(witness_str(idx));
            }
        }
        tested_total += tested;
        detail::add_sub(rep, "size=" + std::to_string(s), found.empty(),
                        std::string(exhaustive ? "exhaustive" : "sampled") +
                            " tested=" + std::to_string(tested) +
                            " symmetric=" + std::to_string(found.size()));
        if (!found.empty()) {
            small_found = true;
            std::sort(found.begin(), found.end());
            for (auto& w : found) rep.witnesses.push_back(std::move(w));
        }
    }

    bool existence_ok = true;
    if (max_size >= n - 1) {
        const PermSet idc = inverse_descent_class(n, {n - 1}, cfg.enumeration_cap);
        existence_ok = is_symmetric(generating_function(idc));
        detail::add_sub(rep, "witness-size=" + std::to_string(n - 1), existence_ok,
                        "inverse descent class " + idc.str());
    }

    if (n == 4 && small_found) {
        std::vector<Permutation> known = known_symmetric_pair_s4().members();
        std::sort(known.begin(), known.end());
        const std::string known_str = PermSet(4, std::move(known)).str();
        const bool present = std::find(rep.witnesses.begin(), rep.witnesses.end(),
                                       known_str) != rep.witnesses.end();
        detail::add_info(rep, "known-exception",
                         "expected symmetric pair " + known_str +
                             (present ? " found among witnesses"
                                      : " NOT found among witnesses"));
    }

    rep.stats.candidates = tested_total;
    rep.stats.nodes = tested_total;
    rep.verdict = (!small_found && existence_ok) ? Verdict::holds : Verdict::fails;
    if (rep.verdict == Verdict::fails && rep.witnesses.empty())
        rep.witnesses.push_back("witness-size=" + std::to_string(n - 1) + " not symmetric");
    rep.stats.wall_ms = watch.ms();
    return rep;
}

// Windowed evidence for "S_n(Pi) is symmetric for all n": checks each degree
// in [n_from, n_to] and reports a per-degree verdict.
inline CheckReport check_symmetrically_avoided(const PermSet& patterns, int n_from, int n_to,
                                               const RunConfig& cfg) {
    if (n_from < 1 || n_from > n_to)
        throw precondition_error("symmetrically-avoided requires 1 <= n_from <= n_to");
    detail::Stopwatch watch;
    CheckReport rep;
    rep.name = "symmetrically-avoided";
    rep.parameters = {{"patterns", patterns.str()},
                      {"n_from", std::to_string(n_from)},
                      {"n_to", std::to_string(n_to)}};

    bool all_ok = true;
    for (int n = n_from; n <= n_to; ++n) {
        const PermSet s = avoiders(n, patterns, cfg.enumeration_cap);
        rep.stats.nodes += s.size();
        const QSymElement q = generating_function(s);
        const bool sym = is_symmetric(q);
        std::string det = "|S_n(Pi)|=" + std::to_string(s.size());
        if (!sym) {
            all_ok = false;
            for (const auto& lam : enumerate_partitions(n)) {
                const Integer ref = q.coefficient(lam.as_composition().subset_mask());
                bool broke = false;
                const SubsetMask full = n == 1 ? 0 : (SubsetMask(1) << (n - 1)) - 1;
                for (SubsetMask m = 0; !broke; ++m) {
                    Composition comp = Composition::from_subset_mask(m, n);
                    if (sort_to_partition(comp) == lam && q.coefficient(m) != ref) {
                        det += "; c" + comp.str() + "=" + q.coefficient(m).get_str() +
                               " != c" + lam.as_composition().str() + "=" + ref.get_str();
                        broke = true;
                    }
                    if (m == full) break;
                }
                if (broke) break;
            }
            rep.witnesses.push_back("n=" + std::to_string(n));
        }
        detail::add_sub(rep, "n=" + std::to_string(n), sym, det);
    }
    rep.stats.candidates = static_cast<std::uint64_t>(n_to - n_from + 1);
    rep.verdict = all_ok ? Verdict::holds : Verdict::fails;
    rep.stats.wall_ms = watch.ms();
    return rep;
}

// The displayed size-n set: exactly n elements, symmetric, not
// Schur-positive, with expansion s_{(n-1,1)} + s_{(n-2,1,1)} - s_{(n-2,2)}.
inline CheckReport check_size_n_set(int n, const RunConfig& cfg) {
    if (n < 4) throw precondition_error("size-n-set requires n >= 4");
    if (n > cfg.enumeration_cap)
        throw budget_error("size-n-set: n exceeds enumeration cap " +
                           std::to_string(cfg.enumeration_cap));
    detail::Stopwatch watch;
    CheckReport rep;
    rep.name = "size-n-set";
    rep.parameters = {{"n", std::to_string(n)}};

    const PermSet set = size_n_symmetric_set(n);
    detail::add_sub(rep, "cardinality", static_cast<int>(set.size()) == n, set.str());

    const auto [positive, expansion] = is_schur_positive(set);
    const bool symmetric = expansion.has_value();
    detail::add_sub(rep, "symmetric", symmetric, "");
    detail::add_sub(rep, "not-schur-positive", symmetric && !positive, "");

    SchurExpansion expected(n);
    expected.add(Partition({n - 1, 1}), 1);
    expected.add(Partition({n - 2, 1, 1}), 1);
    expected.add(Partition({n - 2, 2}), -1);
    const bool matches = symmetric && *expansion == expected;
    std::string detail_str;
    if (symmetric)
        for (const auto& [lam, c] : expansion->terms())
            detail_str += (detail_str.empty() ? "" : " ") + c.get_str() + "*s" + lam.str();
    detail::add_sub(rep, "schur-expansion", matches, detail_str);

    const bool ok = static_cast<int>(set.size()) == n && symmetric && !positive && matches;
    rep.verdict = ok ? Verdict::holds : Verdict::fails;
    if (!ok) rep.witnesses.push_back(set.str() + " -> " + detail_str);
    rep.stats.candidates = 1;
    rep.stats.wall_ms = watch.ms();
    return rep;
}

// Exhaustive sweep of the extremal bound: for every n <= n_max and every
// profile (k, l1, l2), no (l1, l2)-intersecting k-uniform sequence of n+1
// distinct subsets of [n] exists. Profiles that reach m = n are recorded.
inline CheckReport check_bose_generalized(int n_max, const RunConfig& cfg) {
    if (n_max < 2) throw precondition_error("bose-generalized requires n_max >= 2");
    detail::Stopwatch watch;
    CheckReport rep;
    rep.name = "bose-generalized";
    rep.parameters = {{"n_max", std::to_string(n_max)}};

    std::atomic<std::uint64_t> nodes{0};
    SearchOptions opt;
    opt.node_budget = cfg.node_budget;
    opt.threads = cfg.threads;
    opt.node_counter = &nodes;

    std::uint64_t cells = 0;
    bool violated = false;
    try {
        for (int n = 2; n <= n_max; ++n)
            for (int k = 1; k <= n - 1; ++k)
                for (int l1 = 0; l1 < k; ++l1)
                    for (int l2 = 0; l2 < k; ++l2) {
                        ++cells;
                        const std::string cell = "n=" + std::to_string(n) +
                                                 " k=" + std::to_string(k) +
                                                 " l1=" + std::to_string(l1) +
                                                 " l2=" + std::to_string(l2);
                        auto over = search_extremal_counted(n, k, l1, l2, n + 1, opt);
                        if (over.family) {
                            violated = true;
                            rep.witnesses.push_back(cell + " m=" + std::to_string(n + 1) +
                                                    ": " + over.family->str());
                            detail::add_sub(rep, cell, false, over.family->str());
                        }
                        auto at_bound = search_extremal_counted(n, k, l1, l2, n, opt);
                        if (at_bound.family)
                            detail::add_info(rep, cell + " m=n",
                                             "bound achieved: " + at_bound.family->str());
                    }
    } catch (const budget_error& e) {
        rep.verdict = Verdict::out_of_budget;
        detail::add_sub(rep, "budget", false,
                        std::string(e.what()) + "; covered " + std::to_string(cells) +
                            " profiles");
        rep.partial = cfg.partial_allowed;
        rep.stats.nodes = nodes.load();
        rep.stats.candidates = cells;
        rep.stats.wall_ms = watch.ms();
        return rep;
    }

    detail::add_sub(rep, "profiles", !violated,
                    "profiles=" + std::to_string(cells) + " violations=" +
                        std::to_string(rep.witnesses.size()));
    rep.stats.nodes = nodes.load();
    rep.stats.candidates = cells;
    rep.verdict = violated ? Verdict::fails : Verdict::holds;
    rep.stats.wall_ms = watch.ms();
    return rep;
}

// The boundary case 2*l2 = l1 + k: no 6-member family exists for any ground
// size up to n_max, while 5-member families may and are recorded.
inline CheckReport check_six_family_bound(int k_max, int n_max, const RunConfig& cfg) {
    if (k_max < 1 || n_max < 1)
        throw precondition_error("six-family-bound requires k_max >= 1 and n_max >= 1");
    detail::Stopwatch watch;
    CheckReport rep;
    rep.name = "six-family-bound";
    rep.parameters = {{"k_max", std::to_string(k_max)}, {"n_max", std::to_string(n_max)}};

    std::atomic<std::uint64_t> nodes{0};
    SearchOptions opt;
    opt.node_budget = cfg.node_budget;
    opt.threads = cfg.threads;
    opt.node_counter = &nodes;

    std::uint64_t cells = 0;
    bool violated = false;
    try {
        for (int k = 1; k <= k_max; ++k)
            for (int l1 = 0; l1 < k; ++l1) {
                if ((l1 + k) % 2 != 0) continue;
                const int l2 = (l1 + k) / 2;
                if (l2 >= k) continue;
                for (int n = k; n <= n_max; ++n) {
                    ++cells;
                    const std::string cell = "k=" + std::to_string(k) +
                                             " l1=" + std::to_string(l1) +
                                             " l2=" + std::to_string(l2) +
                                             " n=" + std::to_string(n);
                    auto six = search_extremal_counted(n, k, l1, l2, 6, opt);
                    if (six.family) {
                        violated = true;
                        rep.witnesses.push_back(cell + " m=6: " + six.family->str());
                        detail::add_sub(rep, cell, false, six.family->str());
                    }
                    auto five = search_extremal_counted(n, k, l1, l2, 5, opt);
                    if (five.family)
                        detail::add_info(rep, cell + " m=5",
                                         "5-member family exists: " + five.family->str());
                }
            }
    } catch (const budget_error& e) {
        rep.verdict = Verdict::out_of_budget;
        detail::add_sub(rep, "budget", false,
                        std::string(e.what()) + "; covered " + std::to_string(cells) +
                            " profiles");
        rep.partial = cfg.partial_allowed;
        rep.stats.nodes = nodes.load();
        rep.stats.candidates = cells;
        rep.stats.wall_ms = watch.ms();
        return rep;
    }

    detail::add_sub(rep, "profiles", !violated,
                    "profiles=" + std::to_string(cells) + " violations=" +
                        std::to_string(rep.witnesses.size()));
    rep.stats.nodes = nodes.load();
    rep.stats.candidates = cells;
    rep.verdict = violated ? Verdict::fails : Verdict::holds;
    rep.stats.wall_ms = watch.ms();
    return rep;
}

// Catalan counts for all six patterns of S_3 against the recurrence oracle,
// and emptiness of the monotone-pair avoiders beyond the classical threshold.
inline CheckReport check_classical_sanity(int n_max, const RunConfig& cfg) {
    if (n_max < 1) throw precondition_error("classical-sanity requires n_max >= 1");
    detail::Stopwatch watch;
    CheckReport rep;
    rep.name = "classical-sanity";
    rep.parameters = {{"n_max", std::to_string(n_max)}};

    const std::vector<Integer> catalan = catalan_numbers(n_max);
    bool all_ok = true;
    std::uint64_t enumerated = 0;

    const PermSet s3 = symmetric_group(3, cfg.enumeration_cap);
    for (int n = 1; n <= n_max; ++n)
        for (const auto& pi : s3.members()) {
            const PermSet s = avoiders(n, PermSet(3, {pi}), cfg.enumeration_cap);
            enumerated += s.size();
            const bool ok = Integer(static_cast<unsigned long>(s.size())) == catalan[n];
            if (!ok) {
                all_ok = false;
                rep.witnesses.push_back("n=" + std::to_string(n) + " pattern=" + pi.str() +
                                        " count=" + std::to_string(s.size()));
            }
            detail::add_sub(rep, "catalan n=" + std::to_string(n) + " pi=" + pi.str(), ok,
                            "count=" + std::to_string(s.size()) +
                                " expected=" + catalan[n].get_str());
        }

    for (int a : {2, 3}) {
        for (int n = a * a + 1; n <= n_max; ++n) {
            const PermSet pats(a + 1, {monotone(a + 1, Direction::increasing),
                                       monotone(a + 1, Direction::decreasing)});
            const PermSet s = avoiders(n, pats, cfg.enumeration_cap);
            enumerated += s.size();
            const bool ok = s.empty();
            if (!ok) {
                all_ok = false;
                rep.witnesses.push_back("a=" + std::to_string(a) + " n=" + std::to_string(n) +
                                        " count=" + std::to_string(s.size()));
            }
            detail::add_sub(rep, "monotone-pair a=" + std::to_string(a) +
                                " n=" + std::to_string(n),
                            ok, "count=" + std::to_string(s.size()));
        }
    }

    rep.stats.nodes = enumerated;
    rep.stats.candidates = enumerated;
    rep.verdict = all_ok ? Verdict::holds : Verdict::fails;
    rep.stats.wall_ms = watch.ms();
    return rep;
}

} // namespace patqsym
