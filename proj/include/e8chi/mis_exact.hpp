#pragma once

// Exact maximum independent set as maximum clique in the complement graph.
//
// Bitset branch and bound in the MCQ/MCS/BBMC family: every node colours its
// candidate set greedily (colour classes are independent sets of the
// complement, i.e. cliques of the original graph) and the colour count bounds
// the clique that can still be added. Vertices whose colour cannot beat the
// incumbent are never branched on; a re-colouring pass (MCS "Re-NUMBER") tries
// to push the remaining ones into a low colour class before they are.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "e8chi/bitset.hpp"
#include "e8chi/error.hpp"
#include "e8chi/geometry.hpp"

namespace e8chi {

using Clock = std::chrono::steady_clock;

struct SearchBudget {
    std::optional<std::uint64_t> max_nodes;
    std::optional<std::chrono::milliseconds> max_time;

    static SearchBudget unlimited() { return {}; }
    static SearchBudget nodes(std::uint64_t n) { return {n, std::nullopt}; }
    static SearchBudget time(std::chrono::milliseconds t) { return {std::nullopt, t}; }
    bool is_unlimited() const { return !max_nodes && !max_time; }
};

struct MisResult {
    int size = 0;
    std::vector<int> witness; // sorted vertex indices
    bool exact = false;
    std::uint64_t nodes_explored = 0;
    std::chrono::duration<double> elapsed{};
    bool budget_hit = false;
};

enum class InitialOrder {
    degree,    // non-increasing degree in the complement, ties by index
    min_width, // degeneracy order: repeatedly move a minimum-degree vertex to the back
};

struct ExactOptions {
    InitialOrder order = InitialOrder::degree;
    bool recolor = false; // MCS Re-NUMBER
    bool filter = true;   // unit-propagation pruning over colour classes
    // Automorphisms of the graph (vertex permutations). When present, the
    // root branches once per orbit: after all sets through v are searched,
    // every image of v is dropped as well.
    std::vector<Permutation> symmetry;
};

inline bool is_independent(const Graph& g, std::span<const int> s)
{
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0 || s[i] >= g.size())
            throw InvalidInput("vertex index " + std::to_string(s[i]) + " out of range");
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s[i] == s[j] || g.adjacent(s[i], s[j]))
                return false;
    }
    return true;
}

namespace detail {

class CliqueSearch {
public:
    CliqueSearch(const Graph& g, const ExactOptions& opt) : n_(g.size()), stride_(words_for(g.size()))
    {
        order_ = initial_order(g, opt.order);
        recolor_ = opt.recolor;
        filter_ = opt.filter;
        if (!opt.symmetry.empty()) {
            for (const auto& perm : opt.symmetry)
                if (!is_automorphism(g, perm))
                    throw InvalidInput("symmetry generator is not an automorphism");
            const auto label = orbits(n_, opt.symmetry);
            std::vector<int> pos(static_cast<std::size_t>(n_));
            for (int i = 0; i < n_; ++i)
                pos[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])] = i;
            orbit_of_.assign(static_cast<std::size_t>(n_), 0);
            std::vector<int> slot(static_cast<std::size_t>(n_), -1);
            for (int i = 0; i < n_; ++i) {
                const int l = label[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])];
                if (slot[static_cast<std::size_t>(l)] < 0) {
                    slot[static_cast<std::size_t>(l)] = static_cast<int>(orbit_members_.size());
                    orbit_members_.emplace_back();
                }
                orbit_of_[static_cast<std::size_t>(i)] = slot[static_cast<std::size_t>(l)];
                orbit_members_[static_cast<std::size_t>(slot[static_cast<std::size_t>(l)])].push_back(i);
            }
        }
        // Complement adjacency in search order.
        adj_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(stride_), 0);
        for (int i = 0; i < n_; ++i) {
            const int u = order_[static_cast<std::size_t>(i)];
            Word* row = adj_row(i);
            for (int j = 0; j < n_; ++j)
                if (j != i && !g.adjacent(u, order_[static_cast<std::size_t>(j)]))
                    row[j >> 6] |= Word{1} << (j & 63);
        }
        const auto levels = static_cast<std::size_t>(n_ + 2);
        p_.assign(levels * static_cast<std::size_t>(stride_), 0);
        list_v_.assign(levels * static_cast<std::size_t>(n_ + 1), 0);
        list_c_.assign(levels * static_cast<std::size_t>(n_ + 1), 0);
        u_.assign(static_cast<std::size_t>(stride_), 0);
        q_.assign(static_cast<std::size_t>(stride_), 0);
        mask_.assign(static_cast<std::size_t>(stride_), 0);
        current_.reserve(static_cast<std::size_t>(n_));
    }

    /// Searches for a clique larger than `lower`; stops at `target` if set.
    void run(int lower, std::vector<int> incumbent, std::optional<int> target, const SearchBudget& budget)
    {
        best_size_ = lower;
        best_ = std::move(incumbent);
        target_ = target;
        budget_ = budget;
        start_ = Clock::now();
        Word* root = level(0);
        for (int i = 0; i < n_; ++i)
            root[i >> 6] |= Word{1} << (i & 63);
        if (n_ > 0 && !(target_ && best_size_ >= *target_)) {
            if (orbit_members_.empty())
                expand(0);
            else
                expand_root_by_orbit();
        }
    }

    std::size_t orbit_count() const { return orbit_members_.size(); }

    int best_size() const { return best_size_; }
    /// Best clique in original vertex numbering (empty when only the bound was supplied).
    std::vector<int> best() const
    {
        std::vector<int> out;
        for (int v : best_)
            out.push_back(order_[static_cast<std::size_t>(v)]);
        std::ranges::sort(out);
        return out;
    }
    std::uint64_t nodes() const { return nodes_; }
    bool aborted() const { return aborted_; }
    bool reached_target() const { return target_ && best_size_ >= *target_; }
    int position_of(int original) const
    {
        return static_cast<int>(std::ranges::find(order_, original) - order_.begin());
    }

private:
    static std::vector<int> initial_order(const Graph& g, InitialOrder how)
    {
        const int n = g.size();
        std::vector<int> cdeg(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
            cdeg[static_cast<std::size_t>(v)] = n - 1 - g.degree(v);
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        if (how == InitialOrder::degree) {
            std::ranges::stable_sort(order, [&](int a, int b) {
                return cdeg[static_cast<std::size_t>(a)] > cdeg[static_cast<std::size_t>(b)];
            });
            return order;
        }
        // Minimum-width order on the complement: peel a minimum-degree vertex,
        // place it last; the first vertices end up forming a dense core.
        std::vector<int> deg = cdeg;
        std::vector<bool> gone(static_cast<std::size_t>(n), false);
        std::vector<int> out(static_cast<std::size_t>(n));
        for (int slot = n - 1; slot >= 0; --slot) {
            int pick = -1;
            for (int v = 0; v < n; ++v)
                if (!gone[static_cast<std::size_t>(v)] &&
                    (pick < 0 || deg[static_cast<std::size_t>(v)] < deg[static_cast<std::size_t>(pick)]))
                    pick = v;
            gone[static_cast<std::size_t>(pick)] = true;
            out[static_cast<std::size_t>(slot)] = pick;
            for (int u = 0; u < n; ++u)
                if (!gone[static_cast<std::size_t>(u)] && u != pick && !g.adjacent(u, pick))
                    --deg[static_cast<std::size_t>(u)];
        }
        return out;
    }

    Word* adj_row(int v) { return adj_.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(stride_); }
    Word* level(int d) { return p_.data() + static_cast<std::size_t>(d) * static_cast<std::size_t>(stride_); }
    int* lv(int d) { return list_v_.data() + static_cast<std::size_t>(d) * static_cast<std::size_t>(n_ + 1); }
    int* lc(int d) { return list_c_.data() + static_cast<std::size_t>(d) * static_cast<std::size_t>(n_ + 1); }

    bool out_of_budget()
    {
        if (budget_.max_nodes && nodes_ > *budget_.max_nodes)
            return true;
        if (budget_.max_time && (nodes_ & 1023) == 0 && Clock::now() - start_ > *budget_.max_time)
            return true;
        return false;
    }

    // Tries to move v into a colour class below kmin (MCS Re-NUMBER).
    bool renumber(int v, int kmin)
    {
        const Word* av = adj_row(v);
        for (int k1 = 1; k1 < kmin; ++k1) {
            Word* c1 = classes_.data() + static_cast<std::size_t>(k1) * static_cast<std::size_t>(stride_);
            int w = -1;
            int hits = 0;
            for (int i = 0; i < stride_ && hits < 2; ++i) {
                // Complement neighbours cannot share v's colour.
                const Word x = c1[i] & av[i];
                if (x) {
                    hits += std::popcount(x);
                    w = i * kWordBits + std::countr_zero(x);
                }
            }
            if (hits == 0) {
                c1[v >> 6] |= Word{1} << (v & 63);
                return true;
            }
            if (hits != 1)
                continue;
            const Word* aw = adj_row(w);
            for (int k2 = k1 + 1; k2 < kmin; ++k2) {
                Word* c2 = classes_.data() + static_cast<std::size_t>(k2) * static_cast<std::size_t>(stride_);
                bool free = true;
                for (int i = 0; i < stride_; ++i)
                    if (c2[i] & aw[i]) {
                        free = false;
                        break;
                    }
                if (free) {
                    c1[w >> 6] &= ~(Word{1} << (w & 63));
                    c1[v >> 6] |= Word{1} << (v & 63);
                    c2[w >> 6] |= Word{1} << (w & 63);
                    return true;
                }
            }
        }
        return false;
    }

    // Greedy sequential colouring of the candidate set; returns the number of
    // branch candidates written to lv/lc (those with colour >= kmin).
    int colour(int d, int kmin)
    {
        const Word* P = level(d);
        Word* U = u_.data();
        Word* Q = q_.data();
        std::copy(P, P + stride_, U);
        int* out_v = lv(d);
        int* out_c = lc(d);
        int m = 0;
        int k = 0;
        const bool renum = recolor_ && kmin > 2;
        const bool track = renum || (filter_ && kmin > 1);
        if (track)
            classes_.assign(static_cast<std::size_t>(kmin + 1) * static_cast<std::size_t>(stride_), 0);
        int lo = 0;
        while (true) {
            while (lo < stride_ && !U[lo])
                ++lo;
            if (lo == stride_)
                break;
            ++k;
            std::copy(U + lo, U + stride_, Q + lo);
            for (int i = lo; i < stride_; ++i) {
                while (Q[i]) {
                    const int v = i * kWordBits + std::countr_zero(Q[i]);
                    Q[i] &= Q[i] - 1;
                    U[i] &= ~(Word{1} << (v & 63));
                    if (k >= kmin && renum && renumber(v, kmin))
                        continue;
                    const Word* av = adj_row(v);
                    for (int j = i; j < stride_; ++j)
                        Q[j] &= ~av[j];
                    if (k >= kmin) {
                        out_v[m] = v;
                        out_c[m] = k;
                        ++m;
                    } else if (track) {
                        classes_[static_cast<std::size_t>(k) * static_cast<std::size_t>(stride_) +
                                 static_cast<std::size_t>(v >> 6)] |= Word{1} << (v & 63);
                    }
                }
            }
        }
        if (filter_ && kmin > 1 && m > 0) {
            used_.assign(static_cast<std::size_t>(kmin), 0);
            int kept = 0;
            for (int i = 0; i < m; ++i) {
                if (absorb(out_v[i], kmin))
                    continue;
                out_v[kept] = out_v[i];
                out_c[kept] = out_c[i];
                ++kept;
            }
            m = kept;
        }
        return m;
    }

    // Unit propagation over the unused colour classes below kmin, starting
    // from {v}. A class left with a single compatible vertex forces it; a
    // class left empty means v plus the forced classes and the empty one hold
    // one clique vertex fewer than their count, so v need not be branched on.
    // The classes involved are retired so each absorbs at most one vertex.
    bool absorb(int v, int kmin)
    {
        Word* M = mask_.data();
        const Word* av = adj_row(v);
        std::copy(av, av + stride_, M);
        units_.clear();
        while (true) {
            int unit_class = -1;
            int unit_vertex = -1;
            for (int k = 1; k < kmin; ++k) {
                if (used_[static_cast<std::size_t>(k)])
                    continue;
                const Word* c = classes_.data() + static_cast<std::size_t>(k) * static_cast<std::size_t>(stride_);
                int hits = 0;
                int w = -1;
                for (int i = 0; i < stride_ && hits < 2; ++i) {
                    const Word x = c[i] & M[i];
                    if (x) {
                        hits += std::popcount(x);
                        w = i * kWordBits + std::countr_zero(x);
                    }
                }
                if (hits == 0) {
                    used_[static_cast<std::size_t>(k)] = 1;
                    return true;
                }
                if (hits == 1 && unit_class < 0) {
                    unit_class = k;
                    unit_vertex = w;
                }
            }
            if (unit_class < 0) {
                for (int k : units_)
                    used_[static_cast<std::size_t>(k)] = 0;
                return false;
            }
            // Temporarily mark the forced class so it is not rescanned.
            used_[static_cast<std::size_t>(unit_class)] = 1;
            units_.push_back(unit_class);
            const Word* au = adj_row(unit_vertex);
            for (int i = 0; i < stride_; ++i)
                M[i] &= au[i];
        }
    }

    // The candidate set stays a union of orbits, so it remains invariant
    // under the group and any set through an image of v maps onto one
    // through v.
    void expand_root_by_orbit()
    {
        Word* P = level(0);
        Word* next = level(1);
        while (true) {
            ++nodes_;
            if (out_of_budget()) {
                aborted_ = true;
                return;
            }
            const int m = colour(0, std::max(1, best_size_ + 1));
            if (m == 0 || lc(0)[m - 1] <= best_size_)
                return;
            const int v = lv(0)[m - 1];
            const Word* av = adj_row(v);
            bool empty = true;
            for (int w = 0; w < stride_; ++w) {
                next[w] = P[w] & av[w];
                empty &= next[w] == 0;
            }
            current_.push_back(v);
            if (empty) {
                if (1 > best_size_) {
                    best_size_ = 1;
                    best_ = current_;
                }
            } else {
                expand(1);
            }
            current_.pop_back();
            if (aborted_ || reached_target())
                return;
            for (int u : orbit_members_[static_cast<std::size_t>(orbit_of_[static_cast<std::size_t>(v)])])
                P[u >> 6] &= ~(Word{1} << (u & 63));
        }
    }

    void expand(int d)
    {
        ++nodes_;
        if (out_of_budget()) {
            aborted_ = true;
            return;
        }
        const int cur = static_cast<int>(current_.size());
        const int kmin = std::max(1, best_size_ - cur + 1);
        const int m = colour(d, kmin);
        Word* P = level(d);
        Word* next = level(d + 1);
        const int* vs = lv(d);
        const int* cs = lc(d);
        for (int i = m - 1; i >= 0; --i) {
            if (cur + cs[i] <= best_size_)
                return;
            const int v = vs[i];
            const Word* av = adj_row(v);
            bool empty = true;
            for (int w = 0; w < stride_; ++w) {
                next[w] = P[w] & av[w];
                empty &= next[w] == 0;
            }
            current_.push_back(v);
            if (empty) {
                if (cur + 1 > best_size_) {
                    best_size_ = cur + 1;
                    best_ = current_;
                }
            } else {
                expand(d + 1);
            }
            current_.pop_back();
            if (aborted_ || reached_target())
                return;
            P[v >> 6] &= ~(Word{1} << (v & 63));
        }
    }

    int n_;
    int stride_;
    bool recolor_ = false;
    bool filter_ = true;
    std::vector<int> order_;
    std::vector<Word> adj_;
    std::vector<Word> p_;
    std::vector<int> list_v_;
    std::vector<int> list_c_;
    std::vector<Word> u_;
    std::vector<Word> q_;
    std::vector<Word> classes_;
    std::vector<Word> mask_;
    std::vector<char> used_;
    std::vector<int> units_;
    std::vector<int> orbit_of_;
    std::vector<std::vector<int>> orbit_members_;
    std::vector<int> current_;
    std::vector<int> best_;
    int best_size_ = 0;
    std::optional<int> target_;
    SearchBudget budget_;
    Clock::time_point start_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
};

/// Greedy maximal independent set, high complement-degree first.
inline std::vector<int> greedy_independent(const Graph& g)
{
    std::vector<int> order(static_cast<std::size_t>(g.size()));
    std::iota(order.begin(), order.end(), 0);
    std::ranges::stable_sort(order, [&](int a, int b) { return g.degree(a) < g.degree(b); });
    Bitset blocked(g.size());
    std::vector<int> out;
    for (int v : order) {
        if (blocked.test(v))
            continue;
        out.push_back(v);
        bits::for_each(g.row(v), [&](int u) { blocked.set(u); });
    }
    std::ranges::sort(out);
    return out;
}

} // namespace detail

/// Maximum independent set; exact unless the budget runs out.
inline MisResult max_independent_set(const Graph& g, const SearchBudget& budget = {},
                                     std::optional<std::vector<int>> seed_solution = std::nullopt,
                                     const ExactOptions& opt = {})
{
    const auto t0 = Clock::now();
    std::vector<int> seed = seed_solution ? *seed_solution : detail::greedy_independent(g);
    std::ranges::sort(seed);
    if (!is_independent(g, seed))
        throw InvalidInput("seed solution is not independent");

    detail::CliqueSearch search(g, opt);
    std::vector<int> incumbent;
    for (int v : seed)
        incumbent.push_back(search.position_of(v));
    search.run(static_cast<int>(seed.size()), incumbent, std::nullopt, budget);

    MisResult r;
    r.size = search.best_size();
    r.witness = search.best();
    r.exact = !search.aborted();
    r.budget_hit = search.aborted();
    r.nodes_explored = search.nodes();
    r.elapsed = Clock::now() - t0;
    return r;
}

enum class Verdict { yes, no, unknown };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    default: return "unknown";
    }
}

struct AlphaCheck {
    Verdict verdict = Verdict::unknown;
    std::vector<int> witness; // size k+1 when verdict is no
    std::uint64_t nodes_explored = 0;
    std::chrono::duration<double> elapsed{};
};

/// Decides alpha(g) <= k; stops at the first independent set of size k+1.
inline AlphaCheck alpha_at_most(const Graph& g, int k, const SearchBudget& budget = {},
                                const ExactOptions& opt = {})
{
    if (k < 0)
        throw InvalidInput("k must be nonnegative");
    const auto t0 = Clock::now();
    AlphaCheck out;
    if (g.size() <= k) {
        out.verdict = Verdict::yes;
        out.elapsed = Clock::now() - t0;
        return out;
    }
    detail::CliqueSearch search(g, opt);
    search.run(k, {}, k + 1, budget);
    out.nodes_explored = search.nodes();
    if (search.best_size() > k) {
        out.verdict = Verdict::no;
        out.witness = search.best();
    } else {
        out.verdict = search.aborted() ? Verdict::unknown : Verdict::yes;
    }
    out.elapsed = Clock::now() - t0;
    return out;
}

/// Exhaustive oracle for graphs of at most 30 vertices.
inline MisResult brute_force_mis(const Graph& g)
{
    const int n = g.size();
    if (n > 30)
        throw InvalidInput("brute force limited to 30 vertices");
    const auto t0 = Clock::now();
    std::vector<std::uint32_t> closed(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        std::uint32_t m = std::uint32_t{1} << v;
        for (int u = 0; u < n; ++u)
            if (g.adjacent(u, v))
                m |= std::uint32_t{1} << u;
        closed[static_cast<std::size_t>(v)] = m;
    }
    std::uint64_t calls = 0;
    // Either the lowest remaining vertex is in the set (drop its closed
    // neighbourhood) or it is not; an isolated vertex is always taken.
    auto best = [&](auto&& self, std::uint32_t rest) -> std::uint32_t {
        ++calls;
        if (!rest)
            return 0;
        const int v = std::countr_zero(rest);
        const std::uint32_t bit = std::uint32_t{1} << v;
        const std::uint32_t take = bit | self(self, rest & ~closed[static_cast<std::size_t>(v)]);
        if ((closed[static_cast<std::size_t>(v)] & rest) == bit)
            return take;
        const std::uint32_t skip = self(self, rest & ~bit);
        return std::popcount(take) >= std::popcount(skip) ? take : skip;
    };
    const std::uint32_t all = n == 0 ? 0 : (n == 32 ? ~0u : (std::uint32_t{1} << n) - 1);
    const std::uint32_t s = best(best, all);
    MisResult r;
    for (int v = 0; v < n; ++v)
        if (s >> v & 1u)
            r.witness.push_back(v);
    r.size = static_cast<int>(r.witness.size());
    r.exact = true;
    r.nodes_explored = calls;
    r.elapsed = Clock::now() - t0;
    return r;
}

} // namespace e8chi
