#pragma once

// Iterated local search for large independent sets.
//
// Each restart builds a randomized greedy solution and then alternates a
// perturbation with (1,2)-swap local search: a solution vertex x whose two
// non-adjacent neighbours u, w have x as their only solution neighbour is
// replaced by u and w. The perturbation deletes a fraction of the solution and
// forces one random outside vertex in, which also lets the walk drift along
// plateaus of equal size.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <thread>
#include <vector>

#include "e8chi/bitset.hpp"
#include "e8chi/geometry.hpp"
#include "e8chi/mis_exact.hpp"

namespace e8chi {

struct HeuristicConfig {
    std::uint64_t rng_seed = 1;
    std::uint64_t iterations = 200000; // perturbation rounds per restart
    int restarts = 4;
    double perturb_fraction = 0.1;     // share of the solution deleted per round
    std::optional<int> target;         // stop as soon as a set this large is found
    std::optional<std::chrono::milliseconds> max_time;
    int threads = 1;
    std::function<void(std::uint64_t iteration, int size)> on_improve; // sequential mode only
};

/// True iff s is pairwise non-adjacent; throws on out-of-range indices.
inline bool verify_witness(const Graph& g, std::span<const int> s) { return is_independent(g, s); }

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

class LocalSearch {
public:
    LocalSearch(const Graph& g, std::uint64_t seed) : g_(g), n_(g.size()), rng_(seed)
    {
        nbrs_.resize(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v)
            nbrs_[static_cast<std::size_t>(v)] = g.neighbors(v);
        tight_.assign(static_cast<std::size_t>(n_), 0);
        in_.assign(static_cast<std::size_t>(n_), false);
        pos_.assign(static_cast<std::size_t>(n_), -1);
        free_pos_.assign(static_cast<std::size_t>(n_), -1);
        for (int v = 0; v < n_; ++v)
            add_free(v);
    }

    int size() const { return static_cast<int>(sol_.size()); }
    std::vector<int> solution() const
    {
        auto s = sol_;
        std::ranges::sort(s);
        return s;
    }

    void randomized_fill()
    {
        while (!free_.empty())
            insert(free_[uniform(free_.size())]);
    }

    /// Applies (1,2)-swaps until none is left.
    void improve()
    {
        std::vector<int> queue = sol_;
        std::ranges::shuffle(queue, rng_);
        Bitset cand(n_);
        while (!queue.empty()) {
            const int x = queue.back();
            queue.pop_back();
            if (!in_[static_cast<std::size_t>(x)])
                continue;
            std::vector<int> one_tight;
            for (int u : nbrs_[static_cast<std::size_t>(x)])
                if (tight_[static_cast<std::size_t>(u)] == 1)
                    one_tight.push_back(u);
            if (one_tight.size() < 2)
                continue;
            std::ranges::shuffle(one_tight, rng_);
            for (int u : one_tight)
                cand.set(u);
            int pick_u = -1;
            int pick_w = -1;
            for (int u : one_tight) {
                const auto row = g_.row(u);
                const auto c = cand.words();
                for (std::size_t i = 0; i < c.size() && pick_w < 0; ++i) {
                    Word m = c[i] & ~row[i];
                    if (static_cast<int>(i) == (u >> 6))
                        m &= ~(Word{1} << (u & 63));
                    if (m)
                        pick_w = static_cast<int>(i) * kWordBits + std::countr_zero(m);
                }
                if (pick_w >= 0) {
                    pick_u = u;
                    break;
                }
            }
            for (int u : one_tight)
                cand.reset(u);
            if (pick_u < 0)
                continue;
            remove(x);
            insert(pick_u);
            insert(pick_w);
            queue.push_back(pick_u);
            queue.push_back(pick_w);
            while (!free_.empty()) {
                const int f = free_[uniform(free_.size())];
                insert(f);
                queue.push_back(f);
            }
        }
    }

    void perturb(double fraction)
    {
        if (n_ == 0)
            return;
        const int drop = std::max(1, static_cast<int>(fraction * size() + 0.5));
        for (int i = 0; i < drop && !sol_.empty(); ++i)
            remove(sol_[uniform(sol_.size())]);
        // Force one outside vertex in; its solution neighbours leave.
        if (static_cast<int>(sol_.size()) < n_) {
            int v = -1;
            do
                v = static_cast<int>(uniform(static_cast<std::size_t>(n_)));
            while (in_[static_cast<std::size_t>(v)]);
            for (int u : nbrs_[static_cast<std::size_t>(v)])
                if (in_[static_cast<std::size_t>(u)])
                    remove(u);
            insert(v);
        }
        randomized_fill();
    }

    std::mt19937_64& rng() { return rng_; }

    void load(std::span<const int> s)
    {
        for (int v : std::vector<int>(sol_))
            remove(v);
        for (int v : s)
            insert(v);
    }

private:
    std::size_t uniform(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

    void add_free(int v)
    {
        free_pos_[static_cast<std::size_t>(v)] = static_cast<int>(free_.size());
        free_.push_back(v);
    }

    void drop_free(int v)
    {
        const int p = free_pos_[static_cast<std::size_t>(v)];
        if (p < 0)
            return;
        const int last = free_.back();
        free_[static_cast<std::size_t>(p)] = last;
        free_pos_[static_cast<std::size_t>(last)] = p;
        free_.pop_back();
        free_pos_[static_cast<std::size_t>(v)] = -1;
    }

    void insert(int v)
    {
        in_[static_cast<std::size_t>(v)] = true;
        pos_[static_cast<std::size_t>(v)] = static_cast<int>(sol_.size());
        sol_.push_back(v);
        drop_free(v);
        for (int u : nbrs_[static_cast<std::size_t>(v)])
            if (tight_[static_cast<std::size_t>(u)]++ == 0)
                drop_free(u);
    }

    void remove(int v)
    {
        in_[static_cast<std::size_t>(v)] = false;
        const int p = pos_[static_cast<std::size_t>(v)];
        const int last = sol_.back();
        sol_[static_cast<std::size_t>(p)] = last;
        pos_[static_cast<std::size_t>(last)] = p;
        sol_.pop_back();
        pos_[static_cast<std::size_t>(v)] = -1;
        if (tight_[static_cast<std::size_t>(v)] == 0)
            add_free(v);
        for (int u : nbrs_[static_cast<std::size_t>(v)])
            if (--tight_[static_cast<std::size_t>(u)] == 0 && !in_[static_cast<std::size_t>(u)])
                add_free(u);
    }

    const Graph& g_;
    int n_;
    std::mt19937_64 rng_;
    std::vector<std::vector<int>> nbrs_;
    std::vector<int> tight_;
    std::vector<bool> in_;
    std::vector<int> sol_;
    std::vector<int> pos_;
    std::vector<int> free_;
    std::vector<int> free_pos_;
};

struct RestartOutcome {
    std::vector<int> best;
    std::uint64_t iterations = 0;
    bool stopped_by_time = false;
};

inline RestartOutcome run_restart(const Graph& g, const HeuristicConfig& cfg, std::uint64_t seed,
                                  Clock::time_point deadline_start, const std::atomic<bool>& done,
                                  bool report)
{
    RestartOutcome out;
    LocalSearch ls(g, seed);
    ls.randomized_fill();
    ls.improve();
    out.best = ls.solution();
    if (report && cfg.on_improve)
        cfg.on_improve(0, static_cast<int>(out.best.size()));
    std::vector<int> current = out.best;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::uint64_t it = 1; it <= cfg.iterations; ++it) {
        if (cfg.target && static_cast<int>(out.best.size()) >= *cfg.target)
            break;
        if (done.load(std::memory_order_relaxed))
            break;
        if (cfg.max_time && (it & 63) == 0 && Clock::now() - deadline_start > *cfg.max_time) {
            out.stopped_by_time = true;
            break;
        }
        out.iterations = it;
        ls.perturb(cfg.perturb_fraction);
        ls.improve();
        const int now = ls.size();
        const int cur = static_cast<int>(current.size());
        if (now > static_cast<int>(out.best.size())) {
            out.best = ls.solution();
            if (report && cfg.on_improve)
                cfg.on_improve(it, now);
        }
        // Accept ties and gains; accept a loss with a probability that shrinks
        // with the gap to the current and to the best solution.
        const int best = static_cast<int>(out.best.size());
        if (now >= cur || coin(ls.rng()) < 1.0 / (1.0 + double(cur - now) * double(best - now))) {
            current = ls.solution();
        } else {
            ls.load(current);
        }
    }
    return out;
}

} // namespace detail

/// Best independent set over all restarts; never claims exactness.
inline MisResult heuristic_mis(const Graph& g, const HeuristicConfig& cfg = {})
{
    if (cfg.iterations < 1)
        throw InvalidInput("heuristic needs at least one iteration");
    const auto t0 = Clock::now();
    const int restarts = std::max(1, cfg.restarts);
    std::vector<detail::RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
    std::atomic<bool> done{false};
    auto run = [&](int r) {
        const auto seed = detail::splitmix64(cfg.rng_seed + static_cast<std::uint64_t>(r));
        outcomes[static_cast<std::size_t>(r)] = detail::run_restart(g, cfg, seed, t0, done, cfg.threads <= 1);
        const int got = static_cast<int>(outcomes[static_cast<std::size_t>(r)].best.size());
        if (cfg.target && got >= *cfg.target)
            done = true;
    };
    if (cfg.threads <= 1) {
        for (int r = 0; r < restarts && !done; ++r)
            run(r);
    } else {
        std::atomic<int> next{0};
        std::vector<std::jthread> pool;
        for (int t = 0; t < std::min(cfg.threads, restarts); ++t)
            pool.emplace_back([&] {
                for (int r = next++; r < restarts; r = next++)
                    run(r);
            });
    }

    MisResult res;
    for (const auto& o : outcomes) {
        res.nodes_explored += o.iterations;
        res.budget_hit |= o.stopped_by_time;
        // Larger wins; ties go to the lower restart index.
        if (o.best.size() > res.witness.size() || (res.witness.empty() && !o.best.empty()))
            res.witness = o.best;
    }
    res.size = static_cast<int>(res.witness.size());
    res.exact = false;
    res.elapsed = Clock::now() - t0;
    return res;
}

} // namespace e8chi
