#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "e8chi/bitset.hpp"
#include "e8chi/error.hpp"
#include "e8chi/geometry.hpp"
#include "e8chi/mis_exact.hpp"

namespace e8chi {

struct Coloring {
    std::vector<int> assignment; // vertex -> colour in [0, colors_used)
    int colors_used = 0;
};

/// Independent check: every vertex coloured, no monochromatic edge.
inline bool is_proper(const Graph& g, const Coloring& c)
{
    if (static_cast<int>(c.assignment.size()) != g.size())
        return false;
    std::vector<bool> seen;
    for (int col : c.assignment) {
        if (col < 0)
            return false;
        if (static_cast<std::size_t>(col) >= seen.size())
            seen.resize(static_cast<std::size_t>(col) + 1, false);
        seen[static_cast<std::size_t>(col)] = true;
    }
    if (std::ranges::count(seen, true) != c.colors_used)
        return false;
    for (int u = 0; u < g.size(); ++u)
        for (int v : g.neighbors(u))
            if (c.assignment[static_cast<std::size_t>(u)] == c.assignment[static_cast<std::size_t>(v)])
                return false;
    return true;
}

/// ceil(v / alpha), exactly.
inline std::int64_t chi_lower(std::int64_t v, std::int64_t alpha)
{
    if (alpha <= 0)
        throw InvalidInput("alpha must be positive");
    if (v < 0)
        throw InvalidInput("vertex count must be nonnegative");
    return (v + alpha - 1) / alpha;
}

struct BoundReport {
    int v = 0;
    int alpha = 0;
    bool alpha_exact = false;
    std::int64_t chi_lower = 0;
    std::optional<int> chi_upper;
};

inline BoundReport make_bound_report(int v, int alpha, bool alpha_exact, std::optional<int> chi_upper = std::nullopt)
{
    BoundReport r{v, alpha, alpha_exact, chi_lower(v, alpha), chi_upper};
    if (alpha_exact && chi_upper && r.chi_lower > *chi_upper)
        throw InvalidInput("colouring with fewer colours than the pigeonhole bound: alpha is wrong");
    return r;
}

namespace detail {

inline Coloring normalized(const Graph& g, std::vector<int> assignment)
{
    std::vector<int> remap;
    for (int& c : assignment) {
        if (static_cast<std::size_t>(c) >= remap.size())
            remap.resize(static_cast<std::size_t>(c) + 1, -1);
        if (remap[static_cast<std::size_t>(c)] < 0)
            remap[static_cast<std::size_t>(c)] = static_cast<int>(std::ranges::count_if(remap, [](int x) { return x >= 0; }));
        c = remap[static_cast<std::size_t>(c)];
    }
    Coloring out;
    out.colors_used = g.size() == 0 ? 0 : *std::ranges::max_element(assignment) + 1;
    out.assignment = std::move(assignment);
    return out;
}

} // namespace detail

/// DSATUR; ties by degree, then lowest index.
inline Coloring dsatur(const Graph& g)
{
    const int n = g.size();
    std::vector<int> colour(static_cast<std::size_t>(n), -1);
    std::vector<Bitset> used(static_cast<std::size_t>(n), Bitset(n + 1));
    std::vector<int> sat(static_cast<std::size_t>(n), 0);
    std::vector<int> deg(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        deg[static_cast<std::size_t>(v)] = g.degree(v);
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (colour[static_cast<std::size_t>(v)] >= 0)
                continue;
            if (pick < 0 || sat[static_cast<std::size_t>(v)] > sat[static_cast<std::size_t>(pick)] ||
                (sat[static_cast<std::size_t>(v)] == sat[static_cast<std::size_t>(pick)] &&
                 deg[static_cast<std::size_t>(v)] > deg[static_cast<std::size_t>(pick)]))
                pick = v;
        }
        int c = 0;
        while (used[static_cast<std::size_t>(pick)].test(c))
            ++c;
        colour[static_cast<std::size_t>(pick)] = c;
        for (int u : g.neighbors(pick)) {
            auto& mask = used[static_cast<std::size_t>(u)];
            if (!mask.test(c)) {
                mask.set(c);
                ++sat[static_cast<std::size_t>(u)];
            }
        }
    }
    return detail::normalized(g, std::move(colour));
}

/// Tabu min-conflicts search for a proper colouring with at most k colours,
/// started from DSATUR with surplus colours folded in at random.
inline std::optional<Coloring> improve_coloring(const Graph& g, int k, const SearchBudget& budget = {},
                                                std::uint64_t rng_seed = 1)
{
    if (k < 1)
        throw InvalidInput("k must be at least 1");
    const int n = g.size();
    Coloring start = dsatur(g);
    if (start.colors_used <= k)
        return start;
    if (!budget.max_nodes && !budget.max_time)
        throw InvalidInput("colouring search needs a node or time budget");

    std::mt19937_64 rng(rng_seed);
    std::vector<int> col = start.assignment;
    for (int& c : col)
        if (c >= k)
            c = static_cast<int>(rng() % static_cast<std::uint64_t>(k));

    std::vector<std::vector<int>> nbrs(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        nbrs[static_cast<std::size_t>(v)] = g.neighbors(v);
    // conflicts[v*k + c]: neighbours of v currently coloured c.
    std::vector<int> conflicts(static_cast<std::size_t>(n) * static_cast<std::size_t>(k), 0);
    std::vector<std::uint64_t> tabu(static_cast<std::size_t>(n) * static_cast<std::size_t>(k), 0);
    auto at = [k](int v, int c) { return static_cast<std::size_t>(v) * static_cast<std::size_t>(k) + static_cast<std::size_t>(c); };
    std::int64_t total = 0;
    for (int v = 0; v < n; ++v)
        for (int u : nbrs[static_cast<std::size_t>(v)]) {
            ++conflicts[at(v, col[static_cast<std::size_t>(u)])];
            if (u > v && col[static_cast<std::size_t>(u)] == col[static_cast<std::size_t>(v)])
                ++total;
        }

    std::int64_t best_total = total;
    std::vector<int> best = col;
    const auto t0 = Clock::now();
    for (std::uint64_t it = 1; total > 0; ++it) {
        if (budget.max_nodes && it > *budget.max_nodes)
            break;
        if (budget.max_time && (it & 255) == 0 && Clock::now() - t0 > *budget.max_time)
            break;
        int mv = -1;
        int mc = -1;
        int mdelta = 0;
        int ties = 0;
        for (int v = 0; v < n; ++v) {
            const int cv = col[static_cast<std::size_t>(v)];
            const int here = conflicts[at(v, cv)];
            if (here == 0)
                continue;
            for (int c = 0; c < k; ++c) {
                if (c == cv)
                    continue;
                const int delta = conflicts[at(v, c)] - here;
                const bool allowed = tabu[at(v, c)] < it || total + delta < best_total;
                if (!allowed)
                    continue;
                if (mv < 0 || delta < mdelta) {
                    mv = v;
                    mc = c;
                    mdelta = delta;
                    ties = 1;
                } else if (delta == mdelta && rng() % static_cast<std::uint64_t>(++ties) == 0) {
                    mv = v;
                    mc = c;
                }
            }
        }
        if (mv < 0)
            continue;
        const int old = col[static_cast<std::size_t>(mv)];
        col[static_cast<std::size_t>(mv)] = mc;
        total += mdelta;
        for (int u : nbrs[static_cast<std::size_t>(mv)]) {
            --conflicts[at(u, old)];
            ++conflicts[at(u, mc)];
        }
        tabu[at(mv, old)] = it + static_cast<std::uint64_t>(0.6 * static_cast<double>(total)) + rng() % 10;
        if (total < best_total) {
            best_total = total;
            best = col;
        }
    }
    if (best_total > 0)
        return std::nullopt;
    Coloring out = detail::normalized(g, std::move(best));
    return out;
}

// k-colouring as CNF. Variable x(v,c) = v*k + c + 1 for 0-indexed v and c.
// Clauses: one at-least-one clause per vertex, pairwise at-most-one clauses,
// and (-x(u,c) -x(v,c)) for every edge and colour.

struct Cnf {
    int variables = 0;
    std::vector<std::vector<int>> clauses;

    std::string to_dimacs(std::string_view comment = {}) const
    {
        std::ostringstream out;
        if (!comment.empty())
            out << "c " << comment << '\n';
        out << "p cnf " << variables << ' ' << clauses.size() << '\n';
        for (const auto& cl : clauses) {
            for (int lit : cl)
                out << lit << ' ';
            out << "0\n";
        }
        return out.str();
    }
};

inline int color_var(int v, int c, int k) { return v * k + c + 1; }

inline Cnf encode_kcoloring(const Graph& g, int k)
{
    if (k < 1)
        throw InvalidInput("k must be at least 1");
    Cnf cnf;
    cnf.variables = g.size() * k;
    for (int v = 0; v < g.size(); ++v) {
        std::vector<int> alo;
        for (int c = 0; c < k; ++c)
            alo.push_back(color_var(v, c, k));
        cnf.clauses.push_back(std::move(alo));
    }
    for (int v = 0; v < g.size(); ++v)
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                cnf.clauses.push_back({-color_var(v, a, k), -color_var(v, b, k)});
    for (int u = 0; u < g.size(); ++u)
        for (int v : g.neighbors(u))
            if (v > u)
                for (int c = 0; c < k; ++c)
                    cnf.clauses.push_back({-color_var(u, c, k), -color_var(v, c, k)});
    return cnf;
}

/// assignment[i] is the value of variable i+1.
inline bool satisfies(const Cnf& cnf, const std::vector<bool>& assignment)
{
    if (static_cast<int>(assignment.size()) < cnf.variables)
        return false;
    return std::ranges::all_of(cnf.clauses, [&](const std::vector<int>& cl) {
        return std::ranges::any_of(cl, [&](int lit) {
            const bool val = assignment[static_cast<std::size_t>(std::abs(lit) - 1)];
            return lit > 0 ? val : !val;
        });
    });
}

/// Model of the encoding induced by a colouring.
inline std::vector<bool> assignment_of(const Coloring& c, int k)
{
    std::vector<bool> out(c.assignment.size() * static_cast<std::size_t>(k), false);
    for (std::size_t v = 0; v < c.assignment.size(); ++v) {
        const int col = c.assignment[v];
        if (col >= 0 && col < k)
            out[static_cast<std::size_t>(color_var(static_cast<int>(v), col, k) - 1)] = true;
    }
    return out;
}

inline Coloring decode_assignment(const Graph& g, int k, const std::vector<bool>& assignment)
{
    const Cnf cnf = encode_kcoloring(g, k);
    if (!satisfies(cnf, assignment))
        throw InvalidInput("assignment is not a model of the " + std::to_string(k) + "-colouring formula");
    Coloring out;
    out.assignment.assign(static_cast<std::size_t>(g.size()), -1);
    for (int v = 0; v < g.size(); ++v)
        for (int c = 0; c < k; ++c)
            if (assignment[static_cast<std::size_t>(color_var(v, c, k) - 1)])
                out.assignment[static_cast<std::size_t>(v)] = c;
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (int c : out.assignment)
        seen[static_cast<std::size_t>(c)] = true;
    out.colors_used = static_cast<int>(std::ranges::count(seen, true));
    return out;
}

/// Reads SAT solver output ("v 1 -2 ... 0" lines, or bare literals).
inline std::vector<bool> parse_sat_model(std::string_view text, int variables)
{
    std::vector<bool> out(static_cast<std::size_t>(variables), false);
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c" || tok == "s")
            continue;
        if (tok != "v")
            ls = std::istringstream(line);
        long long lit = 0;
        while (ls >> lit) {
            if (lit == 0)
                continue;
            const long long var = std::llabs(lit);
            if (var > variables)
                throw ParseError("literal " + std::to_string(lit) + " exceeds variable count");
            out[static_cast<std::size_t>(var - 1)] = lit > 0;
        }
        if (!ls.eof())
            throw ParseError("malformed model line: " + line);
    }
    return out;
}

} // namespace e8chi
