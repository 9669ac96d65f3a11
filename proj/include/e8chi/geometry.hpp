#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "e8chi/bitset.hpp"
#include "e8chi/error.hpp"
#include "e8chi/point.hpp"

namespace e8chi {

/// Simple undirected graph with one adjacency bitset row per vertex.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n)
        : n_(n), stride_(words_for(n)), rows_(static_cast<std::size_t>(n) * static_cast<std::size_t>(stride_), 0)
    {
    }

    static Graph complete(int n)
    {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                g.add_edge(u, v);
        return g;
    }

    int size() const { return n_; }
    int stride() const { return stride_; }

    std::span<const Word> row(int v) const
    {
        return {rows_.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(stride_),
                static_cast<std::size_t>(stride_)};
    }

    bool adjacent(int u, int v) const { return bits::test(row(u), v); }

    void add_edge(int u, int v)
    {
        if (u == v)
            throw InvalidInput("self-loop on vertex " + std::to_string(u));
        bits::set(mutable_row(u), v);
        bits::set(mutable_row(v), u);
    }

    int degree(int v) const { return bits::count(row(v)); }

    std::int64_t edge_count() const
    {
        std::int64_t s = 0;
        for (int v = 0; v < n_; ++v)
            s += degree(v);
        return s / 2;
    }

    std::vector<int> neighbors(int v) const
    {
        std::vector<int> out;
        bits::for_each(row(v), [&](int u) { out.push_back(u); });
        return out;
    }

    /// Subgraph induced by `keep` (in the given order).
    Graph induced(std::span<const int> keep) const
    {
        Graph g(static_cast<int>(keep.size()));
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = i + 1; j < keep.size(); ++j)
                if (adjacent(keep[i], keep[j]))
                    g.add_edge(static_cast<int>(i), static_cast<int>(j));
        return g;
    }

    bool operator==(const Graph&) const = default;

private:
    std::span<Word> mutable_row(int v)
    {
        return {rows_.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(stride_),
                static_cast<std::size_t>(stride_)};
    }

    int n_ = 0;
    int stride_ = 0;
    std::vector<Word> rows_;
};

/// Graph over a point set; u ~ v exactly when |p_u - p_v|^2 == forbidden_sq.
class DistGraph {
public:
    DistGraph() = default;
    DistGraph(std::vector<Point> sorted_points, std::int64_t forbidden_sq, Graph graph)
        : points_(std::move(sorted_points)), forbidden_sq_(forbidden_sq), graph_(std::move(graph))
    {
    }

    int size() const { return graph_.size(); }
    const std::vector<Point>& points() const { return points_; }
    const Point& point(int v) const { return points_[static_cast<std::size_t>(v)]; }
    std::int64_t forbidden_sq() const { return forbidden_sq_; }
    const Graph& graph() const { return graph_; }

    /// Vertex index of p, or -1.
    int index_of(const Point& p) const
    {
        auto it = std::ranges::lower_bound(points_, p);
        return it != points_.end() && *it == p ? static_cast<int>(it - points_.begin()) : -1;
    }

private:
    std::vector<Point> points_;
    std::int64_t forbidden_sq_ = 16;
    Graph graph_;
};

inline constexpr std::int64_t kForbiddenSq = 16;

/// Points are sorted lexicographically, which fixes the vertex numbering.
inline DistGraph build_graph(std::vector<Point> points, std::int64_t forbidden_sq = kForbiddenSq)
{
    if (forbidden_sq <= 0)
        throw InvalidInput("forbidden squared distance must be positive");
    if (!points.empty()) {
        const int dim = points.front().dimension();
        for (const auto& p : points)
            if (p.dimension() != dim)
                throw InvalidInput("mixed point dimensions");
    }
    std::ranges::sort(points);
    if (auto dup = std::ranges::adjacent_find(points); dup != points.end())
        throw InvalidInput("duplicate point (" + dup->to_string() + ")");

    const int n = static_cast<int>(points.size());
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (squared_distance(points[static_cast<std::size_t>(u)], points[static_cast<std::size_t>(v)]) ==
                forbidden_sq)
                g.add_edge(u, v);
    return DistGraph(std::move(points), forbidden_sq, std::move(g));
}

struct GraphStats {
    int v = 0;
    std::int64_t e = 0;
    int deg_min = 0;
    int deg_max = 0;

    bool operator==(const GraphStats&) const = default;
};

inline GraphStats stats(const Graph& g)
{
    GraphStats s;
    s.v = g.size();
    if (s.v == 0)
        return s;
    s.deg_min = g.size();
    std::int64_t sum = 0;
    for (int v = 0; v < g.size(); ++v) {
        const int d = g.degree(v);
        s.deg_min = std::min(s.deg_min, d);
        s.deg_max = std::max(s.deg_max, d);
        sum += d;
    }
    s.e = sum / 2;
    return s;
}

inline GraphStats stats(const DistGraph& g) { return stats(g.graph()); }

inline Graph complement(const Graph& g)
{
    const int n = g.size();
    Graph c(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v))
                c.add_edge(u, v);
    return c;
}

using Permutation = std::vector<int>;

/// Vertex permutations induced by simple isometries of the point set: a
/// reflection of one or two coordinates, or a swap of two coordinates with
/// optional sign changes, each followed by the translation that keeps the
/// centroid in place. Only maps sending every point onto a point are kept,
/// so each result is a graph automorphism. Vertices listed in `fixed` must be
/// fixed by every generator returned (a stabilizer subgroup).
inline std::vector<Permutation> isometry_generators(const DistGraph& g, std::span<const int> fixed = {})
{
    std::vector<Permutation> out;
    const int n = g.size();
    if (n == 0)
        return out;
    const int dim = g.point(0).dimension();
    std::vector<std::int64_t> sum(static_cast<std::size_t>(dim), 0);
    for (const auto& p : g.points())
        for (int i = 0; i < dim; ++i)
            sum[static_cast<std::size_t>(i)] += p[i];

    // y_i = sign_i * x_{from_i} + shift_i
    auto try_map = [&](const std::vector<int>& from, const std::vector<int>& sign) {
        std::vector<int> shift(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            const std::int64_t num = sum[ui] - sign[ui] * sum[static_cast<std::size_t>(from[ui])];
            if (num % n != 0)
                return;
            shift[ui] = static_cast<int>(num / n);
        }
        Permutation perm(static_cast<std::size_t>(n));
        bool identity = true;
        std::vector<int> y(static_cast<std::size_t>(dim));
        for (int v = 0; v < n; ++v) {
            const Point& p = g.point(v);
            for (int i = 0; i < dim; ++i) {
                const auto ui = static_cast<std::size_t>(i);
                y[ui] = sign[ui] * p[from[ui]] + shift[ui];
            }
            const int w = g.index_of(Point(y));
            if (w < 0)
                return;
            perm[static_cast<std::size_t>(v)] = w;
            identity &= w == v;
        }
        for (int v : fixed)
            if (perm[static_cast<std::size_t>(v)] != v)
                return;
        if (!identity)
            out.push_back(std::move(perm));
    };

    std::vector<int> from(static_cast<std::size_t>(dim));
    std::vector<int> sign(static_cast<std::size_t>(dim), 1);
    auto reset = [&] {
        for (int i = 0; i < dim; ++i)
            from[static_cast<std::size_t>(i)] = i;
        std::ranges::fill(sign, 1);
    };
    for (int i = 0; i < dim; ++i) {
        reset();
        sign[static_cast<std::size_t>(i)] = -1;
        try_map(from, sign);
        for (int j = i + 1; j < dim; ++j) {
            reset();
            sign[static_cast<std::size_t>(i)] = sign[static_cast<std::size_t>(j)] = -1;
            try_map(from, sign);
            for (int si : {1, -1})
                for (int sj : {1, -1}) {
                    reset();
                    from[static_cast<std::size_t>(i)] = j;
                    from[static_cast<std::size_t>(j)] = i;
                    sign[static_cast<std::size_t>(i)] = si;
                    sign[static_cast<std::size_t>(j)] = sj;
                    try_map(from, sign);
                }
        }
    }
    std::ranges::sort(out);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Orbit label (smallest member) of every vertex under the generated group.
inline std::vector<int> orbits(int n, std::span<const Permutation> generators)
{
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        parent[static_cast<std::size_t>(v)] = v;
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v)
            v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
        return v;
    };
    for (const auto& perm : generators) {
        if (static_cast<int>(perm.size()) != n)
            throw InvalidInput("generator size does not match the graph");
        for (int v = 0; v < n; ++v) {
            const int a = find(v);
            const int b = find(perm[static_cast<std::size_t>(v)]);
            if (a != b)
                parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        }
    }
    std::vector<int> label(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        label[static_cast<std::size_t>(v)] = find(v);
    return label;
}

/// True iff perm is a bijection preserving adjacency.
inline bool is_automorphism(const Graph& g, std::span<const int> perm)
{
    const int n = g.size();
    if (static_cast<int>(perm.size()) != n)
        return false;
    std::vector<bool> hit(static_cast<std::size_t>(n), false);
    for (int p : perm) {
        if (p < 0 || p >= n || hit[static_cast<std::size_t>(p)])
            return false;
        hit[static_cast<std::size_t>(p)] = true;
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (g.adjacent(u, v) != g.adjacent(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]))
                return false;
    return true;
}

// DIMACS ASCII graph format: "c" comments, "p edge <n> <m>", "e <u> <v>"
// with 1-indexed vertices. "p col" headers are accepted on input.

inline std::string export_dimacs(const Graph& g, std::string_view comment = {})
{
    std::ostringstream out;
    if (!comment.empty())
        out << "c " << comment << '\n';
    out << "p edge " << g.size() << ' ' << g.edge_count() << '\n';
    for (int u = 0; u < g.size(); ++u)
        bits::for_each(g.row(u), [&](int v) {
            if (v > u)
                out << "e " << u + 1 << ' ' << v + 1 << '\n';
        });
    return out.str();
}

inline Graph import_dimacs(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool have_header = false;
    std::int64_t declared_edges = 0;
    Graph g;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c")
            continue;
        const std::string where = "line " + std::to_string(line_no);
        if (tag == "p") {
            std::string kind;
            long long n = -1;
            if (have_header || !(ls >> kind >> n >> declared_edges) || (kind != "edge" && kind != "col") || n < 0 ||
                declared_edges < 0)
                throw ParseError("malformed DIMACS header at " + where);
            g = Graph(static_cast<int>(n));
            have_header = true;
        } else if (tag == "e") {
            if (!have_header)
                throw ParseError("edge before header at " + where);
            long long u = 0;
            long long v = 0;
            if (!(ls >> u >> v))
                throw ParseError("malformed edge at " + where);
            if (u < 1 || v < 1 || u > g.size() || v > g.size())
                throw ParseError("vertex index out of range at " + where);
            if (u == v)
                throw ParseError("self-loop at " + where);
            g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
        } else {
            throw ParseError("unknown DIMACS line at " + where);
        }
    }
    if (!have_header)
        throw ParseError("missing DIMACS header");
    return g;
}

} // namespace e8chi
