#include <gtest/gtest.h>

#include <random>

#include "e8chi/catalog.hpp"
#include "e8chi/coloring.hpp"

using namespace e8chi;

namespace {

const Catalog& cat() { return Catalog::builtin(); }

Graph random_graph(int n, double density, std::mt19937_64& rng)
{
    std::bernoulli_distribution coin(density);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng))
                g.add_edge(u, v);
    return g;
}

// First proper k-colouring in lexicographic order, if any.
std::optional<std::vector<int>> brute_force_coloring(const Graph& g, int k)
{
    const int n = g.size();
    std::vector<int> c(static_cast<std::size_t>(n), -1);
    auto place = [&](auto&& self, int v) -> bool {
        if (v == n)
            return true;
        for (int col = 0; col < k; ++col) {
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                ok = !(g.adjacent(u, v) && c[static_cast<std::size_t>(u)] == col);
            if (!ok)
                continue;
            c[static_cast<std::size_t>(v)] = col;
            if (self(self, v + 1))
                return true;
        }
        return false;
    };
    if (!place(place, 0))
        return std::nullopt;
    return c;
}

std::vector<bool> one_hot(const std::vector<int>& c, int k)
{
    std::vector<bool> a(c.size() * static_cast<std::size_t>(k), false);
    for (std::size_t v = 0; v < c.size(); ++v)
        a[static_cast<std::size_t>(color_var(static_cast<int>(v), c[v], k) - 1)] = true;
    return a;
}

} // namespace

TEST(Coloring, ChiLower)
{
    EXPECT_EQ(chi_lower(843, 34), 25);
    EXPECT_EQ(chi_lower(516, 24), 22);
    EXPECT_EQ(chi_lower(10, 10), 1);
    EXPECT_EQ(chi_lower(1, 1), 1);
    EXPECT_THROW(chi_lower(10, 0), InvalidInput);
}

TEST(Coloring, BoundReport)
{
    const auto r = make_bound_report(843, 34, true, 27);
    EXPECT_EQ(r.chi_lower, 25);
    EXPECT_THROW(make_bound_report(843, 34, true, 20), InvalidInput);
    EXPECT_NO_THROW(make_bound_report(843, 30, false, 20));
}

TEST(Coloring, DsaturTrivial)
{
    EXPECT_EQ(dsatur(Graph::complete(4)).colors_used, 4);
    EXPECT_EQ(dsatur(Graph(6)).colors_used, 1);
    EXPECT_EQ(dsatur(Graph(0)).colors_used, 0);
}

TEST(Coloring, CatalogColoringsAreProperAndRespectPigeonhole)
{
    for (const auto& name : cat().names()) {
        const auto& r = cat().recipe(name);
        if (!r.reconstructible)
            continue;
        const auto g = cat().build(name).graph();
        const auto c = dsatur(g);
        EXPECT_TRUE(is_proper(g, c)) << name;
        if (r.expected.alpha && r.expected.alpha_exactness == AlphaExactness::published_exact) {
            EXPECT_GE(c.colors_used, chi_lower(g.size(), *r.expected.alpha)) << name;
        }
    }
}

TEST(Coloring, IsProperRejects)
{
    const auto k2 = Graph::complete(2);
    EXPECT_FALSE(is_proper(k2, Coloring{{0, 0}, 1}));
    EXPECT_FALSE(is_proper(k2, Coloring{{0, -1}, 1}));
    EXPECT_FALSE(is_proper(k2, Coloring{{0, 1}, 3}));
    EXPECT_FALSE(is_proper(k2, Coloring{{0}, 1}));
    EXPECT_TRUE(is_proper(k2, Coloring{{1, 0}, 2}));
}

TEST(Coloring, ImproveColoring)
{
    const auto k4 = Graph::complete(4);
    const auto four = improve_coloring(k4, 4, SearchBudget::nodes(1000));
    ASSERT_TRUE(four);
    EXPECT_TRUE(is_proper(k4, *four));
    EXPECT_FALSE(improve_coloring(k4, 3, SearchBudget::nodes(1000)));
    EXPECT_THROW(improve_coloring(k4, 0, SearchBudget::nodes(10)), InvalidInput);

    const auto g = cat().build("G240").graph();
    const auto c = improve_coloring(g, dsatur(g).colors_used - 1, SearchBudget::nodes(200000), 3);
    if (c) {
        EXPECT_TRUE(is_proper(g, *c));
        EXPECT_GE(c->colors_used, 15);
    }
}

TEST(Coloring, ImproveColoringRandomGraphs)
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 20; ++i) {
        const auto g = random_graph(12, 0.4, rng);
        for (int k = 1; k <= 5; ++k) {
            const auto found = improve_coloring(g, k, SearchBudget::nodes(20000), static_cast<std::uint64_t>(i));
            const auto exists = brute_force_coloring(g, k);
            if (found) {
                EXPECT_TRUE(is_proper(g, *found));
                EXPECT_LE(found->colors_used, k);
                EXPECT_TRUE(exists);
            }
        }
    }
}

TEST(Coloring, CnfTriangle)
{
    const auto cnf = encode_kcoloring(Graph::complete(3), 3);
    EXPECT_EQ(cnf.variables, 9);
    EXPECT_EQ(cnf.clauses.size(), 21u);
    const auto text = cnf.to_dimacs();
    EXPECT_EQ(text.rfind("p cnf 9 21\n", 0), 0u);
}

TEST(Coloring, CnfVariableNumbering)
{
    EXPECT_EQ(color_var(0, 0, 17), 1);
    EXPECT_EQ(color_var(239, 16, 17), 240 * 17);
    EXPECT_EQ(encode_kcoloring(cat().build("G240").graph(), 17).variables, 4080);
}

TEST(Coloring, CnfK4NotThreeColourable)
{
    const auto k4 = Graph::complete(4);
    const auto cnf = encode_kcoloring(k4, 3);
    for (int code = 0; code < 81; ++code) {
        std::vector<int> c;
        for (int v = 0, x = code; v < 4; ++v, x /= 3)
            c.push_back(x % 3);
        EXPECT_FALSE(satisfies(cnf, one_hot(c, 3)));
    }
}

TEST(Coloring, CnfRoundTrip)
{
    std::mt19937_64 rng(13);
    for (int i = 0; i < 20; ++i) {
        const auto g = random_graph(10, 0.3, rng);
        for (int k = 2; k <= 5; ++k) {
            const auto c = brute_force_coloring(g, k);
            if (!c)
                continue;
            const auto cnf = encode_kcoloring(g, k);
            const auto model = one_hot(*c, k);
            EXPECT_TRUE(satisfies(cnf, model));
            const auto back = decode_assignment(g, k, model);
            EXPECT_EQ(back.assignment, *c);
            EXPECT_EQ(assignment_of(back, k), model);
        }
    }
}

TEST(Coloring, DecodeRejectsNonModels)
{
    const auto k2 = Graph::complete(2);
    EXPECT_THROW(decode_assignment(k2, 2, std::vector<bool>(4, false)), InvalidInput);
    EXPECT_THROW(decode_assignment(k2, 2, one_hot({0, 0}, 2)), InvalidInput);
    EXPECT_THROW(decode_assignment(k2, 2, std::vector<bool>(4, true)), InvalidInput);
}

TEST(Coloring, ParseSatModel)
{
    const auto m = parse_sat_model("c comment\ns SATISFIABLE\nv 1 -2 3\nv -4 0\n", 4);
    EXPECT_EQ(m, (std::vector<bool>{true, false, true, false}));
    EXPECT_EQ(parse_sat_model("1 -2 0\n", 2), (std::vector<bool>{true, false}));
    EXPECT_THROW(parse_sat_model("v 5 0\n", 4), ParseError);
    EXPECT_THROW(parse_sat_model("v 1 x 0\n", 4), ParseError);
}
